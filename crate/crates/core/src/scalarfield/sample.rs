use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::Point3;

pub const DEFAULT_ABS_TOL: f64 = 1e-9;
pub const DEFAULT_REL_TOL: f64 = 1e-9;

/// Rejection-sampling attempts allowed per requested point.
const MAX_ATTEMPTS_PER_POINT: usize = 10_000;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum SampleError {
    #[error("box bounds must satisfy lo < hi on every axis (axis {axis}: lo={lo}, hi={hi})")]
    EmptyBox { axis: usize, lo: f64, hi: f64 },
    #[error("sample count must be at least 1")]
    ZeroCount,
    #[error("tolerances must be positive and finite (abs_tol={abs_tol}, rel_tol={rel_tol})")]
    BadTolerance { abs_tol: f64, rel_tol: f64 },
    #[error("excluded radius must be finite and nonnegative, got {0}")]
    BadRadius(f64),
    #[error("excluded ball of radius {radius} covers the whole box")]
    BoxInsideBall { radius: f64 },
    #[error("could not draw {wanted} points outside the excluded ball")]
    Exhausted { wanted: usize },
}

/// Where and how densely residual checks sample, and how strictly they judge.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleSpec {
    pub lo: [f64; 3],
    pub hi: [f64; 3],
    pub excluded_radius: f64,
    pub count: usize,
    pub seed: u64,
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl Default for SampleSpec {
    /// Box `[−2, 2]³` minus the ball of radius 0.25, 500 points, seed 42.
    fn default() -> Self {
        SampleSpec {
            lo: [-2.0; 3],
            hi: [2.0; 3],
            excluded_radius: 0.25,
            count: 500,
            seed: 42,
            abs_tol: DEFAULT_ABS_TOL,
            rel_tol: DEFAULT_REL_TOL,
        }
    }
}

impl SampleSpec {
    /// Cube `[lo, hi]³` with default tolerances and no excluded ball.
    pub fn cube(lo: f64, hi: f64, count: usize, seed: u64) -> Self {
        SampleSpec { lo: [lo; 3], hi: [hi; 3], excluded_radius: 0.0, count, seed, ..SampleSpec::default() }
    }

    pub fn with_excluded_radius(mut self, r: f64) -> Self {
        self.excluded_radius = r;
        self
    }

    pub fn with_count(mut self, count: usize) -> Self {
        self.count = count;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<(), SampleError> {
        for axis in 0..3 {
            let (lo, hi) = (self.lo[axis], self.hi[axis]);
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(SampleError::EmptyBox { axis, lo, hi });
            }
        }
        if self.count == 0 {
            return Err(SampleError::ZeroCount);
        }
        let tol_ok = |t: f64| t.is_finite() && t > 0.0;
        if !(tol_ok(self.abs_tol) && tol_ok(self.rel_tol)) {
            return Err(SampleError::BadTolerance { abs_tol: self.abs_tol, rel_tol: self.rel_tol });
        }
        if !(self.excluded_radius.is_finite() && self.excluded_radius >= 0.0) {
            return Err(SampleError::BadRadius(self.excluded_radius));
        }
        // farthest corner from the origin
        let far: f64 = (0..3).map(|a| self.lo[a].abs().max(self.hi[a].abs()).powi(2)).sum::<f64>().sqrt();
        if far <= self.excluded_radius {
            return Err(SampleError::BoxInsideBall { radius: self.excluded_radius });
        }
        Ok(())
    }

    /// The first `count` points of the seeded stream. The stream does not
    /// depend on `count`, so a larger count extends a smaller one.
    pub fn points(&self) -> Result<Vec<Point3>, SampleError> {
        self.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut out = Vec::with_capacity(self.count);
        let budget = self.count.saturating_mul(MAX_ATTEMPTS_PER_POINT);
        let mut attempts = 0;
        while out.len() < self.count {
            if attempts == budget {
                return Err(SampleError::Exhausted { wanted: self.count });
            }
            attempts += 1;
            let p = Point3::new(
                rng.gen_range(self.lo[0]..=self.hi[0]),
                rng.gen_range(self.lo[1]..=self.hi[1]),
                rng.gen_range(self.lo[2]..=self.hi[2]),
            );
            if p.norm() > self.excluded_radius {
                out.push(p);
            }
        }
        Ok(out)
    }

    /// Residual threshold at a point whose terms have magnitude `scale`.
    pub fn threshold(&self, scale: f64) -> f64 {
        self.abs_tol + self.rel_tol * scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_respect_box_and_ball() {
        let spec = SampleSpec::default();
        let pts = spec.points().unwrap();
        assert_eq!(pts.len(), 500);
        for p in pts {
            assert!(p.norm() > 0.25);
            for (c, (lo, hi)) in [p.x, p.y, p.z].iter().zip(spec.lo.iter().zip(spec.hi.iter())) {
                assert!(lo <= c && c <= hi);
            }
        }
    }

    #[test]
    fn larger_count_extends_the_stream() {
        let small = SampleSpec::default().with_count(50).points().unwrap();
        let large = SampleSpec::default().with_count(200).points().unwrap();
        assert_eq!(small[..], large[..50]);
    }

    #[test]
    fn invalid_specs() {
        assert_eq!(
            SampleSpec::cube(1.0, 1.0, 10, 0).validate(),
            Err(SampleError::EmptyBox { axis: 0, lo: 1.0, hi: 1.0 })
        );
        assert_eq!(SampleSpec::cube(0.0, 1.0, 0, 0).validate(), Err(SampleError::ZeroCount));
        let s = SampleSpec { rel_tol: 0.0, ..SampleSpec::default() };
        assert!(matches!(s.validate(), Err(SampleError::BadTolerance { .. })));
        let s = SampleSpec::cube(-1.0, 1.0, 10, 0).with_excluded_radius(2.0);
        assert!(matches!(s.validate(), Err(SampleError::BoxInsideBall { .. })));
    }
}
