use rayon::prelude::*;

use crate::scalarfield::{fd_partial, gradient, Axis, SampleError, SampleSpec, ScalarField};

/// Step sizes used to estimate the observed order of the central difference.
pub const ORDER_STEPS: [f64; 2] = [1e-3, 1e-4];

/// Below this multiple of the field scale the step-1e-3 error is treated as
/// rounding noise, and no order can be observed.
const TRUNCATION_FLOOR: f64 = 1e-8;

/// Symbolic partials compared against central differences.
#[derive(Clone, Debug, PartialEq)]
pub struct CrossCheck {
    pub h: f64,
    /// Largest `|∂f/∂xᵢ − central difference|` over points and axes.
    pub max_error: f64,
    /// `max(1, max |f|)` over the points.
    pub scale: f64,
    pub points_tested: usize,
    pub domain_failures: usize,
}

impl CrossCheck {
    /// The acceptance bound `10·h²·scale`.
    pub fn bound(&self) -> f64 {
        10.0 * self.h * self.h * self.scale
    }

    pub fn within_bound(&self) -> bool {
        self.max_error <= self.bound()
    }
}

pub fn cross_check(f: &ScalarField, spec: &SampleSpec, h: f64) -> Result<CrossCheck, SampleError> {
    assert!(h > 0.0 && h.is_finite(), "finite-difference step must be positive");
    let points = spec.points()?;
    let grad = gradient(f);
    let per_point: Vec<Option<(f64, f64)>> = points
        .par_iter()
        .map(|p| {
            let value = f.evaluate(p).ok()?;
            let mut err: f64 = 0.0;
            for axis in Axis::ALL {
                let symbolic = grad[axis.index()].evaluate(p).ok()?;
                let numeric = fd_partial(f, p, axis, h).ok()?;
                err = err.max((symbolic - numeric).abs());
            }
            Some((err, value.abs()))
        })
        .collect();
    let mut out = CrossCheck { h, max_error: 0.0, scale: 1.0, points_tested: 0, domain_failures: 0 };
    for entry in per_point {
        match entry {
            Some((err, v)) => {
                out.points_tested += 1;
                out.max_error = out.max_error.max(err);
                out.scale = out.scale.max(v);
            }
            None => out.domain_failures += 1,
        }
    }
    Ok(out)
}

/// `log10(err(1e-3) / err(1e-4))`, or `None` when the central difference is
/// already accurate to rounding at the larger step.
pub fn convergence_order(f: &ScalarField, spec: &SampleSpec) -> Result<Option<f64>, SampleError> {
    let coarse = cross_check(f, spec, ORDER_STEPS[0])?;
    if coarse.max_error <= TRUNCATION_FLOOR * coarse.scale {
        return Ok(None);
    }
    let fine = cross_check(f, spec, ORDER_STEPS[1])?;
    Ok(Some((coarse.max_error / fine.max_error).log10() / (ORDER_STEPS[0] / ORDER_STEPS[1]).log10()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::so3_potential;
    use crate::scalarfield::parse;

    #[test]
    fn cubic_error_matches_taylor_remainder() {
        let c = cross_check(&parse("x^3").unwrap(), &SampleSpec::default(), 1e-3).unwrap();
        assert!(c.max_error > 0.5e-6 && c.max_error < 1.5e-6, "{}", c.max_error);
        assert!(c.within_bound());
        let order = convergence_order(&parse("x^3").unwrap(), &SampleSpec::default()).unwrap().unwrap();
        assert!((order - 2.0).abs() < 0.1, "{order}");
    }

    #[test]
    fn quadratics_are_exact_to_rounding() {
        let f = parse("x^2+y^2").unwrap();
        for h in [1e-1, 1e-3, 1e-4] {
            assert!(cross_check(&f, &SampleSpec::default(), h).unwrap().max_error <= 1e-10);
        }
        assert_eq!(convergence_order(&f, &SampleSpec::default()).unwrap(), None);
    }

    #[test]
    fn radial_cubic_on_a_shell() {
        let spec = SampleSpec::default().with_excluded_radius(0.5);
        let c = cross_check(&so3_potential(), &spec, 1e-4).unwrap();
        assert!(c.max_error <= 1e-6, "{}", c.max_error);
        assert_eq!(c.domain_failures, 0);
    }
}
