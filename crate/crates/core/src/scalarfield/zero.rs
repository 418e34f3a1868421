use super::{SampleSpec, ScalarField};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroTestMethod {
    /// Expanded to monomial form and compared exactly.
    Exact,
    /// Evaluated at sample points against the `SampleSpec` tolerances.
    Sampled,
}

/// Outcome of a zero test, with the evidence behind it.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroTest {
    pub is_zero: bool,
    pub method: ZeroTestMethod,
    pub points_tested: usize,
    /// Points skipped because the field could not be evaluated there.
    pub domain_failures: usize,
    pub max_abs: f64,
}

/// Decide whether `f` vanishes identically.
///
/// Polynomials (including those with `√q` constants) are expanded and decided
/// exactly. Anything else is sampled: `f` is declared zero iff every point
/// where it evaluates satisfies `|f(p)| ≤ abs_tol + rel_tol·scale(p)`, where
/// `scale` is [`ScalarField::magnitude`]. The sampled answer can be a false
/// positive for a field that happens to vanish on all `count` points; points
/// where evaluation fails are skipped, and a field that evaluates nowhere is
/// not declared zero.
pub fn zero_test(f: &ScalarField, spec: &SampleSpec) -> ZeroTest {
    if let Some(p) = f.to_polynomial() {
        return ZeroTest {
            is_zero: p.is_zero(),
            method: ZeroTestMethod::Exact,
            points_tested: 0,
            domain_failures: 0,
            max_abs: if p.is_zero() { 0.0 } else { f64::NAN },
        };
    }
    let points = match spec.points() {
        Ok(p) => p,
        Err(_) => {
            return ZeroTest {
                is_zero: false,
                method: ZeroTestMethod::Sampled,
                points_tested: 0,
                domain_failures: 0,
                max_abs: f64::NAN,
            }
        }
    };
    let mut tested = 0;
    let mut failures = 0;
    let mut max_abs: f64 = 0.0;
    let mut all_within = true;
    for p in &points {
        match (f.evaluate(p), f.magnitude(p)) {
            (Ok(v), Ok(scale)) => {
                tested += 1;
                max_abs = max_abs.max(v.abs());
                if v.abs() > spec.threshold(scale) {
                    all_within = false;
                }
            }
            _ => failures += 1,
        }
    }
    ZeroTest {
        is_zero: all_within && tested > 0,
        method: ZeroTestMethod::Sampled,
        points_tested: tested,
        domain_failures: failures,
        max_abs,
    }
}

pub fn is_identically_zero(f: &ScalarField, spec: &SampleSpec) -> bool {
    zero_test(f, spec).is_zero
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalarfield::{gradient, laplacian, parse};

    #[test]
    fn polynomial_identity_is_exact() {
        let f = parse("(x+y)^2 - x^2 - 2*x*y - y^2").unwrap();
        let t = zero_test(&f, &SampleSpec::default());
        assert!(t.is_zero);
        assert_eq!(t.method, ZeroTestMethod::Exact);
    }

    #[test]
    fn coordinate_is_not_zero() {
        assert!(!is_identically_zero(&parse("x").unwrap(), &SampleSpec::default()));
        assert!(!is_identically_zero(&parse("sqrt(x^2+1) - 1").unwrap(), &SampleSpec::default()));
    }

    #[test]
    fn radial_cubic_satisfies_first_component_of_e() {
        let g = parse("(x^2+y^2+z^2)^(3/2)").unwrap();
        let grad = gradient(&g);
        let sq = ScalarField::sum(&grad.iter().map(|c| c * c).collect::<Vec<_>>());
        let residual = sq.partial(crate::scalarfield::Axis::X) - laplacian(&g) * &grad[0];
        let t = zero_test(&residual, &SampleSpec::default());
        assert_eq!(t.method, ZeroTestMethod::Sampled);
        assert!(t.is_zero, "{t:?}");
        assert_eq!(t.points_tested, 500);
    }

    #[test]
    fn nowhere_defined_field_is_not_zero() {
        let f = parse("sqrt(-1 - x^2) * 0 + sqrt(-1-x^2) - sqrt(-1-x^2)").unwrap();
        let t = zero_test(&f, &SampleSpec::default());
        assert!(!t.is_zero);
        assert_eq!(t.domain_failures, 500);
    }
}
