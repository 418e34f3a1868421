use num_traits::One;

use super::{Axis, EvalError, Node, Point3, Rational, ScalarField};

/// Default step for the central-difference oracle.
pub const DEFAULT_STEP: f64 = 1e-4;

/// Exact symbolic partial derivative along `axis`.
pub fn partial(f: &ScalarField, axis: Axis) -> ScalarField {
    if !f.depends_on(axis) {
        return ScalarField::zero();
    }
    match f.node() {
        Node::Const(_) => ScalarField::zero(),
        Node::Var(a) => ScalarField::integer(i64::from(*a == axis)),
        Node::Neg(a) => -partial(a, axis),
        Node::Add(a, b) => partial(a, axis) + partial(b, axis),
        Node::Sub(a, b) => partial(a, axis) - partial(b, axis),
        Node::Mul(a, b) => partial(a, axis) * b + a * partial(b, axis),
        Node::Div(a, b) => {
            let da = partial(a, axis);
            let db = partial(b, axis);
            if db.is_zero_literal() {
                da / b
            } else {
                (da * b - a * db) / ScalarField::powi(b, 2)
            }
        }
        Node::Pow(u, e) => {
            let du = partial(u, axis);
            let lowered = ScalarField::pow(u, e - Rational::one());
            ScalarField::constant(e.clone()) * lowered * du
        }
        Node::Sqrt(u) => {
            let du = partial(u, axis);
            du / (ScalarField::integer(2) * f)
        }
    }
}

/// `(∂f/∂x, ∂f/∂y, ∂f/∂z)`.
pub fn gradient(f: &ScalarField) -> [ScalarField; 3] {
    Axis::ALL.map(|a| partial(f, a))
}

/// Sum of the three pure second derivatives.
pub fn laplacian(f: &ScalarField) -> ScalarField {
    let terms: Vec<_> = Axis::ALL.iter().map(|&a| partial(&partial(f, a), a)).collect();
    ScalarField::sum(&terms)
}

/// Central difference `(f(p+h·e) − f(p−h·e)) / 2h`, the oracle the symbolic
/// derivatives are checked against.
pub fn fd_partial(f: &ScalarField, p: &Point3, axis: Axis, h: f64) -> Result<f64, EvalError> {
    assert!(h > 0.0, "finite-difference step must be positive");
    let forward = f.evaluate(&p.shifted(axis, h))?;
    let backward = f.evaluate(&p.shifted(axis, -h))?;
    Ok((forward - backward) / (2.0 * h))
}

impl ScalarField {
    pub fn partial(&self, axis: Axis) -> ScalarField {
        partial(self, axis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalarfield::{parse, EvalErrorKind};
    use approx_eq::close;

    mod approx_eq {
        pub fn close(a: f64, b: f64, tol: f64) -> bool {
            (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
        }
    }

    fn at(f: &ScalarField, x: f64, y: f64, z: f64) -> f64 {
        f.at(x, y, z).unwrap()
    }

    #[test]
    fn power_rule() {
        let d = partial(&parse("x^2*y").unwrap(), Axis::X);
        for &(x, y) in &[(1.0, 2.0), (-3.0, 0.5), (0.25, -4.0)] {
            assert!(close(at(&d, x, y, 0.0), 2.0 * x * y, 1e-15));
        }
    }

    #[test]
    fn constant_rule() {
        assert!(partial(&ScalarField::ratio(7, 3), Axis::X).is_zero_literal());
        assert!(partial(&parse("y*z").unwrap(), Axis::X).is_zero_literal());
    }

    #[test]
    fn chain_rule_through_rational_power() {
        let f = parse("(x^2+y^2+z^2)^(3/2)").unwrap();
        let d = partial(&f, Axis::X);
        let expected = parse("3*x*(x^2+y^2+z^2)^(1/2)").unwrap();
        for p in [(1.0, 2.0, 3.0), (-0.5, 0.1, 0.7), (2.0, -2.0, 0.0)] {
            assert!(close(at(&d, p.0, p.1, p.2), at(&expected, p.0, p.1, p.2), 1e-14));
        }
    }

    #[test]
    fn gradient_examples() {
        let g = gradient(&parse("x^2+y^2").unwrap());
        assert_eq!(at(&g[0], 1.5, 2.0, 3.0), 3.0);
        assert_eq!(at(&g[1], 1.5, 2.0, 3.0), 4.0);
        assert!(g[2].is_zero_literal());

        let g = gradient(&parse("x*y*z").unwrap());
        assert_eq!(at(&g[0], 2.0, 3.0, 5.0), 15.0);
        assert_eq!(at(&g[1], 2.0, 3.0, 5.0), 10.0);
        assert_eq!(at(&g[2], 2.0, 3.0, 5.0), 6.0);

        let g = gradient(&parse("(x^2+y^2+z^2)/2").unwrap());
        for (i, v) in [2.0, 3.0, 5.0].into_iter().enumerate() {
            assert_eq!(at(&g[i], 2.0, 3.0, 5.0), v);
        }
    }

    #[test]
    fn laplacian_examples() {
        assert_eq!(laplacian(&parse("x^2+y^2").unwrap()), ScalarField::integer(4));
        assert_eq!(laplacian(&parse("(x^2+y^2+z^2)/2").unwrap()), ScalarField::integer(3));
        let l = laplacian(&parse("(x^2+y^2+z^2)^(3/2)").unwrap());
        for p in [(1.0f64, 2.0, 3.0), (-0.5, 0.1, 0.7)] {
            let r = (p.0 * p.0 + p.1 * p.1 + p.2 * p.2).sqrt();
            assert!(close(at(&l, p.0, p.1, p.2), 12.0 * r, 1e-14));
        }
    }

    #[test]
    fn fd_partial_examples() {
        let x2 = parse("x^2").unwrap();
        let v = fd_partial(&x2, &Point3::new(1.0, 0.0, 0.0), Axis::X, 1e-4).unwrap();
        assert!((v - 2.0).abs() <= 1e-7);

        // Taylor remainder h²·f'''/6 = 1e-6
        let x3 = parse("x^3").unwrap();
        let v = fd_partial(&x3, &Point3::new(1.0, 0.0, 0.0), Axis::X, 1e-3).unwrap();
        assert!((v - 3.0 - 1e-6).abs() <= 1e-12, "{v}");

        let s = parse("sqrt(x)").unwrap();
        let err = fd_partial(&s, &Point3::new(1e-9, 0.0, 0.0), Axis::X, 1e-4).unwrap_err();
        assert_eq!(err.kind, EvalErrorKind::NegativeSqrtBase);
    }

    #[test]
    fn sqrt_and_quotient_rules() {
        let f = parse("sqrt(x*y)/(1+z^2)").unwrap();
        let p = Point3::new(1.3, 0.7, -0.4);
        for axis in Axis::ALL {
            let sym = partial(&f, axis).evaluate(&p).unwrap();
            let fd = fd_partial(&f, &p, axis, 1e-5).unwrap();
            assert!((sym - fd).abs() < 1e-8, "{axis}: {sym} vs {fd}");
        }
    }
}
