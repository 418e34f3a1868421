use num_traits::{Signed, ToPrimitive};
use thiserror::Error;

use super::{Axis, Node, Point3, Rational, ScalarField};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalErrorKind {
    NegativeSqrtBase,
    NegativeFractionalPowerBase,
    ZeroDivisor,
    NonFinite,
    NonFinitePoint,
}

impl std::fmt::Display for EvalErrorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EvalErrorKind::NegativeSqrtBase => "negative sqrt base",
            EvalErrorKind::NegativeFractionalPowerBase => "negative base of fractional power",
            EvalErrorKind::ZeroDivisor => "zero divisor",
            EvalErrorKind::NonFinite => "non-finite intermediate value",
            EvalErrorKind::NonFinitePoint => "non-finite evaluation point",
        })
    }
}

/// Domain violation encountered while evaluating a field.
#[derive(Clone, Debug, Error, PartialEq)]
#[error("domain violation ({kind}) in `{subexpr}`")]
pub struct EvalError {
    pub kind: EvalErrorKind,
    /// The offending subexpression, rendered in expression syntax.
    pub subexpr: String,
}

impl EvalError {
    fn at(kind: EvalErrorKind, e: &ScalarField) -> Self {
        EvalError { kind, subexpr: e.to_string() }
    }
}

fn rational_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

fn pow_value(base: f64, exponent: &Rational) -> Result<f64, EvalErrorKind> {
    if exponent.is_integer() {
        let e = exponent.to_integer().to_i32().ok_or(EvalErrorKind::NonFinite)?;
        if e < 0 && base == 0.0 {
            return Err(EvalErrorKind::ZeroDivisor);
        }
        return Ok(base.powi(e));
    }
    if base < 0.0 {
        return Err(EvalErrorKind::NegativeFractionalPowerBase);
    }
    if base == 0.0 && exponent.is_negative() {
        return Err(EvalErrorKind::ZeroDivisor);
    }
    Ok(base.powf(rational_to_f64(exponent)))
}

impl ScalarField {
    /// Value of the field at `p`.
    pub fn evaluate(&self, p: &Point3) -> Result<f64, EvalError> {
        if !p.is_finite() {
            return Err(EvalError::at(EvalErrorKind::NonFinitePoint, self));
        }
        self.eval_inner(p)
    }

    fn eval_inner(&self, p: &Point3) -> Result<f64, EvalError> {
        let v = match self.node() {
            Node::Const(q) => rational_to_f64(q),
            Node::Var(a) => p.coord(*a),
            Node::Neg(a) => -a.eval_inner(p)?,
            Node::Add(a, b) => a.eval_inner(p)? + b.eval_inner(p)?,
            Node::Sub(a, b) => a.eval_inner(p)? - b.eval_inner(p)?,
            Node::Mul(a, b) => a.eval_inner(p)? * b.eval_inner(p)?,
            Node::Div(a, b) => {
                let num = a.eval_inner(p)?;
                let den = b.eval_inner(p)?;
                if den == 0.0 {
                    return Err(EvalError::at(EvalErrorKind::ZeroDivisor, self));
                }
                num / den
            }
            Node::Pow(a, e) => {
                let base = a.eval_inner(p)?;
                pow_value(base, e).map_err(|k| EvalError::at(k, self))?
            }
            Node::Sqrt(a) => {
                let base = a.eval_inner(p)?;
                if base < 0.0 {
                    return Err(EvalError::at(EvalErrorKind::NegativeSqrtBase, self));
                }
                base.sqrt()
            }
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(EvalError::at(EvalErrorKind::NonFinite, self))
        }
    }

    /// Magnitude of the positivized tree at `p`: every constant, coordinate
    /// and intermediate value replaced by its absolute value, and subtraction
    /// replaced by addition. Bounds the size of the terms that may cancel in
    /// [`evaluate`](Self::evaluate), so it is the natural scale for relative
    /// tolerances.
    pub fn magnitude(&self, p: &Point3) -> Result<f64, EvalError> {
        let v = match self.node() {
            Node::Const(q) => rational_to_f64(q).abs(),
            Node::Var(a) => p.coord(*a).abs(),
            Node::Neg(a) => a.magnitude(p)?,
            Node::Add(a, b) | Node::Sub(a, b) => a.magnitude(p)? + b.magnitude(p)?,
            Node::Mul(a, b) => a.magnitude(p)? * b.magnitude(p)?,
            Node::Div(a, b) => {
                let den = b.eval_inner(p)?.abs();
                if den == 0.0 {
                    return Err(EvalError::at(EvalErrorKind::ZeroDivisor, self));
                }
                a.magnitude(p)? / den
            }
            Node::Pow(a, e) => {
                let base = a.eval_inner(p)?.abs();
                pow_value(base, e).map_err(|k| EvalError::at(k, self))?
            }
            Node::Sqrt(a) => a.eval_inner(p)?.abs().sqrt(),
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(EvalError::at(EvalErrorKind::NonFinite, self))
        }
    }

    /// Evaluate at a raw coordinate triple.
    pub fn at(&self, x: f64, y: f64, z: f64) -> Result<f64, EvalError> {
        self.evaluate(&Point3::new(x, y, z))
    }

    pub fn depends_on(&self, axis: Axis) -> bool {
        match self.node() {
            Node::Const(_) => false,
            Node::Var(a) => *a == axis,
            Node::Neg(a) | Node::Pow(a, _) | Node::Sqrt(a) => a.depends_on(axis),
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => {
                a.depends_on(axis) || b.depends_on(axis)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalarfield::parse;

    #[test]
    fn evaluates_polynomial() {
        let f = parse("x^2+y^2").unwrap();
        assert_eq!(f.at(1.0, 2.0, 0.0).unwrap(), 5.0);
    }

    #[test]
    fn evaluates_rational_power_at_unit_radius() {
        let f = parse("(x^2+y^2+z^2)^(3/2)").unwrap();
        assert_eq!(f.at(1.0, 0.0, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn negative_sqrt_base_is_reported_with_subexpression() {
        let f = parse("1 + sqrt(x)").unwrap();
        let err = f.at(-1.0, 0.0, 0.0).unwrap_err();
        assert_eq!(err.kind, EvalErrorKind::NegativeSqrtBase);
        assert_eq!(err.subexpr, "sqrt(x)");
    }

    #[test]
    fn zero_divisor() {
        let f = parse("1/(x-1)").unwrap();
        assert_eq!(f.at(1.0, 0.0, 0.0).unwrap_err().kind, EvalErrorKind::ZeroDivisor);
        let g = parse("x^(-2)").unwrap();
        assert_eq!(g.at(0.0, 1.0, 0.0).unwrap_err().kind, EvalErrorKind::ZeroDivisor);
    }

    #[test]
    fn fractional_power_of_negative_base() {
        let f = parse("x^(1/3)").unwrap();
        assert_eq!(f.at(-8.0, 0.0, 0.0).unwrap_err().kind, EvalErrorKind::NegativeFractionalPowerBase);
    }

    #[test]
    fn magnitude_bounds_cancellation() {
        let f = parse("x - x").unwrap();
        assert_eq!(f.at(3.0, 0.0, 0.0).unwrap(), 0.0);
        assert_eq!(f.magnitude(&Point3::new(3.0, 0.0, 0.0)).unwrap(), 6.0);
    }
}
