use num_traits::Signed;

use super::bracket::sharp;
use super::{bivector_from_potential, Bivector, GeometryError, OneForm, VectorField};
use crate::scalarfield::{gradient, laplacian, Rational, ScalarField};

/// `d(<df, df>) − Δf·df` for the canonical metric.
pub fn equation_e_residual(f: &ScalarField) -> OneForm {
    let grad = gradient(f);
    let squares: Vec<_> = grad.iter().filter(|g| !g.is_zero_literal()).map(|g| g * g).collect();
    let norm_sq = ScalarField::sum(&squares);
    let lap = laplacian(f);
    let d_norm = gradient(&norm_sq);
    OneForm(std::array::from_fn(|i| &d_norm[i] - &lap * &grad[i]))
}

/// `π(df)` for the curl-form bivector of `f`; zero for every `f`, since `f`
/// is a Casimir of its own bivector.
pub fn casimir_field(f: &ScalarField) -> VectorField {
    sharp(&bivector_from_potential(f), &OneForm::exact(f))
}

/// Linear Poisson structure of so(3): `z ∂x∧∂y − y ∂x∧∂z + x ∂y∧∂z`.
pub fn pi_so3() -> Bivector {
    Bivector::new(ScalarField::z(), -ScalarField::y(), ScalarField::x())
}

fn radius_squared() -> ScalarField {
    let sq = |v: ScalarField| ScalarField::powi(&v, 2);
    sq(ScalarField::x()) + sq(ScalarField::y()) + sq(ScalarField::z())
}

/// `(x² + y² + z²)^(3/2)`. Its bivector is `(x²+y²+z²)^(1/2)` times `3·π_so(3)`;
/// it is not twice differentiable at the origin.
pub fn so3_potential() -> ScalarField {
    ScalarField::pow(&radius_squared(), Rational::new(3.into(), 2.into()))
}

/// Exact rational value of a finite `f64`, read through its shortest decimal
/// representation (so `0.1` becomes `1/10`).
fn decimal_rational(v: f64) -> Result<Rational, GeometryError> {
    if !v.is_finite() {
        return Err(GeometryError::NonFiniteParameter(v));
    }
    crate::scalarfield::parse_decimal(&format!("{v}")).ok_or(GeometryError::NonFiniteParameter(v))
}

/// Degree-2 potentials solving `d|df|² = Δf·df`:
/// `(a+c)x² + (a+b)y² + (b+c)z² − 2√(bc)xy + 2√(ab)xz + 2√(ac)yz`,
/// defined when `ab, ac, bc ≥ 0`.
pub fn quadratic_family(a: f64, b: f64, c: f64) -> Result<ScalarField, GeometryError> {
    quadratic_family_exact(&decimal_rational(a)?, &decimal_rational(b)?, &decimal_rational(c)?)
}

pub fn quadratic_family_exact(a: &Rational, b: &Rational, c: &Rational) -> Result<ScalarField, GeometryError> {
    let ab = a * b;
    let ac = a * c;
    let bc = b * c;
    for (pair, v) in [("ab", &ab), ("ac", &ac), ("bc", &bc)] {
        if v.is_negative() {
            return Err(GeometryError::FamilyConstraint { pair, value: v.to_string() });
        }
    }
    let k = |q: Rational| ScalarField::constant(q);
    let two_root = |q: Rational| ScalarField::integer(2) * ScalarField::sqrt(&k(q));
    let (x, y, z) = (ScalarField::x(), ScalarField::y(), ScalarField::z());
    let sq = |v: &ScalarField| ScalarField::powi(v, 2);
    let terms = [
        k(a + c) * sq(&x),
        k(a + b) * sq(&y),
        k(b + c) * sq(&z),
        -(two_root(bc) * &x * &y),
        two_root(ab) * &x * &z,
        two_root(ac) * &y * &z,
    ];
    Ok(ScalarField::sum(&terms))
}
