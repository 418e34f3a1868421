use super::{Bivector, MetricGram, OneForm, Trivector, VectorField};
use crate::scalarfield::{partial, Axis, ScalarField};

/// Directional derivative `X(h) = Σ Xʲ ∂ⱼh`.
pub fn directional(v: &VectorField, h: &ScalarField) -> ScalarField {
    let terms: Vec<_> = Axis::ALL
        .iter()
        .filter(|a| !v.component(**a).is_zero_literal())
        .map(|&a| v.component(a) * partial(h, a))
        .collect();
    ScalarField::sum(&terms)
}

/// Lie derivative of a one-form: `(L_X β)ₖ = Σⱼ Xʲ ∂ⱼβₖ + βⱼ ∂ₖXʲ`.
pub fn lie_derivative(v: &VectorField, beta: &OneForm) -> OneForm {
    OneForm(std::array::from_fn(|k| {
        let ak = Axis::from_index(k);
        let mut terms = vec![directional(v, &beta.0[k])];
        for j in 0..3 {
            if !beta.0[j].is_zero_literal() {
                terms.push(&beta.0[j] * partial(&v.0[j], ak));
            }
        }
        ScalarField::sum(&terms)
    }))
}

/// The anchor `π(α)`, defined by `β[π(α)] = π(α, β)`.
///
/// On the coframe: `π(dx) = p12 ∂y + p13 ∂z`, `π(dy) = −p12 ∂x + p23 ∂z`,
/// `π(dz) = −p13 ∂x − p23 ∂y`.
pub fn sharp(pi: &Bivector, alpha: &OneForm) -> VectorField {
    VectorField(std::array::from_fn(|j| {
        let terms: Vec<_> =
            (0..3).filter(|&i| i != j && !alpha.0[i].is_zero_literal()).map(|i| &alpha.0[i] * pi.entry(i, j)).collect();
        ScalarField::sum(&terms)
    }))
}

/// `π(α, β) = β[π(α)]`.
pub fn pairing(pi: &Bivector, alpha: &OneForm, beta: &OneForm) -> ScalarField {
    let v = sharp(pi, alpha);
    let terms: Vec<_> = (0..3)
        .filter(|&j| !beta.0[j].is_zero_literal() && !v.0[j].is_zero_literal())
        .map(|j| &beta.0[j] * &v.0[j])
        .collect();
    ScalarField::sum(&terms)
}

/// `J` with `π(α, β) = <Jα, β>` for the canonical metric.
pub fn j_map(pi: &Bivector, alpha: &OneForm) -> OneForm {
    j_map_with(&MetricGram::canonical(), pi, alpha)
}

pub fn j_map_with(metric: &MetricGram, pi: &Bivector, alpha: &OneForm) -> OneForm {
    let v = sharp(pi, alpha);
    metric.raise(v.0)
}

/// Koszul bracket of one-forms,
/// `[α, β]_π = L_{π(α)}β − L_{π(β)}α − d(π(α, β))`.
pub fn lie_bracket_pi(pi: &Bivector, alpha: &OneForm, beta: &OneForm) -> OneForm {
    let la = lie_derivative(&sharp(pi, alpha), beta);
    let lb = lie_derivative(&sharp(pi, beta), alpha);
    let d = OneForm::exact(&pairing(pi, alpha, beta));
    la.sub(&lb).sub(&d)
}

/// Coefficient of `[π, π]` on `∂x∧∂y∧∂z` up to a fixed normalisation:
/// `a·c_y + b·c_z + a·b_x − c·b_z − b·a_x − c·a_y` with `(a, b, c) = (p12, p13, p23)`.
/// Vanishes exactly when π satisfies the Jacobi identity.
pub fn jacobiator(pi: &Bivector) -> Trivector {
    let (a, b, c) = (&pi.p12, &pi.p13, &pi.p23);
    let d = |f: &ScalarField, axis| partial(f, axis);
    let terms = [
        a * d(c, Axis::Y),
        b * d(c, Axis::Z),
        a * d(b, Axis::X),
        -(c * d(b, Axis::Z)),
        -(b * d(a, Axis::X)),
        -(c * d(a, Axis::Y)),
    ];
    Trivector(ScalarField::sum(&terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::bivector_from_potential;
    use crate::scalarfield::{is_identically_zero, parse, SampleSpec};

    fn f(s: &str) -> ScalarField {
        parse(s).unwrap()
    }

    fn zero(e: &ScalarField) -> bool {
        is_identically_zero(e, &SampleSpec::default())
    }

    fn dx(a: Axis) -> OneForm {
        OneForm::coframe(a)
    }

    #[test]
    fn sharp_of_dx_for_curl_form() {
        let pot = f("x^2*y + z^3*y - x*y*z");
        let pi = bivector_from_potential(&pot);
        let v = sharp(&pi, &dx(Axis::X));
        assert!(v.0[0].is_zero_literal());
        assert!(zero(&(&v.0[1] - partial(&pot, Axis::Z))));
        assert!(zero(&(&v.0[2] + partial(&pot, Axis::Y))));
    }

    #[test]
    fn sharp_of_zero_bivector() {
        let v = sharp(&Bivector::zero(), &OneForm::new(f("x"), f("y^2"), f("1")));
        assert!(v.0.iter().all(ScalarField::is_zero_literal));
    }

    #[test]
    fn pairing_on_coframe() {
        let pi = Bivector::new(f("x"), f("y"), f("z"));
        assert_eq!(pairing(&pi, &dx(Axis::X), &dx(Axis::Y)), f("x"));
        assert_eq!(pairing(&pi, &dx(Axis::X), &dx(Axis::Z)), f("y"));
        assert_eq!(pairing(&pi, &dx(Axis::Y), &dx(Axis::Z)), f("z"));
        assert!(pairing(&pi, &dx(Axis::X), &dx(Axis::X)).is_zero_literal());
        let pi = bivector_from_potential(&f("x*y*z"));
        assert!(zero(&(pairing(&pi, &dx(Axis::X), &dx(Axis::Y)) - f("x*y"))));
    }

    #[test]
    fn pairing_is_antisymmetric() {
        let pi = Bivector::new(f("x*y"), f("z^2"), f("x-y"));
        let a = OneForm::new(f("y"), f("1"), f("x*z"));
        let b = OneForm::new(f("z"), f("x^2"), f("2"));
        assert!(zero(&(pairing(&pi, &a, &b) + pairing(&pi, &b, &a))));
    }

    #[test]
    fn j_map_examples() {
        let pi = Bivector::new(f("1"), f("0"), f("0"));
        assert_eq!(j_map(&pi, &dx(Axis::X)), dx(Axis::Y));
        assert_eq!(j_map(&pi, &dx(Axis::Z)), OneForm::zero());
        let pi = Bivector::new(f("x*z"), f("y"), f("z^2+1"));
        let inner = MetricGram::canonical().inner(&j_map(&pi, &dx(Axis::X)), &dx(Axis::X));
        assert!(zero(&inner));
    }

    #[test]
    fn bracket_on_coframe_is_differential_of_entry() {
        let pi = Bivector::new(f("x"), f("0"), f("0"));
        let b = lie_bracket_pi(&pi, &dx(Axis::X), &dx(Axis::Y));
        assert!(zero(&(&b.0[0] - f("1"))) && zero(&b.0[1]) && zero(&b.0[2]));
        let self_bracket = lie_bracket_pi(&pi, &dx(Axis::X), &dx(Axis::X));
        assert!(self_bracket.0.iter().all(zero));

        let pot = f("x^2*y*z + y^3 - z*x");
        let pi = bivector_from_potential(&pot);
        let b = lie_bracket_pi(&pi, &dx(Axis::X), &dx(Axis::Y));
        let expected = OneForm::exact(&partial(&pot, Axis::Z));
        for i in 0..3 {
            assert!(zero(&(&b.0[i] - &expected.0[i])));
        }
    }

    #[test]
    fn jacobiator_examples() {
        let pi = Bivector::new(f("1"), f("-x"), f("0"));
        assert_eq!(jacobiator(&pi).0, f("-1"));
        let constant = Bivector::new(f("2"), f("-3"), f("1/2"));
        assert!(jacobiator(&constant).0.is_zero_literal());
        let pi = bivector_from_potential(&f("x^3*y - y*z^2 + x*y*z"));
        assert!(zero(&jacobiator(&pi).0));
    }
}
