use super::bracket::{directional, j_map, lie_bracket_pi, pairing, sharp};
use super::tensors::WedgeAccumulator;
use super::{bivector_from_potential, Bivector, ChristoffelTable, MetricGram, OneForm, VectorField};
use crate::scalarfield::{Axis, ScalarField};

/// Contravariant Levi-Civita connection `D_α β` of `π` for the canonical metric.
pub fn koszul_connection(pi: &Bivector, alpha: &OneForm, beta: &OneForm) -> OneForm {
    koszul_connection_with(&MetricGram::canonical(), pi, alpha, beta)
}

/// `D_α β` from the Koszul formula
///
/// ```text
/// 2<D_α β, γ> = π(α)<β,γ> + π(β)<α,γ> − π(γ)<α,β>
///             + <[α,β]_π, γ> + <[γ,α]_π, β> + <[γ,β]_π, α>
/// ```
///
/// taken with `γ = dx₁, dx₂, dx₃` and solved against the Gram matrix.
pub fn koszul_connection_with(metric: &MetricGram, pi: &Bivector, alpha: &OneForm, beta: &OneForm) -> OneForm {
    let anchor_alpha = sharp(pi, alpha);
    let anchor_beta = sharp(pi, beta);
    let alpha_beta = metric.inner(alpha, beta);
    let bracket_ab = lie_bracket_pi(pi, alpha, beta);
    let half = ScalarField::ratio(1, 2);

    let rhs: [ScalarField; 3] = std::array::from_fn(|k| {
        let gamma = OneForm::coframe(Axis::from_index(k));
        let terms = [
            directional(&anchor_alpha, &metric.inner(beta, &gamma)),
            directional(&anchor_beta, &metric.inner(alpha, &gamma)),
            -directional(&sharp(pi, &gamma), &alpha_beta),
            metric.inner(&bracket_ab, &gamma),
            metric.inner(&lie_bracket_pi(pi, &gamma, alpha), beta),
            metric.inner(&lie_bracket_pi(pi, &gamma, beta), alpha),
        ];
        &half * ScalarField::sum(&terms)
    });
    metric.raise(rhs)
}

/// Christoffel symbols of the connection of the curl-form bivector of `f`.
pub fn christoffel_table(f: &ScalarField) -> ChristoffelTable {
    christoffel_table_for(&bivector_from_potential(f))
}

/// Christoffel symbols of the canonical-metric connection of any bivector.
pub fn christoffel_table_for(pi: &Bivector) -> ChristoffelTable {
    let coframe = Axis::ALL.map(OneForm::coframe);
    let gamma = std::array::from_fn(|i| std::array::from_fn(|j| koszul_connection(pi, &coframe[i], &coframe[j]).0));
    ChristoffelTable { gamma }
}

/// Modular vector field for the canonical metric, `φʲ = Σᵢ Γᵢⱼⁱ`.
///
/// `φ(h) = Σᵢ <D_{dxᵢ} dh, dxᵢ>` expands to `Σⱼ (Σᵢ Γᵢⱼⁱ) ∂ⱼh` plus
/// `Σᵢₘ πᵢₘ ∂ₘ∂ᵢh`, and the latter vanishes by skew-symmetry of π.
pub fn modular_field(pi: &Bivector) -> VectorField {
    let table = christoffel_table_for(pi);
    VectorField(std::array::from_fn(|j| {
        let diag: Vec<_> = (0..3).map(|i| table.get(i, j, i).clone()).collect();
        ScalarField::sum(&diag)
    }))
}

/// The derivation `h ↦ Σᵢ <D_{dxᵢ} dh, dxᵢ>` evaluated straight from the
/// connection on the one-form `dh`.
pub fn modular_derivation(pi: &Bivector, h: &ScalarField) -> ScalarField {
    let dh = OneForm::exact(h);
    let terms: Vec<_> =
        Axis::ALL.iter().map(|&a| koszul_connection(pi, &OneForm::coframe(a), &dh).0[a.index()].clone()).collect();
    ScalarField::sum(&terms)
}

/// `D_{dxᵢ}π` by the Leibniz rule on `π = Σ πⱼₖ ∂ⱼ∧∂ₖ`, with
/// `D_{dxᵢ}∂ⱼ = Σₘ Γᵢⱼᵐ ∂ₘ` (coframe and frame identified by the metric).
pub fn covariant_derivative_bivector(pi: &Bivector, table: &ChristoffelTable, i: usize) -> Bivector {
    let anchor = sharp(pi, &OneForm::coframe(Axis::from_index(i)));
    let mut acc = WedgeAccumulator::default();
    for (j, k) in [(0, 1), (0, 2), (1, 2)] {
        let coeff = pi.entry(j, k);
        acc.push(directional(&anchor, &coeff), j, k);
        if coeff.is_zero_literal() {
            continue;
        }
        for m in 0..3 {
            acc.push(&coeff * table.get(i, j, m), m, k);
            acc.push(&coeff * table.get(i, k, m), j, m);
        }
    }
    acc.finish()
}

/// `(D_{dx}π, D_{dy}π, D_{dz}π)` for the curl-form bivector of `f`.
pub fn dpi_components(f: &ScalarField) -> [Bivector; 3] {
    let pi = bivector_from_potential(f);
    let table = christoffel_table_for(&pi);
    std::array::from_fn(|i| covariant_derivative_bivector(&pi, &table, i))
}

/// `Dπ(α, β, γ) = π(α)·π(β,γ) − π(D_α β, γ) − π(β, D_α γ)`.
pub fn compatibility_tensor(pi: &Bivector, alpha: &OneForm, beta: &OneForm, gamma: &OneForm) -> ScalarField {
    let d_beta = koszul_connection(pi, alpha, beta);
    let d_gamma = koszul_connection(pi, alpha, gamma);
    directional(&sharp(pi, alpha), &pairing(pi, beta, gamma))
        - pairing(pi, &d_beta, gamma)
        - pairing(pi, beta, &d_gamma)
}

/// Connection of the rescaled bivector `g·π` in closed form,
/// `g·D_α β + ½π(α,β) dg − ½<dg,β> Jα − ½<dg,α> Jβ`.
pub fn scaled_koszul(g: &ScalarField, pi: &Bivector, alpha: &OneForm, beta: &OneForm) -> OneForm {
    let metric = MetricGram::canonical();
    let half = ScalarField::ratio(1, 2);
    let dg = OneForm::exact(g);
    let base = koszul_connection(pi, alpha, beta).scale(g);
    let t1 = dg.scale(&(&half * pairing(pi, alpha, beta)));
    let t2 = j_map(pi, alpha).scale(&(&half * metric.inner(&dg, beta)));
    let t3 = j_map(pi, beta).scale(&(&half * metric.inner(&dg, alpha)));
    base.add(&t1).sub(&t2).sub(&t3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::pi_so3;
    use crate::scalarfield::{is_identically_zero, parse, Point3, SampleSpec};

    fn f(s: &str) -> ScalarField {
        parse(s).unwrap()
    }

    fn zero(e: &ScalarField) -> bool {
        is_identically_zero(e, &SampleSpec::default())
    }

    fn same(a: &OneForm, b: &OneForm) -> bool {
        (0..3).all(|i| zero(&(&a.0[i] - &b.0[i])))
    }

    #[test]
    fn connection_for_xyz_potential() {
        let pi = bivector_from_potential(&f("x*y*z"));
        let dx = OneForm::coframe(Axis::X);
        let d = koszul_connection(&pi, &dx, &dx);
        assert!(same(&d, &OneForm::new(f("0"), f("-y"), f("z"))));
    }

    #[test]
    fn zero_bivector_gives_zero_connection() {
        let a = OneForm::new(f("1"), f("2"), f("-3"));
        let b = OneForm::new(f("0"), f("1/2"), f("5"));
        let d = koszul_connection(&Bivector::zero(), &a, &b);
        assert!(d.0.iter().all(ScalarField::is_zero_literal));
    }

    #[test]
    fn christoffel_examples() {
        let t = christoffel_table(&f("x^2+y^2"));
        assert!(zero(&(t.get(2, 0, 1) - f("2"))));
        let t = christoffel_table(&f("x*y*z"));
        assert!(zero(t.get(0, 1, 2)));
        let t = christoffel_table(&f("3*x - y + 2*z + 7"));
        assert!(t.entries().iter().all(|(_, g)| zero(g)));
    }

    #[test]
    fn metric_compatibility_on_coframe() {
        let t = christoffel_table(&f("x^3*y - 2*y*z^2 + x*z"));
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    assert!(zero(&(t.get(i, j, k) + t.get(i, k, j))), "{i}{j}{k}");
                }
            }
        }
    }

    #[test]
    fn modular_field_vanishes_for_curl_form() {
        let pi = bivector_from_potential(&f("x^2*y - z^3 + x*y*z"));
        assert!(modular_field(&pi).0.iter().all(zero));
        assert!(modular_field(&Bivector::zero()).0.iter().all(ScalarField::is_zero_literal));
    }

    #[test]
    fn modular_field_matches_direct_derivation() {
        let pi = Bivector::new(f("x"), f("0"), f("0"));
        let phi = modular_field(&pi);
        assert!(!phi.0.iter().all(zero));
        for h in ["x^2*y + z", "x*y*z - y^3", "sqrt(1 + x^2 + z^2)"] {
            let h = f(h);
            let via_field = directional(&phi, &h);
            assert!(zero(&(via_field - modular_derivation(&pi, &h))));
        }
    }

    #[test]
    fn dpi_examples() {
        // x^2 + y^2: D_dx π vanishes
        let [dx_pi, _, _] = dpi_components(&f("x^2+y^2"));
        assert!(dx_pi.components().iter().all(|c| zero(c)));
        // r²/2: the ∂x∧∂y coefficient of D_dx π is −y/2
        let [dx_pi, _, _] = dpi_components(&f("(x^2+y^2+z^2)/2"));
        assert!(zero(&(&dx_pi.p12 + f("y/2"))));
        let linear = dpi_components(&f("x - 4*y + z/3"));
        assert!(linear.iter().all(|b| b.components().iter().all(|c| zero(c))));
    }

    #[test]
    fn leibniz_expansion_matches_compatibility_tensor() {
        let pot = f("x^2*z - y*z^2 + x*y");
        let pi = bivector_from_potential(&pot);
        let dpi = dpi_components(&pot);
        for (i, d) in dpi.iter().enumerate() {
            for (j, k) in [(0, 1), (0, 2), (1, 2)] {
                let direct = compatibility_tensor(
                    &pi,
                    &OneForm::coframe(Axis::from_index(i)),
                    &OneForm::coframe(Axis::from_index(j)),
                    &OneForm::coframe(Axis::from_index(k)),
                );
                assert!(zero(&(direct - d.entry(j, k))), "i={i} jk={j}{k}");
            }
        }
    }

    #[test]
    fn unit_scaling_is_identity() {
        let pi = pi_so3();
        let a = OneForm::coframe(Axis::Y);
        let b = OneForm::new(f("x"), f("1"), f("z^2"));
        assert!(same(&scaled_koszul(&f("1"), &pi, &a, &b), &koszul_connection(&pi, &a, &b)));
    }

    #[test]
    fn scaling_with_vanishing_corrections() {
        // g = z, α = dx, β = dx: <dg,dx> = 0 and π(dx,dx) = 0
        let pi = pi_so3();
        let g = f("z");
        let dx = OneForm::coframe(Axis::X);
        let scaled = scaled_koszul(&g, &pi, &dx, &dx);
        assert!(same(&scaled, &koszul_connection(&pi, &dx, &dx).scale(&g)));
    }

    #[test]
    fn scaled_formula_matches_direct_connection() {
        let g = f("x^2+y^2+z^2");
        let pi = pi_so3();
        let gpi = pi.scale(&g);
        let p = Point3::new(0.3, -1.1, 0.7);
        for a in Axis::ALL {
            for b in Axis::ALL {
                let (alpha, beta) = (OneForm::coframe(a), OneForm::coframe(b));
                let lhs = scaled_koszul(&g, &pi, &alpha, &beta).evaluate(&p).unwrap();
                let rhs = koszul_connection(&gpi, &alpha, &beta).evaluate(&p).unwrap();
                for k in 0..3 {
                    assert!((lhs[k] - rhs[k]).abs() < 1e-12);
                }
            }
        }
    }
}
