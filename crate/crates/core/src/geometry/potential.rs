use super::{Bivector, GeometryError, OneForm};
use crate::scalarfield::poly::Polynomial;
use crate::scalarfield::{partial, zero_test, Axis, Point3, SampleSpec, ScalarField};

/// Curl-form bivector of a potential: `(p12, p13, p23) = (f_z, −f_y, f_x)`.
pub fn bivector_from_potential(f: &ScalarField) -> Bivector {
    Bivector::new(partial(f, Axis::Z), -partial(f, Axis::Y), partial(f, Axis::X))
}

/// The three expressions whose vanishing is equivalent to closedness of
/// `p23 dx − p13 dy + p12 dz`:
/// `(∂p12/∂y + ∂p13/∂z, ∂p12/∂x − ∂p23/∂z, ∂p13/∂x + ∂p23/∂y)`.
pub fn divergence_residuals(pi: &Bivector) -> [ScalarField; 3] {
    let d = |f: &ScalarField, a| partial(f, a);
    [
        d(&pi.p12, Axis::Y) + d(&pi.p13, Axis::Z),
        d(&pi.p12, Axis::X) - d(&pi.p23, Axis::Z),
        d(&pi.p13, Axis::X) + d(&pi.p23, Axis::Y),
    ]
}

/// Potential reconstructed from a curl-form bivector, normalised to vanish at
/// the origin.
#[derive(Clone, Debug, PartialEq)]
pub enum Potential {
    /// Exact antiderivative, available when the components are polynomials.
    Symbolic(ScalarField),
    /// Line integral from the origin, evaluated by quadrature on demand.
    Quadrature(LineIntegral),
}

impl Potential {
    pub fn evaluate(&self, p: &Point3) -> Result<f64, GeometryError> {
        match self {
            Potential::Symbolic(f) => f.evaluate(p).map_err(GeometryError::QuadratureDomain),
            Potential::Quadrature(li) => li.evaluate(p),
        }
    }

    pub fn as_field(&self) -> Option<&ScalarField> {
        match self {
            Potential::Symbolic(f) => Some(f),
            Potential::Quadrature(_) => None,
        }
    }
}

/// `f(p) = ∫₀¹ w(t·p)·p dt` for a closed one-form `w`.
#[derive(Clone, Debug, PartialEq)]
pub struct LineIntegral {
    pub form: OneForm,
    panels: usize,
    nodes: Vec<(f64, f64)>,
}

/// Gauss–Legendre nodes and weights on `[-1, 1]` by Newton iteration on `Pₙ`.
fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

impl LineIntegral {
    pub fn new(form: OneForm) -> Self {
        LineIntegral { form, panels: 8, nodes: gauss_legendre(12) }
    }

    pub fn evaluate(&self, p: &Point3) -> Result<f64, GeometryError> {
        let width = 1.0 / self.panels as f64;
        let mut total = 0.0;
        for panel in 0..self.panels {
            let mid = (panel as f64 + 0.5) * width;
            for &(node, weight) in &self.nodes {
                let t = mid + 0.5 * width * node;
                let w = self.form.evaluate(&p.scaled(t)).map_err(GeometryError::QuadratureDomain)?;
                total += 0.5 * width * weight * (w[0] * p.x + w[1] * p.y + w[2] * p.z);
            }
        }
        Ok(total)
    }
}

/// Recover `f` with `f(0) = 0` and `(p12, p13, p23) = (f_z, −f_y, f_x)`.
///
/// Fails with [`GeometryError::NotClosed`] when the divergence residuals do not
/// vanish under `spec`. Polynomial components are integrated term by term along
/// the segment from the origin; anything else is integrated numerically.
pub fn potential_from_bivector(pi: &Bivector, spec: &SampleSpec) -> Result<Potential, GeometryError> {
    spec.validate()?;
    let residuals = divergence_residuals(pi);
    if !residuals.iter().all(|r| zero_test(r, spec).is_zero) {
        return Err(GeometryError::NotClosed { residuals });
    }
    let form = OneForm::new(pi.p23.clone(), -&pi.p13, pi.p12.clone());
    let polys: Option<Vec<Polynomial>> = form.0.iter().map(ScalarField::to_polynomial).collect();
    match polys {
        Some(p) => {
            let w = [p[0].clone(), p[1].clone(), p[2].clone()];
            Ok(Potential::Symbolic(Polynomial::segment_integral(&w).to_field()))
        }
        None => Ok(Potential::Quadrature(LineIntegral::new(form))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::so3_potential;
    use crate::scalarfield::parse;

    fn f(s: &str) -> ScalarField {
        parse(s).unwrap()
    }

    #[test]
    fn bivector_examples() {
        let pi = bivector_from_potential(&f("x*y*z"));
        assert_eq!(pi.p12.canonical_string(), "x*y");
        assert_eq!(pi.p13.canonical_string(), "-x*z");
        assert_eq!(pi.p23.canonical_string(), "y*z");
        let pi = bivector_from_potential(&f("(x^2+y^2+z^2)/2"));
        assert_eq!([pi.p12.canonical_string(), pi.p13.canonical_string(), pi.p23.canonical_string()], ["z", "-y", "x"]);
        assert_eq!(bivector_from_potential(&f("7/3")), Bivector::zero());
    }

    #[test]
    fn divergence_examples() {
        let r = divergence_residuals(&bivector_from_potential(&f("x^3*y*z - y^2*z^3 + x")));
        assert!(r.iter().all(|c| c.to_polynomial().unwrap().is_zero()));
        let r = divergence_residuals(&Bivector::new(f("x"), f("0"), f("0")));
        assert_eq!(r.map(|c| c.canonical_string()), ["0", "1", "0"].map(String::from));
        let r = divergence_residuals(&Bivector::zero());
        assert!(r.iter().all(ScalarField::is_zero_literal));
    }

    #[test]
    fn polynomial_reconstruction() {
        let spec = SampleSpec::default();
        let pi = Bivector::new(f("x*y"), f("-x*z"), f("y*z"));
        let p = potential_from_bivector(&pi, &spec).unwrap();
        assert_eq!(p.as_field().unwrap().canonical_string(), "x*y*z");
        let pi = Bivector::new(f("z"), f("-y"), f("x"));
        let p = potential_from_bivector(&pi, &spec).unwrap();
        assert_eq!(p.as_field().unwrap().canonical_string(), "(x^2+y^2+z^2)/2");
    }

    #[test]
    fn not_closed() {
        let pi = Bivector::new(f("x"), f("0"), f("0"));
        match potential_from_bivector(&pi, &SampleSpec::default()) {
            Err(GeometryError::NotClosed { residuals }) => {
                assert_eq!(residuals[1], f("1"));
            }
            other => panic!("expected NotClosed, got {other:?}"),
        }
    }

    #[test]
    fn quadrature_reconstruction_of_radial_cubic() {
        let pi = bivector_from_potential(&so3_potential());
        let pot = potential_from_bivector(&pi, &SampleSpec::default()).unwrap();
        assert!(pot.as_field().is_none());
        for p in [Point3::new(1.0, 0.0, 0.0), Point3::new(0.3, -1.2, 0.8), Point3::new(-2.0, 2.0, 1.0)] {
            let expected = so3_potential().evaluate(&p).unwrap();
            let got = pot.evaluate(&p).unwrap();
            assert!((got - expected).abs() <= 1e-12 * expected.max(1.0), "{got} vs {expected}");
        }
        assert_eq!(pot.evaluate(&Point3::origin()).unwrap(), 0.0);
    }

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let nodes = gauss_legendre(12);
        // ∫₋₁¹ x²² dx = 2/23
        let s: f64 = nodes.iter().map(|(x, w)| w * x.powi(22)).sum();
        assert!((s - 2.0 / 23.0).abs() < 1e-14);
        let total: f64 = nodes.iter().map(|(_, w)| w).sum();
        assert!((total - 2.0).abs() < 1e-14);
    }
}
