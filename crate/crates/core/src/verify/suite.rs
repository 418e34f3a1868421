use super::{evaluate_check, CheckResult, Report, Verdict};
use crate::geometry::{
    bivector_from_potential, casimir_field, divergence_residuals, dpi_components, equation_e_residual, jacobiator,
    modular_field,
};
use crate::scalarfield::{zero_test, SampleError, SampleSpec, ScalarField};

/// Names of the six checks, in report order.
pub const CHECK_NAMES: [&str; 6] = ["equation_E", "dpi", "modular", "jacobi", "casimir", "divergence"];

/// Run every residual check on `f` and its curl-form bivector.
pub fn run_suite(f: &ScalarField, spec: &SampleSpec) -> Result<Report, SampleError> {
    let points = spec.points()?;
    let pi = bivector_from_potential(f);

    let dpi: Vec<ScalarField> = dpi_components(f).into_iter().flat_map(|b| [b.p12, b.p13, b.p23]).collect();
    let suites: [(&str, Vec<ScalarField>); 6] = [
        ("equation_E", equation_e_residual(f).0.to_vec()),
        ("dpi", dpi),
        ("modular", modular_field(&pi).0.to_vec()),
        ("jacobi", vec![jacobiator(&pi).0]),
        ("casimir", casimir_field(f).0.to_vec()),
        ("divergence", divergence_residuals(&pi).to_vec()),
    ];
    let checks: Vec<CheckResult> =
        suites.iter().map(|(name, comps)| evaluate_check(name, comps, &points, spec)).collect();

    let degenerate = pi.components().iter().all(|c| zero_test(c, spec).is_zero);
    let verdict = if degenerate {
        Verdict::DegenerateZero
    } else if checks.iter().any(|c| !c.passed && !c.is_inconclusive()) {
        Verdict::Incompatible
    } else if checks.iter().any(CheckResult::is_inconclusive) {
        Verdict::Inconclusive
    } else {
        Verdict::Compatible
    };

    Ok(Report { potential: f.canonical_string(), spec: spec.clone(), checks, verdict })
}
