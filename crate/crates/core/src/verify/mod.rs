//! Residual suites, the equation E ⟺ Dπ = 0 equivalence harness, the quadratic family
//! sweep, and the finite-difference cross-check.

mod oracle;
mod suite;
mod sweep;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::scalarfield::{Point3, SampleSpec, ScalarField};

pub use oracle::{convergence_order, cross_check, CrossCheck, ORDER_STEPS};
pub use suite::{run_suite, CHECK_NAMES};
pub use sweep::{sweep_quadratic, theorem_equivalence_check, EquivalenceRow, SweepEntry, SweepOutcome};

/// Fraction of points that may fail to evaluate before a check stops being
/// conclusive.
pub const INCONCLUSIVE_FRACTION: f64 = 0.01;

/// Outcome of one residual check over a sample set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub max_abs_residual: f64,
    pub points_tested: usize,
    pub threshold: f64,
    pub passed: bool,
    /// Points skipped because some residual component could not be evaluated.
    #[serde(skip, default)]
    pub domain_failures: usize,
}

impl CheckResult {
    /// True when too many points failed to evaluate for the result to count.
    pub fn is_inconclusive(&self) -> bool {
        let total = self.points_tested + self.domain_failures;
        total == 0 || self.domain_failures as f64 > INCONCLUSIVE_FRACTION * total as f64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Compatible,
    Incompatible,
    DegenerateZero,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Compatible => "compatible",
            Verdict::Incompatible => "incompatible",
            Verdict::DegenerateZero => "degenerate-zero",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    /// Process exit status for this verdict.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Compatible => 0,
            Verdict::Incompatible => 1,
            Verdict::DegenerateZero => 2,
            Verdict::Inconclusive => 3,
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Full result of [`run_suite`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub potential: String,
    pub spec: SampleSpec,
    pub checks: Vec<CheckResult>,
    pub verdict: Verdict,
}

impl Report {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Replace polynomial residuals by their expanded form, so that exact
/// cancellations evaluate to exactly zero.
pub(crate) fn normalise(e: &ScalarField) -> ScalarField {
    match e.to_polynomial() {
        Some(p) => p.to_field(),
        None => e.clone(),
    }
}

/// Evaluate the residual components at every point and aggregate.
///
/// A point counts only if every component and its magnitude evaluate there.
pub(crate) fn evaluate_check(
    name: &str,
    components: &[ScalarField],
    points: &[Point3],
    spec: &SampleSpec,
) -> CheckResult {
    let components: Vec<ScalarField> = components.iter().map(normalise).collect();
    let per_point: Vec<Option<(f64, f64)>> = points
        .par_iter()
        .map(|p| {
            let mut residual: f64 = 0.0;
            let mut scale: f64 = 0.0;
            for c in &components {
                let v = c.evaluate(p).ok()?;
                let m = c.magnitude(p).ok()?;
                residual = residual.max(v.abs());
                scale = scale.max(m);
            }
            Some((residual, scale))
        })
        .collect();
    let mut max_abs: f64 = 0.0;
    let mut max_scale: f64 = 0.0;
    let mut tested = 0;
    let mut failures = 0;
    for entry in per_point {
        match entry {
            Some((r, s)) => {
                tested += 1;
                max_abs = max_abs.max(r);
                max_scale = max_scale.max(s);
            }
            None => failures += 1,
        }
    }
    let threshold = spec.threshold(max_scale);
    CheckResult {
        name: name.to_string(),
        max_abs_residual: max_abs,
        points_tested: tested,
        threshold,
        passed: max_abs <= threshold,
        domain_failures: failures,
    }
}
