use super::{evaluate_check, CheckResult};
use crate::geometry::{dpi_components, equation_e_residual, quadratic_family};
use crate::scalarfield::{SampleError, SampleSpec, ScalarField};

/// Per-field outcome of the equivalence harness.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceRow {
    pub name: String,
    pub e_passed: bool,
    pub dpi_passed: bool,
}

impl EquivalenceRow {
    pub fn agrees(&self) -> bool {
        self.e_passed == self.dpi_passed
    }
}

/// Decide equation E and Dπ = 0 separately for each field on the same sample set.
pub fn theorem_equivalence_check(fs: &[ScalarField], spec: &SampleSpec) -> Result<Vec<EquivalenceRow>, SampleError> {
    let points = spec.points()?;
    Ok(fs
        .iter()
        .map(|f| {
            let e = evaluate_check("equation_E", &equation_e_residual(f).0, &points, spec);
            let dpi: Vec<ScalarField> = dpi_components(f).into_iter().flat_map(|b| [b.p12, b.p13, b.p23]).collect();
            let d = evaluate_check("dpi", &dpi, &points, spec);
            EquivalenceRow { name: f.canonical_string(), e_passed: e.passed, dpi_passed: d.passed }
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq)]
pub enum SweepOutcome {
    /// The equation E residual of the family member, decided by exact expansion.
    /// `threshold` is zero, so `passed` means the residual is the zero polynomial.
    Checked { potential: String, result: CheckResult },
    /// All parameters zero: the member is the zero polynomial.
    Degenerate,
    /// Parameters outside the family's domain.
    Rejected(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepEntry {
    pub params: (f64, f64, f64),
    pub outcome: SweepOutcome,
}

impl SweepEntry {
    pub fn passed(&self) -> bool {
        matches!(&self.outcome, SweepOutcome::Checked { result, .. } if result.passed)
    }
}

/// Build each family member and decide its equation E residual exactly.
///
/// Non-polynomial residuals cannot occur for family members; the sampled
/// maximum is still reported so that a nonzero residual shows its size.
pub fn sweep_quadratic(grid: &[(f64, f64, f64)], spec: &SampleSpec) -> Result<Vec<SweepEntry>, SampleError> {
    let points = spec.points()?;
    Ok(grid
        .iter()
        .map(|&(a, b, c)| {
            let outcome = match quadratic_family(a, b, c) {
                Err(e) => SweepOutcome::Rejected(e.to_string()),
                Ok(f) if f.to_polynomial().is_some_and(|p| p.is_zero()) => SweepOutcome::Degenerate,
                Ok(f) => {
                    let residual = equation_e_residual(&f);
                    let exact_zero = residual.0.iter().all(|c| c.to_polynomial().is_some_and(|p| p.is_zero()));
                    let sampled = evaluate_check("equation_E", &residual.0, &points, spec);
                    let result = CheckResult {
                        threshold: 0.0,
                        passed: exact_zero && sampled.max_abs_residual == 0.0,
                        ..sampled
                    };
                    SweepOutcome::Checked { potential: f.canonical_string(), result }
                }
            };
            SweepEntry { params: (a, b, c), outcome }
        })
        .collect())
}
