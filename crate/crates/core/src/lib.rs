//! Poisson structures on R³ compatible with the canonical metric.
//!
//! The crate is organised in three layers:
//!
//! * [`scalarfield`]: expression trees over `x, y, z` with parsing, exact
//!   symbolic differentiation, exact polynomial zero-testing and a
//!   central-difference oracle.
//! * [`geometry`]: bivectors, the contravariant Levi-Civita connection of a
//!   bivector against a constant metric, its Christoffel symbols, the modular
//!   field, the compatibility tensor `Dπ`, the PDE `d|df|² − Δf·df = 0` (equation E), the
//!   Schouten jacobiator and the two families of compatible potentials.
//! * [`verify`]: sampled residual suites and JSON-serialisable reports.
//!
//! ```
//! use riemann_poisson::geometry::christoffel_table;
//! use riemann_poisson::verify::run_suite;
//! use riemann_poisson::{parse, SampleSpec, Verdict};
//!
//! let f = parse("(x^2+y^2+z^2)^(3/2)").unwrap();
//! let report = run_suite(&f, &SampleSpec::default()).unwrap();
//! assert_eq!(report.verdict, Verdict::Compatible);
//!
//! let table = christoffel_table(&parse("x*y*z").unwrap());
//! assert_eq!(table.get(0, 0, 1).canonical_string(), "-y");
//! ```

pub mod geometry;
pub mod scalarfield;
pub mod verify;

pub use geometry::{Bivector, ChristoffelTable, MetricGram, OneForm, Trivector, VectorField};
pub use scalarfield::{parse, Axis, Point3, Rational, SampleSpec, ScalarField};
pub use verify::{CheckResult, Report, Verdict};
