//! Tensor fields on R³ and the contravariant Levi-Civita connection of a
//! bivector against a constant metric on the cotangent bundle.
//!
//! Components are [`ScalarField`]s throughout, so every construction here is
//! exact and symbolic; numerical judgement happens only when a caller zero-tests
//! or samples the result.

mod bracket;
mod connection;
mod families;
mod potential;
mod tensors;

use thiserror::Error;

use crate::scalarfield::{EvalError, SampleError, ScalarField};

pub use bracket::{directional, j_map, j_map_with, jacobiator, lie_bracket_pi, lie_derivative, pairing, sharp};
pub use connection::{
    christoffel_table, christoffel_table_for, compatibility_tensor, covariant_derivative_bivector, dpi_components,
    koszul_connection, koszul_connection_with, modular_derivation, modular_field, scaled_koszul,
};
pub use families::{
    casimir_field, equation_e_residual, pi_so3, quadratic_family, quadratic_family_exact, so3_potential,
};
pub use potential::{bivector_from_potential, divergence_residuals, potential_from_bivector, LineIntegral, Potential};
pub use tensors::{Bivector, ChristoffelTable, MetricGram, OneForm, Trivector, VectorField};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("family parameters violate ab, ac, bc >= 0: {pair} = {value}")]
    FamilyConstraint { pair: &'static str, value: String },
    #[error("family parameter {0} is not a finite real")]
    NonFiniteParameter(f64),
    #[error("bivector is not of curl form: divergence residuals ({}, {}, {}) do not vanish", .residuals[0], .residuals[1], .residuals[2])]
    NotClosed { residuals: [ScalarField; 3] },
    #[error("line integral left the validity domain: {0}")]
    QuadratureDomain(EvalError),
    #[error(transparent)]
    Sample(#[from] SampleError),
    #[error("metric Gram matrix must be symmetric positive definite")]
    BadMetric,
}
