//! Truncated K-group presentations for diagonal two-generator actions on
//! a clopen-basis Cantor factor times the free-group boundary.
//!
//! The direct presentation lives on tensor generators (clopen basis times
//! boundary cylinders) with one relation per basis element and generator
//! letter; the reduced presentation lives on two clopen coordinates. Both
//! feed the exact machinery in [`crate::zlattice`], and
//! [`reduction::verify_reduction`] spot-checks that the maps between them
//! send relations to relations.

pub mod model;
pub mod presentation;
pub mod reduction;
pub mod report;
pub mod tensor;

pub use model::{DiagonalActionModel, KtheoryError, PartialMap};
pub use presentation::{
    example16_quotient, example16_relations, m_vector, pv_k0_direct, pv_k0_reduced, pv_k1_kernel,
    stabilization_sweep, K1Result, SweepRow, SweepTable, ZetaColumn,
};
pub use reduction::{
    gamma_map, phi_map, phi_tensor, psi_map, quad_relation_matrix, theta_map, verify_reduction,
    CheckResult, PairVector, QuadVector, VerifyReport,
};
pub use report::{KReport, ModelDesc, SweepReport};
