//! Numerical verification of the braided quantum E(2) operator identities.
//!
//! Operators on ℓ²(ℤ^d) are finite sums of affine monomial terms
//! e_x ↦ c(x)·e_{Ax+b}; identities are checked by residuals on probe vectors.

pub mod config;
pub mod constructions;
pub mod lattice;
pub mod qexp;
pub mod qparam;
pub mod shiftop;
pub mod verify;

pub use lattice::{basis_vector, inner, interior, LatticeIndex, StateVector, Window};
pub use qparam::QParam;
pub use shiftop::{OpChain, ShiftOperator};
