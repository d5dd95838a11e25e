//! Depth computations for subalgebra pairs.
//!
//! The crate computes minimum odd depth and h-depth of semisimple inclusions
//! from their inclusion matrices, Burnside-ring upper bounds for subgroup
//! pairs, and exact module depth of the generalized permutation module
//! `V = H / R^+ H` for explicit finite-dimensional Hopf algebras.

pub mod error;
pub mod burnside;
pub mod cli;
pub mod exact_matrix;
pub mod hochschild;
pub mod hopf;
pub mod matrix_depth;
pub mod perm_group;
pub mod report;
pub mod scalars;

pub use error::{DepthError, Result};
