//! Finitely generated abelian groups, diagonalizable groups and the integer
//! linear algebra behind them.

mod group;
mod lattice;
mod matrix;
mod snf;

pub use group::{DiagGroup, FgAbGroup, PresentedGroup};
pub use lattice::{
    cokernel, cokernels, column_lattice_basis, in_column_lattice, kernel_basis, solve_integer, subquotient,
    tensor_torus, torus_map_ker_coker, Subquotient,
};
pub use matrix::IntMatrix;
pub use snf::{rank, snf, SmithDecomposition};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbelianError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("boundary generators do not lie in the cycle lattice (d∘d ≠ 0)")]
    NotInLattice,
    #[error("non-canonical invariants: {0}")]
    NonCanonical(String),
}
