//! Bounded cochain complexes of presented groups, mapping cones and
//! totalization of double complexes.

mod cochain;
mod double;

pub use cochain::{mapping_cone, ChainMap, CochainComplex};
pub use double::{total_complex, DoubleComplex, DoubleComplexBuilder};
pub(crate) use cochain::sign;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("d∘d ≠ 0 starting in degree {degree}")]
    NotAComplex { degree: i64 },
    #[error("map in degree {degree} does not respect the relations of its source")]
    NotWellDefined { degree: i64 },
    #[error("map at ({p},{q}) does not respect the relations of its source")]
    NotWellDefinedAt { p: i64, q: i64 },
    #[error("components do not commute with the differentials in degree {degree}")]
    NotAChainMap { degree: i64 },
    #[error("invalid double complex at ({p},{q}): {reason}")]
    NotADoubleComplex { p: i64, q: i64, reason: &'static str },
    #[error("torus cohomology needs a complex of free lattices")]
    NotFree,
    #[error("entry at ({p},{q}) lies outside the fourth quadrant")]
    OutsideQuadrant { p: i64, q: i64 },
}
