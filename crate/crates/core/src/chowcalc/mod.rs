//! Codimension-one cohomological Chow groups of the exceptional divisor and of
//! a variety with isolated singularities, from Picard data and the dual
//! complex.

mod data;
mod divisor;
mod mixed;
mod rows;
mod variety;

pub use data::{PicData, ResolutionData};
pub use divisor::{chc1_divisor, DivisorResult};
pub use mixed::{
    Check, DegreeValue, ExactSequence, MixedGroup, Path, Piece, Rule, SequenceReport,
};
pub use rows::{ch1_smooth, pic_row, units_row};
pub use variety::{
    chc1_smooth_2resolution, chc1_surface, chc1_variety, SmoothTwoStep, SmoothTwoStepResult,
    VarietyResult,
};

use thiserror::Error;

use crate::complexes::ComplexError;
use crate::dualcomplex::DualError;
use crate::spectral::{PageEntry, SpectralError};

/// Why no group values were produced: the reason, the hypothesis checklist
/// and whatever part of the E2 page could be computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisFailure {
    pub reason: String,
    pub checklist: Vec<Check>,
    pub e2: Vec<((i64, i64), PageEntry)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChowError {
    #[error("hypotheses not satisfied: {}", .0.reason)]
    HypothesisFailed(Box<HypothesisFailure>),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("Picard row is not a complex: d∘d ≠ 0 starting in degree {degree}")]
    D1NotComplex { degree: i64 },
    #[error("inconsistent input: {0}")]
    Consistency(String),
    #[error("unknown stratum {0}")]
    UnknownStratum(String),
    #[error("no restriction given for {face} -> {coface}")]
    MissingRestriction { face: String, coface: String },
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error(transparent)]
    Dual(#[from] DualError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

impl From<ComplexError> for ChowError {
    fn from(e: ComplexError) -> Self {
        match e {
            ComplexError::NotAComplex { degree } => ChowError::D1NotComplex { degree },
            other => ChowError::Consistency(other.to_string()),
        }
    }
}
