//! E1 and E2 pages of the spectral sequence of a fourth-quadrant double
//! complex, and the abutment of two-row pages.

mod abutment;
mod page;

pub use abutment::{two_row_abutment, AbutmentReport, Caveat, GradedPiece};
pub use page::{e1_page, e1_page_with, e2_page, e2_page_with, finite_order_product, Page, PageEntry, RowKind};

use thiserror::Error;

use crate::complexes::ComplexError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error("expected an E{expected} page, got E{found}")]
    WrongPage { expected: u8, found: u8 },
    #[error("row {q} carries nonzero entries; only rows 0 and -1 are supported")]
    NotTwoRow { q: i64 },
    #[error("nonzero entry in column {p}, outside 0..{dimension}")]
    BeyondDimension { p: i64, dimension: usize },
    #[error("row {q} lies outside the fourth quadrant")]
    OutsideQuadrant { q: i64 },
    #[error("row {q} given twice")]
    DuplicateRow { q: i64 },
    #[error("torus row {q} must consist of free lattices")]
    TorusRowNotFree { q: i64 },
    #[error("internal inconsistency: {0}")]
    Internal(&'static str),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}
