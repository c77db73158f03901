use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::abelian::{solve_integer, IntMatrix};
use crate::complexes::CochainComplex;

use super::page::{Lifts, Page, PageEntry, RowKind};
use super::SpectralError;

/// One filtration quotient of an abutment, with the page position it comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPiece {
    pub p: i64,
    pub q: i64,
    pub entry: PageEntry,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Caveat {
    /// `d2` out of `(p, 0)` could be nonzero and no lift data was available.
    Indeterminate { p: i64 },
    /// `d2` out of `(p, 0)` was computed through the double complex.
    D2Computed { p: i64, zero: bool },
}

impl fmt::Display for Caveat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Caveat::Indeterminate { p } => write!(
                f,
                "d2 from ({p},0) to ({},-1) may be nonzero; the affected degrees are indeterminate",
                p + 2
            ),
            Caveat::D2Computed { p, zero: true } => {
                write!(f, "d2 from ({p},0) to ({},-1) computed explicitly: zero", p + 2)
            }
            Caveat::D2Computed { p, zero: false } => write!(
                f,
                "d2 from ({p},0) to ({},-1) computed explicitly: nonzero, E3 used",
                p + 2
            ),
        }
    }
}

/// Graded pieces of the abutment of a two-row page, keyed by total degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbutmentReport {
    /// Pieces listed from the deepest filtration step: `[(n+1, -1), (n, 0)]`.
    /// Degrees touched by an indeterminate `d2` are absent.
    pub degrees: BTreeMap<i64, Vec<GradedPiece>>,
    /// True when every `d2` vanishes, i.e. `E2 = E∞`.
    pub degenerate: bool,
    /// True when every degree could be determined.
    pub resolved: bool,
    pub caveats: Vec<Caveat>,
    pub e2: Vec<((i64, i64), PageEntry)>,
}

impl AbutmentReport {
    pub fn pieces(&self, n: i64) -> Option<&[GradedPiece]> {
        self.degrees.get(&n).map(Vec::as_slice)
    }

    /// Sum of free ranks over the discrete pieces in degree `n`.
    pub fn discrete_rank(&self, n: i64) -> Option<usize> {
        self.sum_over(n, RowKind::Discrete, |e| e.rank())
    }

    /// Sum of torus ranks over the torus pieces in degree `n`.
    pub fn torus_rank(&self, n: i64) -> Option<usize> {
        self.sum_over(n, RowKind::Torus, |e| e.rank())
    }

    /// Product of the finite-part orders of all pieces in degree `n`.
    pub fn finite_order(&self, n: i64) -> Option<BigInt> {
        let pieces = self.pieces(n)?;
        Some(
            pieces
                .iter()
                .fold(BigInt::one(), |acc, g| acc * g.entry.finite_order()),
        )
    }

    /// True when degree `n` is known and all its pieces are trivial.
    pub fn is_trivial_in(&self, n: i64) -> Option<bool> {
        self.pieces(n)
            .map(|ps| ps.iter().all(|g| g.entry.is_trivial()))
    }

    fn sum_over(&self, n: i64, kind: RowKind, f: impl Fn(&PageEntry) -> usize) -> Option<usize> {
        let pieces = self.pieces(n)?;
        Some(
            pieces
                .iter()
                .filter(|g| match kind {
                    RowKind::Discrete => g.entry.as_discrete().is_some(),
                    RowKind::Torus => g.entry.as_torus().is_some(),
                })
                .map(|g| f(&g.entry))
                .sum(),
        )
    }
}

/// Abutment of an E2 page supported on rows `q = 0` and `q = -1` with
/// `0 <= p < dimension`.
///
/// A `d2: E2(p,0) -> E2(p+2,-1)` with trivial source or target vanishes. Any
/// other `d2` is computed by a zig-zag through the double complex when the
/// page came from one; otherwise the degrees it touches are reported as
/// indeterminate.
pub fn two_row_abutment(p2: &Page, dimension: usize) -> Result<AbutmentReport, SpectralError> {
    if p2.index() != 2 {
        return Err(SpectralError::WrongPage {
            expected: 2,
            found: p2.index(),
        });
    }
    let e2 = p2.entries();
    for ((p, q), e) in &e2 {
        if e.is_trivial() {
            continue;
        }
        if *q != 0 && *q != -1 {
            return Err(SpectralError::NotTwoRow { q: *q });
        }
        if *p < 0 || *p >= dimension as i64 {
            return Err(SpectralError::BeyondDimension { p: *p, dimension });
        }
    }

    let Some((pmin, pmax)) = p2.p_bounds() else {
        return Ok(AbutmentReport {
            degrees: BTreeMap::new(),
            degenerate: true,
            resolved: true,
            caveats: Vec::new(),
            e2,
        });
    };

    let mut infinity: BTreeMap<(i64, i64), PageEntry> = BTreeMap::new();
    let mut unknown: BTreeSet<(i64, i64)> = BTreeSet::new();
    let mut caveats = Vec::new();
    let mut degenerate = true;

    for p in pmin..=pmax {
        let src = p2.entry(p, 0);
        let tgt = p2.entry(p + 2, -1);
        if src.is_trivial() || tgt.is_trivial() {
            continue;
        }
        let explicit = match (&p2.lifts, p2.row_kind(0), p2.row_kind(-1)) {
            (Some(lifts), Some(RowKind::Discrete), Some(RowKind::Discrete)) => {
                Some(explicit_d2(p2, lifts, p)?)
            }
            _ => None,
        };
        let Some(d2) = explicit else {
            degenerate = false;
            caveats.push(Caveat::Indeterminate { p });
            unknown.insert((p, 0));
            unknown.insert((p + 2, -1));
            continue;
        };
        let zero = d2.is_zero();
        caveats.push(Caveat::D2Computed { p, zero });
        if zero {
            continue;
        }
        degenerate = false;
        let a = p2.second_data(p, 0).expect("nontrivial entry has E2 data");
        let b = p2.second_data(p + 2, -1).expect("nontrivial entry has E2 data");
        let two_term = CochainComplex::new(0, vec![a.as_presented(), b.as_presented()], vec![d2])
            .map_err(|_| SpectralError::Internal("d2 does not respect E2 relations"))?;
        infinity.insert((p, 0), PageEntry::Discrete(two_term.cohomology(0)));
        infinity.insert((p + 2, -1), PageEntry::Discrete(two_term.cohomology(1)));
    }

    let mut degrees = BTreeMap::new();
    for n in (pmin - 1)..=pmax {
        let positions = [(n + 1, -1), (n, 0)];
        if positions.iter().any(|pq| unknown.contains(pq)) {
            continue;
        }
        let pieces = positions
            .iter()
            .map(|&(p, q)| GradedPiece {
                p,
                q,
                entry: infinity
                    .get(&(p, q))
                    .cloned()
                    .unwrap_or_else(|| p2.entry(p, q)),
            })
            .collect();
        degrees.insert(n, pieces);
    }

    Ok(AbutmentReport {
        degrees,
        degenerate,
        resolved: unknown.is_empty(),
        caveats,
        e2,
    })
}

/// `d2: E2(p,0) -> E2(p+2,-1)` on E2 cycle coordinates.
///
/// A class is lifted to `a` in `D(p,0)`; `h a` is a vertical boundary `v b`
/// modulo relations, and `d2 [a] = [h b]`.
fn explicit_d2(page: &Page, lifts: &Lifts, p: i64) -> Result<IntMatrix, SpectralError> {
    let internal = SpectralError::Internal;
    let d = &lifts.double;
    let s0 = page.second_data(p, 0).ok_or(internal("missing E2 data at source"))?;
    let s2 = page
        .second_data(p + 2, -1)
        .ok_or(internal("missing E2 data at target"))?;
    let vert0 = lifts
        .vertical
        .get(&(p, 0))
        .ok_or(internal("missing vertical data at source"))?;
    let vert2 = lifts
        .vertical
        .get(&(p + 2, -1))
        .ok_or(internal("missing vertical data at target"))?;

    let a = vert0.lift(&s0.lift(&IntMatrix::identity(s0.coordinate_dim())));
    let ha = &d.h(p, 0) * &a;
    let bounding = d.v(p + 1, -1).hstack(d.entry(p + 1, 0).relations());
    let x = solve_integer(&bounding, &ha).ok_or(internal("E2 class has no zig-zag lift"))?;
    let b = x.submatrix(0..d.generators(p + 1, -1), 0..x.cols());
    let hb = &d.h(p + 1, -1) * &b;
    let e1 = vert2
        .coordinates_of(&hb)
        .ok_or(internal("zig-zag image is not a vertical cycle"))?;
    s2.coordinates_of(&e1)
        .ok_or(internal("zig-zag image is not a d1 cycle"))
}
