use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use super::snf::SmithDecomposition;
use super::AbelianError;

/// Isomorphism class of a finitely generated abelian group:
/// `Z^free_rank + Z/d1 + ... + Z/dk` with `2 <= d1 | d2 | ... | dk`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FgAbGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FgAbGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(order: i64) -> Self {
        Self::from_cyclic_orders(0, &[BigInt::from(order)])
    }

    /// Canonical form of `Z^free_rank + Z/n1 + Z/n2 + ...` for arbitrary cyclic
    /// orders. An order of 0 contributes a free summand, orders of +-1 vanish.
    pub fn from_cyclic_orders(free_rank: usize, orders: &[BigInt]) -> Self {
        let diag = {
            let n = orders.len();
            let mut m = IntMatrix::zeros(n, n);
            for (i, o) in orders.iter().enumerate() {
                m[(i, i)] = o.clone();
            }
            m
        };
        let mut g = invariants_of_cokernel(&diag);
        g.free_rank += free_rank;
        g
    }

    /// Validates an already-canonical description.
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self, AbelianError> {
        for (i, d) in torsion.iter().enumerate() {
            if d < &BigInt::from(2) {
                return Err(AbelianError::NonCanonical(format!(
                    "torsion coefficient {d} is below 2"
                )));
            }
            if let Some(next) = torsion.get(i + 1) {
                if !(next % d).is_zero() {
                    return Err(AbelianError::NonCanonical(format!(
                        "{d} does not divide {next}"
                    )));
                }
            }
        }
        Ok(FgAbGroup { free_rank, torsion })
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().fold(BigInt::one(), |acc, d| acc * d)
    }

    pub fn torsion_part(&self) -> FgAbGroup {
        FgAbGroup {
            free_rank: 0,
            torsion: self.torsion.clone(),
        }
    }

    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        let orders: Vec<BigInt> = self.torsion.iter().chain(&other.torsion).cloned().collect();
        FgAbGroup::from_cyclic_orders(self.free_rank + other.free_rank, &orders)
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// A diagonalizable group `(C*)^torus_rank x finite`, recorded through the
/// invariants of its character lattice.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DiagGroup {
    torus_rank: usize,
    finite: FgAbGroup,
}

impl DiagGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn torus(rank: usize) -> Self {
        DiagGroup {
            torus_rank: rank,
            finite: FgAbGroup::trivial(),
        }
    }

    pub fn new(torus_rank: usize, finite: FgAbGroup) -> Result<Self, AbelianError> {
        if finite.free_rank() != 0 {
            return Err(AbelianError::NonCanonical(
                "finite part of a diagonalizable group must have free rank 0".into(),
            ));
        }
        Ok(DiagGroup { torus_rank, finite })
    }

    pub fn torus_rank(&self) -> usize {
        self.torus_rank
    }

    pub fn finite(&self) -> &FgAbGroup {
        &self.finite
    }

    pub fn is_trivial(&self) -> bool {
        self.torus_rank == 0 && self.finite.is_trivial()
    }

    pub fn direct_sum(&self, other: &DiagGroup) -> DiagGroup {
        DiagGroup {
            torus_rank: self.torus_rank + other.torus_rank,
            finite: self.finite.direct_sum(&other.finite),
        }
    }
}

impl fmt::Display for DiagGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if !self.finite.is_trivial() {
            parts.push(self.finite.to_string());
        }
        if self.torus_rank > 0 {
            parts.push(format!("(C*)^{}", self.torus_rank));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// `Z^generators / (column span of relations)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedGroup {
    generators: usize,
    relations: IntMatrix,
}

impl PresentedGroup {
    pub fn new(generators: usize, relations: IntMatrix) -> Result<Self, AbelianError> {
        if relations.rows() != generators {
            return Err(AbelianError::ShapeMismatch(format!(
                "relation matrix has {} rows but the presentation has {} generators",
                relations.rows(),
                generators
            )));
        }
        Ok(PresentedGroup {
            generators,
            relations,
        })
    }

    pub fn free(rank: usize) -> Self {
        PresentedGroup {
            generators: rank,
            relations: IntMatrix::zeros(rank, 0),
        }
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    /// A presentation realizing the given invariants.
    pub fn from_invariants(g: &FgAbGroup) -> Self {
        let n = g.free_rank() + g.torsion().len();
        let mut rel = IntMatrix::zeros(n, g.torsion().len());
        for (k, d) in g.torsion().iter().enumerate() {
            rel[(g.free_rank() + k, k)] = d.clone();
        }
        PresentedGroup {
            generators: n,
            relations: rel,
        }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn invariants(&self) -> FgAbGroup {
        invariants_of_cokernel(&self.relations)
    }

    pub fn direct_sum(parts: &[PresentedGroup]) -> PresentedGroup {
        let rels: Vec<IntMatrix> = parts.iter().map(|p| p.relations.clone()).collect();
        PresentedGroup {
            generators: parts.iter().map(|p| p.generators).sum(),
            relations: IntMatrix::block_diagonal(&rels),
        }
    }
}

pub(crate) fn invariants_of_cokernel(m: &IntMatrix) -> FgAbGroup {
    let s = SmithDecomposition::compute(m);
    let torsion: Vec<BigInt> = s
        .invariant_factors()
        .into_iter()
        .filter(|d| !d.abs().is_one())
        .collect();
    FgAbGroup {
        free_rank: m.rows() - s.rank,
        torsion,
    }
}
