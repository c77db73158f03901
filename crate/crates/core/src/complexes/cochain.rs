use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::abelian::{
    in_column_lattice, kernel_basis, subquotient, DiagGroup, FgAbGroup, IntMatrix,
    PresentedGroup, Subquotient,
};
use crate::par;

use super::ComplexError;

/// A bounded cochain complex of presented abelian groups.
///
/// Term `t` lives at `min_degree + i` for index `i`; `differentials[i]` is the
/// matrix of `d^t: term_t -> term_{t+1}` on generators. Outside the band every
/// term is the zero group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    min_degree: i64,
    terms: Vec<PresentedGroup>,
    differentials: Vec<IntMatrix>,
}

impl CochainComplex {
    /// Validates shapes, compatibility with relations and `d∘d = 0`.
    pub fn new(
        min_degree: i64,
        terms: Vec<PresentedGroup>,
        differentials: Vec<IntMatrix>,
    ) -> Result<Self, ComplexError> {
        if differentials.len() != terms.len().saturating_sub(1) {
            return Err(ComplexError::Shape(format!(
                "{} terms need {} differentials, got {}",
                terms.len(),
                terms.len().saturating_sub(1),
                differentials.len()
            )));
        }
        let c = CochainComplex {
            min_degree,
            terms,
            differentials,
        };
        c.validate()?;
        Ok(c)
    }

    /// Complex of free lattices `Z^{ranks[i]}`.
    pub fn free(
        min_degree: i64,
        ranks: &[usize],
        differentials: Vec<IntMatrix>,
    ) -> Result<Self, ComplexError> {
        Self::new(
            min_degree,
            ranks.iter().map(|&r| PresentedGroup::free(r)).collect(),
            differentials,
        )
    }

    pub fn zero() -> Self {
        CochainComplex {
            min_degree: 0,
            terms: Vec::new(),
            differentials: Vec::new(),
        }
    }

    /// A single group in one degree.
    pub fn concentrated(degree: i64, group: PresentedGroup) -> Self {
        CochainComplex {
            min_degree: degree,
            terms: vec![group],
            differentials: Vec::new(),
        }
    }

    fn validate(&self) -> Result<(), ComplexError> {
        for (i, d) in self.differentials.iter().enumerate() {
            let t = self.min_degree + i as i64;
            let (src, tgt) = (&self.terms[i], &self.terms[i + 1]);
            if d.shape() != (tgt.generators(), src.generators()) {
                return Err(ComplexError::Shape(format!(
                    "d^{t} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    tgt.generators(),
                    src.generators()
                )));
            }
            if !in_column_lattice(tgt.relations(), &(d * src.relations())) {
                return Err(ComplexError::NotWellDefined { degree: t });
            }
        }
        for i in 0..self.differentials.len().saturating_sub(1) {
            let dd = &self.differentials[i + 1] * &self.differentials[i];
            if !in_column_lattice(self.terms[i + 2].relations(), &dd) {
                return Err(ComplexError::NotAComplex {
                    degree: self.min_degree + i as i64,
                });
            }
        }
        Ok(())
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    /// Last degree carrying a term; `min_degree - 1` for the empty complex.
    pub fn max_degree(&self) -> i64 {
        self.min_degree + self.terms.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.min_degree..=self.max_degree()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn index(&self, t: i64) -> Option<usize> {
        let i = t - self.min_degree;
        (i >= 0 && (i as usize) < self.terms.len()).then_some(i as usize)
    }

    pub fn term(&self, t: i64) -> PresentedGroup {
        self.index(t)
            .map(|i| self.terms[i].clone())
            .unwrap_or_else(PresentedGroup::trivial)
    }

    pub fn generators(&self, t: i64) -> usize {
        self.index(t).map_or(0, |i| self.terms[i].generators())
    }

    pub fn terms(&self) -> &[PresentedGroup] {
        &self.terms
    }

    /// `d^t` as a matrix, zero (of the right shape) outside the band.
    pub fn differential(&self, t: i64) -> IntMatrix {
        match self.index(t) {
            Some(i) if i < self.differentials.len() => self.differentials[i].clone(),
            _ => IntMatrix::zeros(self.generators(t + 1), self.generators(t)),
        }
    }

    pub fn is_free(&self) -> bool {
        self.terms.iter().all(|g| g.relations().cols() == 0)
    }

    /// `ker d^t / im d^{t-1}` with explicit coordinates.
    pub fn cohomology_data(&self, t: i64) -> Subquotient {
        let n = self.generators(t);
        let rel = self.term(t).relations().clone();
        let z = if self.index(t + 1).is_some() && n > 0 {
            let next_rel = self.term(t + 1).relations().clone();
            let k = kernel_basis(&self.differential(t).hstack(&next_rel));
            k.submatrix(0..n, 0..k.cols())
        } else {
            IntMatrix::identity(n)
        };
        let b = self.differential(t - 1).hstack(&rel);
        Subquotient::new(&z, &b).expect("validated complex has boundaries inside cycles")
    }

    pub fn cohomology(&self, t: i64) -> FgAbGroup {
        if self.index(t).is_none() {
            return FgAbGroup::trivial();
        }
        self.cohomology_data(t).group()
    }

    /// Cohomology in every degree of the band, computed independently per degree.
    pub fn cohomology_all(&self) -> BTreeMap<i64, FgAbGroup> {
        let degrees: Vec<i64> = self.degrees().collect();
        let groups = par::map(&degrees, |&t| self.cohomology(t));
        degrees.into_iter().zip(groups).collect()
    }

    /// Cohomology of `C ⊗ C*` for a complex of free lattices.
    ///
    /// `C^t ⊗ C* = Hom((C^t)^∨, C*)` and `C*` is an injective Z-module, so
    /// `H^t(C ⊗ C*) = Hom(H_t(C^∨), C*)` where `C^∨` carries the transposed
    /// differentials. Free rank becomes torus rank and torsion is self-dual.
    pub fn torus_cohomology(&self, t: i64) -> Result<DiagGroup, ComplexError> {
        if !self.is_free() {
            return Err(ComplexError::NotFree);
        }
        if self.index(t).is_none() {
            return Ok(DiagGroup::trivial());
        }
        let cycles = kernel_basis(&self.differential(t - 1).transpose());
        let boundaries = self.differential(t).transpose();
        let h = subquotient(&cycles, &boundaries).expect("dual of a complex is a complex");
        Ok(DiagGroup::new(h.free_rank(), h.torsion_part()).expect("torsion part is finite"))
    }

    /// `Σ (-1)^t free_rank(term_t)`.
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees()
            .map(|t| sign(t) * self.term(t).invariants().free_rank() as i64)
            .sum()
    }

    /// `term_t(shift(C, k)) = term_{t+k}(C)`, differentials negated for odd `k`.
    pub fn shift(&self, k: i64) -> CochainComplex {
        let s = BigInt::from(sign(k));
        CochainComplex {
            min_degree: self.min_degree - k,
            terms: self.terms.clone(),
            differentials: self.differentials.iter().map(|d| d.scale(&s)).collect(),
        }
    }
}

pub(crate) fn sign(t: i64) -> i64 {
    if t.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// A morphism of cochain complexes given on generators degree by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: CochainComplex,
    target: CochainComplex,
    components: BTreeMap<i64, IntMatrix>,
}

impl ChainMap {
    /// Missing components are zero. Checks shapes, relations and commutation.
    pub fn new(
        source: CochainComplex,
        target: CochainComplex,
        components: BTreeMap<i64, IntMatrix>,
    ) -> Result<Self, ComplexError> {
        let f = ChainMap {
            source,
            target,
            components,
        };
        f.validate()?;
        Ok(f)
    }

    pub fn identity(c: &CochainComplex) -> Self {
        let components = c
            .degrees()
            .map(|t| (t, IntMatrix::identity(c.generators(t))))
            .collect();
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            components,
        }
    }

    pub fn zero(source: CochainComplex, target: CochainComplex) -> Self {
        ChainMap {
            source,
            target,
            components: BTreeMap::new(),
        }
    }

    pub fn source(&self) -> &CochainComplex {
        &self.source
    }

    pub fn target(&self) -> &CochainComplex {
        &self.target
    }

    pub fn component(&self, t: i64) -> IntMatrix {
        self.components.get(&t).cloned().unwrap_or_else(|| {
            IntMatrix::zeros(self.target.generators(t), self.source.generators(t))
        })
    }

    /// Smallest degree band containing both complexes.
    pub fn degree_band(&self) -> (i64, i64) {
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for c in [&self.source, &self.target] {
            if !c.is_empty() {
                lo = lo.min(c.min_degree());
                hi = hi.max(c.max_degree());
            }
        }
        (lo, hi)
    }

    fn validate(&self) -> Result<(), ComplexError> {
        for (&t, m) in &self.components {
            let want = (self.target.generators(t), self.source.generators(t));
            if m.shape() != want {
                return Err(ComplexError::Shape(format!(
                    "chain map component in degree {t} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    want.0,
                    want.1
                )));
            }
        }
        let (lo, hi) = self.degree_band();
        for t in lo..=hi {
            let f = self.component(t);
            if !in_column_lattice(
                self.target.term(t).relations(),
                &(&f * self.source.term(t).relations()),
            ) {
                return Err(ComplexError::NotWellDefined { degree: t });
            }
            let lhs = &self.target.differential(t) * &f;
            let rhs = &self.component(t + 1) * &self.source.differential(t);
            if !in_column_lattice(self.target.term(t + 1).relations(), &lhs.sub(&rhs)) {
                return Err(ComplexError::NotAChainMap { degree: t });
            }
        }
        Ok(())
    }
}

/// Shifted cone `Cone(f)[-1]`: degree `t` holds `source^t ⊕ target^{t-1}` and
/// `d(a, b) = (d a, -f a - d b)`. Its cohomology sits in the long exact
/// sequence `… → H^t(cone) → H^t(source) → H^t(target) → H^{t+1}(cone) → …`.
pub fn mapping_cone(f: &ChainMap) -> CochainComplex {
    let (src, tgt) = (f.source(), f.target());
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    if !src.is_empty() {
        lo = lo.min(src.min_degree());
        hi = hi.max(src.max_degree());
    }
    if !tgt.is_empty() {
        lo = lo.min(tgt.min_degree() + 1);
        hi = hi.max(tgt.max_degree() + 1);
    }
    if lo > hi {
        return CochainComplex::zero();
    }
    let terms: Vec<PresentedGroup> = (lo..=hi)
        .map(|t| PresentedGroup::direct_sum(&[src.term(t), tgt.term(t - 1)]))
        .collect();
    let differentials = (lo..hi)
        .map(|t| {
            let (a0, b0) = (src.generators(t), tgt.generators(t - 1));
            let (a1, b1) = (src.generators(t + 1), tgt.generators(t));
            let mut d = IntMatrix::zeros(a1 + b1, a0 + b0);
            d.set_block(0, 0, &src.differential(t));
            d.set_block(a1, 0, &f.component(t).neg());
            d.set_block(a1, a0, &tgt.differential(t - 1).neg());
            d
        })
        .collect();
    CochainComplex::new(lo, terms, differentials).expect("cone of a chain map is a complex")
}
