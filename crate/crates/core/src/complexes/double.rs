use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::abelian::{in_column_lattice, IntMatrix, PresentedGroup};

use super::cochain::{sign, ChainMap, CochainComplex};
use super::ComplexError;

/// A fourth-quadrant double complex (`p >= 0`, `q <= 0`) of presented groups.
///
/// Horizontal maps go `(p, q) -> (p + 1, q)`, vertical maps `(p, q) -> (p, q + 1)`.
/// Both are stored commuting; the sign twist is applied only by
/// [`total_complex`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleComplex {
    entries: BTreeMap<(i64, i64), PresentedGroup>,
    horizontal: BTreeMap<(i64, i64), IntMatrix>,
    vertical: BTreeMap<(i64, i64), IntMatrix>,
}

#[derive(Default)]
pub struct DoubleComplexBuilder {
    entries: BTreeMap<(i64, i64), PresentedGroup>,
    horizontal: BTreeMap<(i64, i64), IntMatrix>,
    vertical: BTreeMap<(i64, i64), IntMatrix>,
}

impl DoubleComplexBuilder {
    pub fn entry(mut self, p: i64, q: i64, group: PresentedGroup) -> Self {
        self.entries.insert((p, q), group);
        self
    }

    /// The map `(p, q) -> (p + 1, q)`.
    pub fn horizontal(mut self, p: i64, q: i64, m: IntMatrix) -> Self {
        self.horizontal.insert((p, q), m);
        self
    }

    /// The map `(p, q) -> (p, q + 1)`.
    pub fn vertical(mut self, p: i64, q: i64, m: IntMatrix) -> Self {
        self.vertical.insert((p, q), m);
        self
    }

    pub fn build(self) -> Result<DoubleComplex, ComplexError> {
        let mut entries = self.entries;
        entries.retain(|_, g| g.generators() > 0);
        let d = DoubleComplex {
            entries,
            horizontal: self.horizontal,
            vertical: self.vertical,
        };
        d.validate()?;
        Ok(d)
    }
}

impl DoubleComplex {
    pub fn builder() -> DoubleComplexBuilder {
        DoubleComplexBuilder::default()
    }

    /// Two-column double complex with `f.source()` in column 0 and `f.target()`
    /// in column 1; both complexes must live in degrees `<= 0`.
    pub fn from_chain_map(f: &ChainMap) -> Result<Self, ComplexError> {
        let mut b = DoubleComplex::builder();
        let (lo, hi) = f.degree_band();
        if lo > hi {
            return b.build();
        }
        for (p, c) in [(0, f.source()), (1, f.target())] {
            for t in lo..=hi {
                b = b.entry(p, t, c.term(t)).vertical(p, t, c.differential(t));
            }
        }
        for t in lo..=hi {
            b = b.horizontal(0, t, f.component(t));
        }
        b.build()
    }

    fn validate(&self) -> Result<(), ComplexError> {
        for &(p, q) in self.entries.keys() {
            if p < 0 || q > 0 {
                return Err(ComplexError::OutsideQuadrant { p, q });
            }
        }
        for (kind, maps, step) in [
            ("horizontal", &self.horizontal, (1, 0)),
            ("vertical", &self.vertical, (0, 1)),
        ] {
            for (&(p, q), m) in maps {
                let (tp, tq) = (p + step.0, q + step.1);
                let want = (self.generators(tp, tq), self.generators(p, q));
                if m.shape() != want {
                    return Err(ComplexError::Shape(format!(
                        "{kind} map at ({p},{q}) is {}x{}, expected {}x{}",
                        m.rows(),
                        m.cols(),
                        want.0,
                        want.1
                    )));
                }
                if !in_column_lattice(
                    self.entry(tp, tq).relations(),
                    &(m * self.entry(p, q).relations()),
                ) {
                    return Err(ComplexError::NotWellDefinedAt { p, q });
                }
            }
        }
        for &(p, q) in self.entries.keys() {
            let hh = &self.h(p + 1, q) * &self.h(p, q);
            if !in_column_lattice(self.entry(p + 2, q).relations(), &hh) {
                return Err(ComplexError::NotADoubleComplex {
                    p,
                    q,
                    reason: "horizontal d∘d ≠ 0",
                });
            }
            let vv = &self.v(p, q + 1) * &self.v(p, q);
            if !in_column_lattice(self.entry(p, q + 2).relations(), &vv) {
                return Err(ComplexError::NotADoubleComplex {
                    p,
                    q,
                    reason: "vertical d∘d ≠ 0",
                });
            }
            let hv = &self.h(p, q + 1) * &self.v(p, q);
            let vh = &self.v(p + 1, q) * &self.h(p, q);
            if !in_column_lattice(self.entry(p + 1, q + 1).relations(), &hv.sub(&vh)) {
                return Err(ComplexError::NotADoubleComplex {
                    p,
                    q,
                    reason: "horizontal and vertical maps do not commute",
                });
            }
        }
        Ok(())
    }

    pub fn entry(&self, p: i64, q: i64) -> PresentedGroup {
        self.entries
            .get(&(p, q))
            .cloned()
            .unwrap_or_else(PresentedGroup::trivial)
    }

    pub fn generators(&self, p: i64, q: i64) -> usize {
        self.entries.get(&(p, q)).map_or(0, PresentedGroup::generators)
    }

    /// Positions carrying a nonzero number of generators.
    pub fn support(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.entries.keys().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn h(&self, p: i64, q: i64) -> IntMatrix {
        self.horizontal.get(&(p, q)).cloned().unwrap_or_else(|| {
            IntMatrix::zeros(self.generators(p + 1, q), self.generators(p, q))
        })
    }

    pub fn v(&self, p: i64, q: i64) -> IntMatrix {
        self.vertical.get(&(p, q)).cloned().unwrap_or_else(|| {
            IntMatrix::zeros(self.generators(p, q + 1), self.generators(p, q))
        })
    }

    /// `(min p, max p, min q, max q)` over the support.
    pub fn bounds(&self) -> Option<(i64, i64, i64, i64)> {
        let mut it = self.entries.keys();
        let &(p0, q0) = it.next()?;
        Some(it.fold((p0, p0, q0, q0), |(a, b, c, d), &(p, q)| {
            (a.min(p), b.max(p), c.min(q), d.max(q))
        }))
    }

    /// Column `p` as a complex in the vertical degree `q`.
    pub fn column(&self, p: i64) -> CochainComplex {
        let Some((_, _, qmin, qmax)) = self.bounds() else {
            return CochainComplex::zero();
        };
        let terms = (qmin..=qmax).map(|q| self.entry(p, q)).collect();
        let diffs = (qmin..qmax).map(|q| self.v(p, q)).collect();
        CochainComplex::new(qmin, terms, diffs).expect("columns of a validated double complex")
    }

    /// Row `q` as a complex in the horizontal degree `p`.
    pub fn row(&self, q: i64) -> CochainComplex {
        let Some((pmin, pmax, _, _)) = self.bounds() else {
            return CochainComplex::zero();
        };
        let terms = (pmin..=pmax).map(|p| self.entry(p, q)).collect();
        let diffs = (pmin..pmax).map(|p| self.h(p, q)).collect();
        CochainComplex::new(pmin, terms, diffs).expect("rows of a validated double complex")
    }
}

/// `Tot^n = ⊕_{p+q=n} D(p,q)` (summands ordered by increasing `p`) with
/// differential `h + (-1)^p v`.
pub fn total_complex(d: &DoubleComplex) -> CochainComplex {
    let Some((pmin, pmax, qmin, qmax)) = d.bounds() else {
        return CochainComplex::zero();
    };
    let (lo, hi) = (pmin + qmin, pmax + qmax);
    let summands = |n: i64| -> Vec<(i64, i64)> {
        (pmin..=pmax)
            .map(|p| (p, n - p))
            .filter(|&(_, q)| (qmin..=qmax).contains(&q))
            .collect()
    };
    let offsets = |n: i64| -> BTreeMap<(i64, i64), usize> {
        let mut off = 0;
        summands(n)
            .into_iter()
            .map(|pq| {
                let o = off;
                off += d.generators(pq.0, pq.1);
                (pq, o)
            })
            .collect()
    };
    let terms: Vec<PresentedGroup> = (lo..=hi)
        .map(|n| {
            let parts: Vec<PresentedGroup> =
                summands(n).into_iter().map(|(p, q)| d.entry(p, q)).collect();
            PresentedGroup::direct_sum(&parts)
        })
        .collect();
    let differentials = (lo..hi)
        .map(|n| {
            let src = offsets(n);
            let tgt = offsets(n + 1);
            let rows = terms[(n + 1 - lo) as usize].generators();
            let cols = terms[(n - lo) as usize].generators();
            let mut m = IntMatrix::zeros(rows, cols);
            for (&(p, q), &c0) in &src {
                if let Some(&r0) = tgt.get(&(p + 1, q)) {
                    m.add_block(r0, c0, &d.h(p, q));
                }
                if let Some(&r0) = tgt.get(&(p, q + 1)) {
                    m.add_block(r0, c0, &d.v(p, q).scale(&BigInt::from(sign(p))));
                }
            }
            m
        })
        .collect();
    CochainComplex::new(lo, terms, differentials).expect("total complex of a double complex")
}
