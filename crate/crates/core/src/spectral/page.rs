use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::abelian::{DiagGroup, FgAbGroup, IntMatrix, Subquotient};
use crate::complexes::{CochainComplex, DoubleComplex};
use crate::par::{self, Strategy};

use super::SpectralError;

/// A page entry: a finitely generated group or a diagonalizable group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PageEntry {
    Discrete(FgAbGroup),
    Torus(DiagGroup),
}

impl PageEntry {
    pub fn is_trivial(&self) -> bool {
        match self {
            PageEntry::Discrete(g) => g.is_trivial(),
            PageEntry::Torus(g) => g.is_trivial(),
        }
    }

    /// Free rank of a discrete entry, torus rank of a torus entry.
    pub fn rank(&self) -> usize {
        match self {
            PageEntry::Discrete(g) => g.free_rank(),
            PageEntry::Torus(g) => g.torus_rank(),
        }
    }

    /// Order of the torsion subgroup (discrete) or of the finite part (torus).
    pub fn finite_order(&self) -> BigInt {
        match self {
            PageEntry::Discrete(g) => g.torsion_order(),
            PageEntry::Torus(g) => g.finite().torsion_order(),
        }
    }

    pub fn as_discrete(&self) -> Option<&FgAbGroup> {
        match self {
            PageEntry::Discrete(g) => Some(g),
            PageEntry::Torus(_) => None,
        }
    }

    pub fn as_torus(&self) -> Option<&DiagGroup> {
        match self {
            PageEntry::Torus(g) => Some(g),
            PageEntry::Discrete(_) => None,
        }
    }
}

impl fmt::Display for PageEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PageEntry::Discrete(g) => g.fmt(f),
            PageEntry::Torus(g) => g.fmt(f),
        }
    }
}

/// How a row's terms are read: as the groups themselves, or as character
/// lattices of tori (`Z^n` standing for `(C*)^n`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RowKind {
    Discrete,
    Torus,
}

#[derive(Clone, Debug)]
pub(crate) struct Row {
    pub(crate) kind: RowKind,
    /// The E1 row as a complex in the horizontal degree `p`.
    pub(crate) complex: CochainComplex,
    /// E2 data per `p` (discrete rows only), in the coordinates of `complex`.
    pub(crate) second: BTreeMap<i64, Subquotient>,
    pub(crate) entries: BTreeMap<i64, PageEntry>,
}

/// Data needed to lift page classes back into a double complex.
#[derive(Debug)]
pub(crate) struct Lifts {
    pub(crate) double: DoubleComplex,
    pub(crate) vertical: BTreeMap<(i64, i64), Subquotient>,
}

/// An E1 or E2 page of a fourth-quadrant spectral sequence.
#[derive(Clone, Debug)]
pub struct Page {
    index: u8,
    pub(crate) rows: BTreeMap<i64, Row>,
    pub(crate) lifts: Option<Arc<Lifts>>,
}

impl Page {
    /// An E1 page given directly by its rows; each row complex is indexed by `p`.
    /// Torus rows must be complexes of free lattices.
    pub fn from_rows(
        discrete: Vec<(i64, CochainComplex)>,
        torus: Vec<(i64, CochainComplex)>,
    ) -> Result<Self, SpectralError> {
        let mut rows = BTreeMap::new();
        for (kind, list) in [(RowKind::Discrete, discrete), (RowKind::Torus, torus)] {
            for (q, complex) in list {
                if q > 0 || (!complex.is_empty() && complex.min_degree() < 0) {
                    return Err(SpectralError::OutsideQuadrant { q });
                }
                if kind == RowKind::Torus && !complex.is_free() {
                    return Err(SpectralError::TorusRowNotFree { q });
                }
                if rows.contains_key(&q) {
                    return Err(SpectralError::DuplicateRow { q });
                }
                let entries = first_page_entries(kind, &complex);
                rows.insert(
                    q,
                    Row {
                        kind,
                        complex,
                        second: BTreeMap::new(),
                        entries,
                    },
                );
            }
        }
        Ok(Page {
            index: 1,
            rows,
            lifts: None,
        })
    }

    pub fn index(&self) -> u8 {
        self.index
    }

    pub fn rows(&self) -> impl Iterator<Item = i64> + '_ {
        self.rows.keys().copied()
    }

    pub fn row_kind(&self, q: i64) -> Option<RowKind> {
        self.rows.get(&q).map(|r| r.kind)
    }

    /// Entry at `(p, q)`; trivial outside the support.
    pub fn entry(&self, p: i64, q: i64) -> PageEntry {
        match self.rows.get(&q) {
            Some(row) => row.entries.get(&p).cloned().unwrap_or_else(|| trivial(row.kind)),
            None => PageEntry::Discrete(FgAbGroup::trivial()),
        }
    }

    /// All entries in `(q descending, p ascending)` order, trivial ones included
    /// within each row's band.
    pub fn entries(&self) -> Vec<((i64, i64), PageEntry)> {
        let mut out = Vec::new();
        for (&q, row) in self.rows.iter().rev() {
            for (&p, e) in &row.entries {
                out.push(((p, q), e.clone()));
            }
        }
        out
    }

    /// The E1 differential `d1: (p, q) -> (p + 1, q)` on generators; `None` on
    /// an E2 page.
    pub fn d1(&self, p: i64, q: i64) -> Option<IntMatrix> {
        if self.index != 1 {
            return None;
        }
        let row = self.rows.get(&q)?;
        Some(row.complex.differential(p))
    }

    /// The E1 row `q` as a complex in `p`.
    pub fn row_complex(&self, q: i64) -> Option<&CochainComplex> {
        self.rows.get(&q).map(|r| &r.complex)
    }

    /// `(min p, max p)` over all rows.
    pub fn p_bounds(&self) -> Option<(i64, i64)> {
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for row in self.rows.values() {
            if !row.complex.is_empty() {
                lo = lo.min(row.complex.min_degree());
                hi = hi.max(row.complex.max_degree());
            }
        }
        (lo <= hi).then_some((lo, hi))
    }

    pub(crate) fn second_data(&self, p: i64, q: i64) -> Option<&Subquotient> {
        self.rows.get(&q)?.second.get(&p)
    }
}

fn trivial(kind: RowKind) -> PageEntry {
    match kind {
        RowKind::Discrete => PageEntry::Discrete(FgAbGroup::trivial()),
        RowKind::Torus => PageEntry::Torus(DiagGroup::trivial()),
    }
}

fn first_page_entries(kind: RowKind, c: &CochainComplex) -> BTreeMap<i64, PageEntry> {
    c.degrees()
        .map(|p| {
            let e = match kind {
                RowKind::Discrete => PageEntry::Discrete(c.term(p).invariants()),
                RowKind::Torus => PageEntry::Torus(DiagGroup::torus(c.generators(p))),
            };
            (p, e)
        })
        .collect()
}

/// E1 page of a double complex: vertical cohomology with the horizontally
/// induced `d1`.
pub fn e1_page(d: &DoubleComplex) -> Page {
    e1_page_with(Strategy::default(), d)
}

/// [`e1_page`] with the column cohomologies computed under `strategy`.
pub fn e1_page_with(strategy: Strategy, d: &DoubleComplex) -> Page {
    let Some((pmin, pmax, qmin, qmax)) = d.bounds() else {
        return Page {
            index: 1,
            rows: BTreeMap::new(),
            lifts: None,
        };
    };
    let columns: Vec<i64> = (pmin..=pmax).collect();
    let column_data: Vec<Vec<(i64, Subquotient)>> = par::map_with(strategy, &columns, |&p| {
        let col = d.column(p);
        (qmin..=qmax).map(|q| (q, col.cohomology_data(q))).collect()
    });
    let vertical: BTreeMap<(i64, i64), Subquotient> = columns
        .iter()
        .zip(column_data)
        .flat_map(|(&p, list)| list.into_iter().map(move |(q, s)| ((p, q), s)))
        .collect();

    let mut rows = BTreeMap::new();
    for q in qmin..=qmax {
        let terms = (pmin..=pmax).map(|p| vertical[&(p, q)].as_presented()).collect();
        let diffs = (pmin..pmax)
            .map(|p| {
                let (src, tgt) = (&vertical[&(p, q)], &vertical[&(p + 1, q)]);
                let image = &d.h(p, q) * src.cycles();
                tgt.coordinates_of(&image)
                    .expect("horizontal maps send vertical cycles to vertical cycles")
            })
            .collect();
        let complex = CochainComplex::new(pmin, terms, diffs)
            .expect("d1 of a validated double complex squares to zero");
        let entries = first_page_entries(RowKind::Discrete, &complex);
        rows.insert(
            q,
            Row {
                kind: RowKind::Discrete,
                complex,
                second: BTreeMap::new(),
                entries,
            },
        );
    }
    Page {
        index: 1,
        rows,
        lifts: Some(Arc::new(Lifts {
            double: d.clone(),
            vertical,
        })),
    }
}

/// E2 page: cohomology of each E1 row.
pub fn e2_page(p1: &Page) -> Result<Page, SpectralError> {
    e2_page_with(Strategy::default(), p1)
}

/// [`e2_page`] with the rows computed under `strategy`.
pub fn e2_page_with(strategy: Strategy, p1: &Page) -> Result<Page, SpectralError> {
    if p1.index != 1 {
        return Err(SpectralError::WrongPage {
            expected: 1,
            found: p1.index,
        });
    }
    let qs: Vec<i64> = p1.rows.keys().copied().collect();
    let computed: Vec<Row> = par::try_map_with(strategy, &qs, |q| {
        let row = &p1.rows[q];
        let c = &row.complex;
        let mut second = BTreeMap::new();
        let mut entries = BTreeMap::new();
        for p in c.degrees() {
            match row.kind {
                RowKind::Discrete => {
                    let s = c.cohomology_data(p);
                    entries.insert(p, PageEntry::Discrete(s.group()));
                    second.insert(p, s);
                }
                RowKind::Torus => {
                    let g = c.torus_cohomology(p).map_err(SpectralError::Complex)?;
                    entries.insert(p, PageEntry::Torus(g));
                }
            }
        }
        Ok::<_, SpectralError>(Row {
            kind: row.kind,
            complex: c.clone(),
            second,
            entries,
        })
    })?;
    Ok(Page {
        index: 2,
        rows: qs.into_iter().zip(computed).collect(),
        lifts: p1.lifts.clone(),
    })
}

/// Total order of the finite parts, used by the numerical abutment checks.
pub fn finite_order_product<'a>(entries: impl IntoIterator<Item = &'a PageEntry>) -> BigInt {
    entries
        .into_iter()
        .fold(BigInt::one(), |acc, e| acc * e.finite_order())
}
