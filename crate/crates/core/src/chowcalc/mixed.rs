use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::abelian::{DiagGroup, FgAbGroup};
use crate::spectral::PageEntry;

/// One filtration quotient and where it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub source: String,
    pub value: PageEntry,
}

/// A group of the form `(C*)^s x (finite) x (f.g. abelian)`, or the associated
/// graded of a filtration with such pieces when the extensions are unknown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedGroup {
    pub torus: DiagGroup,
    pub discrete: FgAbGroup,
    /// True when at least two pieces are nontrivial and the extension between
    /// them is not determined.
    pub graded: bool,
    /// Nontrivial pieces from the deepest filtration step up.
    pub pieces: Vec<Piece>,
}

impl MixedGroup {
    pub fn trivial() -> Self {
        MixedGroup {
            torus: DiagGroup::trivial(),
            discrete: FgAbGroup::trivial(),
            graded: false,
            pieces: Vec::new(),
        }
    }

    pub fn torus(g: DiagGroup, source: impl Into<String>) -> Self {
        Self::from_pieces(vec![Piece {
            source: source.into(),
            value: PageEntry::Torus(g),
        }])
    }

    pub fn discrete(g: FgAbGroup, source: impl Into<String>) -> Self {
        Self::from_pieces(vec![Piece {
            source: source.into(),
            value: PageEntry::Discrete(g),
        }])
    }

    /// Trivial pieces are dropped.
    pub fn from_pieces(pieces: Vec<Piece>) -> Self {
        let pieces: Vec<Piece> = pieces.into_iter().filter(|p| !p.value.is_trivial()).collect();
        let mut torus = DiagGroup::trivial();
        let mut discrete = FgAbGroup::trivial();
        for p in &pieces {
            match &p.value {
                PageEntry::Torus(g) => torus = torus.direct_sum(g),
                PageEntry::Discrete(g) => discrete = discrete.direct_sum(g),
            }
        }
        MixedGroup {
            torus,
            discrete,
            graded: pieces.len() > 1,
            pieces,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.torus.is_trivial() && self.discrete.is_trivial()
    }

    pub fn torus_rank(&self) -> usize {
        self.torus.torus_rank()
    }

    /// Torus rank plus free rank of the discrete part.
    pub fn total_rank(&self) -> usize {
        self.torus.torus_rank() + self.discrete.free_rank()
    }

    /// Order of the torsion: finite part of the torus times discrete torsion.
    pub fn torsion_order(&self) -> BigInt {
        self.torus.finite().torsion_order() * self.discrete.torsion_order()
    }

    /// Same invariants, ignoring provenance.
    pub fn same_invariants(&self, other: &MixedGroup) -> bool {
        self.torus == other.torus && self.discrete == other.discrete
    }
}

impl fmt::Display for MixedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.graded {
            f.write_str("gr: ")?;
            for (i, p) in self.pieces.iter().enumerate() {
                if i > 0 {
                    f.write_str(" | ")?;
                }
                write!(f, "{} [{}]", p.value, p.source)?;
            }
            return Ok(());
        }
        match (self.torus.is_trivial(), self.discrete.is_trivial()) {
            (true, true) => f.write_str("0"),
            (false, true) => self.torus.fmt(f),
            (true, false) => self.discrete.fmt(f),
            (false, false) => write!(f, "{} + {}", self.discrete, self.torus),
        }
    }
}

/// How the value in a degree was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// Read off the abutment of the two-row spectral sequence of `E`.
    Abutment,
    /// Kernel of the units map `(C*)^{1+k} -> CHC^1(E,1)`.
    UnitsKernel,
    /// Cokernel of the units map, then kernel of `Pic(X~) -> CHC^1(E)`.
    UnitsCokernelAndPicKernel,
    /// Torus part of `CHC^1(E)`, then cokernel of `Pic(X~) -> CHC^1(E)`.
    PicCokernel,
    /// `CHC^1(X,m) = CHC^1(E,m+1)` for `m <= -2`.
    Shift,
    /// Kernel / cokernel of the Picard map of a smooth two-step resolution.
    SmoothResolution,
    /// Codimension-one groups of a smooth variety.
    SmoothVariety,
    /// Forced zero: codimension one vanishes for `m >= 2`.
    VanishesAboveOne,
    /// Forced zero: every piece of the resolution is smooth, so nothing
    /// survives below `m = -1`.
    VanishesSmoothPieces,
    /// Forced zero: `CHC^r(Y,m) = 0` when `r > dim Y + m`.
    VanishesBelowDimension,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Abutment => "abutment of the two-row spectral sequence",
            Rule::UnitsKernel => "kernel of the units map",
            Rule::UnitsCokernelAndPicKernel => {
                "cokernel of the units map, then kernel of Pic(X~) -> CHC^1(E)"
            }
            Rule::PicCokernel => "torus part of CHC^1(E), then cokernel of Pic(X~) -> CHC^1(E)",
            Rule::Shift => "CHC^1(X,m) = CHC^1(E,m+1) for m < -1",
            Rule::SmoothResolution => "kernel/cokernel of the Picard map of the resolution",
            Rule::SmoothVariety => "units, Picard group, zero otherwise",
            Rule::VanishesAboveOne => "zero: codimension one vanishes for m >= 2",
            Rule::VanishesSmoothPieces => "zero: smooth pieces have no groups in negative degrees",
            Rule::VanishesBelowDimension => "zero: CHC^r(Y,m) = 0 when r > dim Y + m",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeValue {
    pub value: MixedGroup,
    pub rule: Rule,
}

/// A named hypothesis and whether it holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub holds: bool,
}

/// An exact sequence `[0 ->] A_0 -> A_1 -> ... -> A_n [-> 0]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactSequence {
    pub label: String,
    pub terms: Vec<(String, MixedGroup)>,
    pub starts_with_zero: bool,
    pub ends_with_zero: bool,
}

impl ExactSequence {
    pub fn new(label: impl Into<String>, terms: Vec<(String, MixedGroup)>) -> Self {
        ExactSequence {
            label: label.into(),
            terms,
            starts_with_zero: true,
            ends_with_zero: true,
        }
    }

    /// `Σ (-1)^i rank(A_i)`; zero for a bounded exact sequence.
    pub fn rank_balance(&self) -> i64 {
        self.terms
            .iter()
            .enumerate()
            .map(|(i, (_, g))| {
                let r = g.total_rank() as i64;
                if i % 2 == 0 {
                    r
                } else {
                    -r
                }
            })
            .sum()
    }

    /// For `0 -> A -> B -> C` exact, `|T(A)|` divides `|T(B)|` and `|T(B)|`
    /// divides `|T(A)| |T(C)|`. Checked on the leading triple (and on the
    /// whole sequence when it is short exact and finite). Sequences with a
    /// torus term are skipped, since `C*` has infinite torsion.
    pub fn torsion_consistent(&self) -> bool {
        if self.terms.iter().any(|(_, g)| g.torus_rank() > 0) {
            return true;
        }
        let orders: Vec<BigInt> = self.terms.iter().map(|(_, g)| g.torsion_order()).collect();
        let divides = |a: &BigInt, b: &BigInt| !a.is_zero() && b.is_multiple_of(a);
        let mut ok = true;
        if self.starts_with_zero && orders.len() >= 3 {
            ok &= divides(&orders[0], &orders[1]) && divides(&orders[1], &(&orders[0] * &orders[2]));
        }
        if self.starts_with_zero && self.ends_with_zero && orders.len() == 3 {
            let all_finite = self.terms.iter().all(|(_, g)| g.total_rank() == 0);
            if all_finite {
                ok &= orders[1] == &orders[0] * &orders[2];
            }
        }
        if self.starts_with_zero && self.ends_with_zero && orders.len() == 2 {
            ok &= orders[0] == orders[1];
        }
        ok
    }

    pub fn is_consistent(&self) -> bool {
        (!(self.starts_with_zero && self.ends_with_zero) || self.rank_balance() == 0)
            && self.torsion_consistent()
    }
}

/// Which statement produced the values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Path {
    /// `Γ(E)` acyclic, any dimension.
    AcyclicDualComplex,
    /// Dimension 3 with `H^2(Γ) = 0`.
    ThreefoldH2Vanishing,
    /// Dimension 2: `Γ` is a graph.
    Surface,
    /// Smooth exceptional locus and smooth singular locus.
    SmoothTwoStep,
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Path::AcyclicDualComplex => "acyclic dual complex",
            Path::ThreefoldH2Vanishing => "threefold with H^2(dual complex) = 0",
            Path::Surface => "surface with dual graph",
            Path::SmoothTwoStep => "smooth two-step resolution",
        })
    }
}

/// Exact sequences, hypothesis checklist and caveats behind a result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceReport {
    pub path: Path,
    pub checklist: Vec<Check>,
    pub sequences: Vec<ExactSequence>,
    pub caveats: Vec<String>,
}

impl SequenceReport {
    pub fn all_consistent(&self) -> bool {
        self.sequences.iter().all(ExactSequence::is_consistent)
    }
}
