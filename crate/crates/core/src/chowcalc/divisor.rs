use std::collections::BTreeMap;

use crate::abelian::DiagGroup;
use crate::dualcomplex::{gamma_cohomology, is_acyclic};
use crate::spectral::{e2_page, two_row_abutment, AbutmentReport, Page, PageEntry};

use super::rows::{pic_row, units_row};
use super::{
    Check, ChowError, DegreeValue, ExactSequence, HypothesisFailure, MixedGroup, Path, Piece,
    ResolutionData, Rule, SequenceReport,
};

/// `CHC^1(E, m)` for the exceptional divisor, with the page it was read from.
#[derive(Clone, Debug)]
pub struct DivisorResult {
    pub path: Path,
    /// Every `m` in `[1-d, 1]`.
    pub values: BTreeMap<i64, DegreeValue>,
    pub abutment: AbutmentReport,
    pub report: SequenceReport,
}

impl DivisorResult {
    /// Trivial outside the tabulated range.
    pub fn value(&self, m: i64) -> MixedGroup {
        self.values
            .get(&m)
            .map(|v| v.value.clone())
            .unwrap_or_else(MixedGroup::trivial)
    }
}

pub(crate) fn position(p: i64, q: i64) -> String {
    format!("E2({p},{q})")
}

pub(crate) fn divisor_checklist(data: &ResolutionData) -> (Vec<Check>, bool, bool, bool) {
    let gamma = data.gamma();
    let irreducible = gamma.all_irreducible() && gamma.is_simplicial();
    let connected = gamma.is_connected();
    let acyclic = is_acyclic(gamma);
    let h2 = gamma_cohomology(gamma, 2).is_trivial();
    let d = data.dimension();
    let checklist = vec![
        Check { name: "irreducible intersections", holds: irreducible },
        Check { name: "dual complex connected", holds: connected },
        Check { name: "dual complex acyclic", holds: acyclic },
        Check { name: "H^2(dual complex) = 0", holds: h2 },
        Check { name: "dimension 3", holds: d == 3 },
        Check { name: "dimension 2", holds: d == 2 },
    ];
    (checklist, irreducible, acyclic, h2)
}

/// `CHC^1(E, m)` for every `m`, through the two-row spectral sequence of the
/// semi-simplicial resolution of `E`.
///
/// Applies when intersections are irreducible and either `Γ(E)` is acyclic,
/// or `d = 3` and `H^2(Γ) = 0`, or `d = 2`. In each case every `d2` has trivial
/// target, so the E2 page is the abutment.
pub fn chc1_divisor(data: &ResolutionData) -> Result<DivisorResult, ChowError> {
    let d = data.dimension();
    let (checklist, irreducible, acyclic, h2) = divisor_checklist(data);
    let pic = pic_row(data)?;

    let fail = |reason: &str, e2: Vec<((i64, i64), PageEntry)>| {
        ChowError::HypothesisFailed(Box::new(HypothesisFailure {
            reason: reason.to_string(),
            checklist: checklist.clone(),
            e2,
        }))
    };
    if !irreducible {
        return Err(fail("intersections of the components must be irreducible", Vec::new()));
    }
    let units = units_row(data.gamma())?;
    let p2 = e2_page(&Page::from_rows(vec![(0, pic.clone())], vec![(-1, units)])?)?;

    let path = if acyclic {
        Path::AcyclicDualComplex
    } else if d == 3 && h2 {
        Path::ThreefoldH2Vanishing
    } else if d == 2 {
        Path::Surface
    } else {
        return Err(fail(
            "the dual complex is not acyclic and the dimension-specific conditions fail",
            p2.entries(),
        ));
    };

    let abutment = two_row_abutment(&p2, d)?;
    if !abutment.resolved {
        return Err(fail("a d2 differential could not be determined", p2.entries()));
    }

    let mut caveats = Vec::new();
    if path == Path::ThreefoldH2Vanishing && !p2.entry(2, -1).is_trivial() {
        caveats.push(format!(
            "E2(2,-1) = {} although H^2 of the dual complex vanishes",
            p2.entry(2, -1)
        ));
    }
    if let Some(flag) = data.user_contractible() {
        caveats.push(format!(
            "contractibility asserted as {flag}; only acyclicity ({acyclic}) is used"
        ));
    }
    continuous_part_caveat(data, &mut caveats);

    let mut values = BTreeMap::new();
    let mut sequences = Vec::new();
    let lo = 1 - d as i64;
    for m in lo..=1 {
        if m < 2 - d as i64 {
            values.insert(m, DegreeValue { value: MixedGroup::trivial(), rule: Rule::VanishesBelowDimension });
            continue;
        }
        let n = -m;
        let pieces = abutment
            .pieces(n)
            .map(|ps| {
                ps.iter()
                    .map(|g| Piece { source: position(g.p, g.q), value: g.entry.clone() })
                    .collect()
            })
            .unwrap_or_default();
        let value = MixedGroup::from_pieces(pieces);
        if value.graded {
            let mut terms: Vec<(String, MixedGroup)> = Vec::new();
            terms.push((value.pieces[0].source.clone(), MixedGroup::from_pieces(vec![value.pieces[0].clone()])));
            terms.push((format!("CHC^1(E,{m})"), value.clone()));
            for p in &value.pieces[1..] {
                terms.push((p.source.clone(), MixedGroup::from_pieces(vec![p.clone()])));
            }
            sequences.push(ExactSequence::new(format!("filtration of CHC^1(E,{m})"), terms));
        }
        values.insert(m, DegreeValue { value, rule: Rule::Abutment });
    }

    if path == Path::AcyclicDualComplex {
        // closed form: C* in degree 1, H^{-m} of the Picard row below
        for (&m, v) in &values {
            let expected = match m {
                1 => MixedGroup::torus(DiagGroup::torus(1), ""),
                m if m <= 0 && m >= 2 - d as i64 => {
                    MixedGroup::discrete(pic.cohomology(-m), "")
                }
                _ => MixedGroup::trivial(),
            };
            if !expected.same_invariants(&v.value) {
                return Err(ChowError::Internal(format!(
                    "CHC^1(E,{m}) = {} disagrees with the acyclic closed form {}",
                    v.value, expected
                )));
            }
        }
    }

    Ok(DivisorResult {
        path,
        values,
        abutment,
        report: SequenceReport { path, checklist, sequences, caveats },
    })
}

pub(crate) fn continuous_part_caveat(data: &ResolutionData, caveats: &mut Vec<String>) {
    let parts = data.pic().continuous_parts();
    if !parts.is_empty() {
        let listed: Vec<String> = parts.iter().map(|(id, l)| format!("{id}: {l}")).collect();
        caveats.push(format!(
            "continuous Picard parts are not part of the computation ({})",
            listed.join(", ")
        ));
    }
}

