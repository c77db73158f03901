use std::collections::BTreeMap;

use crate::abelian::{torus_map_ker_coker, DiagGroup, IntMatrix, PresentedGroup};
use crate::complexes::CochainComplex;
use crate::spectral::PageEntry;

use super::divisor::{chc1_divisor, continuous_part_caveat, DivisorResult};
use super::rows::augmented_pic_row;
use super::{
    Check, ChowError, DegreeValue, ExactSequence, MixedGroup, Path, Piece, ResolutionData, Rule,
    SequenceReport,
};

/// `CHC^1(X, m)` for a variety with isolated singularities.
#[derive(Clone, Debug)]
pub struct VarietyResult {
    pub path: Path,
    /// Every `m` in `[1-d, 1]`.
    pub values: BTreeMap<i64, DegreeValue>,
    pub divisor: DivisorResult,
    pub report: SequenceReport,
}

impl VarietyResult {
    /// Trivial outside the tabulated range.
    pub fn value(&self, m: i64) -> MixedGroup {
        self.values
            .get(&m)
            .map(|v| v.value.clone())
            .unwrap_or_else(MixedGroup::trivial)
    }
}

fn piece(source: &str, value: PageEntry) -> Piece {
    Piece { source: source.to_string(), value }
}

/// `CHC^1(X, m)` from the divisor groups, `Pic(X~)` and the restriction
/// `Pic(X~) -> ⊕ Pic(E_i)` (components in vertex order).
///
/// Degree 1 is the kernel of the units map, degree 0 and -1 come from the
/// long exact sequence of the resolution square, and `CHC^1(X, m) =
/// CHC^1(E, m+1)` below. The map `Pic(X~) -> CHC^1(E)` is known only through
/// its projection to `E2(0,0)`; when it could hit the torus part of `CHC^1(E)`
/// a caveat is recorded.
pub fn chc1_variety(
    data: &ResolutionData,
    pic_resolution: &PresentedGroup,
    restriction: &IntMatrix,
) -> Result<VarietyResult, ChowError> {
    let divisor = chc1_divisor(data)?;
    let path = divisor.path;
    variety_from_divisor(data, divisor, path, pic_resolution, restriction)
}

/// Surface mode: `d = 2` and a connected dual graph.
pub fn chc1_surface(
    data: &ResolutionData,
    pic_resolution: &PresentedGroup,
    restriction: &IntMatrix,
) -> Result<VarietyResult, ChowError> {
    if data.dimension() != 2 {
        return Err(ChowError::Consistency(format!(
            "surface mode needs dimension 2, got {}",
            data.dimension()
        )));
    }
    if !data.gamma().is_connected() {
        return Err(ChowError::Consistency("surface mode needs a connected dual graph".into()));
    }
    let divisor = chc1_divisor(data)?;
    variety_from_divisor(data, divisor, Path::Surface, pic_resolution, restriction)
}

fn variety_from_divisor(
    data: &ResolutionData,
    divisor: DivisorResult,
    path: Path,
    pic_resolution: &PresentedGroup,
    restriction: &IntMatrix,
) -> Result<VarietyResult, ChowError> {
    let d = data.dimension() as i64;
    let k = data.singular_points();
    let aug: CochainComplex = augmented_pic_row(data, pic_resolution, restriction)?;

    let incidence = data.units_incidence();
    let (units_ker, units_coker) = torus_map_ker_coker(&incidence);
    let pic_ker = aug.cohomology(-1);
    let pic_coker = aug.cohomology(0);
    let e_torus = divisor.value(0).torus;

    let mut caveats = divisor.report.caveats.clone();
    caveats.retain(|c| !c.starts_with("continuous"));
    continuous_part_caveat(data, &mut caveats);
    if units_ker != DiagGroup::torus(1) {
        caveats.push(format!("CHC^1(X,1) = {units_ker}, not a rank-one torus"));
    }
    if !e_torus.is_trivial() && !pic_ker.is_trivial() {
        caveats.push(format!(
            "ker(Pic(X~) -> E2(0,0)) = {pic_ker} may map nontrivially to the torus part {e_torus} \
             of CHC^1(E); degrees 0 and -1 are upper bounds in that direction"
        ));
    }
    if path == Path::AcyclicDualComplex {
        caveats.push(format!(
            "nonvanishing is only possible for m = 1, 0, ..., {}; lower degrees vanish by the dimension bound",
            1 - d
        ));
    }

    let mut values = BTreeMap::new();
    values.insert(1, DegreeValue {
        value: MixedGroup::torus(units_ker.clone(), "ker units map"),
        rule: Rule::UnitsKernel,
    });
    values.insert(0, DegreeValue {
        value: MixedGroup::from_pieces(vec![
            piece("coker units map", PageEntry::Torus(units_coker.clone())),
            piece("ker Pic(X~) -> E2(0,0)", PageEntry::Discrete(pic_ker.clone())),
        ]),
        rule: Rule::UnitsCokernelAndPicKernel,
    });
    values.insert(-1, DegreeValue {
        value: MixedGroup::from_pieces(vec![
            piece("E2(1,-1)", PageEntry::Torus(e_torus)),
            piece("coker Pic(X~) -> E2(0,0)", PageEntry::Discrete(pic_coker)),
        ]),
        rule: Rule::PicCokernel,
    });
    for m in (1 - d)..=-2 {
        let shifted = divisor.value(m + 1);
        let direct = aug.cohomology(-m - 1);
        if !shifted.torus.is_trivial() || shifted.discrete != direct {
            return Err(ChowError::Internal(format!(
                "CHC^1(E,{}) = {shifted} but the augmented Picard row gives {direct}",
                m + 1
            )));
        }
        values.insert(m, DegreeValue { value: shifted, rule: Rule::Shift });
    }
    if d < 2 {
        unreachable!("validated dimension");
    }

    let value = |m: i64| values.get(&m).map(|v: &DegreeValue| v.value.clone()).unwrap_or_else(MixedGroup::trivial);
    let pic_x = MixedGroup::discrete(pic_resolution.invariants(), "Pic(X~)");
    let mut sequences = vec![ExactSequence::new(
        "resolution square",
        vec![
            ("CHC^1(X,1)".into(), value(1)),
            ("CH^1(X~,1) + CH^1(X_sing,1)".into(), MixedGroup::torus(DiagGroup::torus(1 + k), "")),
            ("CHC^1(E,1)".into(), divisor.value(1)),
            ("CHC^1(X,0)".into(), value(0)),
            ("CH^1(X~)".into(), pic_x.clone()),
            ("CHC^1(E,0)".into(), divisor.value(0)),
            ("CHC^1(X,-1)".into(), value(-1)),
        ],
    )];
    if units_coker.is_trivial() {
        sequences.push(ExactSequence::new(
            "four-term sequence",
            vec![
                ("CHC^1(X,0)".into(), value(0)),
                ("CH^1(X~)".into(), pic_x),
                ("CHC^1(E,0)".into(), divisor.value(0)),
                ("CHC^1(X,-1)".into(), value(-1)),
            ],
        ));
    }
    for m in (2 - d)..=-1 {
        sequences.push(ExactSequence::new(
            format!("shift in degree {m}"),
            vec![
                (format!("CHC^1(E,{m})"), divisor.value(m)),
                (format!("CHC^1(X,{})", m - 1), value(m - 1)),
            ],
        ));
    }
    if let Some(bad) = sequences.iter().find(|s| !s.is_consistent()) {
        return Err(ChowError::Internal(format!(
            "exact sequence '{}' fails its rank or torsion balance",
            bad.label
        )));
    }

    let mut checklist = divisor.report.checklist.clone();
    checklist.push(Check {
        name: "units map onto CHC^1(E,1)",
        holds: units_coker.is_trivial(),
    });
    Ok(VarietyResult {
        path,
        values,
        report: SequenceReport { path, checklist, sequences, caveats },
        divisor,
    })
}

/// Input of a one-step resolution `E ⇉ X~ ⊔ X_sing -> X` with smooth `E`
/// and smooth `X_sing`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothTwoStep {
    pub pic_resolution: PresentedGroup,
    pub pic_singular: PresentedGroup,
    pub pic_exceptional: PresentedGroup,
    /// `Pic(X~) -> Pic(E)`.
    pub from_resolution: IntMatrix,
    /// `Pic(X_sing) -> Pic(E)`.
    pub from_singular: IntMatrix,
    /// Connected components of `X~`, `X_sing`, `E`.
    pub components: (usize, usize, usize),
    /// For each component of `E`, the component of `X~` and of `X_sing` it
    /// maps to. May be omitted when `X~` and `X_sing` are connected.
    pub incidence: Option<(Vec<usize>, Vec<usize>)>,
}

#[derive(Clone, Debug)]
pub struct SmoothTwoStepResult {
    /// `m` in `{-1, 0, 1}`; zero elsewhere.
    pub values: BTreeMap<i64, DegreeValue>,
    pub report: SequenceReport,
}

impl SmoothTwoStepResult {
    pub fn value(&self, m: i64) -> MixedGroup {
        self.values
            .get(&m)
            .map(|v| v.value.clone())
            .unwrap_or_else(MixedGroup::trivial)
    }
}

/// Kernel and cokernel of `[res, -res]: Pic(X~) ⊕ Pic(X_sing) -> Pic(E)`, and
/// the kernel of the units map in degree 1.
pub fn chc1_smooth_2resolution(input: &SmoothTwoStep) -> Result<SmoothTwoStepResult, ChowError> {
    let (nx, ns, ne) = input.components;
    let (gx, gs, ge) = (
        input.pic_resolution.generators(),
        input.pic_singular.generators(),
        input.pic_exceptional.generators(),
    );
    if input.from_resolution.shape() != (ge, gx) || input.from_singular.shape() != (ge, gs) {
        return Err(ChowError::ShapeMismatch(format!(
            "Picard maps are {:?} and {:?}, expected ({ge}, {gx}) and ({ge}, {gs})",
            input.from_resolution.shape(),
            input.from_singular.shape()
        )));
    }
    let (to_x, to_s) = match &input.incidence {
        Some((a, b)) => (a.clone(), b.clone()),
        None if nx == 1 && ns == 1 => (vec![0; ne], vec![0; ne]),
        None => {
            return Err(ChowError::ShapeMismatch(
                "component incidence is required unless X~ and X_sing are connected".into(),
            ))
        }
    };
    if to_x.len() != ne || to_s.len() != ne || to_x.iter().any(|&i| i >= nx) || to_s.iter().any(|&i| i >= ns) {
        return Err(ChowError::ShapeMismatch("component incidence does not match the counts".into()));
    }
    let mut units = IntMatrix::zeros(ne, nx + ns);
    for e in 0..ne {
        units[(e, to_x[e])] = 1.into();
        units[(e, nx + to_s[e])] = (-1).into();
    }
    let (units_ker, units_coker) = torus_map_ker_coker(&units);

    let source = PresentedGroup::direct_sum(&[input.pic_resolution.clone(), input.pic_singular.clone()]);
    let map = input
        .from_resolution
        .hstack(&input.from_singular.scale(&(-1).into()));
    let two_term = CochainComplex::new(0, vec![source.clone(), input.pic_exceptional.clone()], vec![map])
        .map_err(|e| ChowError::Consistency(e.to_string()))?;
    let ker = two_term.cohomology(0);
    let coker = two_term.cohomology(1);

    let mut values = BTreeMap::new();
    values.insert(1, DegreeValue {
        value: MixedGroup::torus(units_ker.clone(), "ker units map"),
        rule: Rule::UnitsKernel,
    });
    values.insert(0, DegreeValue {
        value: MixedGroup::from_pieces(vec![
            piece("coker units map", PageEntry::Torus(units_coker.clone())),
            piece("ker Picard map", PageEntry::Discrete(ker)),
        ]),
        rule: Rule::SmoothResolution,
    });
    values.insert(-1, DegreeValue {
        value: MixedGroup::discrete(coker, "coker Picard map"),
        rule: Rule::SmoothResolution,
    });

    let get = |m: i64| values[&m].value.clone();
    let sequences = vec![ExactSequence::new(
        "resolution square",
        vec![
            ("CHC^1(X,1)".into(), get(1)),
            ("CH^1(X~,1) + CH^1(X_sing,1)".into(), MixedGroup::torus(DiagGroup::torus(nx + ns), "")),
            ("CH^1(E,1)".into(), MixedGroup::torus(DiagGroup::torus(ne), "")),
            ("CHC^1(X,0)".into(), get(0)),
            ("CH^1(X~) + CH^1(X_sing)".into(), MixedGroup::discrete(source.invariants(), "")),
            ("CH^1(E)".into(), MixedGroup::discrete(input.pic_exceptional.invariants(), "")),
            ("CHC^1(X,-1)".into(), get(-1)),
        ],
    )];
    if let Some(bad) = sequences.iter().find(|s| !s.is_consistent()) {
        return Err(ChowError::Internal(format!("exact sequence '{}' is unbalanced", bad.label)));
    }
    let mut caveats = Vec::new();
    if units_ker != DiagGroup::torus(1) {
        caveats.push(format!("CHC^1(X,1) = {units_ker}, not a rank-one torus"));
    }
    Ok(SmoothTwoStepResult {
        values,
        report: SequenceReport {
            path: Path::SmoothTwoStep,
            checklist: vec![Check {
                name: "units map onto CH^1(E,1)",
                holds: units_coker.is_trivial(),
            }],
            sequences,
            caveats,
        },
    })
}
