use std::collections::BTreeMap;

use crate::abelian::{in_column_lattice, IntMatrix, PresentedGroup};
use crate::dualcomplex::DualComplex;

use super::ChowError;

/// Picard presentations of the strata and the restriction maps between them.
///
/// Strata without an entry have trivial Picard group. A restriction is keyed
/// by `(face, coface)` where the coface stratum lies inside the face stratum
/// (one more component index) and is shaped `gens(coface) x gens(face)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PicData {
    groups: BTreeMap<String, PresentedGroup>,
    restrictions: BTreeMap<(String, String), IntMatrix>,
    continuous: BTreeMap<String, String>,
}

impl PicData {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set_group(&mut self, id: impl Into<String>, g: PresentedGroup) {
        self.groups.insert(id.into(), g);
    }

    pub fn with_group(mut self, id: impl Into<String>, g: PresentedGroup) -> Self {
        self.set_group(id, g);
        self
    }

    pub fn set_restriction(&mut self, face: impl Into<String>, coface: impl Into<String>, m: IntMatrix) {
        self.restrictions.insert((face.into(), coface.into()), m);
    }

    pub fn with_restriction(
        mut self,
        face: impl Into<String>,
        coface: impl Into<String>,
        m: IntMatrix,
    ) -> Self {
        self.set_restriction(face, coface, m);
        self
    }

    /// An opaque label for a non-finitely-generated part of a Picard group.
    /// It is carried into reports and ignored by the computation.
    pub fn set_continuous_part(&mut self, id: impl Into<String>, label: impl Into<String>) {
        self.continuous.insert(id.into(), label.into());
    }

    pub fn group(&self, id: &str) -> PresentedGroup {
        self.groups.get(id).cloned().unwrap_or_else(PresentedGroup::trivial)
    }

    pub fn generators(&self, id: &str) -> usize {
        self.groups.get(id).map_or(0, PresentedGroup::generators)
    }

    /// The restriction `Pic(face) -> Pic(coface)`; zero when either side has
    /// no generators and nothing was given.
    pub fn restriction(&self, face: &str, coface: &str) -> Option<IntMatrix> {
        match self.restrictions.get(&(face.to_string(), coface.to_string())) {
            Some(m) => Some(m.clone()),
            None => {
                let (r, c) = (self.generators(coface), self.generators(face));
                (r == 0 || c == 0).then(|| IntMatrix::zeros(r, c))
            }
        }
    }

    pub fn continuous_parts(&self) -> &BTreeMap<String, String> {
        &self.continuous
    }

    /// Checks ids, shapes, relation compatibility and that zero-dimensional
    /// strata (cells of dimension `dimension - 1`) have trivial Picard group.
    pub fn validate(&self, gamma: &DualComplex, dimension: usize) -> Result<(), ChowError> {
        for id in self.groups.keys().chain(self.continuous.keys()) {
            if gamma.locate(id).is_none() {
                return Err(ChowError::UnknownStratum(id.clone()));
            }
        }
        for (id, g) in &self.groups {
            let (t, _) = gamma.locate(id).expect("checked above");
            if t + 1 >= dimension && !g.invariants().is_trivial() {
                return Err(ChowError::Consistency(format!(
                    "stratum {id} is a point but has nontrivial Picard group"
                )));
            }
        }
        for ((face, coface), m) in &self.restrictions {
            let (tf, pf) = gamma.locate(face).ok_or_else(|| ChowError::UnknownStratum(face.clone()))?;
            let (tc, pc) = gamma
                .locate(coface)
                .ok_or_else(|| ChowError::UnknownStratum(coface.clone()))?;
            if tc != tf + 1 || !gamma.cells(tc)[pc].faces.contains(&pf) {
                return Err(ChowError::Consistency(format!(
                    "restriction {face} -> {coface}: {coface} is not a codimension-one stratum of {face}"
                )));
            }
            let src = self.group(face);
            let tgt = self.group(coface);
            if m.shape() != (tgt.generators(), src.generators()) {
                return Err(ChowError::ShapeMismatch(format!(
                    "restriction {face} -> {coface} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    tgt.generators(),
                    src.generators()
                )));
            }
            if !in_column_lattice(tgt.relations(), &(m * src.relations())) {
                return Err(ChowError::Consistency(format!(
                    "restriction {face} -> {coface} does not respect the relations of Pic({face})"
                )));
            }
        }
        for t in 1..=gamma.dimension().unwrap_or(0) {
            for tau in gamma.cells(t) {
                for &f in &tau.faces {
                    let face = &gamma.cells(t - 1)[f].id;
                    if self.restriction(face, &tau.id).is_none() {
                        return Err(ChowError::MissingRestriction {
                            face: face.clone(),
                            coface: tau.id.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// A resolution `X~ -> X` with exceptional simple normal crossing divisor `E`
/// over `k` isolated singular points.
#[derive(Clone, Debug)]
pub struct ResolutionData {
    dimension: usize,
    singular_points: usize,
    gamma: DualComplex,
    pic: PicData,
    /// Singular point under each component (vertex position -> point).
    lies_over: Vec<usize>,
    user_contractible: Option<bool>,
}

impl ResolutionData {
    /// `lies_over` maps component stratum ids to a singular point in `0..k`;
    /// it may be empty when `k = 1`.
    pub fn new(
        dimension: usize,
        singular_points: usize,
        gamma: DualComplex,
        pic: PicData,
        lies_over: &BTreeMap<String, usize>,
    ) -> Result<Self, ChowError> {
        if dimension < 2 {
            return Err(ChowError::Consistency(format!("dimension {dimension} < 2")));
        }
        if singular_points == 0 {
            return Err(ChowError::Consistency("no singular points".into()));
        }
        if gamma.is_empty() {
            return Err(ChowError::Consistency("the exceptional divisor has no components".into()));
        }
        if gamma.dimension().unwrap_or(0) >= dimension {
            return Err(ChowError::Consistency(format!(
                "dual complex has cells of dimension {} but the divisor has dimension {}",
                gamma.dimension().unwrap_or(0),
                dimension - 1
            )));
        }
        pic.validate(&gamma, dimension)?;

        let mut over = vec![usize::MAX; gamma.vertex_count()];
        for (id, &x) in lies_over {
            match gamma.locate(id) {
                Some((0, v)) => over[v] = x,
                Some(_) => {
                    return Err(ChowError::Consistency(format!(
                        "{id} is not a component of the divisor"
                    )))
                }
                None => return Err(ChowError::UnknownStratum(id.clone())),
            }
            if x >= singular_points {
                return Err(ChowError::Consistency(format!(
                    "{id} lies over point {x}, but there are {singular_points} singular points"
                )));
            }
        }
        for (v, x) in over.iter_mut().enumerate() {
            if *x == usize::MAX {
                if singular_points == 1 {
                    *x = 0;
                } else {
                    return Err(ChowError::Consistency(format!(
                        "component {} does not say which singular point it lies over",
                        gamma.cells(0)[v].id
                    )));
                }
            }
        }
        for comp in gamma.connected_components() {
            if comp.iter().any(|&v| over[v] != over[comp[0]]) {
                return Err(ChowError::Consistency(format!(
                    "connected components of the divisor meet two singular points (at {})",
                    gamma.cells(0)[comp[0]].id
                )));
            }
        }
        for x in 0..singular_points {
            if !over.contains(&x) {
                return Err(ChowError::Consistency(format!(
                    "singular point {x} has no component over it"
                )));
            }
        }
        Ok(ResolutionData {
            dimension,
            singular_points,
            gamma,
            pic,
            lies_over: over,
            user_contractible: None,
        })
    }

    /// Records a user assertion; it is reported but never used in computations.
    pub fn with_user_contractible(mut self, flag: bool) -> Self {
        self.user_contractible = Some(flag);
        self
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn singular_points(&self) -> usize {
        self.singular_points
    }

    pub fn gamma(&self) -> &DualComplex {
        &self.gamma
    }

    pub fn pic(&self) -> &PicData {
        &self.pic
    }

    pub fn lies_over(&self, vertex: usize) -> usize {
        self.lies_over[vertex]
    }

    pub fn user_contractible(&self) -> Option<bool> {
        self.user_contractible
    }

    /// Direct sum of the Picard groups of the components, in vertex order.
    pub fn components_pic(&self) -> PresentedGroup {
        let parts: Vec<PresentedGroup> = self
            .gamma
            .cells(0)
            .iter()
            .map(|c| self.pic.group(&c.id))
            .collect();
        PresentedGroup::direct_sum(&parts)
    }

    /// Exponent matrix of the units map `(C*)^{1+k} -> (C*)^{π0(E)}`: row per
    /// connected component, `+1` in the column of `X~`, `-1` in the column of
    /// the singular point it lies over.
    pub fn units_incidence(&self) -> IntMatrix {
        let comps = self.gamma.connected_components();
        let mut m = IntMatrix::zeros(comps.len(), 1 + self.singular_points);
        for (r, comp) in comps.iter().enumerate() {
            m[(r, 0)] = 1.into();
            m[(r, 1 + self.lies_over[comp[0]])] = (-1).into();
        }
        m
    }
}
