use std::collections::{BTreeMap, HashMap};

use crate::abelian::{FgAbGroup, IntMatrix};
use crate::complexes::{sign, CochainComplex};

use super::DualError;

/// One irreducible component of `∩_{i∈I} E_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub id: String,
    pub indices: Vec<usize>,
    /// The whole intersection `E_I` is irreducible, i.e. this is its only
    /// component.
    pub irreducible: bool,
    /// Explicit faces, one per omitted index in sorted order. Needed only when
    /// some face index set carries several strata.
    pub faces: Option<Vec<String>>,
}

impl Stratum {
    pub fn new(id: impl Into<String>, indices: &[usize]) -> Self {
        Stratum {
            id: id.into(),
            indices: indices.to_vec(),
            irreducible: true,
            faces: None,
        }
    }

    /// A component of a reducible intersection.
    pub fn reducible(id: impl Into<String>, indices: &[usize]) -> Self {
        Stratum {
            irreducible: false,
            ..Stratum::new(id, indices)
        }
    }

    pub fn with_faces(mut self, faces: &[&str]) -> Self {
        self.faces = Some(faces.iter().map(|s| s.to_string()).collect());
        self
    }
}

/// A cell of the dual complex; `faces[j]` is the position (in the cells one
/// dimension lower) of the face omitting `indices[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub id: String,
    pub indices: Vec<usize>,
    pub irreducible: bool,
    pub faces: Vec<usize>,
}

impl Cell {
    pub fn dimension(&self) -> usize {
        self.indices.len() - 1
    }
}

/// The dual complex of a simple normal crossing divisor. Cells of each
/// dimension are sorted by `(indices, id)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualComplex {
    cells: Vec<Vec<Cell>>,
}

pub fn build_dual_complex(strata: &[Stratum]) -> Result<DualComplex, DualError> {
    let mut seen = HashMap::new();
    let mut normalized = Vec::with_capacity(strata.len());
    for s in strata {
        if seen.insert(s.id.clone(), ()).is_some() {
            return Err(DualError::DuplicateId(s.id.clone()));
        }
        if s.indices.is_empty() {
            return Err(DualError::EmptyIndices(s.id.clone()));
        }
        let mut idx = s.indices.clone();
        idx.sort_unstable();
        idx.dedup();
        if idx.len() != s.indices.len() {
            return Err(DualError::RepeatedIndex(s.id.clone()));
        }
        normalized.push(Stratum {
            indices: idx,
            ..s.clone()
        });
    }

    let mut by_set: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (k, s) in normalized.iter().enumerate() {
        by_set.entry(s.indices.clone()).or_default().push(k);
    }
    for (set, members) in &by_set {
        if members.len() > 1 {
            if set.len() == 1 {
                return Err(DualError::ReducibleComponent(set[0]));
            }
            if let Some(&k) = members.iter().find(|&&k| normalized[k].irreducible) {
                return Err(DualError::InconsistentIrreducibility(normalized[k].id.clone()));
            }
        }
    }

    let dim = normalized.iter().map(|s| s.indices.len()).max().unwrap_or(0);
    let mut layers: Vec<Vec<&Stratum>> = vec![Vec::new(); dim];
    for s in &normalized {
        layers[s.indices.len() - 1].push(s);
    }
    for layer in &mut layers {
        layer.sort_by(|a, b| (&a.indices, &a.id).cmp(&(&b.indices, &b.id)));
    }
    let position: HashMap<&str, usize> = layers
        .iter()
        .flat_map(|l| l.iter().enumerate().map(|(i, s)| (s.id.as_str(), i)))
        .collect();

    let mut cells: Vec<Vec<Cell>> = Vec::with_capacity(dim);
    for (t, layer) in layers.iter().enumerate() {
        let mut out = Vec::with_capacity(layer.len());
        for s in layer {
            let faces = if t == 0 {
                Vec::new()
            } else {
                resolve_faces(s, &normalized, &by_set, &position)?
            };
            out.push(Cell {
                id: s.id.clone(),
                indices: s.indices.clone(),
                irreducible: s.irreducible,
                faces,
            });
        }
        cells.push(out);
    }
    let gamma = DualComplex { cells };
    gamma.check_faces_coherent()?;
    Ok(gamma)
}

fn resolve_faces(
    s: &Stratum,
    all: &[Stratum],
    by_set: &BTreeMap<Vec<usize>, Vec<usize>>,
    position: &HashMap<&str, usize>,
) -> Result<Vec<usize>, DualError> {
    let n = s.indices.len();
    if let Some(given) = &s.faces {
        if given.len() != n {
            return Err(DualError::BadFaceAssignment {
                id: s.id.clone(),
                reason: format!("expected {n} faces, got {}", given.len()),
            });
        }
    }
    let mut faces = Vec::with_capacity(n);
    for j in 0..n {
        let mut face = s.indices.clone();
        face.remove(j);
        let candidates = by_set.get(&face).map(Vec::as_slice).unwrap_or(&[]);
        let chosen = match (&s.faces, candidates) {
            (_, []) => {
                return Err(DualError::MissingFace {
                    id: s.id.clone(),
                    face,
                })
            }
            (Some(given), _) => {
                let name = &given[j];
                candidates
                    .iter()
                    .copied()
                    .find(|&k| &all[k].id == name)
                    .ok_or_else(|| DualError::BadFaceAssignment {
                        id: s.id.clone(),
                        reason: format!("face {j} ({name}) is not a stratum on {face:?}"),
                    })?
            }
            (None, [k]) => *k,
            (None, _) => {
                return Err(DualError::AmbiguousFace {
                    id: s.id.clone(),
                    face,
                })
            }
        };
        faces.push(position[all[chosen].id.as_str()]);
    }
    Ok(faces)
}

impl DualComplex {
    /// Top cell dimension; `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.cells.len().checked_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self, t: usize) -> &[Cell] {
        self.cells.get(t).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn cell_count(&self, t: usize) -> usize {
        self.cells(t).len()
    }

    pub fn vertex_count(&self) -> usize {
        self.cell_count(0)
    }

    pub fn edge_count(&self) -> usize {
        self.cell_count(1)
    }

    /// `(dimension, position)` of the cell with this id.
    pub fn locate(&self, id: &str) -> Option<(usize, usize)> {
        self.cells
            .iter()
            .enumerate()
            .find_map(|(t, l)| l.iter().position(|c| c.id == id).map(|i| (t, i)))
    }

    /// No index set carries two cells, so `Γ` is a simplicial complex.
    pub fn is_simplicial(&self) -> bool {
        self.cells
            .iter()
            .all(|l| l.windows(2).all(|w| w[0].indices != w[1].indices))
    }

    /// Every stratum is flagged as the whole of its intersection.
    pub fn all_irreducible(&self) -> bool {
        self.cells.iter().flatten().all(|c| c.irreducible)
    }

    /// `Σ (-1)^t #(t-cells)`.
    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(t, l)| sign(t as i64) * l.len() as i64)
            .sum()
    }

    /// Connected components as sorted lists of vertex positions, ordered by
    /// their first vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        for e in self.cells(1) {
            let (a, b) = (find(&mut parent, e.faces[0]), find(&mut parent, e.faces[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..n {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        groups.into_values().collect()
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// `δ^t` as a `#(t+1)-cells x #(t-cells)` matrix.
    pub fn coboundary(&self, t: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.cell_count(t + 1), self.cell_count(t));
        for (r, tau) in self.cells(t + 1).iter().enumerate() {
            for (j, &f) in tau.faces.iter().enumerate() {
                m[(r, f)] += sign(j as i64);
            }
        }
        m
    }

    fn check_faces_coherent(&self) -> Result<(), DualError> {
        for t in 0..self.cells.len().saturating_sub(2) {
            if !(&self.coboundary(t + 1) * &self.coboundary(t)).is_zero() {
                return Err(DualError::IncoherentFaces { dimension: t + 2 });
            }
        }
        Ok(())
    }
}

/// `C^t = Z^{t-cells}` with the alternating face-sum coboundary.
pub fn coboundary_complex(gamma: &DualComplex) -> CochainComplex {
    let Some(top) = gamma.dimension() else {
        return CochainComplex::zero();
    };
    let ranks: Vec<usize> = (0..=top).map(|t| gamma.cell_count(t)).collect();
    let diffs = (0..top).map(|t| gamma.coboundary(t)).collect();
    CochainComplex::free(0, &ranks, diffs).expect("face maps are coherent")
}

pub fn gamma_cohomology(gamma: &DualComplex, t: usize) -> FgAbGroup {
    coboundary_complex(gamma).cohomology(t as i64)
}

/// `H^0 = Z` and `H^t = 0` for `t >= 1`.
pub fn is_acyclic(gamma: &DualComplex) -> bool {
    let c = coboundary_complex(gamma);
    c.degrees().all(|t| {
        let h = c.cohomology(t);
        if t == 0 {
            h == FgAbGroup::free(1)
        } else {
            h.is_trivial()
        }
    }) && !c.is_empty()
}

