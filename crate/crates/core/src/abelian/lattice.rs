use num_integer::Integer;
use num_traits::Zero;

use super::group::{invariants_of_cokernel, DiagGroup, FgAbGroup, PresentedGroup};
use super::matrix::IntMatrix;
use super::snf::SmithDecomposition;
use super::AbelianError;
use crate::par::Strategy;

/// Invariants of `Z^rows / im(M)`.
pub fn cokernel(m: &IntMatrix) -> FgAbGroup {
    invariants_of_cokernel(m)
}

/// [`cokernel`] of every matrix in a batch.
pub fn cokernels(strategy: Strategy, ms: &[IntMatrix]) -> Vec<FgAbGroup> {
    crate::par::map_with(strategy, ms, cokernel)
}

/// Columns form a Z-basis of `ker(M) ⊆ Z^cols`.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let s = SmithDecomposition::compute(m);
    let cols: Vec<usize> = (s.rank..m.cols()).collect();
    s.v.select_columns(&cols)
}

/// Columns form a Z-basis of the lattice spanned by the columns of `m`.
pub fn column_lattice_basis(m: &IntMatrix) -> IntMatrix {
    let s = SmithDecomposition::compute(m);
    let mut out = IntMatrix::zeros(m.rows(), s.rank);
    for k in 0..s.rank {
        let d = &s.d[(k, k)];
        for i in 0..m.rows() {
            out[(i, k)] = &s.u_inv[(i, k)] * d;
        }
    }
    out
}

/// Some integer `X` with `A * X = B`, or `None` when a column of `B` is not in
/// the column lattice of `A`.
pub fn solve_integer(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    assert_eq!(a.rows(), b.rows(), "solve_integer: row mismatch");
    let s = SmithDecomposition::compute(a);
    let ub = &s.u * b;
    let mut y = IntMatrix::zeros(a.cols(), b.cols());
    for j in 0..b.cols() {
        for i in 0..a.rows() {
            let x = &ub[(i, j)];
            if i < s.rank {
                let (q, r) = x.div_rem(&s.d[(i, i)]);
                if !r.is_zero() {
                    return None;
                }
                y[(i, j)] = q;
            } else if !x.is_zero() {
                return None;
            }
        }
    }
    Some(&s.v * &y)
}

pub fn in_column_lattice(a: &IntMatrix, b: &IntMatrix) -> bool {
    solve_integer(a, b).is_some()
}

/// A quotient `Z / B` of lattices `B ⊆ Z ⊆ Z^n`, kept with explicit coordinates
/// so that classes can be lifted to and recognised from the ambient lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subquotient {
    /// `n x k`, linearly independent columns spanning `Z`.
    cycles: IntMatrix,
    /// `k x b`, generators of `B` in the coordinates of `cycles`.
    boundaries: IntMatrix,
}

impl Subquotient {
    /// Builds `span(z) / span(b)` from arbitrary generating sets.
    pub fn new(z: &IntMatrix, b: &IntMatrix) -> Result<Self, AbelianError> {
        if z.rows() != b.rows() {
            return Err(AbelianError::ShapeMismatch(format!(
                "subquotient: ambient dimensions {} and {} differ",
                z.rows(),
                b.rows()
            )));
        }
        let cycles = column_lattice_basis(z);
        let boundaries = solve_integer(&cycles, b).ok_or(AbelianError::NotInLattice)?;
        Ok(Subquotient { cycles, boundaries })
    }

    pub fn ambient_dim(&self) -> usize {
        self.cycles.rows()
    }

    /// Number of coordinates (rank of the cycle lattice).
    pub fn coordinate_dim(&self) -> usize {
        self.cycles.cols()
    }

    pub fn cycles(&self) -> &IntMatrix {
        &self.cycles
    }

    pub fn boundaries(&self) -> &IntMatrix {
        &self.boundaries
    }

    pub fn group(&self) -> FgAbGroup {
        cokernel(&self.boundaries)
    }

    /// Presentation on the cycle coordinates.
    pub fn as_presented(&self) -> PresentedGroup {
        PresentedGroup::new(self.coordinate_dim(), self.boundaries.clone())
            .expect("boundary coordinates have one row per cycle coordinate")
    }

    /// Ambient vectors (columns) for the given coordinate columns.
    pub fn lift(&self, coords: &IntMatrix) -> IntMatrix {
        &self.cycles * coords
    }

    /// Coordinates of ambient columns lying in the cycle lattice.
    pub fn coordinates_of(&self, ambient: &IntMatrix) -> Option<IntMatrix> {
        solve_integer(&self.cycles, ambient)
    }
}

/// Invariants of `span(z) / span(b)`; errors when `b` is not inside `span(z)`.
pub fn subquotient(z: &IntMatrix, b: &IntMatrix) -> Result<FgAbGroup, AbelianError> {
    Subquotient::new(z, b).map(|s| s.group())
}

/// `A ⊗ C*`: torsion dies because `C*` is divisible.
pub fn tensor_torus(a: &FgAbGroup) -> DiagGroup {
    DiagGroup::torus(a.free_rank())
}

/// Kernel and cokernel of the torus homomorphism `(C*)^cols -> (C*)^rows`,
/// `x ↦ (Π_i x_i^{M_ji})_j`, computed on character lattices.
pub fn torus_map_ker_coker(m: &IntMatrix) -> (DiagGroup, DiagGroup) {
    let mt = m.transpose();
    let s = SmithDecomposition::compute(&mt);
    let char_coker = cokernel(&mt);
    let ker = DiagGroup::new(m.cols() - s.rank, char_coker.torsion_part())
        .expect("torsion part has free rank 0");
    let coker = DiagGroup::torus(m.rows() - s.rank);
    (ker, coker)
}
