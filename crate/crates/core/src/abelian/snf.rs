//! Smith normal form by elementary row and column operations.
//!
//! The reduction pivots on the entry of minimal nonzero absolute value in the
//! active block, clears the pivot row and column by division with remainder,
//! and then enforces the divisibility chain by folding offending rows into the
//! pivot row. Transform matrices and their inverses are tracked alongside so
//! that kernels, images and lattice solves can reuse one decomposition.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// `u * m * v = d` with `u`, `v` unimodular and `d` diagonal, `d[0] | d[1] | ...`,
/// nonzero diagonal entries positive.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl SmithDecomposition {
    pub fn compute(m: &IntMatrix) -> Self {
        Reducer::new(m).run()
    }

    /// Nonzero invariant factors `d[0] | d[1] | ...`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// `(U, D, V)` with `U * M * V = D`.
pub fn snf(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let s = SmithDecomposition::compute(m);
    (s.u, s.d, s.v)
}

pub fn rank(m: &IntMatrix) -> usize {
    SmithDecomposition::compute(m).rank
}

struct Reducer {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reducer {
    fn new(m: &IntMatrix) -> Self {
        Reducer {
            a: m.clone(),
            u: IntMatrix::identity(m.rows()),
            u_inv: IntMatrix::identity(m.rows()),
            v: IntMatrix::identity(m.cols()),
            v_inv: IntMatrix::identity(m.cols()),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    // row[t] += k * row[s]
    fn add_row(&mut self, t: usize, s: usize, k: &BigInt) {
        self.a.add_row_multiple(t, s, k);
        self.u.add_row_multiple(t, s, k);
        self.u_inv.add_col_multiple(s, t, &-k);
    }

    // col[t] += k * col[s]
    fn add_col(&mut self, t: usize, s: usize, k: &BigInt) {
        self.a.add_col_multiple(t, s, k);
        self.v.add_col_multiple(t, s, k);
        self.v_inv.add_row_multiple(s, t, &-k);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Position of the minimal nonzero |entry| in the block `[t.., t..]`.
    fn min_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), BigInt)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if best.as_ref().is_none_or(|(_, b)| ax < *b) {
                    best = Some(((i, j), ax));
                }
            }
        }
        best.map(|(p, _)| p)
    }

    /// Minimal nonzero |entry| among row t and column t (excluding the pivot).
    fn min_in_cross(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), BigInt)> = None;
        let mut consider = |pos: (usize, usize), x: &BigInt| {
            if x.is_zero() {
                return;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, b)| ax < *b) {
                best = Some((pos, ax));
            }
        };
        for i in t + 1..self.a.rows() {
            consider((i, t), &self.a[(i, t)]);
        }
        for j in t + 1..self.a.cols() {
            consider((t, j), &self.a[(t, j)]);
        }
        best.map(|(p, _)| p)
    }

    fn move_to_pivot(&mut self, t: usize, (i, j): (usize, usize)) {
        self.swap_rows(t, i);
        self.swap_cols(t, j);
    }

    fn run(mut self) -> SmithDecomposition {
        let limit = self.a.rows().min(self.a.cols());
        let mut t = 0;
        while t < limit {
            let Some(pos) = self.min_in_block(t) else {
                break;
            };
            self.move_to_pivot(t, pos);
            loop {
                let pivot = self.a[(t, t)].clone();
                for i in t + 1..self.a.rows() {
                    let q = self.a[(i, t)].div_floor(&pivot);
                    if !q.is_zero() {
                        self.add_row(i, t, &-q);
                    }
                }
                for j in t + 1..self.a.cols() {
                    let q = self.a[(t, j)].div_floor(&pivot);
                    if !q.is_zero() {
                        self.add_col(j, t, &-q);
                    }
                }
                if let Some(pos) = self.min_in_cross(t) {
                    // a remainder smaller than the pivot survived
                    self.move_to_pivot(t, pos);
                    continue;
                }
                let offending = (t + 1..self.a.rows()).find(|&i| {
                    (t + 1..self.a.cols()).any(|j| !self.a[(i, j)].is_multiple_of(&pivot))
                });
                match offending {
                    Some(i) => self.add_row(t, i, &BigInt::from(1)),
                    None => break,
                }
            }
            if self.a[(t, t)].is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
        SmithDecomposition {
            u: self.u,
            u_inv: self.u_inv,
            d: self.a,
            v: self.v,
            v_inv: self.v_inv,
            rank: t,
        }
    }
}
