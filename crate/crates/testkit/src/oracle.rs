use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use chowcalc_core::abelian::{FgAbGroup, IntMatrix};

fn to_rows(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

/// Rank over Q by Bareiss elimination.
pub fn rational_rank(m: &IntMatrix) -> usize {
    let mut a = to_rows(m);
    let (rows, cols) = m.shape();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let v = &a[rank][c] * &a[r][k] - &a[r][c] * &a[rank][k];
                a[r][k] = v / &prev;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Determinant by Bareiss elimination.
pub fn determinant(m: &IntMatrix) -> BigInt {
    assert_eq!(m.rows(), m.cols());
    let n = m.rows();
    let mut a = to_rows(m);
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigInt::zero();
        };
        if p != c {
            a.swap(p, c);
            sign = -sign;
        }
        for r in c + 1..n {
            for k in c + 1..n {
                let v = &a[c][c] * &a[r][k] - &a[r][c] * &a[c][k];
                a[r][k] = v / &prev;
            }
        }
        prev = a[c][c].clone();
    }
    if n == 0 {
        BigInt::one()
    } else {
        sign * &a[n - 1][n - 1]
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// gcd of all `k x k` minors (`d_0 = 1`).
pub fn determinantal_divisor(m: &IntMatrix, k: usize) -> BigInt {
    if k == 0 {
        return BigInt::one();
    }
    let mut g = BigInt::zero();
    for rows in combinations(m.rows(), k) {
        for cols in combinations(m.cols(), k) {
            let data = rows
                .iter()
                .flat_map(|&i| cols.iter().map(move |&j| m[(i, j)].clone()))
                .collect();
            g = g.gcd(&determinant(&IntMatrix::from_vec(k, k, data)));
        }
    }
    g
}

/// Invariant factors of `m` from determinantal divisors.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut prev = BigInt::one();
    for k in 1..=m.rows().min(m.cols()) {
        let d = determinantal_divisor(m, k);
        if d.is_zero() {
            break;
        }
        out.push(&d / &prev);
        prev = d;
    }
    out
}

/// `Z^rows / im(m)` from determinantal divisors; meant for small matrices.
pub fn cokernel(m: &IntMatrix) -> FgAbGroup {
    let factors = invariant_factors(m);
    let torsion: Vec<BigInt> = factors.iter().filter(|d| !d.abs().is_one()).map(|d| d.abs()).collect();
    FgAbGroup::new(m.rows() - factors.len(), torsion).expect("invariant factors form a divisibility chain")
}

/// Free rank of `H^t` of a complex of free groups with differentials
/// `d_{t-1}: Z^{n_{t-1}} -> Z^{n_t}` and `d_t: Z^{n_t} -> Z^{n_{t+1}}`.
pub fn free_cohomology_rank(n_t: usize, incoming: Option<&IntMatrix>, outgoing: Option<&IntMatrix>) -> usize {
    n_t - outgoing.map_or(0, rational_rank) - incoming.map_or(0, rational_rank)
}

/// `H^t` of a complex of free groups: the torsion of `H^t` is the torsion of
/// `coker(d_{t-1})`, since `ker d_t` is saturated.
pub fn free_cohomology(n_t: usize, incoming: Option<&IntMatrix>, outgoing: Option<&IntMatrix>) -> FgAbGroup {
    let free = free_cohomology_rank(n_t, incoming, outgoing);
    let torsion = incoming.map_or_else(Vec::new, |d| cokernel(d).torsion().to_vec());
    FgAbGroup::new(free, torsion).expect("torsion from a cokernel")
}

/// Order of the torsion subgroup.
pub fn torsion_order(g: &FgAbGroup) -> BigInt {
    g.torsion().iter().fold(BigInt::one(), |acc, d| acc * d)
}
