use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

use chowcalc_core::abelian::{kernel_basis, IntMatrix, PresentedGroup};
use chowcalc_core::chowcalc::{pic_row, PicData, ResolutionData};
use chowcalc_core::complexes::{ChainMap, CochainComplex, DoubleComplex};
use chowcalc_core::dualcomplex::{build_dual_complex, DualComplex, Stratum};

pub fn matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data = (0..rows * cols).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect();
    IntMatrix::from_vec(rows, cols, data)
}

/// A random unimodular matrix and its inverse, as a product of elementary
/// operations.
pub fn unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize) -> (IntMatrix, IntMatrix) {
    let mut u = IntMatrix::identity(n);
    let mut inv = IntMatrix::identity(n);
    if n == 0 {
        return (u, inv);
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        match rng.gen_range(0..3) {
            0 if i != j => {
                let k = BigInt::from(rng.gen_range(-2..=2));
                let mut e = IntMatrix::identity(n);
                e[(i, j)] = k.clone();
                let mut f = IntMatrix::identity(n);
                f[(i, j)] = -k;
                u = &e * &u;
                inv = &inv * &f;
            }
            1 => {
                let mut e = IntMatrix::identity(n);
                e[(i, i)] = BigInt::from(-1);
                u = &e * &u;
                inv = &inv * &e;
            }
            _ if i != j => {
                let mut e = IntMatrix::identity(n);
                e[(i, i)] = BigInt::zero();
                e[(j, j)] = BigInt::zero();
                e[(i, j)] = 1.into();
                e[(j, i)] = 1.into();
                u = &e * &u;
                inv = &inv * &e;
            }
            _ => {}
        }
    }
    (u, inv)
}

fn name(indices: &[usize]) -> String {
    let parts: Vec<String> = indices.iter().map(|i| i.to_string()).collect();
    format!("E{}", parts.join("_"))
}

/// Strata of the simplicial complex generated by `facets`.
pub fn strata_from_facets(facets: &[Vec<usize>]) -> Vec<Stratum> {
    let mut sets = BTreeSet::new();
    for f in facets {
        let n = f.len();
        for mask in 1u32..(1 << n) {
            let s: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).map(|i| f[i]).collect();
            sets.insert(s);
        }
    }
    sets.into_iter().map(|s| Stratum::new(name(&s), &s)).collect()
}

/// A downward-closed complex on `1..=vertices` with a few random facets of
/// size at most `max_facet`; every vertex appears.
pub fn simplicial_complex<R: Rng>(rng: &mut R, vertices: usize, max_facet: usize) -> Vec<Stratum> {
    let mut facets: Vec<Vec<usize>> = (1..=vertices).map(|v| vec![v]).collect();
    let count = rng.gen_range(0..=vertices + 2);
    let all: Vec<usize> = (1..=vertices).collect();
    for _ in 0..count {
        let size = rng.gen_range(2..=max_facet.min(vertices).max(2));
        if size > vertices {
            continue;
        }
        let mut f: Vec<usize> = all.choose_multiple(rng, size).copied().collect();
        f.sort_unstable();
        facets.push(f);
    }
    strata_from_facets(&facets)
}

/// Random spanning tree on `1..=v` (random attachment).
pub fn tree_edges<R: Rng>(rng: &mut R, v: usize) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (1..=v).collect();
    order.shuffle(rng);
    (1..v)
        .map(|i| {
            let a = order[i];
            let b = order[rng.gen_range(0..i)];
            (a.min(b), a.max(b))
        })
        .collect()
}

/// A connected simple graph with `v` vertices and a random number of extra
/// edges on top of a spanning tree.
pub fn connected_graph_edges<R: Rng>(rng: &mut R, v: usize) -> Vec<(usize, usize)> {
    let mut edges: BTreeSet<(usize, usize)> = tree_edges(rng, v).into_iter().collect();
    let max = v * (v - 1) / 2;
    let extra = rng.gen_range(0..=(max - edges.len()).min(v + 2));
    while edges.len() < max && edges.len() < v - 1 + extra {
        let a = rng.gen_range(1..=v);
        let b = rng.gen_range(1..=v);
        if a != b {
            edges.insert((a.min(b), a.max(b)));
        }
    }
    edges.into_iter().collect()
}

pub fn graph_strata(v: usize, edges: &[(usize, usize)]) -> Vec<Stratum> {
    let mut facets: Vec<Vec<usize>> = (1..=v).map(|i| vec![i]).collect();
    facets.extend(edges.iter().map(|&(a, b)| vec![a, b]));
    strata_from_facets(&facets)
}

/// A presented group `Z^free + Z/n_1 + ...` with diagonal relations.
pub fn diagonal_group(free: usize, torsion: &[i64]) -> PresentedGroup {
    let n = free + torsion.len();
    let mut rel = IntMatrix::zeros(n, torsion.len());
    for (k, &t) in torsion.iter().enumerate() {
        rel[(free + k, k)] = t.into();
    }
    PresentedGroup::new(n, rel).expect("diagonal presentation")
}

fn orders(g: &PresentedGroup) -> Vec<BigInt> {
    // diagonal presentations only: order of each generator, 0 when free
    let r = g.relations();
    (0..g.generators())
        .map(|i| (0..r.cols()).map(|j| r[(i, j)].clone()).find(|x| !x.is_zero()).unwrap_or_default())
        .collect()
}

/// Random matrix `Z^src -> Z^tgt` compatible with diagonal presentations.
pub fn compatible_map<R: Rng>(rng: &mut R, src: &PresentedGroup, tgt: &PresentedGroup, bound: i64) -> IntMatrix {
    let mut m = matrix(rng, tgt.generators(), src.generators(), bound);
    let (so, to) = (orders(src), orders(tgt));
    for (j, n) in so.iter().enumerate() {
        if n.is_zero() {
            continue;
        }
        for (i, t) in to.iter().enumerate() {
            m[(i, j)] = if t.is_zero() {
                BigInt::zero()
            } else {
                &m[(i, j)] * (t / n.gcd(t))
            };
        }
    }
    m
}

fn small_group<R: Rng>(rng: &mut R, torsion: bool) -> PresentedGroup {
    let free = rng.gen_range(0..=2);
    let tors: Vec<i64> = if torsion && rng.gen_bool(0.3) { vec![rng.gen_range(2..=4)] } else { vec![] };
    diagonal_group(free, &tors)
}

/// Random Picard data on `gamma`: small groups on strata of dimension at most
/// `d - 2`, random compatible restrictions. Only valid when every 2-cell of
/// `gamma` is a point (or there are none), since restrictions are not made to
/// commute.
pub fn pic_data<R: Rng>(rng: &mut R, gamma: &DualComplex, d: usize, torsion: bool) -> PicData {
    let mut pic = PicData::new();
    let top = gamma.dimension().unwrap_or(0);
    for t in 0..=top {
        if t + 1 >= d {
            continue;
        }
        for c in gamma.cells(t) {
            pic.set_group(c.id.clone(), small_group(rng, torsion));
        }
    }
    for t in 1..=top {
        for c in gamma.cells(t) {
            for &f in &c.faces {
                let face = &gamma.cells(t - 1)[f].id;
                let m = compatible_map(rng, &pic.group(face), &pic.group(&c.id), 2);
                pic.set_restriction(face.clone(), c.id.clone(), m);
            }
        }
    }
    pic
}

/// Shape of a random resolution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    /// A tree of components, any dimension.
    Tree,
    /// A connected graph in dimension 3 (so `H^2(Γ) = 0`).
    GraphThreefold,
    /// A connected graph in dimension 2.
    Surface,
    /// Solid triangles glued along a path, dimension 3.
    Triangles,
}

/// A random valid single-point resolution, the Picard group of the resolution
/// and its restriction to the components.
pub fn resolution<R: Rng>(rng: &mut R, shape: Shape) -> (ResolutionData, PresentedGroup, IntMatrix) {
    let v = rng.gen_range(1..=5);
    let (d, strata) = match shape {
        Shape::Tree => {
            let d = rng.gen_range(2..=4);
            (d, graph_strata(v, &tree_edges(rng, v)))
        }
        Shape::GraphThreefold => (3, graph_strata(v, &connected_graph_edges(rng, v))),
        Shape::Surface => (2, graph_strata(v, &connected_graph_edges(rng, v))),
        Shape::Triangles => {
            let n = rng.gen_range(1..=3);
            let facets: Vec<Vec<usize>> = (0..n).map(|i| vec![2 * i + 1, 2 * i + 2, 2 * i + 3]).collect();
            (3, strata_from_facets(&facets))
        }
    };
    let gamma = build_dual_complex(&strata).expect("generated strata are valid");
    let pic = pic_data(rng, &gamma, d, true);
    let data = ResolutionData::new(d, 1, gamma, pic, &BTreeMap::new()).expect("generated data are valid");
    let pic_x = small_group(rng, true);
    let restriction = restriction_to_components(rng, &data, &pic_x);
    (data, pic_x, restriction)
}

/// A random two-row (`q = 0, -1`) fourth-quadrant double complex over columns
/// `0..columns`: a direct sum of points (possibly finite cyclic), horizontal
/// and vertical arrows, commuting squares and zig-zags carrying a `d2`, in
/// random bases.
pub fn two_row_double_complex<R: Rng>(rng: &mut R, columns: usize) -> DoubleComplex {
    type Pos = (i64, i64);
    let mut gens: BTreeMap<Pos, Vec<i64>> = BTreeMap::new();
    let mut arrows: Vec<(Pos, usize, Pos, usize, i64)> = Vec::new();
    let add = |pos: Pos, order: i64, gens: &mut BTreeMap<Pos, Vec<i64>>| {
        let v = gens.entry(pos).or_default();
        v.push(order);
        v.len() - 1
    };
    let cols = columns as i64;
    let pieces = rng.gen_range(1..=2 * columns + 2);
    let scalar = |rng: &mut R| {
        let mut s = rng.gen_range(-4..=4i64);
        if s == 0 {
            s = 1;
        }
        s
    };
    for _ in 0..pieces {
        let q = -rng.gen_range(0..=1i64);
        match rng.gen_range(0..5) {
            0 => {
                let p = rng.gen_range(0..cols);
                let order = if rng.gen_bool(0.3) { rng.gen_range(2..=6) } else { 0 };
                add((p, q), order, &mut gens);
            }
            1 if cols >= 2 => {
                let p = rng.gen_range(0..cols - 1);
                let a = add((p, q), 0, &mut gens);
                let b = add((p + 1, q), 0, &mut gens);
                arrows.push(((p, q), a, (p + 1, q), b, scalar(rng)));
            }
            2 => {
                let p = rng.gen_range(0..cols);
                let a = add((p, -1), 0, &mut gens);
                let b = add((p, 0), 0, &mut gens);
                arrows.push(((p, -1), a, (p, 0), b, scalar(rng)));
            }
            3 if cols >= 2 => {
                let p = rng.gen_range(0..cols - 1);
                let (a, b, k) = (scalar(rng), scalar(rng), rng.gen_range(-3..=3i64));
                let bl = add((p, -1), 0, &mut gens);
                let br = add((p + 1, -1), 0, &mut gens);
                let tl = add((p, 0), 0, &mut gens);
                let tr = add((p + 1, 0), 0, &mut gens);
                arrows.push(((p, -1), bl, (p + 1, -1), br, a));
                arrows.push(((p, -1), bl, (p, 0), tl, b));
                arrows.push(((p + 1, -1), br, (p + 1, 0), tr, b * k));
                arrows.push(((p, 0), tl, (p + 1, 0), tr, a * k));
            }
            4 if cols >= 3 => {
                let p = rng.gen_range(0..cols - 2);
                let (al, be, ga) = (scalar(rng), scalar(rng), scalar(rng));
                let x = add((p, 0), 0, &mut gens);
                let y = add((p + 1, -1), 0, &mut gens);
                let z = add((p + 1, 0), 0, &mut gens);
                let w = add((p + 2, -1), 0, &mut gens);
                arrows.push(((p, 0), x, (p + 1, 0), z, al));
                arrows.push(((p + 1, -1), y, (p + 1, 0), z, be));
                arrows.push(((p + 1, -1), y, (p + 2, -1), w, ga));
            }
            _ => {
                let p = rng.gen_range(0..cols);
                add((p, q), 0, &mut gens);
            }
        }
    }

    let mut groups = BTreeMap::new();
    let mut bases = BTreeMap::new();
    for (&pos, ords) in &gens {
        let n = ords.len();
        let torsion: Vec<usize> = (0..n).filter(|&i| ords[i] != 0).collect();
        let mut rel = IntMatrix::zeros(n, torsion.len());
        for (k, &i) in torsion.iter().enumerate() {
            rel[(i, k)] = ords[i].into();
        }
        let (u, inv) = unimodular(rng, n, 3 * n);
        groups.insert(pos, PresentedGroup::new(n, &u * &rel).expect("shape"));
        bases.insert(pos, (u, inv));
    }
    let mut maps: BTreeMap<(Pos, Pos), IntMatrix> = BTreeMap::new();
    for &(s, i, t, j, k) in &arrows {
        let m = maps
            .entry((s, t))
            .or_insert_with(|| IntMatrix::zeros(gens[&t].len(), gens[&s].len()));
        m[(j, i)] = &m[(j, i)] + BigInt::from(k);
    }
    let mut b = DoubleComplex::builder();
    for (&pos, g) in &groups {
        b = b.entry(pos.0, pos.1, g.clone());
    }
    for (&(s, t), m) in &maps {
        let changed = &(&bases[&t].0 * m) * &bases[&s].1;
        if s.1 == t.1 {
            b = b.horizontal(s.0, s.1, changed);
        } else {
            b = b.vertical(s.0, s.1, changed);
        }
    }
    b.build().expect("generated double complex is valid")
}

/// A random complex of free lattices in degrees `0..len`: each differential is
/// a random combination of the left kernel of the previous one.
pub fn free_complex<R: Rng>(rng: &mut R, len: usize, max_rank: usize) -> CochainComplex {
    let ranks: Vec<usize> = (0..len).map(|_| rng.gen_range(0..=max_rank)).collect();
    let mut diffs: Vec<IntMatrix> = Vec::new();
    for t in 0..len.saturating_sub(1) {
        let d = match diffs.last() {
            None => matrix(rng, ranks[t + 1], ranks[t], 3),
            Some(prev) => {
                let left = kernel_basis(&prev.transpose()).transpose();
                &matrix(rng, ranks[t + 1], left.rows(), 2) * &left
            }
        };
        diffs.push(d);
    }
    CochainComplex::free(0, &ranks, diffs).expect("differentials square to zero")
}

/// `k·id + d h + h d` for a random homotopy `h`.
pub fn self_map<R: Rng>(rng: &mut R, c: &CochainComplex, k: i64) -> ChainMap {
    let hs: BTreeMap<i64, IntMatrix> = c
        .degrees()
        .skip(1)
        .map(|t| (t, matrix(rng, c.generators(t - 1), c.generators(t), 2)))
        .collect();
    let h = |t: i64| hs.get(&t).cloned().unwrap_or_else(|| IntMatrix::zeros(c.generators(t - 1), c.generators(t)));
    let components = c
        .degrees()
        .map(|t| {
            let mut m = IntMatrix::identity(c.generators(t)).scale(&BigInt::from(k));
            m = m.add(&(&c.differential(t - 1) * &h(t)));
            m = m.add(&(&h(t + 1) * &c.differential(t)));
            (t, m)
        })
        .collect();
    ChainMap::new(c.clone(), c.clone(), components).expect("a chain map")
}

/// A random restriction `Pic(X~) -> ⊕ Pic(E_i)` whose composite with the
/// first Picard-row differential vanishes. Torsion generators of `pic_x` map
/// to zero.
pub fn restriction_to_components<R: Rng>(rng: &mut R, data: &ResolutionData, pic_x: &PresentedGroup) -> IntMatrix {
    let row = pic_row(data).expect("valid Picard row");
    let n0 = row.generators(0);
    let lattice = if row.len() > 1 {
        let k = kernel_basis(&row.differential(0).hstack(row.term(1).relations()));
        k.submatrix(0..n0, 0..k.cols())
    } else {
        IntMatrix::identity(n0)
    };
    let mut m = &lattice * &matrix(rng, lattice.cols(), pic_x.generators(), 2);
    for (j, o) in orders(pic_x).iter().enumerate() {
        if !o.is_zero() {
            for i in 0..n0 {
                m[(i, j)] = BigInt::zero();
            }
        }
    }
    m
}
