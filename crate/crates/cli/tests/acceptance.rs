use std::collections::BTreeMap;
use std::path::{Path as FsPath, PathBuf};
use std::process::Command;

use chowcalc_cli::{load_config, Input};
use chowcalc_core::abelian::{cokernel, kernel_basis, snf, solve_integer, FgAbGroup, IntMatrix, PresentedGroup};
use chowcalc_core::chowcalc::{
    chc1_divisor, chc1_surface, chc1_variety, pic_row, DivisorResult, PicData,
    ResolutionData, VarietyResult,
};
use chowcalc_core::complexes::{total_complex, DoubleComplex};
use chowcalc_core::dualcomplex::{build_dual_complex, coboundary_complex, gamma_cohomology};
use chowcalc_core::spectral::{e1_page, e2_page, two_row_abutment, PageEntry};
use chowcalc_testkit::random::{self, Shape};
use chowcalc_testkit::oracle;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn mat(rows: usize, cols: usize, entries: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows_shaped(rows, cols, entries)
}

fn fixtures() -> PathBuf {
    FsPath::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn with_free(g: &FgAbGroup, rank: usize) -> FgAbGroup {
    g.direct_sum(&FgAbGroup::free(rank))
}

// 1. Smith normal form

fn is_smith_form(d: &IntMatrix) -> bool {
    let n = d.rows().min(d.cols());
    for i in 0..d.rows() {
        for j in 0..d.cols() {
            if i != j && !d[(i, j)].is_zero() {
                return false;
            }
        }
    }
    let diag: Vec<&BigInt> = (0..n).map(|i| &d[(i, i)]).collect();
    let nonzero = diag.iter().take_while(|x| !x.is_zero()).count();
    diag[nonzero..].iter().all(|x| x.is_zero())
        && diag[..nonzero].iter().all(|x| x.is_positive())
        && diag.windows(2).take(nonzero.saturating_sub(1)).all(|w| w[1].is_multiple_of(w[0]))
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for k in 0..500 {
        let (r, c) = (rng.gen_range(0..=5), rng.gen_range(0..=5));
        let m = random::matrix(&mut rng, r, c, 9);
        let (u, d, v) = snf(&m);
        ensure(&(&u * &m) * &v == d, || format!("matrix {k}: U M V != D"))?;
        ensure(oracle::determinant(&u).abs().is_one(), || format!("matrix {k}: U not unimodular"))?;
        ensure(oracle::determinant(&v).abs().is_one(), || format!("matrix {k}: V not unimodular"))?;
        ensure(is_smith_form(&d), || format!("matrix {k}: D is not a divisibility chain"))?;
        let g = cokernel(&m);
        ensure(g == oracle::cokernel(&m), || format!("matrix {k}: cokernel disagrees with determinantal divisors"))?;
        let (p, _) = random::unimodular(&mut rng, r, 8);
        let (q, _) = random::unimodular(&mut rng, c, 8);
        ensure(cokernel(&(&(&p * &m) * &q)) == g, || format!("matrix {k}: cokernel changed under base change"))?;
    }
    Ok("500 matrices".into())
}

// 2. Coboundary of the dual complex

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for k in 0..100 {
        let v = rng.gen_range(1..=8);
        let gamma = build_dual_complex(&random::simplicial_complex(&mut rng, v, 4)).map_err(|e| e.to_string())?;
        let top = gamma.dimension().unwrap_or(0);
        for t in 0..top.saturating_sub(1) {
            ensure((&gamma.coboundary(t + 1) * &gamma.coboundary(t)).is_zero(), || {
                format!("complex {k}: delta^2 != 0 in degree {t}")
            })?;
        }
        let mut chi = 0i64;
        for t in 0..=top {
            let incoming = (t > 0).then(|| gamma.coboundary(t - 1));
            let outgoing = (t < top).then(|| gamma.coboundary(t));
            let r = oracle::free_cohomology_rank(gamma.cell_count(t), incoming.as_ref(), outgoing.as_ref());
            ensure(gamma_cohomology(&gamma, t).free_rank() == r, || format!("complex {k}: rank of H^{t}"))?;
            chi += if t % 2 == 0 { r as i64 } else { -(r as i64) };
        }
        ensure(chi == gamma.euler_characteristic(), || format!("complex {k}: Euler characteristic"))?;
        ensure(coboundary_complex(&gamma).euler_characteristic() == chi, || format!("complex {k}: Euler characteristic of the cochain complex"))?;
    }
    Ok("100 complexes".into())
}

// 3. Graphs and trees

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for k in 0..50 {
        let v = rng.gen_range(1..=8);
        let edges = random::connected_graph_edges(&mut rng, v);
        let gamma = build_dual_complex(&random::graph_strata(v, &edges)).map_err(|e| e.to_string())?;
        ensure(gamma_cohomology(&gamma, 0).free_rank() == 1, || format!("graph {k}: H^0"))?;
        let h1 = gamma_cohomology(&gamma, 1);
        ensure(h1.free_rank() == edges.len() + 1 - v && h1.torsion().is_empty(), || {
            format!("graph {k}: H^1 = {h1}, expected rank {}", edges.len() + 1 - v)
        })?;
    }
    for k in 0..20 {
        let v = rng.gen_range(1..=8);
        let gamma = build_dual_complex(&random::graph_strata(v, &random::tree_edges(&mut rng, v))).map_err(|e| e.to_string())?;
        ensure(gamma_cohomology(&gamma, 1).is_trivial(), || format!("tree {k}: H^1 != 0"))?;
    }
    Ok("50 graphs, 20 trees".into())
}

// 4. Spectral sequence against the total complex

struct SpectralTally {
    degrees: usize,
    product_mismatches: usize,
    refined_failures: Vec<String>,
}

fn criterion_4() -> (Outcome, SpectralTally) {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut tally = SpectralTally { degrees: 0, product_mismatches: 0, refined_failures: Vec::new() };
    let mut example = None;
    for k in 0..100 {
        let columns = rng.gen_range(1..=4);
        let d = random::two_row_double_complex(&mut rng, columns);
        let tot = total_complex(&d);
        let p2 = match e2_page(&e1_page(&d)) {
            Ok(p) => p,
            Err(e) => return (Err(format!("complex {k}: {e}")), tally),
        };
        let ab = match two_row_abutment(&p2, columns) {
            Ok(a) if a.resolved => a,
            Ok(_) => return (Err(format!("complex {k}: unresolved d2")), tally),
            Err(e) => return (Err(format!("complex {k}: {e}")), tally),
        };
        for n in tot.degrees() {
            tally.degrees += 1;
            let h = oracle_total_cohomology(&d, n);
            let pieces: Vec<FgAbGroup> = ab
                .pieces(n)
                .unwrap_or(&[])
                .iter()
                .map(|g| g.entry.as_discrete().cloned().unwrap_or_else(FgAbGroup::trivial))
                .collect();
            let free: usize = pieces.iter().map(|g| g.free_rank()).sum();
            if free != h.free_rank() {
                tally.refined_failures.push(format!("complex {k}, degree {n}: free rank {free} vs {}", h.free_rank()));
            }
            let product = pieces.iter().fold(BigInt::one(), |a, g| a * oracle::torsion_order(g));
            let th = oracle::torsion_order(&h);
            if product != th {
                tally.product_mismatches += 1;
                if example.is_none() {
                    let shown: Vec<String> = pieces.iter().map(|g| g.to_string()).collect();
                    example = Some(format!("complex {k}, degree {n}: pieces [{}], H = {h}", shown.join(", ")));
                }
            }
            // always: |T(sub)| divides |T(H)| divides the product; equality
            // when the sub piece is finite
            let refined = product.is_multiple_of(&th)
                && pieces.first().is_none_or(|s| pieces.len() < 2 || th.is_multiple_of(&oracle::torsion_order(s)))
                && (pieces.len() < 2 || pieces[0].free_rank() > 0 || product == th);
            if !refined {
                tally.refined_failures.push(format!("complex {k}, degree {n}: torsion {th} vs pieces {product}"));
            }
        }
    }
    let outcome = if tally.product_mismatches == 0 && tally.refined_failures.is_empty() {
        Ok(format!("100 double complexes, {} degrees", tally.degrees))
    } else {
        Err(format!(
            "torsion orders of the graded pieces multiply to |T(H(Tot))| in {} of {} degrees; \
             {} mismatches are free-by-finite extensions (e.g. {}); free ranks and the divisibility \
             bounds hold in {} of {} degrees",
            tally.degrees - tally.product_mismatches,
            tally.degrees,
            tally.product_mismatches,
            example.unwrap_or_default(),
            tally.degrees - tally.refined_failures.len(),
            tally.degrees
        ))
    };
    (outcome, tally)
}

/// `H^n(Tot)` as cycles modulo boundaries and relations, with the quotient
/// read off by determinantal divisors.
fn oracle_total_cohomology(d: &DoubleComplex, n: i64) -> FgAbGroup {
    let tot = total_complex(d);
    let gens = |t: i64| tot.generators(t);
    let rel = |t: i64| tot.term(t).relations().clone();
    let dn = if n < tot.max_degree() { Some(tot.differential(n)) } else { None };
    let dp = if n > tot.min_degree() { Some(tot.differential(n - 1)) } else { None };
    let g = gens(n);
    let cycles = match &dn {
        Some(m) => {
            let stacked = m.hstack(&rel(n + 1));
            let k = kernel_basis(&stacked);
            k.submatrix(0..g, 0..k.cols())
        }
        None => IntMatrix::identity(g),
    };
    let mut boundaries = rel(n);
    if let Some(m) = &dp {
        boundaries = m.hstack(&boundaries);
    }
    let coords = solve_integer(&cycles, &boundaries).expect("boundaries are cycles");
    oracle::cokernel(&coords)
}

// 5. Hollow triangle

/// `H^t` of `A^0 --d--> A^1` for free groups, by the oracle.
fn two_term(d: &IntMatrix, t: i64) -> FgAbGroup {
    match t {
        0 => oracle::free_cohomology(d.cols(), None, Some(d)),
        1 => oracle::free_cohomology(d.rows(), Some(d), None),
        _ => FgAbGroup::trivial(),
    }
}

/// Triangle data with random restrictions: `Pic(E_i) = Z^{a_i}`,
/// `Pic(E_ij) = Z^{b_ij}`. Returns the data and the Picard differential
/// assembled by hand (`x_ij = r_j x_j - r_i x_i`).
fn hollow_triangle<R: Rng>(rng: &mut R) -> (ResolutionData, IntMatrix) {
    let verts = [1usize, 2, 3];
    let edges = [(1usize, 2usize), (1, 3), (2, 3)];
    let a: Vec<usize> = verts.iter().map(|_| rng.gen_range(1..=2)).collect();
    let b: Vec<usize> = edges.iter().map(|_| rng.gen_range(1..=2)).collect();
    let mut pic = PicData::new();
    for (i, v) in verts.iter().enumerate() {
        pic.set_group(format!("E{v}"), PresentedGroup::free(a[i]));
    }
    let rows: usize = b.iter().sum();
    let cols: usize = a.iter().sum();
    let mut d = vec![vec![0i64; cols]; rows];
    let mut row0 = 0;
    for (e, &(i, j)) in edges.iter().enumerate() {
        pic.set_group(format!("E{i}_{j}"), PresentedGroup::free(b[e]));
        for (v, sign) in [(i, -1i64), (j, 1)] {
            let r = random::matrix(rng, b[e], a[v - 1], 3);
            let col0: usize = a[..v - 1].iter().sum();
            for x in 0..b[e] {
                for y in 0..a[v - 1] {
                    d[row0 + x][col0 + y] = sign * i64::try_from(&r[(x, y)]).unwrap();
                }
            }
            pic.set_restriction(format!("E{v}"), format!("E{i}_{j}"), r);
        }
        row0 += b[e];
    }
    let gamma = build_dual_complex(&random::graph_strata(3, &edges)).unwrap();
    let data = ResolutionData::new(3, 1, gamma, pic, &BTreeMap::new()).unwrap();
    (data, mat(rows, cols, &d))
}

fn e2(res: &DivisorResult, p: i64, q: i64) -> PageEntry {
    res.abutment
        .e2
        .iter()
        .find(|(pos, _)| *pos == (p, q))
        .map(|(_, e)| e.clone())
        .unwrap_or(PageEntry::Discrete(FgAbGroup::trivial()))
}

/// Free model of the two-row total complex with zero vertical maps: the
/// units row is the integer coboundary of Γ, one row down.
fn model_total(pic_d: &IntMatrix, delta: &IntMatrix) -> BTreeMap<i64, FgAbGroup> {
    // Tot^{-1} = B^0, Tot^0 = A^0 + B^1, Tot^1 = A^1
    let (a0, a1) = (pic_d.cols(), pic_d.rows());
    let (b0, b1) = (delta.cols(), delta.rows());
    let mut first = vec![vec![0i64; b0]; a0 + b1];
    for i in 0..b1 {
        for j in 0..b0 {
            first[a0 + i][j] = i64::try_from(&delta[(i, j)]).unwrap();
        }
    }
    let mut second = vec![vec![0i64; a0 + b1]; a1];
    for i in 0..a1 {
        for j in 0..a0 {
            second[i][j] = i64::try_from(&pic_d[(i, j)]).unwrap();
        }
    }
    let first = mat(a0 + b1, b0, &first);
    let second = mat(a1, a0 + b1, &second);
    BTreeMap::from([
        (-1, oracle::free_cohomology(b0, None, Some(&first))),
        (0, oracle::free_cohomology(a0 + b1, Some(&first), Some(&second))),
        (1, oracle::free_cohomology(a1, Some(&second), None)),
    ])
}

fn check_triangle(label: &str, data: &ResolutionData, pic_d: &IntMatrix) -> Result<(), String> {
    let res = chc1_divisor(data).map_err(|e| format!("{label}: {e}"))?;
    let delta = mat(3, 3, &[vec![-1, 1, 0], vec![-1, 0, 1], vec![0, -1, 1]]);
    let model = model_total(pic_d, &delta);
    let e00 = two_term(pic_d, 0);
    let e10 = two_term(pic_d, 1);
    ensure(e2(&res, 0, 0).as_discrete() == Some(&e00), || format!("{label}: E2(0,0)"))?;
    ensure(e2(&res, 1, 0).as_discrete() == Some(&e10), || format!("{label}: E2(1,0)"))?;
    ensure(e2(&res, 1, -1).rank() == 1, || format!("{label}: E2(1,-1) is not of rank one"))?;

    let v1 = res.value(1);
    ensure(v1.torus_rank() == 1 && v1.torus.finite().is_trivial() && v1.discrete.is_trivial(), || {
        format!("{label}: CHC^1(E,1) = {v1}")
    })?;
    let v0 = res.value(0);
    ensure(v0.graded != e00.is_trivial() && v0.torus_rank() == 1 && v0.discrete == e00, || format!("{label}: CHC^1(E,0) = {v0}"))?;
    let vm1 = res.value(-1);
    ensure(vm1.torus_rank() == 0 && vm1.discrete == e10, || format!("{label}: CHC^1(E,-1) = {vm1}"))?;
    for m in (-6..=-2).chain(2..=4) {
        ensure(res.value(m).is_trivial(), || format!("{label}: CHC^1(E,{m}) != 0"))?;
    }
    for (n, h) in &model {
        let v = res.value(-n);
        ensure(with_free(&v.discrete, v.torus_rank()) == *h, || {
            format!("{label}: degree {n} is {v}, total complex gives {h}")
        })?;
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let config = load_config(&fixtures().join("hollow-triangle.json")).map_err(|e| e.to_string())?;
    let Input::Divisor(data) = config.to_input().map_err(|e| e.to_string())? else {
        return Err("hollow-triangle fixture is not in divisor mode".into());
    };
    check_triangle("fixture", &data, &IntMatrix::zeros(3, 3))?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for k in 0..25 {
        let (data, d) = hollow_triangle(&mut rng);
        check_triangle(&format!("random triangle {k}"), &data, &d)?;
    }
    Ok("shipped fixture and 25 random Picard data".into())
}

// 6. Acyclic dual complexes

/// Picard row `⊕ Pic(E_i) -> ⊕ Pic(E_ij)` assembled by hand for a graph with
/// free Picard groups on vertices and edges.
fn graph_pic_row(data: &ResolutionData, verts: usize, edges: &[(usize, usize)]) -> IntMatrix {
    let pic = data.pic();
    let a: Vec<usize> = (1..=verts).map(|v| pic.generators(&format!("E{v}"))).collect();
    let b: Vec<usize> = edges.iter().map(|(i, j)| pic.generators(&format!("E{i}_{j}"))).collect();
    let mut d = vec![vec![0i64; a.iter().sum()]; b.iter().sum()];
    let mut row0 = 0;
    for (e, &(i, j)) in edges.iter().enumerate() {
        for (v, sign) in [(i, -1i64), (j, 1)] {
            let r = pic.restriction(&format!("E{v}"), &format!("E{i}_{j}")).unwrap_or_else(|| IntMatrix::zeros(b[e], a[v - 1]));
            let col0: usize = a[..v - 1].iter().sum();
            for x in 0..b[e] {
                for y in 0..a[v - 1] {
                    d[row0 + x][col0 + y] = sign * i64::try_from(&r[(x, y)]).unwrap();
                }
            }
        }
        row0 += b[e];
    }
    mat(b.iter().sum(), a.iter().sum(), &d)
}

fn check_acyclic(label: &str, data: &ResolutionData, pic_d: &IntMatrix) -> Result<(), String> {
    let res = chc1_divisor(data).map_err(|e| format!("{label}: {e}"))?;
    let d = data.dimension() as i64;
    let v1 = res.value(1);
    ensure(v1.torus_rank() == 1 && v1.torus.finite().is_trivial() && v1.discrete.is_trivial(), || {
        format!("{label}: CHC^1(E,1) = {v1}")
    })?;
    let row = pic_row(data).map_err(|e| e.to_string())?;
    // total complex of the two rows, built as a double complex
    let gamma = data.gamma();
    let units = coboundary_complex(gamma);
    let mut b = DoubleComplex::builder();
    for t in row.degrees() {
        b = b.entry(t, 0, row.term(t));
        if t < row.max_degree() {
            b = b.horizontal(t, 0, row.differential(t));
        }
    }
    for t in units.degrees() {
        b = b.entry(t, -1, units.term(t));
        if t < units.max_degree() {
            b = b.horizontal(t, -1, units.differential(t));
        }
    }
    let tot = total_complex(&b.build().map_err(|e| e.to_string())?);
    for m in (2 - d)..=0 {
        let v = res.value(m);
        let hand = two_term(pic_d, -m);
        ensure(v.torus_rank() == 0 && v.discrete == hand, || format!("{label}: CHC^1(E,{m}) = {v}, Picard row gives {hand}"))?;
        ensure(row.cohomology(-m) == hand, || format!("{label}: Picard row cohomology in degree {}", -m))?;
        ensure(tot.cohomology(-m) == hand, || format!("{label}: total complex in degree {}", -m))?;
    }
    ensure(tot.cohomology(-1) == FgAbGroup::free(1), || format!("{label}: units part of the total complex"))?;
    for m in (-6..(2 - d)).chain(2..=4) {
        ensure(res.value(m).is_trivial(), || format!("{label}: CHC^1(E,{m}) != 0"))?;
    }
    Ok(())
}

fn random_free_pic<R: Rng>(rng: &mut R, verts: usize, edges: &[(usize, usize)]) -> PicData {
    let mut pic = PicData::new();
    for v in 1..=verts {
        pic.set_group(format!("E{v}"), PresentedGroup::free(rng.gen_range(1..=2)));
    }
    for &(i, j) in edges {
        let e = format!("E{i}_{j}");
        pic.set_group(e.clone(), PresentedGroup::free(rng.gen_range(1..=2)));
        for v in [i, j] {
            let r = random::matrix(rng, pic.generators(&e), pic.generators(&format!("E{v}")), 3);
            pic.set_restriction(format!("E{v}"), e.clone(), r);
        }
    }
    pic
}

fn criterion_6() -> Outcome {
    for name in ["solid-simplex.json", "chain.json"] {
        let config = load_config(&fixtures().join(name)).map_err(|e| e.to_string())?;
        let Input::Divisor(data) = config.to_input().map_err(|e| e.to_string())? else {
            return Err(format!("{name} is not in divisor mode"));
        };
        let edges: Vec<(usize, usize)> = if name == "chain.json" { vec![(1, 2), (2, 3)] } else { vec![(1, 2), (1, 3), (2, 3)] };
        let renamed = rename_fixture(&data, &edges);
        check_acyclic(name, &renamed, &graph_pic_row(&renamed, 3, &edges))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for k in 0..20 {
        let simplex = k % 2 == 0;
        let (edges, strata) = if simplex {
            let e = vec![(1, 2), (1, 3), (2, 3)];
            (e, random::strata_from_facets(&[vec![1, 2, 3]]))
        } else {
            let e = vec![(1, 2), (2, 3)];
            (e.clone(), random::graph_strata(3, &e))
        };
        let d = if simplex { 3 } else { rng.gen_range(3..=4) };
        let pic = random_free_pic(&mut rng, 3, &edges);
        let gamma = build_dual_complex(&strata).unwrap();
        let data = ResolutionData::new(d, 1, gamma, pic, &BTreeMap::new()).map_err(|e| e.to_string())?;
        let label = format!("random {} {k}", if simplex { "simplex" } else { "chain" });
        check_acyclic(&label, &data, &graph_pic_row(&data, 3, &edges))?;
    }
    Ok("solid simplex and chain fixtures, 20 random Picard data".into())
}

/// Fixture data with strata renamed to the `E{i}_{j}` convention used by the
/// hand assembly.
fn rename_fixture(data: &ResolutionData, edges: &[(usize, usize)]) -> ResolutionData {
    let gamma = data.gamma();
    let old = data.pic();
    let mut pic = PicData::new();
    for v in gamma.cells(0) {
        pic.set_group(format!("E{}", v.indices[0]), old.group(&v.id));
    }
    let mut strata = random::graph_strata(3, edges);
    for e in gamma.cells(1) {
        let (i, j) = (e.indices[0], e.indices[1]);
        let id = format!("E{i}_{j}");
        pic.set_group(id.clone(), old.group(&e.id));
        for &f in &e.faces {
            let face = &gamma.cells(0)[f];
            if let Some(r) = old.restriction(&face.id, &e.id) {
                pic.set_restriction(format!("E{}", face.indices[0]), id.clone(), r);
            }
        }
    }
    if gamma.cell_count(2) > 0 {
        strata = random::strata_from_facets(&[vec![1, 2, 3]]);
    }
    let gamma = build_dual_complex(&strata).unwrap();
    ResolutionData::new(data.dimension(), 1, gamma, pic, &BTreeMap::new()).unwrap()
}

// 7. Single singular point

fn check_variety(label: &str, x: &VarietyResult, d: i64) -> Result<(), String> {
    let four = x
        .report
        .sequences
        .iter()
        .find(|s| s.label == "four-term sequence")
        .ok_or_else(|| format!("{label}: no four-term sequence"))?;
    ensure(four.rank_balance() == 0 && four.torsion_consistent(), || format!("{label}: four-term sequence does not balance"))?;
    ensure(x.report.all_consistent(), || format!("{label}: an exact sequence does not balance"))?;
    let v1 = x.value(1);
    ensure(v1.torus_rank() == 1 && v1.discrete.is_trivial(), || format!("{label}: CHC^1(X,1) = {v1}"))?;
    for m in (2..=5).chain((-d - 4)..(1 - d)) {
        ensure(x.value(m).is_trivial(), || format!("{label}: CHC^1(X,{m}) != 0"))?;
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    for name in ["hollow-triangle-variety.json", "single-vertex.json"] {
        let config = load_config(&fixtures().join(name)).map_err(|e| e.to_string())?;
        let Input::Variety { data, pic_resolution, restriction } = config.to_input().map_err(|e| e.to_string())? else {
            return Err(format!("{name} is not in variety mode"));
        };
        let x = chc1_variety(&data, &pic_resolution, &restriction).map_err(|e| format!("{name}: {e}"))?;
        check_variety(name, &x, data.dimension() as i64)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let shapes = [Shape::Tree, Shape::GraphThreefold, Shape::Surface, Shape::Triangles];
    for k in 0..20 {
        let (data, pic_x, res) = random::resolution(&mut rng, shapes[k % 4]);
        let x = chc1_variety(&data, &pic_x, &res).map_err(|e| format!("random {k}: {e}"))?;
        check_variety(&format!("random {k}"), &x, data.dimension() as i64)?;
    }
    Ok("2 fixtures, 20 random resolutions".into())
}

// 8. Surfaces

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for k in 0..20 {
        let v = rng.gen_range(1..=5);
        let edges = random::tree_edges(&mut rng, v);
        let mut pic = PicData::new();
        let mut n = 0;
        for i in 1..=v {
            let a = rng.gen_range(1..=2);
            n += a;
            pic.set_group(format!("E{i}"), PresentedGroup::free(a));
        }
        let gamma = build_dual_complex(&random::graph_strata(v, &edges)).unwrap();
        let data = ResolutionData::new(2, 1, gamma, pic, &BTreeMap::new()).map_err(|e| e.to_string())?;
        let pic_x = PresentedGroup::free(rng.gen_range(0..=3));
        let res = random::matrix(&mut rng, n, pic_x.generators(), 3);
        let s = chc1_surface(&data, &pic_x, &res).map_err(|e| format!("tree {k}: {e}"))?;
        let v = s.value(-1);
        let expected = oracle::cokernel(&res);
        ensure(v.torus_rank() == 0 && v.discrete == expected, || format!("tree {k}: CHC^1(S,-1) = {v}, cokernel {expected}"))?;
    }
    for k in 0..10 {
        let v = rng.gen_range(3..=6);
        let edges: Vec<(usize, usize)> = (1..=v).map(|i| if i < v { (i, i + 1) } else { (1, v) }).collect();
        let mut pic = PicData::new();
        for i in 1..=v {
            pic.set_group(format!("E{i}"), PresentedGroup::free(1));
        }
        let gamma = build_dual_complex(&random::graph_strata(v, &edges)).unwrap();
        let data = ResolutionData::new(2, 1, gamma, pic, &BTreeMap::new()).map_err(|e| e.to_string())?;
        let pic_x = PresentedGroup::free(rng.gen_range(0..=2));
        let res = random::matrix(&mut rng, v, pic_x.generators(), 3);
        let s = chc1_surface(&data, &pic_x, &res).map_err(|e| format!("cycle {k}: {e}"))?;
        let e0 = s.divisor.value(0);
        let from_h1 = e0.pieces.iter().any(|p| p.source == "E2(1,-1)" && p.value.rank() == 1);
        ensure(e0.torus_rank() == 1 && from_h1, || format!("cycle {k}: CHC^1(E,0) = {e0}"))?;
    }
    for (name, torus) in [("surface-tree.json", 0), ("surface-cycle.json", 1)] {
        let config = load_config(&fixtures().join(name)).map_err(|e| e.to_string())?;
        let Input::Surface { data, pic_resolution, restriction } = config.to_input().map_err(|e| e.to_string())? else {
            return Err(format!("{name} is not in surface mode"));
        };
        let s = chc1_surface(&data, &pic_resolution, &restriction).map_err(|e| format!("{name}: {e}"))?;
        ensure(s.divisor.value(0).torus_rank() == torus, || format!("{name}: CHC^1(E,0) = {}", s.divisor.value(0)))?;
        if torus == 0 {
            let expected = oracle::cokernel(&restriction);
            ensure(s.value(-1).discrete == expected, || format!("{name}: CHC^1(S,-1) = {}", s.value(-1)))?;
        }
    }
    Ok("20 trees, 10 cycles, 2 fixtures".into())
}

// 9. Command line

fn criterion_9() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_chowcalc");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut files: Vec<PathBuf> = std::fs::read_dir(fixtures())
        .map_err(|e| e.to_string())?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let mut seen = [false; 3];
    for f in &files {
        let name = f.file_name().unwrap().to_string_lossy().to_string();
        let expected = if name == "tetrahedron-boundary.json" { 3 } else { 0 };
        let mut outputs = Vec::new();
        for i in 0..3 {
            let json = dir.path().join(format!("{name}.{i}.json"));
            let dot = dir.path().join(format!("{name}.{i}.dot"));
            let out = Command::new(bin)
                .arg("run")
                .arg(f)
                .arg("--json")
                .arg(&json)
                .arg("--dot")
                .arg(&dot)
                .output()
                .map_err(|e| e.to_string())?;
            ensure(out.status.code() == Some(expected), || {
                format!("{name}: exit {:?}, expected {expected}", out.status.code())
            })?;
            let dot = std::fs::read(&dot).unwrap_or_default();
            outputs.push((std::fs::read(&json).map_err(|e| format!("{name}: {e}"))?, dot));
        }
        ensure(outputs.windows(2).all(|w| w[0] == w[1]), || format!("{name}: outputs differ between runs"))?;
        seen[if expected == 0 { 0 } else { 2 }] = true;
    }
    let bad = dir.path().join("unknown-field.json");
    std::fs::write(&bad, r#"{"schema_version":1,"mode":"divisor","dimension":3,"strata":[{"id":"E1","indices":[1],"colour":1}]}"#)
        .map_err(|e| e.to_string())?;
    let out = Command::new(bin).arg("run").arg(&bad).output().map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(2), || format!("schema error: exit {:?}", out.status.code()))?;
    seen[1] = true;
    ensure(seen.iter().all(|&s| s), || "not every exit code was exercised".into())?;
    Ok(format!("{} fixtures x 3 runs, exit codes 0, 2, 3", files.len()))
}

fn main() {
    let mut failures = 0;
    let mut report = |n: usize, outcome: Outcome, documented: bool| match outcome {
        Ok(detail) => println!("criterion {n}: PASS ({detail})"),
        Err(detail) => {
            println!("criterion {n}: FAIL ({detail})");
            if !documented {
                failures += 1;
            }
        }
    };
    report(1, criterion_1(), false);
    report(2, criterion_2(), false);
    report(3, criterion_3(), false);
    let (outcome, tally) = criterion_4();
    // The product clause fails for free-by-finite extensions; only those
    // mismatches are tolerated, and the refined bounds must hold everywhere.
    let documented = outcome.is_err() && tally.refined_failures.is_empty() && tally.degrees > 0;
    report(4, outcome, documented);
    report(5, criterion_5(), false);
    report(6, criterion_6(), false);
    report(7, criterion_7(), false);
    report(8, criterion_8(), false);
    report(9, criterion_9(), false);
    if !tally.refined_failures.is_empty() {
        for f in &tally.refined_failures {
            println!("  {f}");
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
