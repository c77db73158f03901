use chowcalc_core::dualcomplex::{build_dual_complex, coboundary_complex, export_dot, gamma_cohomology, is_acyclic};
use chowcalc_testkit::{oracle, random};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn coboundary_squares_to_zero(seed in any::<u64>(), v in 1usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gamma = build_dual_complex(&random::simplicial_complex(&mut rng, v, 4)).unwrap();
        let top = gamma.dimension().unwrap();
        for t in 0..top.saturating_sub(1) {
            prop_assert!((&gamma.coboundary(t + 1) * &gamma.coboundary(t)).is_zero());
        }
    }

    #[test]
    fn euler_characteristic_from_cohomology(seed in any::<u64>(), v in 1usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gamma = build_dual_complex(&random::simplicial_complex(&mut rng, v, 4)).unwrap();
        let top = gamma.dimension().unwrap();
        let mut chi = 0i64;
        for t in 0..=top {
            let incoming = (t > 0).then(|| gamma.coboundary(t - 1));
            let outgoing = (t < top).then(|| gamma.coboundary(t));
            let r = oracle::free_cohomology_rank(gamma.cell_count(t), incoming.as_ref(), outgoing.as_ref());
            prop_assert_eq!(gamma_cohomology(&gamma, t).free_rank(), r);
            chi += if t % 2 == 0 { r as i64 } else { -(r as i64) };
        }
        prop_assert_eq!(chi, gamma.euler_characteristic());
        prop_assert_eq!(coboundary_complex(&gamma).euler_characteristic(), chi);
    }

    #[test]
    fn connected_graph_ranks(seed in any::<u64>(), v in 1usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let edges = random::connected_graph_edges(&mut rng, v);
        let gamma = build_dual_complex(&random::graph_strata(v, &edges)).unwrap();
        prop_assert!(gamma.is_connected());
        prop_assert_eq!(gamma_cohomology(&gamma, 0).free_rank(), 1);
        prop_assert_eq!(gamma_cohomology(&gamma, 1).free_rank(), edges.len() + 1 - v);
        prop_assert!(gamma_cohomology(&gamma, 1).torsion().is_empty());
    }

    #[test]
    fn trees_are_acyclic(seed in any::<u64>(), v in 1usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gamma = build_dual_complex(&random::graph_strata(v, &random::tree_edges(&mut rng, v))).unwrap();
        prop_assert!(gamma_cohomology(&gamma, 1).is_trivial());
        prop_assert!(is_acyclic(&gamma));
    }

    #[test]
    fn dot_export_is_stable_under_input_order(seed in any::<u64>(), v in 1usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut strata = random::simplicial_complex(&mut rng, v, 3);
        let a = export_dot(&build_dual_complex(&strata).unwrap());
        strata.reverse();
        let b = export_dot(&build_dual_complex(&strata).unwrap());
        prop_assert_eq!(a, b);
    }
}

#[test]
fn boundary_of_simplex_has_top_class() {
    let facets: Vec<Vec<usize>> = vec![vec![1, 2, 3], vec![1, 2, 4], vec![1, 3, 4], vec![2, 3, 4]];
    let gamma = build_dual_complex(&random::strata_from_facets(&facets)).unwrap();
    assert_eq!(gamma_cohomology(&gamma, 2).free_rank(), 1);
    assert!(gamma_cohomology(&gamma, 1).is_trivial());
    assert_eq!(gamma.euler_characteristic(), 2);
}
