use c4free_core::frugal::{
    frugal_colour, maxcut_bipartition, phase1_colour, side_palette, unique_colours_across, Bipartition,
    FrugalParams, Side,
};
use c4free_core::gen;
use c4free_core::graph::{Graph, Vertex};
use c4free_core::pipeline::{decompose, degeneracy_ordering, forest_partition, PipelineConfig, Strategy as Route};
use c4free_core::sidon::{complete_c4_free_colouring, verify_complete, CompleteOptions};
use c4free_core::verify::{find_c4, verify_c4_free_colouring, verify_forest_colouring, verify_frugal_proper};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_graph() -> impl Strategy<Value = Graph> {
    (2usize..40, 0.02f64..0.6, any::<u64>()).prop_map(|(n, p, seed)| gen::erdos_renyi(n, p, seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn every_strategy_is_c4_free(g in small_graph(), seed in any::<u64>(), alpha in 0.5f64..4.0) {
        for strategy in [Route::Pipeline, Route::Forest, Route::Greedy, Route::Auto] {
            let mut config = PipelineConfig { strategy, ..PipelineConfig::default() };
            config.frugal.seed = seed;
            config.frugal.alpha = alpha;
            let (col, stats) = decompose(&g, &config);
            prop_assert_eq!(col.len(), g.edge_count());
            prop_assert!(verify_c4_free_colouring(&g, &col).unwrap().is_ok());
            prop_assert_eq!(stats.total_classes, col.class_count());
            for c in 0..col.class_count() {
                prop_assert!(find_c4(&col.class_subgraph(&g, c)).is_none());
            }
        }
    }

    #[test]
    fn forest_classes_bounded_by_degeneracy(g in small_graph()) {
        let (order, k) = degeneracy_ordering(&g);
        let col = forest_partition(&g, &order, k).unwrap();
        prop_assert!(col.class_count() as usize <= k);
        prop_assert!(verify_forest_colouring(&g, &col).unwrap().is_ok());
    }

    #[test]
    fn phase1_uniqueness(g in small_graph(), seed in any::<u64>(), alpha in 0.2f64..20.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let Bipartition { side, mut cut } = maxcut_bipartition(&g, &mut rng);
        let palette = side_palette(alpha, g.max_degree());
        for which in [Side::A, Side::B] {
            let in_side: Vec<bool> = side.iter().map(|&s| s == which).collect();
            let p1 = phase1_colour(&g, &mut cut, &in_side, palette, alpha, &mut rng);
            prop_assert!(unique_colours_across(&g, &cut, &in_side, &p1.colouring));
        }
    }

    #[test]
    fn frugal_output_invariants(g in small_graph(), seed in any::<u64>(), alpha in 0.2f64..20.0) {
        prop_assume!(g.edge_count() > 0);
        let params = FrugalParams::empirical(alpha, 0.2, seed);
        let r = frugal_colour(&g, &params).unwrap();
        prop_assert!(verify_frugal_proper(&r.h, &r.chi).unwrap().is_ok());
        prop_assert_eq!(r.chi.palette(), 2 * side_palette(alpha, g.max_degree()));
        for (i, &e) in r.h_edges.iter().enumerate() {
            prop_assert_eq!(r.h.edge(i), g.edge(e));
        }
        for v in 0..g.vertex_count() as Vertex {
            let s = r.side[v as usize];
            for &w in r.h.neighbours(v) {
                prop_assert_ne!(s, r.side[w as usize]);
            }
        }
        let again = frugal_colour(&g, &params).unwrap();
        prop_assert_eq!(&again.h, &r.h);
        prop_assert_eq!(&again.chi, &r.chi);
    }

    #[test]
    fn complete_colourings_verify(t in 1usize..160) {
        let col = complete_c4_free_colouring(t, CompleteOptions::default());
        prop_assert_eq!(col.order(), t);
        prop_assert!(verify_complete(&col));
        if t >= 2 {
            prop_assert!(col.budget_met());
        }
    }
}
