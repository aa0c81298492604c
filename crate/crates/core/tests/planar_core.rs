use plansep::harness::gen::{self, WeightScheme};
use plansep::planar::io::{parse_graph, write_graph};
use plansep::planar::{articulation_points, biconnect, build_dual, validate_embedding, EmbeddedPlanarGraph};
use proptest::prelude::*;

fn family() -> Vec<EmbeddedPlanarGraph> {
    let mut graphs = vec![gen::grid(4, 4).unwrap(), gen::grid(7, 3).unwrap(), gen::critical_fan_example().unwrap()];
    graphs.push(gen::cylinder(2, 9).unwrap());
    graphs.push(gen::random_triangulation(80, 1).unwrap());
    graphs.push(gen::cycle_chords(15, 4, 2).unwrap());
    graphs.push(gen::cut_vertex_blocks(7, 3).unwrap());
    graphs
}

#[test]
fn triangulation_500_seed_7_has_triangular_inner_faces() {
    let g = gen::random_triangulation(500, 7).unwrap();
    let report = validate_embedding(g.system());
    assert_eq!(report.euler_residual, 0);
    assert!(report.connected);
    let outer = g.infinite_face();
    for (f, face) in g.faces().iter().enumerate() {
        if f as u32 != outer {
            assert_eq!(face.size(), 3, "face {f}");
        }
    }
}

#[test]
fn generated_files_round_trip_bit_exactly() {
    for g in family() {
        let g = g.with_weights(gen::weights(g.n(), WeightScheme::RandomProper, 5));
        let text = write_graph(&g);
        let back = parse_graph(&text).unwrap();
        assert_eq!(write_graph(&back), text);
        assert_eq!(back.infinite_face(), g.infinite_face());
    }
}

#[test]
fn augmented_graphs_round_trip_with_virtual_darts() {
    let g = gen::cut_vertex_blocks(9, 11).unwrap();
    let aug = biconnect(&g).unwrap().graph;
    assert!(aug.virtual_edge_count() > 0);
    let text = write_graph(&aug);
    assert_eq!(write_graph(&parse_graph(&text).unwrap()), text);
}

#[test]
fn dual_degrees_sum_to_twice_the_edges() {
    for g in family() {
        let dual = build_dual(g.system());
        assert_eq!(dual.nodes, g.face_count());
        let degrees: usize = (0..dual.nodes as u32).map(|f| dual.degree(f)).sum();
        assert_eq!(degrees, 2 * g.m());
        let sizes: usize = g.faces().iter().map(|f| f.size()).sum();
        assert_eq!(sizes, 2 * g.m());
    }
}

#[test]
fn biconnect_clears_articulation_points() {
    for seed in 0..25 {
        let g = gen::cut_vertex_blocks(3 + (seed % 12) as u32, seed).unwrap();
        assert!(!articulation_points(g.system()).is_empty());
        let aug = biconnect(&g).unwrap();
        assert!(articulation_points(aug.graph.system()).is_empty(), "seed {seed}");
        assert_eq!(validate_embedding(aug.graph.system()).euler_residual, 0);
        assert_eq!(aug.graph.m(), g.m() + aug.virtual_edges.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn random_triangulations_satisfy_euler(n in 4u32..150, seed in any::<u64>()) {
        let g = gen::random_triangulation(n, seed).unwrap();
        prop_assert_eq!(validate_embedding(g.system()).euler_residual, 0);
        prop_assert_eq!(g.m(), 3 * n as usize - 6);
        prop_assert!(articulation_points(g.system()).is_empty());
    }

    #[test]
    fn cycle_chords_stay_biconnected(n in 4u32..60, chords in 0u32..10, seed in any::<u64>()) {
        let g = gen::cycle_chords(n, chords.min(n - 3), seed).unwrap();
        prop_assert_eq!(validate_embedding(g.system()).euler_residual, 0);
        prop_assert!(articulation_points(g.system()).is_empty());
    }
}
