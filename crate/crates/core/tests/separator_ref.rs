mod common;

use common::{critical_trial, split_claims_hold, Trial};
use plansep::harness::gen::{self, WeightScheme};
use plansep::planar::{validate_embedding, EmbeddedPlanarGraph, VertexId};
use plansep::separator::{
    compute_separator, compute_separator_detailed, find_balanced_or_critical, interior_oracle, parse_record,
    verify_separator, write_record, ClosingEdge, FacePolicy, SeparatorCase, SeparatorError, VerdictKind,
};
use plansep::tree::{bfs_tree, RootedTree};
use proptest::prelude::*;

fn descendants_weight(tree: &RootedTree, weights: &[u64], f: u32) -> u64 {
    tree.descendants(f).iter().map(|&x| weights[x as usize]).sum()
}

/// Closes `P` with its closing edge, then checks the cycle with the flood
/// oracle: simple, planar, and both open sides at most 3/4 of the weight.
fn check_cycle(g: &EmbeddedPlanarGraph, root: VertexId) -> SeparatorCase {
    let tree = bfs_tree(g, root).unwrap();
    let run = compute_separator_detailed(g, &tree, FacePolicy::MinFaceId).unwrap();
    let r = &run.result;
    assert!(verify_separator(g, &r.path).passes);
    assert_eq!(r.path.first(), Some(&r.u));
    assert_eq!(r.path.last(), Some(&r.v));
    assert!(r.path.windows(2).all(|w| tree.parent(w[0]) == Some(w[1]) || tree.parent(w[1]) == Some(w[0])));
    let mut sorted = r.path.clone();
    sorted.sort_unstable();
    sorted.dedup();
    assert_eq!(sorted.len(), r.path.len(), "path repeats a vertex");

    let closed = r.embed_closing(&run.augmentation.graph).unwrap();
    assert_eq!(validate_embedding(closed.system()).euler_residual, 0);
    let mut cycle: Vec<u32> = r.path.windows(2).map(|w| closed.find_edge(w[0], w[1], 0).expect("tree edge")).collect();
    if r.u != r.v {
        let closing = match r.closing {
            ClosingEdge::Real(k) | ClosingEdge::Augmented(k) => closed.find_edge(k.tail, k.head, k.copy),
            ClosingEdge::Virtual { .. } => {
                let copies = closed.rotation(r.u).iter().filter(|&&d| closed.dart(d).head == r.v).count();
                closed.find_edge(r.u, r.v, copies as u16 - 1)
            }
        };
        cycle.push(closing.expect("closing edge present"));
    }
    let sides = interior_oracle(&closed, &cycle);
    let w = g.weights();
    let total = u128::from(g.total_weight());
    for side in [sides.interior_strict(w), sides.exterior_strict(w)] {
        assert!(4 * u128::from(side) <= 3 * total, "side {side} of {total}");
    }
    assert_eq!(sides.interior_strict(w) + sides.exterior_strict(w) + sides.cycle_weight(w), g.total_weight());
    r.case
}

#[test]
fn cycles_split_every_family() {
    let mut cases = Vec::new();
    for s in [4, 5, 9, 16] {
        cases.push(check_cycle(&gen::grid(s, s).unwrap(), 0));
    }
    for seed in 0..8 {
        let g = gen::random_triangulation(40 + 30 * seed as u32, seed).unwrap();
        let g = g.with_weights(gen::weights(g.n(), WeightScheme::RandomProper, seed));
        cases.push(check_cycle(&g, seed as u32));
        let g = gen::cut_vertex_blocks(6 + seed as u32, seed).unwrap();
        cases.push(check_cycle(&g, 0));
        cases.push(check_cycle(&gen::cycle_chords(14 + seed as u32, seed as u32 % 4, seed).unwrap(), 1));
    }
    cases.push(check_cycle(&gen::critical_fan_example().unwrap(), 19));
    for case in [SeparatorCase::Balanced, SeparatorCase::Critical, SeparatorCase::LeafCritical] {
        assert!(cases.contains(&case), "{case:?} not exercised");
    }
}

#[test]
fn critical_fan_example_closes_with_the_expected_chord() {
    // v_5 has id 3 and v_10 has id 18 in the generator's labelling.
    let g = gen::critical_fan_example().unwrap();
    let run = compute_separator_detailed(&g, &bfs_tree(&g, 19).unwrap(), FacePolicy::MinFaceId).unwrap();
    let r = &run.result;
    assert_eq!(r.case, SeparatorCase::Critical);
    assert_eq!((r.u, r.v), (3, 18));
    assert!(matches!(r.closing, ClosingEdge::Virtual { .. }));
    let split = run.split.unwrap();
    assert_eq!(split.k, 10);
    assert_eq!(split.j, 4);
    assert_eq!(split.fan_subtree, vec![42, 38, 36, 34, 30, 24, 18, 12]);
}

#[test]
fn unit_cycle_of_twelve_is_leaf_critical() {
    let g = gen::cycle_chords(12, 0, 0).unwrap();
    let r = compute_separator(&g, &bfs_tree(&g, 0).unwrap()).unwrap();
    assert_eq!(r.case, SeparatorCase::LeafCritical);
    assert!(verify_separator(&g, &r.path).passes);
}

#[test]
fn heavy_vertex_is_rejected() {
    let g = gen::grid(5, 5).unwrap();
    let g = g.with_weights(gen::weights(g.n(), WeightScheme::HeavyVertex, 0));
    // 24 unit vertices and one of weight ⌈13·24/11⌉ = 29: 29/53 > 1/12.
    let err = compute_separator(&g, &bfs_tree(&g, 0).unwrap()).unwrap_err();
    assert_eq!(err, SeparatorError::NotProper { max: 29, total: 53 });
}

#[test]
fn records_round_trip() {
    for seed in 0..10 {
        let g = gen::random_triangulation(60, seed).unwrap();
        let r = compute_separator(&g, &bfs_tree(&g, 0).unwrap()).unwrap();
        assert_eq!(parse_record(&write_record(&r)).unwrap(), r);
    }
}

#[test]
fn synthetic_critical_splits_satisfy_claims() {
    let mut critical = 0;
    for seed in 0..2000 {
        let (trial, total) = critical_trial(seed).unwrap();
        if let Trial::Critical { split, subtree } = trial {
            assert!(split_claims_hold(&split, subtree, total), "seed {seed}");
            critical += 1;
        }
    }
    assert!(critical > 100, "only {critical} critical trials");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn detection_matches_definition(n in 1usize..60, seed in any::<u64>(), max in 1u64..30) {
        let tree = plansep::harness::gen::random_rooted_tree(n, seed).unwrap();
        let weights = gen::random_proper_weights(n, max, 1, 1, seed ^ 1);
        let total: u64 = weights.iter().sum();
        let verdict = find_balanced_or_critical(&tree, &weights);
        if total == 0 {
            prop_assert_eq!(verdict, Err(SeparatorError::DegenerateTotal));
            return Ok(());
        }
        let w = u128::from(total);
        let sub = |f: u32| 4 * u128::from(descendants_weight(&tree, &weights, f));
        let balanced: Vec<u32> = (0..n as u32).filter(|&f| w <= sub(f) && sub(f) <= 3 * w).collect();
        match verdict {
            Ok(v) if v.kind == VerdictKind::Balanced => prop_assert_eq!(Some(&v.face), balanced.last()),
            Ok(v) => {
                prop_assert!(balanced.is_empty());
                prop_assert!(sub(v.face) > 3 * w);
                prop_assert!(tree.children(v.face).iter().all(|&c| sub(c) < w));
            }
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }
}
