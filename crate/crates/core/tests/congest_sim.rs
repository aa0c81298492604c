use std::collections::VecDeque;

use plansep::congest::{pa_aggregate, AggOp, ChargeModel, Network, PaBackend, Partition, SimConfig, SimError, Widths};
use plansep::dist::dist_bfs;
use plansep::harness::gen;
use plansep::planar::{EmbeddedPlanarGraph, RotationEntry, VertexId};
use plansep::tree::bfs_tree;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Connected parts grown by simultaneous BFS from random seed vertices.
fn grown_partition(g: &EmbeddedPlanarGraph, parts: usize, seed: u64) -> Partition {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut part_of = vec![u32::MAX; g.n()];
    let mut queue = VecDeque::new();
    let mut next = 0;
    while next < parts {
        let v = rng.gen_range(0..g.n());
        if part_of[v] == u32::MAX {
            part_of[v] = next as u32;
            queue.push_back(v as VertexId);
            next += 1;
        }
    }
    while let Some(v) = queue.pop_front() {
        for w in g.real_neighbors(v) {
            if part_of[w as usize] == u32::MAX {
                part_of[w as usize] = part_of[v as usize];
                queue.push_back(w);
            }
        }
    }
    Partition { part_of }
}

fn network(g: &EmbeddedPlanarGraph) -> Network {
    Network::from_system(g.system(), Widths::new(g.n(), 0, 1, 1, None))
}

#[test]
fn distributed_bfs_matches_sequential_tree() {
    for (g, root) in [
        (gen::grid(9, 7).unwrap(), 0),
        (gen::grid(9, 7).unwrap(), 31),
        (gen::random_triangulation(300, 4).unwrap(), 17),
    ] {
        let (tree, trace) = dist_bfs(&g, &[root], &SimConfig::default()).unwrap();
        let expected = bfs_tree(&g, root).unwrap();
        assert_eq!(tree.parents(), expected.parents());
        // The last wave also crosses edges inside the deepest level.
        assert!([expected.height(), expected.height() + 1].contains(&trace.honest_rounds));
    }
}

#[test]
fn bfs_on_a_path_takes_n_minus_one_rounds() {
    let n = 40;
    let rotation: Vec<Vec<RotationEntry>> = (0..n)
        .map(|v: u32| {
            [v.checked_sub(1), (v + 1 < n).then_some(v + 1)].into_iter().flatten().map(RotationEntry::real).collect()
        })
        .collect();
    let g = EmbeddedPlanarGraph::new(n as usize, &rotation, &vec![1; n as usize], None).unwrap();
    let (_, trace) = dist_bfs(&g, &[0], &SimConfig::default()).unwrap();
    assert_eq!(trace.honest_rounds, 39);
}

#[test]
fn two_announced_roots_conflict() {
    let g = gen::grid(5, 5).unwrap();
    assert_eq!(dist_bfs(&g, &[0, 24], &SimConfig::default()).unwrap_err(), SimError::ConflictingRoots(0, 24));
}

#[test]
fn part_aggregation_matches_direct_fold() {
    let g = gen::random_triangulation(500, 9).unwrap();
    let net = network(&g);
    let charge = ChargeModel::new(g.n(), net.diameter());
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (trial, parts) in [1usize, 7, 40].into_iter().enumerate() {
        let partition = grown_partition(&g, parts, trial as u64);
        partition.validate(&net).unwrap();
        let inputs: Vec<u64> = (0..g.n()).map(|_| rng.gen_range(0..1000)).collect();
        for op in [AggOp::Sum, AggOp::Min, AggOp::Max, AggOp::Or, AggOp::And] {
            let mut expected = vec![op.identity(); parts];
            for (v, &x) in inputs.iter().enumerate() {
                let p = partition.part_of[v] as usize;
                expected[p] = op.combine(expected[p], u128::from(x));
            }
            for backend in [PaBackend::Honest, PaBackend::Charged] {
                let out = pa_aggregate(&net, &partition, &inputs, op, backend, &SimConfig::default(), &charge).unwrap();
                for v in 0..g.n() {
                    assert_eq!(
                        u128::from(out.values[v]),
                        expected[partition.part_of[v] as usize],
                        "{op:?} {backend:?}"
                    );
                }
                assert_eq!(out.trace.pa_calls(), 1);
                assert!(out.trace.max_bits() <= net.widths().budget);
            }
        }
    }
}

#[test]
fn charged_call_costs_d_log_squared() {
    let g = gen::grid(16, 16).unwrap();
    let net = network(&g);
    assert_eq!(net.diameter(), 30);
    let charge = ChargeModel::new(g.n(), 30);
    // ⌈log2 256⌉ = 8
    assert_eq!(charge.per_call(), 30 * 64);
    let out = pa_aggregate(
        &net,
        &Partition::whole(g.n()),
        &vec![1; g.n()],
        AggOp::Sum,
        PaBackend::Charged,
        &SimConfig::default(),
        &charge,
    )
    .unwrap();
    assert_eq!(out.trace.charged_rounds(), 30 * 64);
    assert_eq!(out.trace.honest_rounds(), 0);
}

#[test]
fn tight_budget_is_enforced() {
    let g = gen::grid(6, 6).unwrap();
    let net = Network::from_system(g.system(), Widths::new(g.n(), 0, 1, 1, Some(3)));
    let charge = ChargeModel::new(g.n(), 10);
    let err = pa_aggregate(
        &net,
        &Partition::whole(g.n()),
        &vec![1; g.n()],
        AggOp::Sum,
        PaBackend::Honest,
        &SimConfig::default(),
        &charge,
    )
    .unwrap_err();
    assert!(matches!(err, SimError::BitBudgetExceeded { budget: 3, .. }), "{err:?}");
}
