//! Brute-force structural checks run by the experiment harness.

use crate::planar::{articulation_points, validate_embedding, EdgeId, EmbeddedPlanarGraph};
use crate::separator::{flood_faces, interior_oracle, FaceWeighting};
use crate::tree::{fundamental_cut, fundamental_cycle, TreeCotreePair};

/// Primal edges between the two components of `T* \ {e}`, found by
/// flooding the dual through the remaining cotree edges.
pub fn cut_by_flood(g: &EmbeddedPlanarGraph, pair: &TreeCotreePair, e: EdgeId) -> Vec<EdgeId> {
    let mut blocked = pair.in_tree.clone();
    blocked[e as usize] = true;
    let [d, _] = g.edge_darts(e);
    let side = flood_faces(g.system(), &blocked, g.face_of(d));
    (0..g.m() as EdgeId)
        .filter(|&x| {
            let [a, b] = g.edge_darts(x);
            side[g.face_of(a) as usize] != side[g.face_of(b) as usize]
        })
        .collect()
}

/// Every fundamental cycle equals the fundamental cut of its dual edge,
/// both as computed from the rooted dual tree and by flooding.
/// Returns the first offending edge.
pub fn check_duality(g: &EmbeddedPlanarGraph, pair: &TreeCotreePair) -> Result<(), EdgeId> {
    for e in pair.cotree_edges() {
        let cycle = fundamental_cycle(g.system(), pair, e).map_err(|_| e)?;
        let cut = fundamental_cut(g.system(), pair, e).map_err(|_| e)?;
        if cycle.edges != cut || cycle.edges != cut_by_flood(g, pair, e) {
            return Err(e);
        }
    }
    Ok(())
}

/// For every fundamental cycle: weight strictly inside ≤ face weight
/// inside ≤ weight inside or on the cycle. Returns the first offending edge.
pub fn check_sandwich(g: &EmbeddedPlanarGraph, pair: &TreeCotreePair, weighting: &FaceWeighting) -> Result<(), EdgeId> {
    let w = g.weights();
    for e in pair.cotree_edges() {
        let cycle = fundamental_cycle(g.system(), pair, e).map_err(|_| e)?;
        let sides = interior_oracle(g, &cycle.edges);
        let strict = sides.interior_strict(w);
        let closed = strict + sides.cycle_weight(w);
        let faces: u64 = sides.inside_faces().iter().map(|&f| weighting.face_weight[f as usize]).sum();
        if !(strict <= faces && faces <= closed) {
            return Err(e);
        }
    }
    Ok(())
}

/// No articulation points and a planar Euler count.
pub fn check_biconnected(g: &EmbeddedPlanarGraph) -> bool {
    articulation_points(g.system()).is_empty() && validate_embedding(g.system()).euler_residual == 0
}
