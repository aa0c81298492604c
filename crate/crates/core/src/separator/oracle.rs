//! Embedding-level brute force: which faces and vertices a cycle encloses,
//! found by flooding the dual from the infinite face without crossing the
//! cycle.

use serde::Serialize;

use crate::par;
use crate::planar::{DartKey, EdgeId, EmbeddedPlanarGraph, FaceIdx, RotationSystem, VertexId};
use crate::tree::{cotree, fundamental_cycle, RootedTree, TreeError};

/// Faces reachable from `start` through edges that are not `blocked`.
pub fn flood_faces(g: &RotationSystem, blocked: &[bool], start: FaceIdx) -> Vec<bool> {
    let mut reached = vec![false; g.face_count()];
    reached[start as usize] = true;
    let mut stack = vec![start];
    while let Some(f) = stack.pop() {
        for &d in &g.face(f).darts {
            if blocked[g.edge_of(d) as usize] {
                continue;
            }
            let other = g.face_of(g.rev(d));
            if !reached[other as usize] {
                reached[other as usize] = true;
                stack.push(other);
            }
        }
    }
    reached
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleSides {
    /// Faces cut off from the infinite face by the cycle.
    pub inside_face: Vec<bool>,
    pub on_cycle: Vec<bool>,
    /// Vertices strictly inside.
    pub inside_vertex: Vec<bool>,
}

impl CycleSides {
    fn sum(weights: &[u64], pick: impl Fn(usize) -> bool) -> u64 {
        (0..weights.len()).filter(|&v| pick(v)).map(|v| weights[v]).sum()
    }

    pub fn interior_strict(&self, weights: &[u64]) -> u64 {
        Self::sum(weights, |v| self.inside_vertex[v])
    }

    pub fn exterior_strict(&self, weights: &[u64]) -> u64 {
        Self::sum(weights, |v| !self.inside_vertex[v] && !self.on_cycle[v])
    }

    pub fn cycle_weight(&self, weights: &[u64]) -> u64 {
        Self::sum(weights, |v| self.on_cycle[v])
    }

    pub fn inside_faces(&self) -> Vec<FaceIdx> {
        (0..self.inside_face.len() as FaceIdx).filter(|&f| self.inside_face[f as usize]).collect()
    }
}

pub fn interior_oracle(g: &EmbeddedPlanarGraph, cycle_edges: &[EdgeId]) -> CycleSides {
    let mut blocked = vec![false; g.m()];
    let mut on_cycle = vec![false; g.n()];
    for &e in cycle_edges {
        blocked[e as usize] = true;
        let (a, b) = g.edge_endpoints(e);
        on_cycle[a as usize] = true;
        on_cycle[b as usize] = true;
    }
    let outside = flood_faces(g.system(), &blocked, g.infinite_face());
    let inside_face: Vec<bool> = outside.iter().map(|&o| !o).collect();
    let inside_vertex = (0..g.n() as VertexId)
        .map(|v| !on_cycle[v as usize] && inside_face[g.face_of(g.rotation(v)[0]) as usize])
        .collect();
    CycleSides { inside_face, on_cycle, inside_vertex }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleRow {
    pub edge: DartKey,
    pub cycle_len: usize,
    pub interior_strict: u64,
    pub cycle_weight: u64,
    pub exterior_strict: u64,
    pub inside_faces: Vec<FaceIdx>,
}

/// One row per non-tree edge, ordered by edge id.
pub fn oracle_all_fundamental_cycles(g: &EmbeddedPlanarGraph, tree: &RootedTree) -> Result<Vec<OracleRow>, TreeError> {
    let pair = cotree(g.system(), tree)?;
    let edges: Vec<EdgeId> = pair.cotree_edges().collect();
    let rows = par::map_slice(&edges, |&e| {
        let cycle = fundamental_cycle(g.system(), &pair, e).expect("cotree edge");
        let sides = interior_oracle(g, &cycle.edges);
        OracleRow {
            edge: g.edge_key(e),
            cycle_len: cycle.edges.len(),
            interior_strict: sides.interior_strict(g.weights()),
            cycle_weight: sides.cycle_weight(g.weights()),
            exterior_strict: sides.exterior_strict(g.weights()),
            inside_faces: sides.inside_faces(),
        }
    });
    Ok(rows)
}
