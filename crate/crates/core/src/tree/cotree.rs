use std::collections::VecDeque;

use super::{RootedTree, TreeError};
use crate::planar::{EdgeId, FaceIdx, RotationSystem, VertexId};

/// A primal spanning tree `T` together with the dual spanning tree on
/// `E \ T`, rooted at the face with the largest id.
#[derive(Clone, Debug)]
pub struct TreeCotreePair {
    pub in_tree: Vec<bool>,
    pub primal: RootedTree,
    pub primal_parent_edge: Vec<Option<EdgeId>>,
    pub dual: RootedTree,
    pub dual_parent_edge: Vec<Option<EdgeId>>,
    dual_child: Vec<Option<FaceIdx>>,
}

impl TreeCotreePair {
    pub fn tree_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.in_tree.len() as EdgeId).filter(|&e| self.in_tree[e as usize])
    }

    pub fn cotree_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.in_tree.len() as EdgeId).filter(|&e| !self.in_tree[e as usize])
    }

    pub fn dual_root(&self) -> FaceIdx {
        self.dual.root()
    }

    /// The face below cotree edge `e` in the rooted dual tree.
    pub fn child_face(&self, e: EdgeId) -> Result<FaceIdx, TreeError> {
        if self.in_tree[e as usize] {
            return Err(TreeError::EdgeNotInCotree(e));
        }
        self.dual_child[e as usize].ok_or(TreeError::EdgeNotInCotree(e))
    }
}

pub fn cotree(g: &RotationSystem, tree: &RootedTree) -> Result<TreeCotreePair, TreeError> {
    let n = g.vertex_count();
    if tree.len() != n {
        return Err(TreeError::NotSpanningTree(format!("tree has {} nodes, graph has {n}", tree.len())));
    }
    let mut in_tree = vec![false; g.edge_count()];
    let mut primal_parent_edge = vec![None; n];
    for v in 0..n as VertexId {
        if let Some(p) = tree.parent(v) {
            let e = g
                .find_edge(v, p, 0)
                .filter(|&e| !g.edge_is_virtual(e))
                .ok_or_else(|| TreeError::NotSpanningTree(format!("no real edge {v}-{p}")))?;
            in_tree[e as usize] = true;
            primal_parent_edge[v as usize] = Some(e);
        }
    }
    let f = g.face_count();
    let mut adjacency: Vec<Vec<(FaceIdx, EdgeId)>> = vec![Vec::new(); f];
    let mut cotree_count = 0;
    for e in 0..g.edge_count() as EdgeId {
        if in_tree[e as usize] {
            continue;
        }
        cotree_count += 1;
        let [d0, d1] = g.edge_darts(e);
        let (a, b) = (g.face_of(d0), g.face_of(d1));
        adjacency[a as usize].push((b, e));
        adjacency[b as usize].push((a, e));
    }
    if cotree_count + 1 != f {
        return Err(TreeError::NotSpanningTree(format!("cotree has {cotree_count} edges for {f} faces")));
    }
    let root = (f - 1) as FaceIdx;
    let mut dual_parent = vec![None; f];
    let mut dual_parent_edge = vec![None; f];
    let mut seen = vec![false; f];
    seen[root as usize] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for &(y, e) in &adjacency[x as usize] {
            if !seen[y as usize] {
                seen[y as usize] = true;
                dual_parent[y as usize] = Some(x);
                dual_parent_edge[y as usize] = Some(e);
                queue.push_back(y);
            }
        }
    }
    if seen.contains(&false) {
        return Err(TreeError::NotSpanningTree("cotree does not span the dual".into()));
    }
    let dual = RootedTree::from_parents(root, dual_parent)?;
    let mut pair = TreeCotreePair {
        in_tree,
        primal: tree.clone(),
        primal_parent_edge,
        dual,
        dual_parent_edge,
        dual_child: Vec::new(),
    };
    pair.dual_child = vec![None; g.edge_count()];
    for (face, e) in pair.dual_parent_edge.iter().enumerate() {
        if let Some(e) = e {
            pair.dual_child[*e as usize] = Some(face as FaceIdx);
        }
    }
    Ok(pair)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalCycle {
    /// Tree path from the smaller endpoint of the edge to the larger one.
    pub path: Vec<VertexId>,
    /// Path edges plus the closing edge, ascending.
    pub edges: Vec<EdgeId>,
}

pub fn fundamental_cycle(g: &RotationSystem, pair: &TreeCotreePair, e: EdgeId) -> Result<FundamentalCycle, TreeError> {
    if pair.in_tree[e as usize] {
        return Err(TreeError::EdgeInTree(e));
    }
    let (u, v) = g.edge_endpoints(e);
    let path = pair.primal.path(u, v);
    let mut edges: Vec<EdgeId> = path
        .windows(2)
        .map(|w| {
            let child = if pair.primal.parent(w[0]) == Some(w[1]) { w[0] } else { w[1] };
            pair.primal_parent_edge[child as usize].unwrap()
        })
        .collect();
    edges.push(e);
    edges.sort_unstable();
    Ok(FundamentalCycle { path, edges })
}

/// Faces in the dual subtree below cotree edge `e`, ascending.
pub fn interior_faces(pair: &TreeCotreePair, e: EdgeId) -> Result<Vec<FaceIdx>, TreeError> {
    Ok(pair.dual.descendants(pair.child_face(e)?))
}

/// Primal edges whose two faces lie on different sides of `T* \ {e}`.
pub fn fundamental_cut(g: &RotationSystem, pair: &TreeCotreePair, e: EdgeId) -> Result<Vec<EdgeId>, TreeError> {
    let mut inside = vec![false; g.face_count()];
    for f in interior_faces(pair, e)? {
        inside[f as usize] = true;
    }
    Ok((0..g.edge_count() as EdgeId)
        .filter(|&x| {
            let [d0, d1] = g.edge_darts(x);
            inside[g.face_of(d0) as usize] != inside[g.face_of(d1) as usize]
        })
        .collect())
}
