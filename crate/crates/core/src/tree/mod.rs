//! Rooted trees, BFS spanning trees, and the tree/cotree pair.

mod cotree;
mod dot;

use std::collections::VecDeque;

use thiserror::Error;

use crate::planar::{EdgeId, EmbeddedPlanarGraph, VertexId};

pub use cotree::{cotree, fundamental_cut, fundamental_cycle, interior_faces, FundamentalCycle, TreeCotreePair};
pub use dot::to_dot;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("root {0} is not a vertex of the graph")]
    UnknownRoot(u32),
    #[error("not a spanning tree: {0}")]
    NotSpanningTree(String),
    #[error("edge {0} belongs to the tree")]
    EdgeInTree(EdgeId),
    #[error("edge {0} is not a cotree edge")]
    EdgeNotInCotree(EdgeId),
}

/// A rooted tree on nodes `0..len`, stored as parent pointers plus the
/// derived depth table, BFS order and sorted child lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    root: u32,
    parent: Vec<Option<u32>>,
    depth: Vec<u32>,
    order: Vec<u32>,
    children: Vec<Vec<u32>>,
}

impl RootedTree {
    pub fn from_parents(root: u32, parent: Vec<Option<u32>>) -> Result<Self, TreeError> {
        let n = parent.len();
        if root as usize >= n {
            return Err(TreeError::UnknownRoot(root));
        }
        if parent[root as usize].is_some() {
            return Err(TreeError::NotSpanningTree(format!("root {root} has a parent")));
        }
        let mut children = vec![Vec::new(); n];
        for (v, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                if p as usize >= n {
                    return Err(TreeError::NotSpanningTree(format!("parent {p} of {v} out of range")));
                }
                children[p as usize].push(v as u32);
            } else if v != root as usize {
                return Err(TreeError::NotSpanningTree(format!("node {v} has no parent")));
            }
        }
        let mut depth = vec![u32::MAX; n];
        let mut order = Vec::with_capacity(n);
        depth[root as usize] = 0;
        order.push(root);
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &c in &children[v as usize] {
                depth[c as usize] = depth[v as usize] + 1;
                order.push(c);
            }
        }
        if order.len() != n {
            return Err(TreeError::NotSpanningTree("parent pointers contain a cycle".into()));
        }
        Ok(RootedTree { root, parent, depth, order, children })
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    pub fn parent(&self, v: u32) -> Option<u32> {
        self.parent[v as usize]
    }

    pub fn parents(&self) -> &[Option<u32>] {
        &self.parent
    }

    pub fn depth(&self, v: u32) -> u32 {
        self.depth[v as usize]
    }

    pub fn height(&self) -> u32 {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    /// Nodes in BFS order from the root; children in ascending id order.
    pub fn order(&self) -> &[u32] {
        &self.order
    }

    pub fn children(&self, v: u32) -> &[u32] {
        &self.children[v as usize]
    }

    pub fn subtree_sums(&self, values: &[u64]) -> Vec<u64> {
        subtree_sums(self, values)
    }

    pub fn lca(&self, mut a: u32, mut b: u32) -> u32 {
        while self.depth(a) > self.depth(b) {
            a = self.parent(a).unwrap();
        }
        while self.depth(b) > self.depth(a) {
            b = self.parent(b).unwrap();
        }
        while a != b {
            a = self.parent(a).unwrap();
            b = self.parent(b).unwrap();
        }
        a
    }

    /// Tree path from `a` to `b`, both ends included.
    pub fn path(&self, a: u32, b: u32) -> Vec<u32> {
        let top = self.lca(a, b);
        let mut up = vec![a];
        let mut x = a;
        while x != top {
            x = self.parent(x).unwrap();
            up.push(x);
        }
        let mut down = Vec::new();
        let mut y = b;
        while y != top {
            down.push(y);
            y = self.parent(y).unwrap();
        }
        up.extend(down.into_iter().rev());
        up
    }

    /// All nodes of the subtree rooted at `v`, ascending.
    pub fn descendants(&self, v: u32) -> Vec<u32> {
        let mut out = vec![v];
        let mut i = 0;
        while i < out.len() {
            out.extend_from_slice(&self.children[out[i] as usize]);
            i += 1;
        }
        out.sort_unstable();
        out
    }
}

/// `sums[u]` is the total of `values` over the subtree of `u`.
pub fn subtree_sums(tree: &RootedTree, values: &[u64]) -> Vec<u64> {
    assert_eq!(values.len(), tree.len());
    let mut sums = values.to_vec();
    for &v in tree.order().iter().rev() {
        if let Some(p) = tree.parent(v) {
            sums[p as usize] += sums[v as usize];
        }
    }
    sums
}

/// BFS tree over real edges; each vertex takes the smallest-id neighbour one
/// level closer to the root as its parent.
pub fn bfs_tree(g: &EmbeddedPlanarGraph, root: VertexId) -> Result<RootedTree, TreeError> {
    let n = g.n();
    if root as usize >= n {
        return Err(TreeError::UnknownRoot(root));
    }
    let mut dist = vec![u32::MAX; n];
    dist[root as usize] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for w in g.real_neighbors(v) {
            if dist[w as usize] == u32::MAX {
                dist[w as usize] = dist[v as usize] + 1;
                queue.push_back(w);
            }
        }
    }
    if dist.contains(&u32::MAX) {
        return Err(TreeError::NotSpanningTree("graph is not connected by real edges".into()));
    }
    let parent = (0..n as VertexId)
        .map(|v| {
            if v == root {
                None
            } else {
                g.real_neighbors(v).filter(|&w| dist[w as usize] + 1 == dist[v as usize]).min()
            }
        })
        .collect();
    RootedTree::from_parents(root, parent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::gen;
    use rand::{Rng, SeedableRng};

    #[test]
    fn grid_bfs_depths() {
        let g = gen::grid(4, 4).unwrap();
        let t = bfs_tree(&g, 0).unwrap();
        assert_eq!(t.depth(15), 6);
        assert_eq!(t.parent(5), Some(1));
        assert!(matches!(bfs_tree(&g, 16), Err(TreeError::UnknownRoot(16))));
    }

    #[test]
    fn triangle_depths() {
        let g = gen::cycle_chords(3, 0, 0).unwrap();
        let t = bfs_tree(&g, 0).unwrap();
        assert_eq!((0..3).map(|v| t.depth(v)).collect::<Vec<_>>(), [0, 1, 1]);
    }

    #[test]
    fn path_sums() {
        let t = RootedTree::from_parents(0, vec![None, Some(0), Some(1)]).unwrap();
        assert_eq!(subtree_sums(&t, &[1, 1, 1]), [3, 2, 1]);
        let single = RootedTree::from_parents(0, vec![None]).unwrap();
        assert_eq!(subtree_sums(&single, &[7]), [7]);
    }

    #[test]
    fn sums_match_descendant_enumeration() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for n in [1usize, 2, 50, 1000] {
            let parent: Vec<Option<u32>> =
                (0..n).map(|v| if v == 0 { None } else { Some(rng.gen_range(0..v) as u32) }).collect();
            let t = RootedTree::from_parents(0, parent).unwrap();
            let values: Vec<u64> = (0..n).map(|_| rng.gen_range(0..100)).collect();
            let sums = subtree_sums(&t, &values);
            for v in (0..n as u32).step_by(7) {
                let brute: u64 = t.descendants(v).iter().map(|&d| values[d as usize]).sum();
                assert_eq!(sums[v as usize], brute);
            }
        }
    }

    #[test]
    fn rejects_cycles_and_orphans() {
        assert!(RootedTree::from_parents(0, vec![None, Some(2), Some(1)]).is_err());
        assert!(RootedTree::from_parents(0, vec![None, None]).is_err());
    }

    #[test]
    fn paths_and_lca() {
        let t = RootedTree::from_parents(0, vec![None, Some(0), Some(0), Some(1), Some(1), Some(2)]).unwrap();
        assert_eq!(t.lca(3, 5), 0);
        assert_eq!(t.path(3, 5), [3, 1, 0, 2, 5]);
        assert_eq!(t.path(4, 4), [4]);
        assert_eq!(t.path(1, 4), [1, 4]);
        assert_eq!(t.height(), 2);
    }
}
