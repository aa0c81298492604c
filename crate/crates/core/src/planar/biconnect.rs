//! Biconnected augmentation by virtual chords inside faces.
//!
//! Wherever a face walk turns at a vertex between two edges of different
//! blocks, a virtual chord joining the outer endpoints of that corner is
//! inserted into the same face. This keeps the embedding planar and merges
//! the two blocks.

use std::collections::HashMap;

use super::{edge_blocks, DartKey, EmbeddedPlanarGraph, EmbeddingError, RotationEntry, VertexId};

#[derive(Clone, Debug)]
pub struct Augmentation {
    pub graph: EmbeddedPlanarGraph,
    /// Virtual edges, each as the dart from the smaller endpoint.
    pub virtual_edges: Vec<DartKey>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn add(&mut self) -> usize {
        self.0.push(self.0.len());
        self.0.len() - 1
    }
}

fn edge_slot(k: DartKey) -> (VertexId, VertexId, u16) {
    (k.tail.min(k.head), k.tail.max(k.head), k.copy)
}

fn position(list: &[RotationEntry], head: VertexId, copy: u16) -> usize {
    list.iter().position(|e| e.head == head && e.copy == copy).expect("dart present in rotation")
}

pub fn biconnect(g: &EmbeddedPlanarGraph) -> Result<Augmentation, EmbeddingError> {
    let n = g.n();
    let hint = g.face_key(g.infinite_face());
    let mut rotation = g.rotation_entries();
    let (blocks, block_count) = edge_blocks(g.system());
    if block_count <= 1 {
        return Ok(Augmentation { graph: g.clone(), virtual_edges: Vec::new() });
    }
    let mut uf = UnionFind((0..block_count).collect());
    let mut block_of: HashMap<(VertexId, VertexId, u16), usize> =
        (0..g.m() as u32).map(|e| (edge_slot(g.edge_key(e)), blocks[e as usize] as usize)).collect();
    let mut multiplicity: HashMap<(VertexId, VertexId), u16> = HashMap::new();
    for e in 0..g.m() as u32 {
        let (a, b) = g.edge_endpoints(e);
        *multiplicity.entry((a, b)).or_default() += 1;
    }
    let mut virtual_edges = Vec::new();

    for face in g.faces() {
        let mut walk: Vec<DartKey> = face.darts.iter().map(|&d| g.key(d)).collect();
        let mut idx = 0usize;
        let mut unchanged = 0usize;
        while walk.len() >= 3 && unchanged < walk.len() {
            let j = (idx + 1) % walk.len();
            let (d1, d2) = (walk[idx], walk[j]);
            let (a, b) = (d1.tail, d2.head);
            let b1 = uf.find(block_of[&edge_slot(d1)]);
            let b2 = uf.find(block_of[&edge_slot(d2)]);
            if a == b || b1 == b2 {
                idx = j;
                unchanged += 1;
                continue;
            }
            let count = multiplicity.entry((a.min(b), a.max(b))).or_default();
            let copy = *count;
            *count += 1;
            let at_a = position(&rotation[a as usize], d1.head, d1.copy);
            rotation[a as usize].insert(at_a, RotationEntry { head: b, copy, is_virtual: true });
            let at_b = position(&rotation[b as usize], d2.tail, d2.copy);
            rotation[b as usize].insert(at_b + 1, RotationEntry { head: a, copy, is_virtual: true });

            let merged = uf.add();
            uf.0[b1] = merged;
            uf.0[b2] = merged;
            let chord = DartKey::new(a, b, copy);
            block_of.insert(edge_slot(chord), merged);
            virtual_edges.push(DartKey::new(a.min(b), a.max(b), copy));

            walk[idx] = chord;
            walk.remove(j);
            if j < idx {
                idx -= 1;
            }
            unchanged = 0;
        }
    }
    let graph =
        EmbeddedPlanarGraph::new(n, &rotation, &g.weights().iter().map(|&w| w as i64).collect::<Vec<_>>(), Some(hint))?;
    virtual_edges.sort();
    Ok(Augmentation { graph, virtual_edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::{articulation_points, rotation_from_faces, validate_embedding};

    fn path(n: u32) -> EmbeddedPlanarGraph {
        let rot: Vec<Vec<RotationEntry>> = (0..n)
            .map(|v| {
                let mut l = Vec::new();
                if v > 0 {
                    l.push(RotationEntry::real(v - 1));
                }
                if v + 1 < n {
                    l.push(RotationEntry::real(v + 1));
                }
                l
            })
            .collect();
        EmbeddedPlanarGraph::new(n as usize, &rot, &vec![1; n as usize], None).unwrap()
    }

    fn check(g: &EmbeddedPlanarGraph) -> Augmentation {
        let aug = biconnect(g).unwrap();
        assert!(articulation_points(aug.graph.system()).is_empty());
        assert_eq!(validate_embedding(aug.graph.system()).euler_residual, 0);
        assert_eq!(aug.graph.m(), g.m() + aug.virtual_edges.len());
        for e in 0..g.m() as u32 {
            let k = g.edge_key(e);
            let d = aug.graph.dart_id(k).unwrap();
            assert!(!aug.graph.dart(d).is_virtual);
        }
        aug
    }

    #[test]
    fn path_becomes_biconnected() {
        for n in 3..12 {
            let aug = check(&path(n));
            assert_eq!(aug.virtual_edges.len() as u32, n - 2);
        }
    }

    #[test]
    fn star_needs_chords() {
        let rot = vec![
            vec![RotationEntry::real(1), RotationEntry::real(2), RotationEntry::real(3)],
            vec![RotationEntry::real(0)],
            vec![RotationEntry::real(0)],
            vec![RotationEntry::real(0)],
        ];
        let g = EmbeddedPlanarGraph::new(4, &rot, &[1; 4], None).unwrap();
        let aug = check(&g);
        assert_eq!(aug.virtual_edges.len(), 2);
    }

    #[test]
    fn bowtie_gets_one_chord() {
        let faces = vec![vec![0, 1, 2], vec![2, 3, 4], vec![0, 2, 4, 3, 2, 1]];
        let rot = rotation_from_faces(5, &faces).unwrap();
        let g = EmbeddedPlanarGraph::new(5, &rot, &[1; 5], None).unwrap();
        let aug = check(&g);
        assert_eq!(aug.virtual_edges.len(), 1);
    }

    #[test]
    fn biconnected_input_is_untouched() {
        let faces = vec![vec![0, 1, 2, 3], vec![3, 2, 1, 0]];
        let rot = rotation_from_faces(4, &faces).unwrap();
        let g = EmbeddedPlanarGraph::new(4, &rot, &[1; 4], None).unwrap();
        assert!(biconnect(&g).unwrap().virtual_edges.is_empty());
    }
}
