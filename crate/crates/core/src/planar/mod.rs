//! Embedded planar graphs given by a rotation system.
//!
//! Every undirected edge is stored as two darts. Darts are identified by
//! their [`DartKey`] `(tail, head, copy)` and the internal dart table is
//! sorted by that key, so comparing `DartId`s is the same as comparing keys.
//! A face is identified by the smallest dart on its boundary, which makes
//! face ids locally computable and gives the face table a canonical order.

mod biconnect;
mod blocks;
pub mod io;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use biconnect::{biconnect, Augmentation};
pub use blocks::{articulation_points, edge_blocks};

pub type VertexId = u32;
pub type DartId = u32;
pub type EdgeId = u32;
pub type FaceIdx = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DartKey {
    pub tail: VertexId,
    pub head: VertexId,
    pub copy: u16,
}

impl DartKey {
    pub fn new(tail: VertexId, head: VertexId, copy: u16) -> Self {
        DartKey { tail, head, copy }
    }

    pub fn reversed(self) -> Self {
        DartKey { tail: self.head, head: self.tail, copy: self.copy }
    }
}

impl fmt::Display for DartKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.tail, self.head, self.copy)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dart {
    pub tail: VertexId,
    pub head: VertexId,
    pub copy: u16,
    pub is_virtual: bool,
}

impl Dart {
    pub fn key(&self) -> DartKey {
        DartKey::new(self.tail, self.head, self.copy)
    }
}

/// One entry of a vertex's rotation: the outgoing dart towards `head`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RotationEntry {
    pub head: VertexId,
    pub copy: u16,
    pub is_virtual: bool,
}

impl RotationEntry {
    pub fn real(head: VertexId) -> Self {
        RotationEntry { head, copy: 0, is_virtual: false }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error("dart {0} has no reverse dart at its head")]
    InconsistentRotation(DartKey),
    #[error("dart {0} appears more than once")]
    DuplicateDart(DartKey),
    #[error("vertex {0} is out of range")]
    UnknownVertex(VertexId),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("parallel real edges between {0} and {1}")]
    ParallelEdge(VertexId, VertexId),
    #[error("graph is not connected")]
    NotConnected,
    #[error("Euler's formula violated: n - m + f = {0}")]
    EulerViolation(i64),
    #[error("vertex {0} has negative weight")]
    NegativeWeight(VertexId),
    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error("outer-face hint {0} is not a dart of the graph")]
    UnknownHint(DartKey),
    #[error("graph has no vertices")]
    Empty,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// Smallest dart on the boundary; doubles as the face id.
    pub id: DartId,
    /// Boundary in traversal order, starting at `id`.
    pub darts: Vec<DartId>,
}

impl Face {
    pub fn size(&self) -> usize {
        self.darts.len()
    }
}

/// Darts, rotations and the faces they induce. No planarity is assumed.
#[derive(Clone, Debug)]
pub struct RotationSystem {
    n: usize,
    darts: Vec<Dart>,
    rev: Vec<DartId>,
    rotation: Vec<Vec<DartId>>,
    rot_pos: Vec<u32>,
    edge_of: Vec<EdgeId>,
    edges: Vec<[DartId; 2]>,
    index: HashMap<DartKey, DartId>,
    faces: Vec<Face>,
    face_of: Vec<FaceIdx>,
}

impl RotationSystem {
    pub fn new(n: usize, rotation: &[Vec<RotationEntry>]) -> Result<Self, EmbeddingError> {
        if rotation.len() != n {
            return Err(EmbeddingError::UnknownVertex(rotation.len() as VertexId));
        }
        let mut darts = Vec::new();
        for (v, list) in rotation.iter().enumerate() {
            for e in list {
                if e.head as usize >= n {
                    return Err(EmbeddingError::UnknownVertex(e.head));
                }
                if e.head as usize == v {
                    return Err(EmbeddingError::SelfLoop(e.head));
                }
                darts.push(Dart { tail: v as VertexId, head: e.head, copy: e.copy, is_virtual: e.is_virtual });
            }
        }
        darts.sort_by_key(|d| d.key());
        let mut index = HashMap::with_capacity(darts.len());
        for (i, d) in darts.iter().enumerate() {
            if index.insert(d.key(), i as DartId).is_some() {
                return Err(EmbeddingError::DuplicateDart(d.key()));
            }
        }
        let mut rev = vec![0; darts.len()];
        for (i, d) in darts.iter().enumerate() {
            match index.get(&d.key().reversed()) {
                Some(&r) if darts[r as usize].is_virtual == d.is_virtual => rev[i] = r,
                _ => return Err(EmbeddingError::InconsistentRotation(d.key())),
            }
        }
        // parallel real edges are only tolerated as virtual copies
        for w in darts.windows(2) {
            if w[0].tail == w[1].tail && w[0].head == w[1].head && !w[0].is_virtual && !w[1].is_virtual {
                return Err(EmbeddingError::ParallelEdge(w[0].tail, w[0].head));
            }
        }
        let mut rot = Vec::with_capacity(n);
        let mut rot_pos = vec![0u32; darts.len()];
        for (v, list) in rotation.iter().enumerate() {
            let ids: Vec<DartId> = list.iter().map(|e| index[&DartKey::new(v as VertexId, e.head, e.copy)]).collect();
            for (p, &d) in ids.iter().enumerate() {
                rot_pos[d as usize] = p as u32;
            }
            rot.push(ids);
        }
        let mut edge_of = vec![0; darts.len()];
        let mut edges = Vec::with_capacity(darts.len() / 2);
        for (i, d) in darts.iter().enumerate() {
            if d.tail < d.head {
                let e = edges.len() as EdgeId;
                edge_of[i] = e;
                edge_of[rev[i] as usize] = e;
                edges.push([i as DartId, rev[i]]);
            }
        }
        let mut sys = RotationSystem {
            n,
            darts,
            rev,
            rotation: rot,
            rot_pos,
            edge_of,
            edges,
            index,
            faces: Vec::new(),
            face_of: Vec::new(),
        };
        sys.trace_faces();
        Ok(sys)
    }

    fn trace_faces(&mut self) {
        let mut face_of = vec![FaceIdx::MAX; self.darts.len()];
        let mut faces = Vec::new();
        for start in 0..self.darts.len() as DartId {
            if face_of[start as usize] != FaceIdx::MAX {
                continue;
            }
            let idx = faces.len() as FaceIdx;
            let mut boundary = Vec::new();
            let mut d = start;
            loop {
                face_of[d as usize] = idx;
                boundary.push(d);
                d = self.succ(d);
                if d == start {
                    break;
                }
            }
            faces.push(Face { id: start, darts: boundary });
        }
        self.faces = faces;
        self.face_of = face_of;
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn dart_count(&self) -> usize {
        self.darts.len()
    }

    pub fn dart(&self, d: DartId) -> &Dart {
        &self.darts[d as usize]
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn key(&self, d: DartId) -> DartKey {
        self.darts[d as usize].key()
    }

    pub fn rev(&self, d: DartId) -> DartId {
        self.rev[d as usize]
    }

    pub fn dart_id(&self, key: DartKey) -> Option<DartId> {
        self.index.get(&key).copied()
    }

    /// Outgoing darts of `v` in clockwise order.
    pub fn rotation(&self, v: VertexId) -> &[DartId] {
        &self.rotation[v as usize]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation[v as usize].len()
    }

    pub fn rotation_position(&self, d: DartId) -> usize {
        self.rot_pos[d as usize] as usize
    }

    /// The dart following `d` clockwise around its tail.
    pub fn next_cw(&self, d: DartId) -> DartId {
        let dart = &self.darts[d as usize];
        let rot = &self.rotation[dart.tail as usize];
        rot[(self.rot_pos[d as usize] as usize + 1) % rot.len()]
    }

    /// Face-traversal successor: the dart after `reverse(d)` in the
    /// rotation at `head(d)`.
    pub fn succ(&self, d: DartId) -> DartId {
        self.next_cw(self.rev[d as usize])
    }

    pub fn edge_of(&self, d: DartId) -> EdgeId {
        self.edge_of[d as usize]
    }

    /// Both darts of an edge; the first one points from the smaller endpoint.
    pub fn edge_darts(&self, e: EdgeId) -> [DartId; 2] {
        self.edges[e as usize]
    }

    pub fn edge_endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        let d = self.dart(self.edges[e as usize][0]);
        (d.tail, d.head)
    }

    pub fn edge_key(&self, e: EdgeId) -> DartKey {
        self.key(self.edges[e as usize][0])
    }

    pub fn edge_is_virtual(&self, e: EdgeId) -> bool {
        self.dart(self.edges[e as usize][0]).is_virtual
    }

    /// Edge `(a, b, copy)` regardless of orientation.
    pub fn find_edge(&self, a: VertexId, b: VertexId, copy: u16) -> Option<EdgeId> {
        self.dart_id(DartKey::new(a, b, copy)).map(|d| self.edge_of(d))
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: FaceIdx) -> &Face {
        &self.faces[f as usize]
    }

    pub fn face_of(&self, d: DartId) -> FaceIdx {
        self.face_of[d as usize]
    }

    pub fn face_key(&self, f: FaceIdx) -> DartKey {
        self.key(self.faces[f as usize].id)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &d in &self.rotation[v] {
                let h = self.darts[d as usize].head as usize;
                if !seen[h] {
                    seen[h] = true;
                    count += 1;
                    stack.push(h);
                }
            }
        }
        count == self.n
    }

    /// Rotation lists in the form accepted by [`RotationSystem::new`].
    pub fn rotation_entries(&self) -> Vec<Vec<RotationEntry>> {
        self.rotation
            .iter()
            .map(|list| {
                list.iter()
                    .map(|&d| {
                        let dart = &self.darts[d as usize];
                        RotationEntry { head: dart.head, copy: dart.copy, is_virtual: dart.is_virtual }
                    })
                    .collect()
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub n: usize,
    pub m: usize,
    pub f: usize,
    /// `n - m + f - 2`; zero exactly for a connected planar embedding.
    pub euler_residual: i64,
    pub connected: bool,
}

pub fn validate_embedding(sys: &RotationSystem) -> EmbeddingReport {
    let (n, m, f) = (sys.vertex_count(), sys.edge_count(), sys.face_count());
    EmbeddingReport { n, m, f, euler_residual: n as i64 - m as i64 + f as i64 - 2, connected: sys.is_connected() }
}

/// A connected graph with a validated planar rotation system and vertex weights.
#[derive(Clone, Debug)]
pub struct EmbeddedPlanarGraph {
    sys: RotationSystem,
    weights: Vec<u64>,
    infinite_face: FaceIdx,
}

impl EmbeddedPlanarGraph {
    pub fn new(
        n: usize,
        rotation: &[Vec<RotationEntry>],
        weights: &[i64],
        infinite_face_hint: Option<DartKey>,
    ) -> Result<Self, EmbeddingError> {
        if n == 0 {
            return Err(EmbeddingError::Empty);
        }
        if weights.len() != n {
            return Err(EmbeddingError::WeightCount { expected: n, got: weights.len() });
        }
        if let Some(v) = weights.iter().position(|&w| w < 0) {
            return Err(EmbeddingError::NegativeWeight(v as VertexId));
        }
        let sys = RotationSystem::new(n, rotation)?;
        Self::from_system(sys, weights.iter().map(|&w| w as u64).collect(), infinite_face_hint)
    }

    pub fn from_system(
        sys: RotationSystem,
        weights: Vec<u64>,
        infinite_face_hint: Option<DartKey>,
    ) -> Result<Self, EmbeddingError> {
        if weights.len() != sys.vertex_count() {
            return Err(EmbeddingError::WeightCount { expected: sys.vertex_count(), got: weights.len() });
        }
        let report = validate_embedding(&sys);
        if !report.connected {
            return Err(EmbeddingError::NotConnected);
        }
        if report.euler_residual != 0 {
            return Err(EmbeddingError::EulerViolation(report.euler_residual + 2));
        }
        let infinite_face = match infinite_face_hint {
            Some(key) => {
                let d = sys.dart_id(key).ok_or(EmbeddingError::UnknownHint(key))?;
                sys.face_of(d)
            }
            None => default_infinite_face(&sys),
        };
        Ok(EmbeddedPlanarGraph { sys, weights, infinite_face })
    }

    pub fn system(&self) -> &RotationSystem {
        &self.sys
    }

    pub fn n(&self) -> usize {
        self.sys.vertex_count()
    }

    pub fn m(&self) -> usize {
        self.sys.edge_count()
    }

    pub fn face_count(&self) -> usize {
        self.sys.face_count()
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn weight(&self, v: VertexId) -> u64 {
        self.weights[v as usize]
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.iter().sum()
    }

    pub fn infinite_face(&self) -> FaceIdx {
        self.infinite_face
    }

    pub fn with_weights(&self, weights: Vec<u64>) -> Self {
        assert_eq!(weights.len(), self.n());
        EmbeddedPlanarGraph { sys: self.sys.clone(), weights, infinite_face: self.infinite_face }
    }

    /// Neighbours over real edges, in rotation order.
    pub fn real_neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.sys.rotation(v).iter().filter_map(move |&d| {
            let dart = self.sys.dart(d);
            (!dart.is_virtual).then_some(dart.head)
        })
    }

    pub fn virtual_edge_count(&self) -> usize {
        (0..self.m() as EdgeId).filter(|&e| self.sys.edge_is_virtual(e)).count()
    }
}

impl std::ops::Deref for EmbeddedPlanarGraph {
    type Target = RotationSystem;
    fn deref(&self) -> &RotationSystem {
        &self.sys
    }
}

/// Largest boundary wins; ties go to the smaller face id.
fn default_infinite_face(sys: &RotationSystem) -> FaceIdx {
    let mut best = 0usize;
    for (i, f) in sys.faces().iter().enumerate() {
        if f.size() > sys.faces()[best].size() {
            best = i;
        }
    }
    best as FaceIdx
}

/// Faces as listed by [`RotationSystem::faces`].
pub fn enumerate_faces(g: &EmbeddedPlanarGraph) -> &[Face] {
    g.faces()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    pub nodes: usize,
    /// Indexed by primal edge id: the faces of the edge's two darts.
    pub edges: Vec<(FaceIdx, FaceIdx)>,
}

impl DualGraph {
    pub fn degree(&self, f: FaceIdx) -> usize {
        self.edges.iter().map(|&(a, b)| (a == f) as usize + (b == f) as usize).sum()
    }

    pub fn self_loops(&self) -> usize {
        self.edges.iter().filter(|(a, b)| a == b).count()
    }
}

pub fn build_dual(g: &RotationSystem) -> DualGraph {
    let edges = (0..g.edge_count() as EdgeId)
        .map(|e| {
            let [d0, d1] = g.edge_darts(e);
            (g.face_of(d0), g.face_of(d1))
        })
        .collect();
    DualGraph { nodes: g.face_count(), edges }
}

/// Rotation system from face boundaries, each a cyclic vertex sequence with
/// the face on the left (i.e. listed in traversal order). Every edge must be
/// traversed once in each direction.
pub fn rotation_from_faces(n: usize, faces: &[Vec<VertexId>]) -> Result<Vec<Vec<RotationEntry>>, EmbeddingError> {
    // cw successor of dart (x -> p) is (x -> q) for each face corner p -> x -> q
    let mut next: HashMap<(VertexId, VertexId), VertexId> = HashMap::new();
    let mut first: Vec<Option<VertexId>> = vec![None; n];
    for face in faces {
        let k = face.len();
        for i in 0..k {
            let p = face[i];
            let x = face[(i + 1) % k];
            let q = face[(i + 2) % k];
            if x as usize >= n {
                return Err(EmbeddingError::UnknownVertex(x));
            }
            if next.insert((x, p), q).is_some() {
                return Err(EmbeddingError::DuplicateDart(DartKey::new(x, p, 0)));
            }
            first[x as usize].get_or_insert(p);
        }
    }
    let mut rotation = Vec::with_capacity(n);
    for (x, start) in first.iter().enumerate() {
        let mut list = Vec::new();
        if let Some(start) = *start {
            let mut h = start;
            loop {
                list.push(RotationEntry::real(h));
                h = *next.get(&(x as VertexId, h)).ok_or(EmbeddingError::InconsistentRotation(DartKey::new(
                    x as VertexId,
                    h,
                    0,
                )))?;
                if h == start {
                    break;
                }
                if list.len() > next.len() {
                    return Err(EmbeddingError::InconsistentRotation(DartKey::new(x as VertexId, h, 0)));
                }
            }
        }
        rotation.push(list);
    }
    Ok(rotation)
}

/// The subgraph induced by `keep` (sorted, distinct) with the restricted
/// rotation and relabelled ids `0..keep.len()` in the same order. Relabelling
/// is monotone, so dart-key order and every id tie-break carry over.
pub fn induced_subgraph(g: &EmbeddedPlanarGraph, keep: &[VertexId]) -> Result<EmbeddedPlanarGraph, EmbeddingError> {
    let mut local = vec![None; g.n()];
    for (i, &v) in keep.iter().enumerate() {
        local[v as usize] = Some(i as VertexId);
    }
    let rotation: Vec<Vec<RotationEntry>> = keep
        .iter()
        .map(|&v| {
            g.rotation(v)
                .iter()
                .filter_map(|&d| {
                    let dart = g.dart(d);
                    local[dart.head as usize].map(|head| RotationEntry {
                        head,
                        copy: dart.copy,
                        is_virtual: dart.is_virtual,
                    })
                })
                .collect()
        })
        .collect();
    let weights: Vec<i64> = keep.iter().map(|&v| g.weight(v) as i64).collect();
    EmbeddedPlanarGraph::new(keep.len(), &rotation, &weights, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn triangle() -> EmbeddedPlanarGraph {
        let rot = rotation_from_faces(3, &[vec![0, 1, 2], vec![0, 2, 1]]).unwrap();
        EmbeddedPlanarGraph::new(3, &rot, &[1, 1, 1], None).unwrap()
    }

    fn grid(s: u32) -> EmbeddedPlanarGraph {
        crate::harness::gen::grid(s, s).unwrap()
    }

    #[test]
    fn triangle_has_two_faces() {
        let g = triangle();
        assert_eq!((g.m(), g.face_count()), (3, 2));
        assert!(g.faces().iter().all(|f| f.size() == 3));
    }

    #[test]
    fn grid_counts() {
        let g = grid(4);
        assert_eq!((g.n(), g.m(), g.face_count()), (16, 24, 10));
        let mut sizes: Vec<usize> = g.faces().iter().map(Face::size).collect();
        sizes.sort();
        assert_eq!(sizes, [4, 4, 4, 4, 4, 4, 4, 4, 4, 12]);
        assert_eq!(g.face(g.infinite_face()).size(), 12);
        assert_eq!(validate_embedding(g.system()).euler_residual, 0);
    }

    #[test]
    fn missing_reverse_is_rejected() {
        let rot = vec![vec![RotationEntry::real(1)], vec![]];
        assert_eq!(
            EmbeddedPlanarGraph::new(2, &rot, &[1, 1], None).unwrap_err(),
            EmbeddingError::InconsistentRotation(DartKey::new(0, 1, 0))
        );
    }

    #[test]
    fn path_has_one_face() {
        let rot = vec![
            vec![RotationEntry::real(1)],
            vec![RotationEntry::real(0), RotationEntry::real(2)],
            vec![RotationEntry::real(1)],
        ];
        let g = EmbeddedPlanarGraph::new(3, &rot, &[1, 1, 1], None).unwrap();
        assert_eq!(g.face_count(), 1);
        assert_eq!(g.face(0).size(), 4);
        let dual = build_dual(g.system());
        assert_eq!(dual.nodes, 1);
        assert_eq!(dual.self_loops(), 2);
    }

    #[test]
    fn dual_of_triangle_and_grid() {
        let dual = build_dual(triangle().system());
        assert_eq!(dual.nodes, 2);
        assert!(dual.edges.iter().all(|&(a, b)| a != b));
        let g = grid(4);
        let dual = build_dual(g.system());
        assert_eq!((dual.nodes, dual.edges.len()), (10, 24));
        assert_eq!(dual.degree(g.infinite_face()), 12);
        for f in 0..g.face_count() as FaceIdx {
            assert_eq!(dual.degree(f), g.face(f).size());
        }
    }

    fn k4(swap: bool) -> RotationSystem {
        // 3 is in the middle of triangle 0,1,2
        let faces = vec![vec![0, 1, 3], vec![1, 2, 3], vec![2, 0, 3], vec![0, 2, 1]];
        let mut rot = rotation_from_faces(4, &faces).unwrap();
        if swap {
            rot[3].swap(0, 1);
        }
        RotationSystem::new(4, &rot).unwrap()
    }

    #[test]
    fn k4_planar_and_twisted() {
        let ok = validate_embedding(&k4(false));
        assert_eq!((ok.n, ok.m, ok.f, ok.euler_residual), (4, 6, 4, 0));
        let bad = validate_embedding(&k4(true));
        assert_ne!(bad.euler_residual, 0);
        assert!(bad.connected);
    }

    #[test]
    fn face_ids_are_min_darts_and_sorted() {
        let g = grid(5);
        let mut seen = vec![false; g.dart_count()];
        for (i, f) in g.faces().iter().enumerate() {
            assert_eq!(*f.darts.iter().min().unwrap(), f.id);
            if i > 0 {
                assert!(g.faces()[i - 1].id < f.id);
            }
            for (k, &d) in f.darts.iter().enumerate() {
                assert!(!seen[d as usize]);
                seen[d as usize] = true;
                assert_eq!(g.succ(d), f.darts[(k + 1) % f.size()]);
            }
        }
        assert!(seen.iter().all(|&s| s));
        let total: usize = g.faces().iter().map(Face::size).sum();
        assert_eq!(total, 2 * g.m());
    }

    #[test]
    fn rejects_bad_weights_and_disconnection() {
        let rot = rotation_from_faces(3, &[vec![0, 1, 2], vec![0, 2, 1]]).unwrap();
        assert_eq!(
            EmbeddedPlanarGraph::new(3, &rot, &[1, -1, 1], None).unwrap_err(),
            EmbeddingError::NegativeWeight(1)
        );
        let mut rot2 = rot.clone();
        rot2.push(vec![]);
        assert_eq!(EmbeddedPlanarGraph::new(4, &rot2, &[1, 1, 1, 1], None).unwrap_err(), EmbeddingError::NotConnected);
    }

    #[test]
    fn hint_selects_infinite_face() {
        let rot = rotation_from_faces(3, &[vec![0, 1, 2], vec![0, 2, 1]]).unwrap();
        let g = EmbeddedPlanarGraph::new(3, &rot, &[1, 1, 1], Some(DartKey::new(0, 2, 0))).unwrap();
        let d = g.dart_id(DartKey::new(0, 2, 0)).unwrap();
        assert_eq!(g.infinite_face(), g.face_of(d));
    }
}
