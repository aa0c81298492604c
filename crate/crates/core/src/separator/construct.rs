use serde::Serialize;

use super::detect::{find_balanced_or_critical, is_heavy, NodeVerdict, VerdictKind};
use super::weights::{check_proper, transfer_weights, FacePolicy, FaceWeighting};
use super::SeparatorError;
use crate::planar::{
    biconnect, Augmentation, DartId, DartKey, EmbeddedPlanarGraph, FaceIdx, RotationEntry, RotationSystem, VertexId,
};
use crate::tree::{cotree, RootedTree, TreeCotreePair};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SeparatorCase {
    Balanced,
    Critical,
    LeafCritical,
}

impl SeparatorCase {
    pub fn as_str(self) -> &'static str {
        match self {
            SeparatorCase::Balanced => "balanced",
            SeparatorCase::Critical => "critical",
            SeparatorCase::LeafCritical => "leaf-critical",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClosingEdge {
    /// An edge of the input graph.
    Real(DartKey),
    /// An edge added by biconnected augmentation.
    Augmented(DartKey),
    /// A chord through the critical face. Each slot is the dart the new
    /// dart is inserted immediately before, in clockwise order.
    Virtual { u_before: DartKey, v_before: DartKey },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparatorResult {
    pub case: SeparatorCase,
    /// Canonical key of the selected face in the augmented graph.
    pub face: DartKey,
    pub u: VertexId,
    pub v: VertexId,
    /// Tree path from `u` to `v`.
    pub path: Vec<VertexId>,
    pub closing: ClosingEdge,
    /// Face weight on the dual-subtree side of the cycle.
    pub enclosed_weight: u64,
    pub exterior_weight: u64,
    pub total_weight: u64,
}

impl SeparatorResult {
    /// Heavier side over the total, unreduced.
    pub fn balance_ratio(&self) -> (u64, u64) {
        (self.enclosed_weight.max(self.exterior_weight), self.total_weight)
    }

    /// `g` with the closing chord embedded at its recorded slots; the same
    /// graph when the closing edge already exists.
    pub fn embed_closing(&self, g: &EmbeddedPlanarGraph) -> Result<EmbeddedPlanarGraph, SeparatorError> {
        let ClosingEdge::Virtual { u_before, v_before } = self.closing else {
            return Ok(g.clone());
        };
        let mut rotation = g.rotation_entries();
        let copy = rotation[self.u as usize].iter().filter(|e| e.head == self.v).count() as u16;
        for (at, other, before) in [(self.u, self.v, u_before), (self.v, self.u, v_before)] {
            let list = &mut rotation[at as usize];
            let pos = list
                .iter()
                .position(|e| e.head == before.head && e.copy == before.copy)
                .ok_or(SeparatorError::Record(format!("slot dart {before} missing")))?;
            list.insert(pos, RotationEntry { head: other, copy, is_virtual: true });
        }
        let weights: Vec<i64> = g.weights().iter().map(|&w| w as i64).collect();
        let hint = g.face_key(g.infinite_face());
        Ok(EmbeddedPlanarGraph::new(g.n(), &rotation, &weights, Some(hint))?)
    }
}

/// The dart through which `f` attaches to its dual parent, or the face's
/// own leader dart at the dual root.
pub fn face_anchor(g: &RotationSystem, pair: &TreeCotreePair, f: FaceIdx) -> DartId {
    match pair.dual_parent_edge[f as usize] {
        Some(e) => {
            let [d0, d1] = g.edge_darts(e);
            if g.face_of(d0) == f {
                d0
            } else {
                d1
            }
        }
        None => g.face(f).id,
    }
}

/// Boundary darts of the face of `start`, in traversal order from `start`.
pub fn face_walk(g: &RotationSystem, start: DartId) -> Vec<DartId> {
    let mut walk = vec![start];
    let mut d = g.succ(start);
    while d != start {
        walk.push(d);
        d = g.succ(d);
    }
    walk
}

fn closing_for(g: &RotationSystem, d: DartId) -> ClosingEdge {
    if g.dart(d).is_virtual {
        ClosingEdge::Augmented(g.key(d))
    } else {
        ClosingEdge::Real(g.key(d))
    }
}

fn along_anchor(
    g: &RotationSystem,
    pair: &TreeCotreePair,
    verdict: &NodeVerdict,
    case: SeparatorCase,
) -> SeparatorResult {
    let anchor = face_anchor(g, pair, verdict.face);
    let dart = g.dart(anchor);
    let (u, v) = (dart.head, dart.tail);
    SeparatorResult {
        case,
        face: g.face_key(verdict.face),
        u,
        v,
        path: pair.primal.path(u, v),
        closing: closing_for(g, anchor),
        enclosed_weight: verdict.subtree_weight,
        exterior_weight: verdict.total - verdict.subtree_weight,
        total_weight: verdict.total,
    }
}

pub fn separator_from_balanced(
    g: &RotationSystem,
    pair: &TreeCotreePair,
    verdict: &NodeVerdict,
) -> Result<SeparatorResult, SeparatorError> {
    if verdict.kind != VerdictKind::Balanced || pair.dual_parent_edge[verdict.face as usize].is_none() {
        return Err(SeparatorError::WrongVerdict);
    }
    Ok(along_anchor(g, pair, verdict, SeparatorCase::Balanced))
}

/// Weights of the fan triangulation of a critical face from its last vertex.
///
/// With boundary `v_1..v_k`, fan triangle `i` (0-based) is
/// `(v_k, v_{i+1}, v_{i+2})`; triangle 0 touches the dual parent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalSplit {
    pub k: usize,
    pub fan_weight: Vec<u64>,
    pub fan_children: Vec<u64>,
    pub fan_subtree: Vec<u64>,
    /// 1-based index of the last heavy fan triangle; triangle `j + 1` is balanced.
    pub j: usize,
}

impl CriticalSplit {
    /// `corner[t]` is the weight `v_{t+1}` gave to the face (0 otherwise);
    /// `child[t]` the dual subtree behind boundary edge `(v_{t+1}, v_{t+2})`
    /// (0 for tree edges); `anchor_child` the subtree behind `(v_k, v_1)` when
    /// that edge leads to a child rather than the parent.
    pub fn compute(corner: &[u64], child: &[u64], anchor_child: u64, total: u64) -> Result<Self, SeparatorError> {
        let k = corner.len();
        if k < 4 || child.len() != k - 1 {
            return Err(SeparatorError::ClaimViolated(format!("critical face of size {k} cannot be split")));
        }
        let fans = k - 2;
        let mut fan_weight = vec![0u64; fans];
        fan_weight[0] += corner[0];
        for s in 2..k {
            fan_weight[s - 2] += corner[s - 1];
        }
        fan_weight[fans - 1] += corner[k - 1];
        let mut fan_children: Vec<u64> = child[..fans].to_vec();
        fan_children[fans - 1] += child[k - 2];
        fan_children[0] += anchor_child;
        let mut fan_subtree = vec![0u64; fans];
        let mut acc = 0;
        for i in (0..fans).rev() {
            acc += fan_weight[i] + fan_children[i];
            fan_subtree[i] = acc;
        }
        let j = (0..fans - 1)
            .find(|&i| is_heavy(fan_subtree[i], total) && !is_heavy(fan_subtree[i + 1], total))
            .map(|i| i + 1)
            .ok_or_else(|| SeparatorError::ClaimViolated("no heavy-to-light step along the fan".into()))?;
        let split = CriticalSplit { k, fan_weight, fan_children, fan_subtree, j };
        split.check_claims(total)?;
        Ok(split)
    }

    pub fn selected_subtree(&self) -> u64 {
        self.fan_subtree[self.j]
    }

    /// Every fan triangle weighs at most `W/4`, and triangle `j + 1` has
    /// subtree weight in `(W/4, 3W/4]`.
    pub fn check_claims(&self, total: u64) -> Result<(), SeparatorError> {
        let w = u128::from(total);
        if let Some(i) = self.fan_weight.iter().position(|&x| 4 * u128::from(x) > w) {
            return Err(SeparatorError::ClaimViolated(format!("fan triangle {} outweighs W/4", i + 1)));
        }
        if !is_heavy(self.fan_subtree[0], total) {
            return Err(SeparatorError::ClaimViolated("first fan triangle is not heavy".into()));
        }
        let s = 4 * u128::from(self.selected_subtree());
        if !(w < s && s <= 3 * w) {
            return Err(SeparatorError::ClaimViolated(format!("fan triangle {} is not balanced", self.j + 1)));
        }
        Ok(())
    }
}

pub fn separator_from_critical(
    g: &RotationSystem,
    pair: &TreeCotreePair,
    weighting: &FaceWeighting,
    vertex_weights: &[u64],
    verdict: &NodeVerdict,
) -> Result<(SeparatorResult, Option<CriticalSplit>), SeparatorError> {
    if verdict.kind != VerdictKind::Critical {
        return Err(SeparatorError::WrongVerdict);
    }
    let f = verdict.face;
    let is_root = pair.dual_parent_edge[f as usize].is_none();
    if pair.dual.children(f).is_empty() {
        if is_root {
            return Err(SeparatorError::ClaimViolated("dual root has no children".into()));
        }
        return Ok((along_anchor(g, pair, verdict, SeparatorCase::LeafCritical), None));
    }
    let walk = face_walk(g, face_anchor(g, pair, f));
    let k = walk.len();
    let vertices: Vec<VertexId> = walk.iter().map(|&d| g.dart(d).head).collect();
    let mut seen = vertices.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != k {
        return Err(SeparatorError::NotBiconnected(g.face_key(f)));
    }
    let sums = pair.dual.subtree_sums(&weighting.face_weight);
    let child_behind = |d: DartId| -> u64 {
        let e = g.edge_of(d);
        let other = g.face_of(g.rev(d));
        if pair.dual_parent_edge[other as usize] == Some(e) {
            sums[other as usize]
        } else {
            0
        }
    };
    let corner: Vec<u64> = vertices
        .iter()
        .map(|&v| if weighting.chosen_face[v as usize] == f { vertex_weights[v as usize] } else { 0 })
        .collect();
    let child: Vec<u64> = walk[1..].iter().map(|&d| child_behind(d)).collect();
    let anchor_child = if is_root { child_behind(walk[0]) } else { 0 };
    let split = CriticalSplit::compute(&corner, &child, anchor_child, verdict.total)?;
    if split.fan_subtree[0] != verdict.subtree_weight {
        return Err(SeparatorError::ClaimViolated("fan does not account for the face subtree".into()));
    }
    // v_{j+1} in 1-based boundary numbering
    let u = vertices[split.j];
    let v = vertices[k - 1];
    let enclosed = split.selected_subtree();
    let result = SeparatorResult {
        case: SeparatorCase::Critical,
        face: g.face_key(f),
        u,
        v,
        path: pair.primal.path(u, v),
        closing: ClosingEdge::Virtual { u_before: g.key(walk[split.j + 1]), v_before: g.key(walk[0]) },
        enclosed_weight: enclosed,
        exterior_weight: verdict.total - enclosed,
        total_weight: verdict.total,
    };
    Ok((result, Some(split)))
}

/// Everything produced on the way to a separator.
#[derive(Clone, Debug)]
pub struct SeparatorRun {
    pub result: SeparatorResult,
    pub augmentation: Augmentation,
    pub pair: TreeCotreePair,
    pub weighting: FaceWeighting,
    pub verdict: NodeVerdict,
    pub split: Option<CriticalSplit>,
}

pub fn compute_separator_detailed(
    g: &EmbeddedPlanarGraph,
    tree: &RootedTree,
    policy: FacePolicy,
) -> Result<SeparatorRun, SeparatorError> {
    let proper = check_proper(g.weights(), 1, 12);
    if proper.degenerate {
        return Err(SeparatorError::DegenerateTotal);
    }
    if !proper.proper {
        return Err(SeparatorError::NotProper { max: proper.max, total: proper.total });
    }
    let augmentation = biconnect(g)?;
    let aug = &augmentation.graph;
    let pair = cotree(aug.system(), tree)?;
    let weighting = transfer_weights(aug, policy);
    let verdict = find_balanced_or_critical(&pair.dual, &weighting.face_weight)?;
    let (result, split) = match verdict.kind {
        VerdictKind::Balanced => (separator_from_balanced(aug.system(), &pair, &verdict)?, None),
        VerdictKind::Critical => separator_from_critical(aug.system(), &pair, &weighting, aug.weights(), &verdict)?,
    };
    Ok(SeparatorRun { result, augmentation, pair, weighting, verdict, split })
}

/// Path separator for `g` along spanning tree `tree`, using `g`'s weights.
pub fn compute_separator(g: &EmbeddedPlanarGraph, tree: &RootedTree) -> Result<SeparatorResult, SeparatorError> {
    compute_separator_detailed(g, tree, FacePolicy::MinFaceId).map(|run| run.result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::gen;
    use crate::planar::validate_embedding;
    use crate::separator::verify_separator;
    use crate::tree::bfs_tree;

    #[test]
    fn grid_separator_is_balanced() {
        let g = gen::grid(4, 4).unwrap();
        let t = bfs_tree(&g, 0).unwrap();
        let r = compute_separator(&g, &t).unwrap();
        assert!(verify_separator(&g, &r.path).passes);
        assert!(r.path.len() as u32 <= 2 * t.height() + 1);
        assert_eq!(r.path.first(), Some(&r.u));
        assert_eq!(r.path.last(), Some(&r.v));
    }

    #[test]
    fn cycle_is_leaf_critical() {
        let g = gen::cycle_chords(12, 0, 0).unwrap();
        let parent = (0..12).map(|v| if v == 0 { None } else { Some(v - 1) }).collect();
        let t = RootedTree::from_parents(0, parent).unwrap();
        let run = compute_separator_detailed(&g, &t, FacePolicy::MinFaceId).unwrap();
        assert_eq!(run.result.case, SeparatorCase::LeafCritical);
        assert_eq!(run.result.path.len(), 12);
        assert_eq!(run.result.closing, ClosingEdge::Real(DartKey::new(11, 0, 0)));
        assert!(verify_separator(&g, &run.result.path).passes);
    }

    #[test]
    fn improper_weights_are_rejected() {
        let g = gen::grid(4, 4).unwrap();
        let w = gen::weights(16, gen::WeightScheme::HeavyVertex, 0);
        let g = g.with_weights(w);
        let t = bfs_tree(&g, 0).unwrap();
        assert!(matches!(compute_separator(&g, &t), Err(SeparatorError::NotProper { .. })));
        let zero = g.with_weights(vec![0; 16]);
        assert_eq!(compute_separator(&zero, &t), Err(SeparatorError::DegenerateTotal));
    }

    #[test]
    fn fan_split_by_hand() {
        // k = 6, W = 40: children 9, 9, 9 behind edges 1..3, nothing else
        let split = CriticalSplit::compute(&[1, 1, 1, 1, 1, 1], &[9, 9, 9, 0, 0], 0, 40).unwrap();
        assert_eq!(split.fan_weight, [2, 1, 1, 2]);
        assert_eq!(split.fan_children, [9, 9, 9, 0]);
        assert_eq!(split.fan_subtree, [33, 22, 12, 2]);
        assert_eq!(split.j, 1);
        assert_eq!(split.selected_subtree(), 22);
    }

    #[test]
    fn wheel_with_heavy_hub_face() {
        // a wheel: hub 0, rim 1..=16; T = star at the hub
        let rim = 16u32;
        let mut faces: Vec<Vec<u32>> = (0..rim).map(|i| vec![0, 1 + (i + 1) % rim, 1 + i]).collect();
        faces.push((1..=rim).collect());
        let rot = crate::planar::rotation_from_faces(17, &faces).unwrap();
        let g = EmbeddedPlanarGraph::new(17, &rot, &[1; 17], None).unwrap();
        let parent = (0..17).map(|v| if v == 0 { None } else { Some(0) }).collect();
        let t = RootedTree::from_parents(0, parent).unwrap();
        let run = compute_separator_detailed(&g, &t, FacePolicy::MinFaceId).unwrap();
        assert!(verify_separator(&g, &run.result.path).passes);
        if let ClosingEdge::Virtual { .. } = run.result.closing {
            let g2 = run.result.embed_closing(&run.augmentation.graph).unwrap();
            assert_eq!(validate_embedding(g2.system()).euler_residual, 0);
        }
    }
}
