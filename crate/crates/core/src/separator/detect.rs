use serde::Serialize;

use super::SeparatorError;
use crate::tree::RootedTree;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VerdictKind {
    Balanced,
    Critical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NodeVerdict {
    pub kind: VerdictKind,
    pub face: u32,
    pub subtree_weight: u64,
    pub total: u64,
}

/// `W/4 <= s <= 3W/4`.
pub(crate) fn is_balanced(sub: u64, total: u64) -> bool {
    let s = 4 * u128::from(sub);
    u128::from(total) <= s && s <= 3 * u128::from(total)
}

/// `s > 3W/4`.
pub(crate) fn is_heavy(sub: u64, total: u64) -> bool {
    4 * u128::from(sub) > 3 * u128::from(total)
}

/// `s < W/4`.
pub(crate) fn is_light(sub: u64, total: u64) -> bool {
    4 * u128::from(sub) < u128::from(total)
}

/// Balanced node with the largest id if one exists; otherwise the deepest
/// critical node (largest id among equally deep ones).
pub fn find_balanced_or_critical(tree: &RootedTree, weights: &[u64]) -> Result<NodeVerdict, SeparatorError> {
    let sums = tree.subtree_sums(weights);
    let total = sums[tree.root() as usize];
    if total == 0 {
        return Err(SeparatorError::DegenerateTotal);
    }
    if let Some(f) = (0..tree.len()).rev().find(|&f| is_balanced(sums[f], total)) {
        return Ok(NodeVerdict { kind: VerdictKind::Balanced, face: f as u32, subtree_weight: sums[f], total });
    }
    let critical = (0..tree.len() as u32)
        .filter(|&f| {
            is_heavy(sums[f as usize], total) && tree.children(f).iter().all(|&c| is_light(sums[c as usize], total))
        })
        .max_by_key(|&f| (tree.depth(f), f))
        .ok_or_else(|| SeparatorError::ClaimViolated("neither balanced nor critical node".into()))?;
    Ok(NodeVerdict { kind: VerdictKind::Critical, face: critical, subtree_weight: sums[critical as usize], total })
}
