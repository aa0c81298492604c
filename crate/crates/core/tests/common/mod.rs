//! Helpers shared by the integration tests.
#![allow(dead_code)]

use plansep::harness::gen;
use plansep::separator::{find_balanced_or_critical, CriticalSplit, NodeVerdict, SeparatorError, VerdictKind};
use plansep::tree::RootedTree;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Outcome of one random-tree trial.
pub enum Trial {
    Balanced,
    Critical { split: CriticalSplit, subtree: u64 },
}

/// A path `0..=handle` whose last node has many children, each carrying a
/// short chain, so heavy nodes with only light children are common.
fn broom(n: usize, handle: usize, rng: &mut ChaCha8Rng) -> RootedTree {
    let parent = (0..n)
        .map(|i| match i {
            0 => None,
            i if i <= handle => Some(i as u32 - 1),
            i if rng.gen_bool(0.3) || i == handle + 1 => Some(handle as u32),
            i => Some(rng.gen_range(i.saturating_sub(3).max(handle + 1)..i) as u32),
        })
        .collect();
    RootedTree::from_parents(0, parent).unwrap()
}

/// Draws a random tree (uniform recursive for even seeds, a broom with a
/// handle of 0 to 2 nodes otherwise) with 1/4-proper weights, runs detection and, for a
/// critical node, lays its children onto random boundary slots of a face of
/// random size and spreads the node's own weight over the corners.
pub fn critical_trial(seed: u64) -> Result<(Trial, u64), SeparatorError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(8..160);
    let tree = if seed.is_multiple_of(2) {
        gen::random_rooted_tree(n, seed).unwrap()
    } else {
        broom(n, (seed as usize / 2) % 3, &mut rng)
    };
    // A zero total is not a weighting at all; draw again.
    let weights = (0u64..)
        .map(|k| gen::random_proper_weights(n, rng.gen_range(1..40), 1, 4, seed.wrapping_mul(31).wrapping_add(k)))
        .find(|w| w.iter().any(|&x| x > 0))
        .expect("some draw is non-zero");
    let verdict: NodeVerdict = find_balanced_or_critical(&tree, &weights)?;
    let total = verdict.total;
    if verdict.kind == VerdictKind::Balanced {
        return Ok((Trial::Balanced, total));
    }
    let f = verdict.face;
    let sums = tree.subtree_sums(&weights);
    let is_root = tree.parent(f).is_none();
    let children: Vec<u64> = tree.children(f).iter().map(|&c| sums[c as usize]).collect();
    // Non-anchor edges, plus the anchor edge itself when f is the root.
    let min_k = (children.len() + 1 - usize::from(is_root)).max(4);
    let k = min_k + rng.gen_range(0..4);
    let mut slots: Vec<usize> = (0..k - 1 + usize::from(is_root)).collect();
    slots.shuffle(&mut rng);
    let mut child = vec![0u64; k - 1];
    let mut anchor_child = 0;
    for (&c, &slot) in children.iter().zip(&slots) {
        if slot == k - 1 {
            anchor_child = c;
        } else {
            child[slot] = c;
        }
    }
    let mut corner = vec![0u64; k];
    for _ in 0..weights[f as usize] {
        corner[rng.gen_range(0..k)] += 1;
    }
    let split = CriticalSplit::compute(&corner, &child, anchor_child, total)?;
    Ok((Trial::Critical { split, subtree: verdict.subtree_weight }, total))
}

/// The claims re-derived from the fan table with plain integer arithmetic.
pub fn split_claims_hold(split: &CriticalSplit, subtree: u64, total: u64) -> bool {
    let w = u128::from(total);
    let fans_light = split.fan_weight.iter().all(|&x| 4 * u128::from(x) <= w);
    let selected = 4 * u128::from(split.fan_subtree[split.j]);
    let previous_heavy = 4 * u128::from(split.fan_subtree[split.j - 1]) > 3 * w;
    fans_light && previous_heavy && w < selected && selected <= 3 * w && split.fan_subtree[0] == subtree
}
