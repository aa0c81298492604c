use serde::Serialize;

use crate::planar::{EmbeddedPlanarGraph, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BalanceReport {
    /// Component weights of `G \ P`, heaviest first.
    pub components: Vec<u64>,
    pub max_component: u64,
    pub total: u64,
    /// `4 * max_component <= 3 * total`.
    pub passes: bool,
}

impl BalanceReport {
    pub fn ratio(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.max_component as f64 / self.total as f64
        }
    }
}

/// Components of `g` minus `removed` over real edges, checked against 3/4 of
/// the total vertex weight. Uses no embedding information.
pub fn verify_separator(g: &EmbeddedPlanarGraph, removed: &[VertexId]) -> BalanceReport {
    let n = g.n();
    let mut gone = vec![false; n];
    for &v in removed {
        gone[v as usize] = true;
    }
    let mut seen = gone.clone();
    let mut components = Vec::new();
    let mut stack = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        stack.push(s as VertexId);
        let mut weight = 0;
        while let Some(v) = stack.pop() {
            weight += g.weight(v);
            for w in g.real_neighbors(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    stack.push(w);
                }
            }
        }
        components.push(weight);
    }
    components.sort_unstable_by(|a, b| b.cmp(a));
    let total = g.total_weight();
    let max_component = components.first().copied().unwrap_or(0);
    BalanceReport { passes: 4 * u128::from(max_component) <= 3 * u128::from(total), components, max_component, total }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::gen;

    #[test]
    fn everything_removed_passes() {
        let g = gen::grid(3, 3).unwrap();
        let all: Vec<VertexId> = (0..9).collect();
        let r = verify_separator(&g, &all);
        assert!(r.passes);
        assert!(r.components.is_empty());
    }

    #[test]
    fn nothing_removed_fails() {
        let g = gen::grid(3, 3).unwrap();
        let r = verify_separator(&g, &[]);
        assert!(!r.passes);
        assert_eq!(r.ratio(), 1.0);
    }

    #[test]
    fn middle_row_splits_grid() {
        let g = gen::grid(3, 3).unwrap();
        let r = verify_separator(&g, &[3, 4, 5]);
        assert_eq!(r.components, [3, 3]);
        assert!(r.passes);
    }
}
