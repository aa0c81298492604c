use std::fmt::Write as _;

use super::TreeCotreePair;
use crate::planar::{EdgeId, RotationSystem};

/// Graphviz rendering of `T` (solid), cotree edges (dashed; dotted when
/// virtual) and the rooted dual tree between face nodes `f<idx>`.
pub fn to_dot(g: &RotationSystem, pair: &TreeCotreePair) -> String {
    let mut out = String::from("graph tree_cotree {\n");
    for v in 0..g.vertex_count() {
        writeln!(out, "  v{v} [label=\"{v}\"];").unwrap();
    }
    for e in 0..g.edge_count() as EdgeId {
        let (a, b) = g.edge_endpoints(e);
        let style = match (pair.in_tree[e as usize], g.edge_is_virtual(e)) {
            (true, _) => "kind=tree style=solid",
            (false, true) => "kind=virtual style=dotted",
            (false, false) => "kind=cotree style=dashed",
        };
        writeln!(out, "  v{a} -- v{b} [{style}];").unwrap();
    }
    for f in 0..g.face_count() {
        let shape = if f as u32 == pair.dual_root() { "doublecircle" } else { "circle" };
        writeln!(out, "  f{f} [shape={shape} color=blue];").unwrap();
    }
    for (f, p) in pair.dual.parents().iter().enumerate() {
        if let Some(p) = p {
            writeln!(out, "  f{p} -- f{f} [kind=dual color=blue];").unwrap();
        }
    }
    out.push_str("}\n");
    out
}
