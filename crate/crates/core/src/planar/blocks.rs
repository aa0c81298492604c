//! Biconnected components (blocks) by iterative Hopcroft–Tarjan.

use super::{EdgeId, RotationSystem, VertexId};

/// Block index for every edge, plus the number of blocks.
pub fn edge_blocks(sys: &RotationSystem) -> (Vec<u32>, usize) {
    let n = sys.vertex_count();
    let mut block = vec![u32::MAX; sys.edge_count()];
    let mut disc = vec![u32::MAX; n];
    let mut low = vec![0u32; n];
    let mut edge_stack: Vec<EdgeId> = Vec::new();
    let mut count = 0u32;
    let mut timer = 0u32;
    for root in 0..n {
        if disc[root] != u32::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        // (vertex, edge used to enter, next rotation index)
        let mut stack: Vec<(usize, EdgeId, usize)> = vec![(root, EdgeId::MAX, 0)];
        while let Some(top) = stack.last_mut() {
            let (v, via, i) = *top;
            let rot = sys.rotation(v as VertexId);
            if i < rot.len() {
                top.2 += 1;
                let d = rot[i];
                let e = sys.edge_of(d);
                if e == via {
                    continue;
                }
                let w = sys.dart(d).head as usize;
                if disc[w] == u32::MAX {
                    edge_stack.push(e);
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, e, 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push(e);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        while let Some(e) = edge_stack.pop() {
                            block[e as usize] = count;
                            if e == via {
                                break;
                            }
                        }
                        count += 1;
                    }
                }
            }
        }
    }
    (block, count as usize)
}

/// Cut vertices, ascending.
pub fn articulation_points(sys: &RotationSystem) -> Vec<VertexId> {
    let (block, _) = edge_blocks(sys);
    (0..sys.vertex_count() as VertexId)
        .filter(|&v| {
            let mut seen: Option<u32> = None;
            sys.rotation(v).iter().any(|&d| {
                let b = block[sys.edge_of(d) as usize];
                match seen {
                    None => {
                        seen = Some(b);
                        false
                    }
                    Some(s) => s != b,
                }
            })
        })
        .collect()
}
