//! Seeded generators for embedded planar test graphs.
//!
//! Every generator describes its graph by face boundaries (face on the left)
//! and builds the rotation system from them, so the embeddings are planar by
//! construction.

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::planar::{rotation_from_faces, DartKey, EmbeddedPlanarGraph, EmbeddingError, VertexId};
use crate::tree::RootedTree;

#[derive(Debug, Error)]
pub enum GenError {
    #[error("invalid generator parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

fn invalid(msg: impl Into<String>) -> GenError {
    GenError::InvalidParameter(msg.into())
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn from_faces(n: usize, faces: &[Vec<VertexId>], outer: Option<DartKey>) -> Result<EmbeddedPlanarGraph, GenError> {
    let rot = rotation_from_faces(n, faces)?;
    Ok(EmbeddedPlanarGraph::new(n, &rot, &vec![1; n], outer)?)
}

/// `rows × cols` grid; vertex `(r, c)` has id `r * cols + c`.
pub fn grid(rows: u32, cols: u32) -> Result<EmbeddedPlanarGraph, GenError> {
    if rows < 2 || cols < 2 {
        return Err(invalid("grid needs at least 2 rows and 2 columns"));
    }
    let id = |r: u32, c: u32| r * cols + c;
    let mut faces = Vec::new();
    for r in 0..rows - 1 {
        for c in 0..cols - 1 {
            faces.push(vec![id(r, c), id(r, c + 1), id(r + 1, c + 1), id(r + 1, c)]);
        }
    }
    let mut outer = Vec::new();
    for c in (1..cols).rev() {
        outer.push(id(0, c));
    }
    for r in 0..rows - 1 {
        outer.push(id(r, 0));
    }
    for c in 0..cols - 1 {
        outer.push(id(rows - 1, c));
    }
    for r in (1..rows).rev() {
        outer.push(id(r, cols - 1));
    }
    faces.push(outer);
    from_faces((rows * cols) as usize, &faces, Some(DartKey::new(id(0, 0), id(1, 0), 0)))
}

/// Concentric rings around a hub vertex 0. Ring `r` has ids
/// `1 + r * width ..`; the hop diameter stays at most `2 * rings` however
/// wide the rings get.
pub fn cylinder(rings: u32, width: u32) -> Result<EmbeddedPlanarGraph, GenError> {
    if rings < 1 || width < 3 {
        return Err(invalid("cylinder needs at least 1 ring of width 3"));
    }
    let id = |r: u32, i: u32| 1 + r * width + (i % width);
    let mut faces = Vec::new();
    for i in 0..width {
        faces.push(vec![0, id(0, i + 1), id(0, i)]);
    }
    for r in 0..rings - 1 {
        for i in 0..width {
            faces.push(vec![id(r, i), id(r, i + 1), id(r + 1, i + 1), id(r + 1, i)]);
        }
    }
    let outer: Vec<VertexId> = (0..width).map(|i| id(rings - 1, i)).collect();
    let hint = DartKey::new(outer[0], outer[1], 0);
    faces.push(outer);
    from_faces((1 + rings * width) as usize, &faces, Some(hint))
}

/// Random triangulation: random point insertions into inner triangles
/// followed by random edge flips. The outer face is `0, 2, 1`.
pub fn random_triangulation(n: u32, seed: u64) -> Result<EmbeddedPlanarGraph, GenError> {
    if n < 3 {
        return Err(invalid("triangulation needs at least 3 vertices"));
    }
    let mut rng = rng(seed);
    // index 0 is the outer face and never changes
    let mut tris: Vec<[VertexId; 3]> = vec![[0, 2, 1], [0, 1, 2]];
    let mut owner: HashMap<(VertexId, VertexId), usize> = HashMap::new();
    let mut degree = vec![0u32; n as usize];
    let mut edges: HashSet<(VertexId, VertexId)> = HashSet::new();
    let claim = |owner: &mut HashMap<(VertexId, VertexId), usize>, t: usize, tri: [VertexId; 3]| {
        for i in 0..3 {
            owner.insert((tri[i], tri[(i + 1) % 3]), t);
        }
    };
    claim(&mut owner, 0, tris[0]);
    claim(&mut owner, 1, tris[1]);
    for (a, b) in [(0, 1), (1, 2), (0, 2)] {
        edges.insert((a, b));
        degree[a as usize] += 1;
        degree[b as usize] += 1;
    }
    for k in 3..n {
        let t = rng.gen_range(1..tris.len());
        let [a, b, c] = tris[t];
        let new = [[a, b, k], [b, c, k], [c, a, k]];
        tris[t] = new[0];
        claim(&mut owner, t, new[0]);
        for tri in &new[1..] {
            tris.push(*tri);
            claim(&mut owner, tris.len() - 1, *tri);
        }
        for v in [a, b, c] {
            edges.insert((v.min(k), v.max(k)));
            degree[v as usize] += 1;
        }
        degree[k as usize] = 3;
    }
    for _ in 0..n {
        let t = rng.gen_range(1..tris.len());
        let shift = rng.gen_range(0..3);
        let tri = tris[t];
        let (a, b, c) = (tri[shift], tri[(shift + 1) % 3], tri[(shift + 2) % 3]);
        let u = owner[&(b, a)];
        if u == 0 {
            continue;
        }
        let other = tris[u];
        let pos = other.iter().position(|&x| x == b).unwrap();
        let d = other[(pos + 2) % 3];
        if edges.contains(&(c.min(d), c.max(d))) || degree[a as usize] <= 3 || degree[b as usize] <= 3 {
            continue;
        }
        owner.remove(&(a, b));
        owner.remove(&(b, a));
        edges.remove(&(a.min(b), a.max(b)));
        edges.insert((c.min(d), c.max(d)));
        degree[a as usize] -= 1;
        degree[b as usize] -= 1;
        degree[c as usize] += 1;
        degree[d as usize] += 1;
        tris[t] = [a, d, c];
        tris[u] = [d, b, c];
        claim(&mut owner, t, tris[t]);
        claim(&mut owner, u, tris[u]);
    }
    let faces: Vec<Vec<VertexId>> = tris.iter().map(|t| t.to_vec()).collect();
    from_faces(n as usize, &faces, Some(DartKey::new(0, 2, 0)))
}

/// A cycle `0..n` with up to `chords` random non-crossing chords.
pub fn cycle_chords(n: u32, chords: u32, seed: u64) -> Result<EmbeddedPlanarGraph, GenError> {
    if n < 3 {
        return Err(invalid("cycle needs at least 3 vertices"));
    }
    let mut rng = rng(seed);
    let outer: Vec<VertexId> = (0..n).rev().collect();
    let mut inner: Vec<Vec<VertexId>> = vec![(0..n).collect()];
    for _ in 0..chords {
        let candidates: Vec<usize> = (0..inner.len()).filter(|&i| inner[i].len() >= 4).collect();
        let Some(&f) = candidates.choose(&mut rng) else { break };
        let face = inner.swap_remove(f);
        let k = face.len();
        let i = rng.gen_range(0..k);
        let j = (i + rng.gen_range(2..k - 1)) % k;
        let (i, j) = (i.min(j), i.max(j));
        let a: Vec<VertexId> = face[i..=j].to_vec();
        let mut b: Vec<VertexId> = face[j..].to_vec();
        b.extend_from_slice(&face[..=i]);
        inner.push(a);
        inner.push(b);
    }
    inner.push(outer);
    from_faces(n as usize, &inner, Some(DartKey::new(1, 0, 0)))
}

/// Square grid split into `block × block` parts; returns the part of each vertex.
pub fn two_level_parts(side: u32, block: u32) -> Result<(EmbeddedPlanarGraph, Vec<u32>), GenError> {
    if block == 0 {
        return Err(invalid("block size must be positive"));
    }
    let g = grid(side, side)?;
    let per_row = side.div_ceil(block);
    let parts = (0..side * side).map(|v| (v / side / block) * per_row + (v % side) / block).collect();
    Ok((g, parts))
}

/// Blocks glued at cut vertices: triangles, chorded cycles and bridges,
/// each attached at a random vertex of the outer boundary so far.
pub fn cut_vertex_blocks(blocks: u32, seed: u64) -> Result<EmbeddedPlanarGraph, GenError> {
    if blocks == 0 {
        return Err(invalid("need at least one block"));
    }
    let mut rng = rng(seed);
    let mut n: VertexId = 1;
    let mut inner: Vec<Vec<VertexId>> = Vec::new();
    // closed outer walk; a single vertex to start with
    let mut walk: Vec<VertexId> = vec![0];
    for b in 0..blocks {
        let p = rng.gen_range(0..walk.len());
        let at = walk[p];
        let kind = if b == 0 { 1 } else { rng.gen_range(0..3) };
        let size: u32 = match kind {
            0 => 2,
            1 => rng.gen_range(3..9),
            _ => 3,
        };
        // block vertices: `at` followed by fresh ids
        let verts: Vec<VertexId> = std::iter::once(at).chain(n..n + size - 1).collect();
        n += size - 1;
        if size == 2 {
            let y = verts[1];
            if walk.len() == 1 {
                walk = vec![at, y];
            } else {
                walk.splice(p + 1..p + 1, [y, at]);
            }
            continue;
        }
        // chorded cycle with inner faces on `verts` order
        let mut faces: Vec<Vec<VertexId>> = vec![verts.clone()];
        let chords = rng.gen_range(0..size);
        for _ in 0..chords {
            let candidates: Vec<usize> = (0..faces.len()).filter(|&i| faces[i].len() >= 4).collect();
            let Some(&f) = candidates.choose(&mut rng) else { break };
            let face = faces.swap_remove(f);
            let k = face.len();
            let i = rng.gen_range(0..k);
            let j = (i + rng.gen_range(2..k - 1)) % k;
            let (i, j) = (i.min(j), i.max(j));
            let mut second = face[j..].to_vec();
            second.extend_from_slice(&face[..=i]);
            faces.push(face[i..=j].to_vec());
            faces.push(second);
        }
        inner.extend(faces);
        // outer boundary of the block from `at`: at, last, ..., first
        let around: Vec<VertexId> = verts[1..].iter().rev().copied().collect();
        if walk.len() == 1 {
            walk = std::iter::once(at).chain(around).collect();
        } else {
            let mut ins = around;
            ins.push(at);
            walk.splice(p + 1..p + 1, ins);
        }
    }
    inner.push(walk);
    from_faces(n as usize, &inner, None)
}

/// Ring `v_1..v_10` as the outer face, an ear vertex `a_t` on every ring
/// edge except `(v_10, v_1)`, and a hub joined to every other vertex. With
/// the returned weights (total 42) and the hub-rooted star as tree, the
/// ring face is critical and the separator closes with the chord
/// `(v_5, v_10)`.
///
/// Ids: `v_2..v_9` are `0..7`, `a_1..a_9` are `8..16`, `v_1 = 17`,
/// `v_10 = 18`, hub `19`.
pub fn critical_fan_example() -> Result<EmbeddedPlanarGraph, GenError> {
    let ring = |t: u32| -> VertexId {
        match t {
            1 => 17,
            10 => 18,
            _ => t - 2,
        }
    };
    let ear = |t: u32| -> VertexId { 7 + t };
    let hub = 19;
    let mut faces = vec![(1..=10).map(ring).collect::<Vec<_>>(), vec![ring(1), ring(10), hub]];
    for t in 1..=9 {
        faces.push(vec![ring(t + 1), ring(t), ear(t)]);
        faces.push(vec![ear(t), ring(t), hub]);
        faces.push(vec![ring(t + 1), ear(t), hub]);
    }
    let g = from_faces(20, &faces, Some(DartKey::new(ring(1), ring(2), 0)))?;
    let mut w = vec![0u64; 20];
    for t in 1..=10 {
        w[ring(t) as usize] = match t {
            1..=4 => 1,
            5 => 2,
            _ => 3,
        };
    }
    for t in 1..=9 {
        w[ear(t) as usize] = match t {
            1..=3 => 1,
            4 => 2,
            _ => 3,
        };
    }
    w[hub as usize] = 1;
    Ok(g.with_weights(w))
}

/// Uniform random recursive tree on `n` nodes under a random labelling.
pub fn random_rooted_tree(n: usize, seed: u64) -> Result<RootedTree, GenError> {
    if n == 0 {
        return Err(invalid("tree needs a node"));
    }
    let mut rng = rng(seed);
    let mut labels: Vec<u32> = (0..n as u32).collect();
    labels.shuffle(&mut rng);
    let mut parent = vec![None; n];
    for i in 1..n {
        let p = rng.gen_range(0..i);
        parent[labels[i] as usize] = Some(labels[p]);
    }
    RootedTree::from_parents(labels[0], parent).map_err(|e| invalid(e.to_string()))
}

/// Random weights in `0..=max` trimmed until no entry exceeds `num/den` of
/// the total. All zero only when `max` is 0.
pub fn random_proper_weights(n: usize, max: u64, num: u64, den: u64, seed: u64) -> Vec<u64> {
    let mut rng = rng(seed);
    let mut w: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=max)).collect();
    loop {
        let total: u64 = w.iter().sum();
        let (i, &top) = w.iter().enumerate().max_by_key(|&(i, &x)| (x, std::cmp::Reverse(i))).expect("non-empty");
        if u128::from(top) * u128::from(den) <= u128::from(num) * u128::from(total) || top == 0 {
            return w;
        }
        w[i] -= 1;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightScheme {
    Unit,
    /// Uniform in `1..=8`, then trimmed until every weight is at most `W/12`.
    RandomProper,
    /// One vertex far above `W/12`; everything else 1.
    HeavyVertex,
}

pub fn weights(n: usize, scheme: WeightScheme, seed: u64) -> Vec<u64> {
    match scheme {
        WeightScheme::Unit => vec![1; n],
        WeightScheme::RandomProper => {
            let mut rng = rng(seed ^ 0x5eed_7e17);
            let mut w: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=8)).collect();
            loop {
                let total: u64 = w.iter().sum();
                let (i, &max) = w.iter().enumerate().max_by_key(|&(i, &x)| (x, std::cmp::Reverse(i))).unwrap();
                if 12 * max <= total || max <= 1 {
                    break;
                }
                w[i] -= 1;
            }
            w
        }
        WeightScheme::HeavyVertex => {
            let mut w = vec![1; n];
            if n > 0 {
                w[0] = (13 * (n as u64 - 1)).div_ceil(11);
            }
            w
        }
    }
}
