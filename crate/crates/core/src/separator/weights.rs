use serde::{Deserialize, Serialize};

use crate::planar::{EmbeddedPlanarGraph, FaceIdx, VertexId};

/// Which incident face receives a vertex's weight.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum FacePolicy {
    #[default]
    MinFaceId,
    MaxFaceId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceWeighting {
    pub chosen_face: Vec<FaceIdx>,
    pub face_weight: Vec<u64>,
}

impl FaceWeighting {
    pub fn total(&self) -> u64 {
        self.face_weight.iter().sum()
    }
}

pub fn transfer_weights(g: &EmbeddedPlanarGraph, policy: FacePolicy) -> FaceWeighting {
    let mut face_weight = vec![0u64; g.face_count()];
    let chosen_face: Vec<FaceIdx> = (0..g.n() as VertexId)
        .map(|v| {
            let faces = g.rotation(v).iter().map(|&d| g.face_of(d));
            let f = match policy {
                FacePolicy::MinFaceId => faces.min(),
                FacePolicy::MaxFaceId => faces.max(),
            }
            .expect("connected graph with n > 1 has no isolated vertex");
            face_weight[f as usize] += g.weight(v);
            f
        })
        .collect();
    FaceWeighting { chosen_face, face_weight }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Properness {
    pub proper: bool,
    /// Total weight is zero, so the verdict holds only vacuously.
    pub degenerate: bool,
    pub max: u64,
    pub total: u64,
}

/// Whether every weight is at most `num/den` of the total.
pub fn check_proper(weights: &[u64], num: u64, den: u64) -> Properness {
    let total: u64 = weights.iter().sum();
    let max = weights.iter().copied().max().unwrap_or(0);
    Properness {
        proper: u128::from(max) * u128::from(den) <= u128::from(num) * u128::from(total),
        degenerate: total == 0,
        max,
        total,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::gen;

    #[test]
    fn conservation_and_policy() {
        let g = gen::grid(5, 4).unwrap().with_weights((0..20).map(|v| v % 3).collect());
        for policy in [FacePolicy::MinFaceId, FacePolicy::MaxFaceId] {
            let fw = transfer_weights(&g, policy);
            assert_eq!(fw.total(), g.total_weight());
        }
    }

    #[test]
    fn triangle_min_face_takes_all() {
        let g = gen::cycle_chords(3, 0, 0).unwrap();
        let fw = transfer_weights(&g, FacePolicy::MinFaceId);
        assert_eq!(fw.face_weight, [3, 0]);
    }

    #[test]
    fn properness_examples() {
        assert!(check_proper(&[1; 16], 1, 12).proper);
        let mut w = vec![1; 11];
        w.push(13);
        assert!(!check_proper(&w, 1, 12).proper);
        let zero = check_proper(&[0; 4], 1, 12);
        assert!(zero.proper && zero.degenerate);
    }
}
