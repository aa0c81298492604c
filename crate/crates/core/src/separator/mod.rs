//! Sequential fundamental-cycle separator, its verifier and brute-force oracles.

mod construct;
mod detect;
mod oracle;
mod record;
mod verify;
mod weights;

use thiserror::Error;

use crate::planar::{DartKey, EmbeddingError};
use crate::tree::TreeError;

pub use construct::{
    compute_separator, compute_separator_detailed, face_anchor, face_walk, separator_from_balanced,
    separator_from_critical, ClosingEdge, CriticalSplit, SeparatorCase, SeparatorResult, SeparatorRun,
};
pub use detect::{find_balanced_or_critical, NodeVerdict, VerdictKind};
pub(crate) use detect::{is_balanced, is_heavy, is_light};
pub use oracle::{flood_faces, interior_oracle, oracle_all_fundamental_cycles, CycleSides, OracleRow};
pub use record::{parse_record, write_record};
pub use verify::{verify_separator, BalanceReport};
pub use weights::{check_proper, transfer_weights, FacePolicy, FaceWeighting, Properness};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeparatorError {
    #[error("weights are not 1/12-proper: max {max}, total {total}")]
    NotProper { max: u64, total: u64 },
    #[error("total weight is zero")]
    DegenerateTotal,
    #[error("face {0} is not bounded by a simple cycle")]
    NotBiconnected(DartKey),
    #[error("verdict does not match the requested construction")]
    WrongVerdict,
    #[error("critical-face claim violated: {0}")]
    ClaimViolated(String),
    #[error("malformed separator record: {0}")]
    Record(String),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}
