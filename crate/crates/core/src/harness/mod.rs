//! Instance generators, the experiment runner and its reports.

pub mod checks;
pub mod experiment;
pub mod gen;
pub mod scaling;

use thiserror::Error;

use crate::planar::io::ParseError;

pub use experiment::{
    run, Engine, ExperimentReport, ExperimentSpec, GeneratorSpec, InstanceReport, PartReport, Summary,
};
pub use scaling::{scaling_report, ScalingReport, ScalingRow};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Gen(#[from] gen::GenError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("scaling fit needs at least 4 distinct sizes, got {sizes}")]
    InsufficientData { sizes: usize },
}
