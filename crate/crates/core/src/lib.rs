//! Deterministic planar separators from fundamental cycles.
//!
//! The crate contains a sequential reference construction, a simulated
//! CONGEST implementation of the same construction, and the generators,
//! oracles and verifiers used to check one against the other.

pub mod congest;
pub mod dist;
pub mod harness;
pub mod par;
pub mod planar;
pub mod separator;
pub mod tree;
