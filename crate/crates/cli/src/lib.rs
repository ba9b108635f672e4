//! Experiment orchestration and the acceptance suite behind the `qturan`
//! binary.

pub mod experiment;
pub mod verify;
