//! Rauzy induction and renormalization towers.
//!
//! [`rauzy_step`] applies the combinatorial Rauzy move; [`rauzy_step_via_induce`]
//! recomputes it from the first-return map and serves as its reference.
//! Towers stack Rauzy iterates that come close to the equal-length
//! exchange, and [`candidate_report`] extracts from each level the sets of
//! points whose itineraries repeat three times around the origin.

mod candidate;
mod class;
mod periodic;
mod step;
mod tower;

pub use candidate::{
    candidate_report, gordon_lengths_via_tower, CandidateRecord, CandidateRecordSummary, CandidateReport,
    CandidateSummary, TowerLength,
};
pub use class::{rauzy_class, RauzyClass};
pub use periodic::{periodic_iet, PeriodicIetSpec, PeriodicSummary};
pub use step::{rauzy_permutation, rauzy_step, rauzy_step_via_induce, step_type_of, RauzyStep, StepType};
pub use tower::{
    build_tower, default_delta, proximity, tower_or_partial, RenormalizationTower, TowerConfig, TowerError,
    TowerFailure, TowerLevel, TowerLevelReport, DEFAULT_LEVEL_CAP,
};

use thiserror::Error;

use crate::iet::IetError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RauzyError {
    #[error("reducible permutation {0}")]
    InvalidPermutation(String),
    #[error("Rauzy step undefined: {0}")]
    UndefinedStep(String),
    #[error("exchange on {0} is not normalized to [0, 1)")]
    NotNormalized(String),
    #[error("level {level} requested but only {built} built")]
    MissingLevel { level: usize, built: usize },
    #[error("no candidate at level {level}, interval {k}")]
    NoCandidate { level: usize, k: usize },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Iet(#[from] IetError),
}
