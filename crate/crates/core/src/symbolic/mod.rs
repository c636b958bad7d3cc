//! Symbolic dynamics of exchange codings: cylinders, complexity,
//! Boshernitzan scores and Gordon triple repetitions.

mod condition_b;
mod cylinders;
mod gordon;

pub use condition_b::{condition_b_scores, ConditionBReport, ScoreRow};
pub use cylinders::{aperiodicity_check, build_cylinders, CylinderTree};
pub use gordon::{gordon_scan, is_gordon_triple, GordonCertificate, GordonSummary};

use thiserror::Error;

use crate::iet::IetError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolicError {
    #[error("depth must be at least 1")]
    InvalidDepth,
    #[error("depth {n} outside 1..={depth}")]
    DepthOutOfRange { n: usize, depth: usize },
    #[error("itinerary covers {have:?}, need {needed:?}")]
    InsufficientWindow { needed: (i64, i64), have: (i64, i64) },
    #[error("output: {0}")]
    Output(String),
    #[error(transparent)]
    Iet(#[from] IetError),
}
