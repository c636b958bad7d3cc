//! Interval exchange transformations over exact fields.
//!
//! An [`Iet`] cuts `[a, b)` into `n` half-open intervals and translates them
//! so that the interval in position `i` lands in position `π(i)`. Besides
//! evaluation this module provides two-sided itineraries, inverses,
//! composition, first-return (induced) maps and a discontinuity-orbit check
//! for minimality.

mod description;
mod exchange;
mod induce;
mod interval;
mod keane;
mod permutation;

pub use description::{AnyIet, FieldSpec, IetDescription, NamedField};
pub use exchange::{ExchangeLengths, Iet, Itinerary, Symbol};
pub use induce::{InducedSystem, DEFAULT_STEP_CAP};
pub use interval::{intersect_all, normalize, total_length, Interval};
pub use keane::{DiscontinuityCollision, KeaneReport};
pub use permutation::Permutation;

use thiserror::Error;

use crate::scalar::ScalarError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IetError {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid lengths: {0}")]
    InvalidLengths(String),
    #[error("point {0} outside the domain")]
    OutOfDomain(String),
    #[error("invalid interval: {0}")]
    InvalidInterval(String),
    #[error("not a bijection: {0}")]
    NotBijective(String),
    #[error("piece {piece} did not return within {cap} steps")]
    NonReturn { cap: usize, piece: String },
    #[error("bad description: {0}")]
    Description(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}
