//! Discrete Schrödinger operators `(Hψ)_j = ψ_{j+1} + ψ_{j-1} + V(ω_j) ψ_j`
//! driven by exchange codings.
//!
//! Exact work (trace polynomials, certified band edges, trace-map
//! identities) runs over rationals. Float work (finite boxes, Lyapunov
//! exponents, Gordon non-decay) runs over `f64` with explicit tolerances.

mod bands;
mod eigen;
mod fibonacci;
mod lyapunov;
mod nondecay;
mod poly;
mod potential;
mod transfer;

pub use bands::{
    band_spectrum, hull_invariance_check, prefix_approximant, tower_approximants, trace_polynomial,
    word_label, Band, BandMethod, BandSummary, EnclosureSummary, HullReport, NumericMode, RootEnclosure,
    SpectrumEstimate, SpectrumOptions, SpectrumSummary, DEFAULT_GRID_BITS,
};
pub use eigen::{finite_box_eigenvalues, DEFAULT_EIGEN_TOL};
pub use fibonacci::{fibonacci_trace_check, fibonacci_word, TraceMapReport, TraceMapRow};
pub use lyapunov::{lyapunov_estimate, lyapunov_of_symbols, LyapunovEstimate, MIN_LYAPUNOV_LENGTH};
pub use nondecay::{gordon_nondecay_check, NondecayReport, Violation};
pub use poly::Poly;
pub use potential::{default_potential, Potential, DEFAULT_COUPLING};
pub use transfer::{
    transfer, transfer_f64, word_transfer, word_transfer_f64, Ring, SolutionVector, TransferMatrix,
};

use thiserror::Error;

use crate::iet::{IetError, Symbol};
use crate::symbolic::SymbolicError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error("invalid potential: {0}")]
    InvalidPotential(String),
    #[error("symbol {0} has no potential value")]
    UnknownSymbol(Symbol),
    #[error("word must be nonempty")]
    EmptyWord,
    #[error("mode error: {0}")]
    Mode(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("degenerate band structure: {0}")]
    Degeneracy(String),
    #[error("itinerary covers {have:?}, need {needed:?}")]
    InsufficientWindow { needed: (i64, i64), have: (i64, i64) },
    #[error("output: {0}")]
    Output(String),
    #[error(transparent)]
    Iet(#[from] IetError),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
}
