use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::iet::{IetDescription, Symbol};
use crate::spectral::NumericMode;

/// Every batch task the front-end knows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    RauzyOrbit,
    Classes,
    Tower,
    Candidates,
    Itinerary,
    Cylinders,
    ConditionB,
    GordonScan,
    GordonTower,
    Spectrum,
    Eigenbox,
    Lyapunov,
    HullCheck,
    FibonacciCheck,
    Verify,
}

impl Task {
    pub const ALL: [Task; 15] = [
        Task::RauzyOrbit,
        Task::Classes,
        Task::Tower,
        Task::Candidates,
        Task::Itinerary,
        Task::Cylinders,
        Task::ConditionB,
        Task::GordonScan,
        Task::GordonTower,
        Task::Spectrum,
        Task::Eigenbox,
        Task::Lyapunov,
        Task::HullCheck,
        Task::FibonacciCheck,
        Task::Verify,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Task::RauzyOrbit => "rauzy-orbit",
            Task::Classes => "classes",
            Task::Tower => "tower",
            Task::Candidates => "candidates",
            Task::Itinerary => "itinerary",
            Task::Cylinders => "cylinders",
            Task::ConditionB => "condition-b",
            Task::GordonScan => "gordon-scan",
            Task::GordonTower => "gordon-tower",
            Task::Spectrum => "spectrum",
            Task::Eigenbox => "eigenbox",
            Task::Lyapunov => "lyapunov",
            Task::HullCheck => "hull-check",
            Task::FibonacciCheck => "fibonacci-check",
            Task::Verify => "verify",
        }
    }

    /// Whether the task reads the exchange from the configuration.
    pub fn needs_iet(self) -> bool {
        matches!(
            self,
            Task::RauzyOrbit
                | Task::Classes
                | Task::Tower
                | Task::Candidates
                | Task::Itinerary
                | Task::Cylinders
                | Task::ConditionB
                | Task::GordonScan
                | Task::GordonTower
                | Task::Lyapunov
        )
    }
}

impl FromStr for Task {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Task::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| CliError::Usage(format!("unknown task {s:?}")))
    }
}

/// A word given either as a digit string (`"1212"`) or a list of symbols.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WordSpec {
    Digits(String),
    Symbols(Vec<Symbol>),
}

impl WordSpec {
    pub fn symbols(&self) -> Result<Vec<Symbol>, CliError> {
        match self {
            WordSpec::Symbols(s) => Ok(s.clone()),
            WordSpec::Digits(d) => d
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .filter(|&x| x > 0)
                        .map(|x| x as Symbol)
                        .ok_or_else(|| CliError::Usage(format!("bad symbol {c:?} in word {d:?}")))
                })
                .collect(),
        }
    }
}

/// An evenly spaced float grid `lo, ..., hi` with `count` points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        match self.count {
            0 => Vec::new(),
            1 => vec![self.lo],
            c => (0..c)
                .map(|i| self.lo + (self.hi - self.lo) * i as f64 / (c - 1) as f64)
                .collect(),
        }
    }
}

/// Task parameters; each task reads the fields it needs and falls back to
/// documented defaults.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TaskParams {
    /// rauzy-orbit: number of steps.
    pub steps: Option<usize>,
    /// tower, candidates, gordon-tower: number of levels.
    pub levels: Option<usize>,
    /// Explicit `δ_m` schedule (exact strings).
    pub deltas: Option<Vec<String>>,
    /// Rauzy steps allowed between levels.
    pub level_cap: Option<usize>,
    /// candidates, gordon-tower: `ε`.
    pub epsilon: Option<String>,
    /// Explicit sample points (exact strings).
    pub points: Option<Vec<String>>,
    /// Number of seeded random sample points, used when `points` is absent.
    pub samples: Option<usize>,
    /// itinerary: index window `[lo, hi]`; gordon-scan: explicit window.
    pub window: Option<(i64, i64)>,
    /// cylinders, condition-b: maximal word length.
    pub depth: Option<usize>,
    /// condition-b: threshold for the tail maximum.
    pub threshold: Option<String>,
    /// itinerary: horizon of the Keane check.
    pub horizon: Option<usize>,
    /// gordon-scan: largest repetition length searched.
    pub max_k: Option<usize>,
    /// spectrum, eigenbox, hull-check: explicit word.
    pub word: Option<WordSpec>,
    /// spectrum, eigenbox: Fibonacci word of this order instead.
    pub fibonacci_order: Option<usize>,
    /// spectrum, eigenbox: prefix of the orbit of the first point.
    pub prefix: Option<usize>,
    /// Potential values (exact strings); default `V(i) = c (i - 1)`.
    pub potential: Option<Vec<String>>,
    /// Coupling `c` (exact string); default 2.
    pub coupling: Option<String>,
    /// fibonacci-check: order range.
    pub orders: Option<(usize, usize)>,
    /// fibonacci-check: exact energies.
    pub energies: Option<Vec<String>>,
    /// lyapunov, gordon-scan (non-decay): float energy grid.
    pub grid: Option<Grid>,
    /// eigenbox: box size.
    pub size: Option<usize>,
    /// eigenbox: bisection tolerance; spectrum: float bracket width.
    pub tolerance: Option<f64>,
    /// lyapunov: orbit length.
    pub length: Option<usize>,
    /// spectrum: exact edge grid `2^-grid_bits`.
    pub grid_bits: Option<u32>,
}

/// A complete batch run: one JSON document with scalars as strings.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub iet: Option<IetDescription>,
    pub task: Option<Task>,
    pub params: TaskParams,
    pub output: Option<PathBuf>,
    pub seed: u64,
    pub mode: Option<NumericMode>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("config: {e}")))
    }

    pub fn from_path(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Canonical serialization, hashed into the metadata. The output
    /// directory is left out: it does not change what is computed.
    pub fn canonical_json(&self) -> String {
        let mut c = self.clone();
        c.output = None;
        serde_json::to_string(&c).expect("config serializes")
    }
}
