//! Batch front-end: one JSON configuration in, metadata plus per-task
//! JSON/CSV artifacts out.

mod config;
mod tasks;
mod verify;

pub use config::{ExperimentConfig, Grid, Task, TaskParams, WordSpec};
pub use verify::{verify_suite, VerifyLine, VerifyReport};

use std::fmt;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::spectral::NumericMode;

/// Exit status for configuration and usage problems.
pub const EXIT_USAGE: i32 = 2;
/// Exit status for errors raised by the mathematical layer.
pub const EXIT_MATH: i32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    /// A library error, named by module and variant.
    Math {
        module: &'static str,
        name: String,
        message: String,
    },
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Math { .. } | CliError::Io(_) => EXIT_MATH,
        }
    }

    pub(crate) fn math<E: fmt::Debug + fmt::Display>(module: &'static str, err: E) -> Self {
        let debug = format!("{err:?}");
        let name = debug
            .split(|c: char| !c.is_alphanumeric() && c != '_')
            .next()
            .unwrap_or("Unknown")
            .to_string();
        CliError::Math {
            module,
            name,
            message: err.to_string(),
        }
    }

    pub fn report(&self) -> serde_json::Value {
        match self {
            CliError::Usage(m) => serde_json::json!({"error": "usage", "message": m}),
            CliError::Math {
                module,
                name,
                message,
            } => serde_json::json!({
                "error": format!("{module}::{name}"),
                "module": module,
                "name": name,
                "message": message,
            }),
            CliError::Io(m) => serde_json::json!({"error": "io", "message": m}),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Math {
                module,
                name,
                message,
            } => write!(f, "{module}::{name}: {message}"),
            CliError::Io(m) => write!(f, "io error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

macro_rules! from_math {
    ($($ty:path => $module:literal),* $(,)?) => {$(
        impl From<$ty> for CliError {
            fn from(e: $ty) -> Self {
                CliError::math($module, e)
            }
        }
    )*};
}

from_math!(
    crate::iet::IetError => "IetError",
    crate::rauzy::RauzyError => "RauzyError",
    crate::symbolic::SymbolicError => "SymbolicError",
    crate::spectral::SpectralError => "SpectralError",
    crate::scalar::ScalarError => "ScalarError",
);

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

/// Written as `metadata.json` next to every task's artifacts. The
/// timestamp lives only here, so payload files are byte-identical across
/// runs of the same configuration.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Metadata {
    pub tool: &'static str,
    pub version: &'static str,
    pub task: String,
    pub mode: NumericMode,
    pub seed: u64,
    pub config_sha256: String,
    pub timestamp_unix: u64,
    pub artifacts: Vec<String>,
    pub notes: Vec<String>,
}

/// Fully resolved run: configuration plus command-line overrides.
#[derive(Clone, Debug)]
pub struct RunSpec {
    pub config: ExperimentConfig,
    pub task: Task,
    pub out: PathBuf,
    pub mode: Option<NumericMode>,
}

impl RunSpec {
    /// Applies overrides; the flag wins over the configuration.
    pub fn resolve(
        mut config: ExperimentConfig,
        task: Option<Task>,
        out: Option<PathBuf>,
        mode: Option<NumericMode>,
        seed: Option<u64>,
    ) -> Result<Self, CliError> {
        let task = task
            .or(config.task)
            .ok_or_else(|| CliError::Usage("no task given (use --task or \"task\")".into()))?;
        if let Some(s) = seed {
            config.seed = s;
        }
        let mode = mode.or(config.mode);
        config.task = Some(task);
        config.mode = mode;
        let out = out
            .or_else(|| config.output.clone())
            .unwrap_or_else(|| PathBuf::from("out"));
        config.output = Some(out.clone());
        if task.needs_iet() && config.iet.is_none() {
            return Err(CliError::Usage(format!(
                "task {} needs an \"iet\" description",
                task.name()
            )));
        }
        Ok(Self {
            config,
            task,
            out,
            mode,
        })
    }
}

/// Artifacts produced by a task, written by [`run`].
#[derive(Debug, Default)]
pub(crate) struct Output {
    pub files: Vec<(String, Vec<u8>)>,
    pub mode: Option<NumericMode>,
    pub notes: Vec<String>,
    /// Printed to standard output (the verify suite's pass/fail lines).
    pub stdout: Option<String>,
}

impl Output {
    pub fn json<T: Serialize>(&mut self, name: &str, value: &T) {
        let mut bytes = serde_json::to_vec_pretty(value).expect("payload serializes");
        bytes.push(b'\n');
        self.files.push((name.to_string(), bytes));
    }

    pub fn csv(&mut self, name: &str, bytes: Vec<u8>) {
        self.files.push((name.to_string(), bytes));
    }
}

fn write_files(dir: &Path, files: &[(String, Vec<u8>)]) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    for (name, bytes) in files {
        let path = dir.join(name);
        std::fs::write(&path, bytes).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

/// Runs one task and writes its artifacts plus `metadata.json` into the
/// output directory. On a math error the partial artifacts (if any) and an
/// `error.json` report are written before the error is returned.
pub fn run(spec: &RunSpec) -> Result<Metadata, CliError> {
    let hash = hex::encode(Sha256::digest(spec.config.canonical_json().as_bytes()));
    log::info!("task {} -> {}", spec.task.name(), spec.out.display());
    let mut out = Output::default();
    let result = tasks::dispatch(spec, &mut out);
    let mut artifacts: Vec<String> = out.files.iter().map(|f| f.0.clone()).collect();
    if let Err(err) = &result {
        let mut bytes = serde_json::to_vec_pretty(&err.report()).expect("report serializes");
        bytes.push(b'\n');
        out.files.push(("error.json".into(), bytes));
        artifacts.push("error.json".into());
    }
    let meta = Metadata {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        task: spec.task.name().to_string(),
        mode: out.mode.or(spec.mode).unwrap_or(NumericMode::Exact),
        seed: spec.config.seed,
        config_sha256: hash,
        timestamp_unix: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        artifacts,
        notes: out.notes.clone(),
    };
    let mut bytes = serde_json::to_vec_pretty(&meta).expect("metadata serializes");
    bytes.push(b'\n');
    out.files.push(("metadata.json".into(), bytes));
    write_files(&spec.out, &out.files)?;
    if let Some(text) = &out.stdout {
        print!("{text}");
    }
    result.map(|()| meta)
}
