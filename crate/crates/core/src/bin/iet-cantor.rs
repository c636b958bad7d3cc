use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use iet_cantor::cli::{run, CliError, ExperimentConfig, RunSpec, Task};
use iet_cantor::spectral::NumericMode;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Exact,
    Float,
}

/// Exact interval exchange experiments driven by a JSON configuration.
#[derive(Debug, Parser)]
#[command(version, about)]
struct Args {
    /// Experiment configuration (JSON).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Task to run; overrides the configuration's "task".
    #[arg(long)]
    task: Option<String>,
    /// Output directory; overrides the configuration's "output".
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for parallel sweeps.
    #[arg(long)]
    threads: Option<usize>,
    /// Arithmetic for the spectral tasks.
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    /// Seed for sampled points; overrides the configuration's "seed".
    #[arg(long)]
    seed: Option<u64>,
}

fn spec(args: Args) -> Result<RunSpec, CliError> {
    if let Some(n) = args.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("--threads: {e}")))?;
    }
    let config = match &args.config {
        Some(path) => ExperimentConfig::from_path(path)?,
        None => ExperimentConfig::default(),
    };
    let task = args.task.as_deref().map(str::parse::<Task>).transpose()?;
    let mode = args.mode.map(|m| match m {
        Mode::Exact => NumericMode::Exact,
        Mode::Float => NumericMode::Float,
    });
    RunSpec::resolve(config, task, args.out, mode, args.seed)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = spec(args).and_then(|s| run(&s));
    match result {
        Ok(meta) => {
            log::info!("wrote {} artifacts", meta.artifacts.len());
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("{err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
