//! Command-line front end: case presets, config files, artifact writing.
//!
//! Two operations. `run` executes a Monte Carlo study and writes
//! `summary.json`, `trials.csv`, `resolved_config.toml`, and (unless
//! suppressed) `bars.svg` plus track plots of the first mirrored pair of
//! trials. `replay` re-renders any recorded trial from a trajectory CSV.
//! Every error class exits with its own code: 10 unknown case, 11 malformed
//! config, 12 unwritable output, 13 trajectory-schema violation.

pub mod config;
pub mod output;
pub mod plot;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::arena::{run_mc_study, ArenaError, MCSummary, TrialRecord};
use config::{FlagOverrides, ResolvedConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown case `{0}` (expected I, II, III, or IV)")]
    UnknownCase(String),
    #[error("malformed config: {0}")]
    MalformedConfig(String),
    #[error("cannot write output `{0}`: {1}")]
    UnwritableOut(PathBuf, String),
    #[error("trajectory schema violation at row {row}: {message}")]
    CsvSchema { row: usize, message: String },
    #[error(transparent)]
    Arena(#[from] ArenaError),
}

impl CliError {
    /// Stable, distinct exit code per error class.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::UnknownCase(_) => 10,
            CliError::MalformedConfig(_) => 11,
            CliError::UnwritableOut(..) => 12,
            CliError::CsvSchema { .. } => 13,
            CliError::Arena(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "dogfight",
    version,
    about = "Two-aircraft maneuvering games: matrix-game and tree-search tactics, \
             Monte Carlo studies, track plots"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a Monte Carlo study and write its artifacts
    Run(RunArgs),
    /// Render one recorded trial from a trajectory CSV as an SVG track plot
    Replay(ReplayArgs),
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("source").required(true).multiple(true)
    .args(["case", "config"]))]
pub struct RunArgs {
    /// Case preset: I, II, III, or IV
    #[arg(long)]
    pub case: Option<String>,
    /// Flat TOML config file; keys mirror resolved_config.toml
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Master seed of the study
    #[arg(long)]
    pub seed: Option<u64>,
    /// Number of trials; must be even (trials run in mirrored pairs)
    #[arg(long)]
    pub trials: Option<u32>,
    /// Output directory
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads: 0 = all cores, 1 = sequential
    #[arg(long)]
    pub parallel: Option<u32>,
    /// Emit SVG plots (the default)
    #[arg(long)]
    pub plot: bool,
    /// Suppress SVG plots
    #[arg(long, conflicts_with = "plot")]
    pub no_plot: bool,
    /// Search passes run after the tree-size budget, for smcts seats
    #[arg(long)]
    pub extra_iterations: Option<u32>,
}

#[derive(Debug, Args)]
pub struct ReplayArgs {
    /// Trajectory CSV, in the trials.csv schema
    pub input: PathBuf,
    /// Trial id to render (default: the first trial in the file)
    #[arg(long)]
    pub trial: Option<u32>,
    /// Output SVG path (default: track_<trial>.svg beside the input)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Config supplying speeds and win-cone geometry (default: baseline)
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Parse the process arguments, run, and map errors to exit codes.
pub fn main_entry() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => run_case(&args),
        Command::Replay(args) => replay(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn read_config_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| {
        CliError::MalformedConfig(format!("cannot read config `{}`: {e}", path.display()))
    })
}

fn write_artifact(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents)
        .map_err(|e| CliError::UnwritableOut(path.to_path_buf(), e.to_string()))
}

/// Run the study described by the flags and config file, writing all
/// artifacts into the output directory from this single thread.
pub fn run_case(args: &RunArgs) -> Result<(), CliError> {
    let config_text = match &args.config {
        Some(path) => Some(read_config_file(path)?),
        None => None,
    };
    let plot_flag = if args.no_plot {
        Some(false)
    } else if args.plot {
        Some(true)
    } else {
        None
    };
    let flags = FlagOverrides {
        seed: args.seed,
        trials: args.trials,
        out: args.out.as_ref().map(|p| p.display().to_string()),
        parallel: args.parallel,
        plot: plot_flag,
        extra_iterations: args.extra_iterations,
    };
    let cfg = config::resolve(args.case.as_deref(), config_text.as_deref(), &flags)?;
    let spec = cfg.to_case_spec()?;

    let out_dir = PathBuf::from(&cfg.out);
    fs::create_dir_all(&out_dir)
        .map_err(|e| CliError::UnwritableOut(out_dir.clone(), e.to_string()))?;

    let (mc, records) = run_with_parallelism(&cfg, &spec)?;
    let summary = output::Summary::new(&cfg, &mc);

    write_artifact(&out_dir.join("resolved_config.toml"), &cfg.to_toml())?;
    write_artifact(&out_dir.join("summary.json"), &summary.to_json())?;
    write_artifact(&out_dir.join("trials.csv"), &output::trials_to_csv(&records))?;
    if cfg.plot {
        write_artifact(&out_dir.join("bars.svg"), &plot::bar_chart_svg(&summary))?;
        for record in records.iter().take(2) {
            write_artifact(
                &out_dir.join(format!("track_{}.svg", record.trial)),
                &plot::track_svg(record, &spec.gp.eng),
            )?;
        }
    }
    print!("{}", summary.table());
    Ok(())
}

/// Run the study under the configured parallelism degree. Results do not
/// depend on the degree: every trial draws from its own seed streams.
fn run_with_parallelism(
    cfg: &ResolvedConfig,
    spec: &crate::arena::CaseSpec,
) -> Result<(MCSummary, Vec<TrialRecord>), CliError> {
    let result = match cfg.parallel {
        1 => run_mc_study(spec, cfg.trials, cfg.seed, false),
        0 => run_mc_study(spec, cfg.trials, cfg.seed, true),
        n => rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build()
            .map_err(|e| CliError::MalformedConfig(format!("cannot build thread pool: {e}")))?
            .install(|| run_mc_study(spec, cfg.trials, cfg.seed, true)),
    };
    result.map_err(CliError::from)
}

/// Render one recorded trial from a trajectory CSV.
pub fn replay(args: &ReplayArgs) -> Result<(), CliError> {
    let config_text = match &args.config {
        Some(path) => Some(read_config_file(path)?),
        None => None,
    };
    let cfg = config::resolve(None, config_text.as_deref(), &FlagOverrides::default())?;
    let eng = cfg.to_case_spec()?.gp.eng;

    let text = fs::read_to_string(&args.input).map_err(|e| CliError::CsvSchema {
        row: 0,
        message: format!("cannot read `{}`: {e}", args.input.display()),
    })?;
    let records = output::parse_trials_csv(&text, cfg.v1, cfg.v2)?;
    let record = match args.trial {
        Some(id) => records
            .iter()
            .find(|r| r.trial == id)
            .ok_or_else(|| CliError::CsvSchema {
                row: 0,
                message: format!("trial {id} not found in `{}`", args.input.display()),
            })?,
        None => &records[0],
    };

    let out_path = match &args.out {
        Some(path) => path.clone(),
        None => args
            .input
            .with_file_name(format!("track_{}.svg", record.trial)),
    };
    write_artifact(&out_path, &plot::track_svg(record, &eng))?;
    println!(
        "rendered trial {} ({:?}, {} steps) to {}",
        record.trial,
        record.outcome,
        record.steps,
        out_path.display()
    );
    Ok(())
}
