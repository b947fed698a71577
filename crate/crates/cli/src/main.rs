//! `mixsurf`: analysis, verification and realization of mixed type surfaces.

mod commands;
mod config;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::Settings;
use error::CliError;

#[derive(Parser, Debug)]
#[command(name = "mixsurf", version, about = "Mixed type surfaces in Lorentz-Minkowski 3-space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON input file (surface, metric or problem, depending on the subcommand).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Sample grid as AxB.
    #[arg(long, global = true, value_name = "AxB")]
    grid: Option<String>,
    /// Truncation order of the power series.
    #[arg(long, global = true, value_name = "N")]
    order: Option<usize>,
    /// Half-width of the residual check box.
    #[arg(long, global = true, value_name = "RHO")]
    radius: Option<f64>,
    /// Residual threshold.
    #[arg(long, global = true, value_name = "T")]
    tol: Option<f64>,
    /// Output directory.
    #[arg(long, global = true, value_name = "DIR", default_value = "mixsurf-out")]
    out: PathBuf,
    /// Seed for randomized suites.
    #[arg(long, global = true, value_name = "K", default_value_t = 0)]
    seed: u64,
    /// Also write OBJ meshes.
    #[arg(long, global = true)]
    obj: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lightlike locus, its kinds and invariants.
    AnalyzeSurface { input: Option<String> },
    /// Semidefinite set, its types and genericity.
    AnalyzeMetric { input: Option<String> },
    /// Residual checks on a surface, or `minkowski` for the identity suite.
    Verify { input: Option<String> },
    /// Isometric realizations of a metric along a prescribed curve.
    Realize { input: Option<String> },
    /// Deformation family of one realization branch.
    Deform { input: Option<String> },
    /// Built-in examples: four, two or torus.
    Example { which: String },
}

fn run(cli: &Cli) -> Result<serde_json::Value, CliError> {
    if let Some(t) = cli.tol {
        if !(t > 0.0) {
            return Err(CliError::Config("--tol must be positive".into()));
        }
    }
    let st = Settings {
        config: cli.config.clone(),
        grid: cli.grid.as_deref().map(config::parse_grid).transpose()?,
        order: cli.order,
        radius: cli.radius,
        tol: cli.tol,
        out: cli.out.clone(),
        seed: cli.seed,
        obj: cli.obj,
    };
    match &cli.command {
        Command::AnalyzeSurface { input } => commands::analyze_surface(&st, input.as_deref()),
        Command::AnalyzeMetric { input } => commands::analyze_metric(&st, input.as_deref()),
        Command::Verify { input } => commands::verify(&st, input.as_deref()),
        Command::Realize { input } => commands::realize_cmd(&st, input.as_deref()),
        Command::Deform { input } => commands::deform(&st, input.as_deref()),
        Command::Example { which } => commands::example(&st, which),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(v) => {
            println!("{}", serde_json::to_string_pretty(&v).unwrap_or_default());
            ExitCode::from(error::EXIT_OK as u8)
        }
        Err(e) => {
            eprintln!("{}", serde_json::to_string_pretty(&e.diagnostics()).unwrap_or_default());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
