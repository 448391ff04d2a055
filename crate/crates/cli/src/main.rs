//! `faber`: zeros, predicted limit sets, verification and figures for
//! Faber polynomials of Joukowski airfoils.

mod commands;
mod config;
mod json;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use faber_core::FaberError;

use config::{read_config_file, Overrides};

#[derive(Parser)]
#[command(
    name = "faber",
    version,
    about = "Zeros of Faber polynomials for Joukowski airfoils"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the zeros of F_n for each n and write them as CSV.
    Zeros(Flags),
    /// Write the predicted limit curves and limit measure.
    Predict(Flags),
    /// Check computed (or supplied) zeros against the predictions.
    Verify(Flags),
    /// Draw zeros over the predicted curves as SVG.
    Plot(Flags),
}

#[derive(Args, Debug, Clone)]
struct Flags {
    /// Radius of the generating circle (R > 1)
    #[arg(long = "R", allow_negative_numbers = true)]
    r: Option<f64>,
    /// Rotation angle of the generating circle, |theta| < pi/2
    #[arg(long, allow_negative_numbers = true)]
    theta: Option<f64>,
    /// Degrees, comma separated (each 1..=500)
    #[arg(long)]
    n: Option<String>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output formats, comma separated: csv, json, svg
    #[arg(long)]
    format: Option<String>,
    /// auto, simultaneous or seeded
    #[arg(long)]
    seed_method: Option<String>,
    /// Threshold for the quadrature gate
    #[arg(long)]
    tol_quad: Option<f64>,
    /// Parameters of figure 1..4: 1.26/0, 2.1/0, 2.1/0.2, 1.45/0.2
    #[arg(long)]
    paper_figure: Option<u8>,
    /// Zeros CSV to verify instead of computing zeros
    #[arg(long)]
    zeros_in: Option<PathBuf>,
    /// key = value file; flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
}

impl Flags {
    fn overrides(&self) -> Result<Overrides, FaberError> {
        let flags = Overrides {
            r: self.r,
            theta: self.theta,
            n: self.n.clone(),
            out: self.out.clone(),
            format: self.format.clone(),
            seed_method: self.seed_method.clone(),
            tol_quad: self.tol_quad,
            paper_figure: self.paper_figure,
            zeros_in: self.zeros_in.clone(),
        };
        Ok(match &self.config {
            Some(path) => flags.over(read_config_file(path)?),
            None => flags,
        })
    }
}

fn init_threads() -> Result<(), FaberError> {
    if let Ok(v) = std::env::var("FABER_THREADS") {
        let k: usize = v.trim().parse().ok().filter(|&k| k > 0).ok_or_else(|| {
            FaberError::Parameter(format!(
                "FABER_THREADS must be a positive integer, got '{v}'"
            ))
        })?;
        // fails only if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global();
    }
    Ok(())
}

fn run(cli: Cli) -> Result<commands::Outcome, commands::CliError> {
    init_threads()?;
    let (flags, defaults) = match &cli.command {
        Command::Zeros(f) => (f, "csv"),
        Command::Predict(f) => (f, "csv,json"),
        Command::Verify(f) => (f, "json"),
        Command::Plot(f) => (f, "svg"),
    };
    let cfg = flags.overrides()?.resolve(defaults)?;
    match cli.command {
        Command::Zeros(_) => commands::cmd_zeros(&cfg),
        Command::Predict(_) => commands::cmd_predict(&cfg),
        Command::Verify(_) => commands::cmd_verify(&cfg),
        Command::Plot(_) => commands::cmd_plot(&cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(commands::Outcome::Ok) => ExitCode::SUCCESS,
        Ok(commands::Outcome::GatesFailed(names)) => {
            eprintln!("FAIL: {}", names.join(", "));
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
