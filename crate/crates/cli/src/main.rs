//! `fockcat` — sweep and scenario runner for displacement-enhanced photon
//! subtraction on split squeezed vacuum.
//!
//! Exit codes: 0 success, 1 validation error, 2 numerical-health failure
//! (truncation flag or eigenvalue breach).

mod figures;
mod manifest;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use fockcat_core::error::FockError;
use fockcat_core::sweep::{Model, Scheme};

use figures::{FigureName, Overrides};
use manifest::Manifest;

#[derive(Parser)]
#[command(name = "fockcat", version, about = "Entanglement concentration sweeps on a truncated Fock space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the CSV data behind one of the reference figures.
    Figure(FigureArgs),
    /// Evaluate a single scenario and print a report.
    Run(RunArgs),
}

#[derive(Args)]
struct FigureArgs {
    /// Figure to reproduce.
    #[arg(value_enum)]
    name: FigureName,
    /// Squeezing parameter lambda.
    #[arg(long)]
    lambda: Option<f64>,
    /// Input-splitter intensity reflectance R; comma list fans out curves.
    #[arg(long = "R", value_delimiter = ',', allow_hyphen_values = true)]
    big_r: Option<Vec<f64>>,
    /// Tap-off intensity reflectance R_S.
    #[arg(long = "Rs")]
    tap: Option<f64>,
    /// Detector efficiencies; comma list fans out curves.
    #[arg(long, value_delimiter = ',')]
    eta: Option<Vec<f64>>,
    /// Fock-space truncation.
    #[arg(long)]
    nmax: Option<usize>,
    /// Highest subtraction order retained.
    #[arg(long)]
    kmax: Option<usize>,
    /// Output directory for the CSV and its manifest.
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Args)]
struct RunArgs {
    /// single | double
    #[arg(long)]
    scheme: SchemeArg,
    /// ideal | realistic
    #[arg(long)]
    model: ModelArg,
    #[arg(long, default_value_t = 0.2)]
    lambda: f64,
    /// Input-splitter intensity reflectance R.
    #[arg(long = "R", default_value_t = 0.5)]
    big_r: f64,
    /// Tap-off intensity reflectance R_S.
    #[arg(long = "Rs", default_value_t = 0.1)]
    tap: f64,
    #[arg(long, default_value_t = 1.0)]
    eta: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    beta: f64,
    #[arg(long, default_value_t = 10)]
    nmax: usize,
    /// Defaults to nmax.
    #[arg(long)]
    kmax: Option<usize>,
    /// Optional directory for report.json + manifest.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum SchemeArg {
    Single,
    Double,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum ModelArg {
    Ideal,
    Realistic,
}

fn exit_code_for(err: &FockError) -> u8 {
    match err {
        FockError::NumericalHealth(_) => 2,
        _ => 1,
    }
}

fn figure_command(args: &FigureArgs) -> Result<u8, (u8, String)> {
    let overrides = Overrides {
        lambda: args.lambda,
        big_r: args.big_r.clone(),
        tap: args.tap,
        eta: args.eta.clone(),
        n_max: args.nmax,
        k_max: args.kmax,
    };
    let started = Instant::now();
    let stem = args.name.file_stem();
    let mut manifest = Manifest::new(&format!("figure {stem}"));
    let data = figures::generate(args.name, &overrides, &mut manifest)
        .map_err(|e| (exit_code_for(&e), e.to_string()))?;

    std::fs::create_dir_all(&args.out).map_err(|e| (1, e.to_string()))?;
    let csv_path = args.out.join(&data.file_name);
    std::fs::write(&csv_path, &data.csv).map_err(|e| (1, e.to_string()))?;
    let manifest = manifest.finish(
        &data.file_name,
        data.rows,
        data.flagged,
        data.max_tail,
        started.elapsed(),
    );
    let manifest_path = args.out.join(format!("{stem}_manifest.json"));
    manifest.write(&manifest_path).map_err(|e| (1, e.to_string()))?;

    println!(
        "{}: {} rows -> {} (manifest {})",
        stem,
        data.rows,
        csv_path.display(),
        manifest_path.display()
    );
    if data.flagged > 0 {
        eprintln!(
            "warning: {} records exceeded the truncation flag threshold (max tail fraction {:.3e})",
            data.flagged, data.max_tail
        );
        return Ok(2);
    }
    Ok(0)
}

fn run_command(args: &RunArgs) -> Result<u8, (u8, String)> {
    let params = run::RunParams {
        scheme: match args.scheme {
            SchemeArg::Single => Scheme::Single,
            SchemeArg::Double => Scheme::Double,
        },
        model: match args.model {
            ModelArg::Ideal => Model::Ideal,
            ModelArg::Realistic => Model::Realistic,
        },
        lambda: args.lambda,
        big_r: args.big_r,
        tap: args.tap,
        eta: args.eta,
        alpha: args.alpha,
        beta: args.beta,
        n_max: args.nmax,
        k_max: args.kmax.unwrap_or(args.nmax),
    };
    let started = Instant::now();
    let outcome = run::execute(&params).map_err(|e| (exit_code_for(&e), e.to_string()))?;
    print!("{}", outcome.text);

    if let Some(out) = &args.out {
        std::fs::create_dir_all(out).map_err(|e| (1, e.to_string()))?;
        let report_path = out.join("run_report.json");
        let report =
            serde_json::to_string_pretty(&outcome.json).expect("report serializes") + "\n";
        std::fs::write(&report_path, report).map_err(|e| (1, e.to_string()))?;
        let mut manifest = Manifest::new("run");
        manifest.set("lambda", params.lambda);
        manifest.set("R", params.big_r);
        manifest.set("Rs", params.tap);
        manifest.set("eta", params.eta);
        manifest.set("alpha", params.alpha);
        manifest.set("beta", params.beta);
        manifest.set("nmax", params.n_max);
        manifest.set("kmax", params.k_max);
        manifest.set("scheme", format!("{:?}", params.scheme));
        manifest.set("model", format!("{:?}", params.model));
        let manifest = manifest.finish(
            "run_report.json",
            1,
            usize::from(outcome.flagged),
            0.0,
            started.elapsed(),
        );
        manifest
            .write(&out.join("run_manifest.json"))
            .map_err(|e| (1, e.to_string()))?;
    }
    Ok(if outcome.flagged { 2 } else { 0 })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{err}");
                return ExitCode::SUCCESS;
            }
            eprintln!("{err}");
            return ExitCode::from(1);
        }
    };
    let result = match &cli.command {
        Command::Figure(args) => figure_command(args),
        Command::Run(args) => run_command(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err((code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
