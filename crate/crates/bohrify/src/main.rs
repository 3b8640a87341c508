use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context as _, Result};
use bohrify::commands::{self, Command};
use bohrify::model::{load_model, LoadOptions};
use bohrify::report::Report;
use bohrify::verify::{load_fixtures, verify_all};
use bohrify_core::Exec;
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "bohrify",
    version,
    about = "Contexts, spectra, symmetry and logic of finite holonomy-flux models"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    common: Common,
}

#[derive(clap::Args)]
struct Common {
    /// Model file (JSON).
    #[arg(long, global = true)]
    model: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// Directory for DOT diagrams.
    #[arg(long, global = true)]
    dot: Option<PathBuf>,
    /// Numerical tolerance, overriding the model.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for `random:N` gauge entries, overriding any seed in the model.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Run on a single thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Commutative contexts and their inclusion order.
    Contexts,
    /// External spectrum and point closures.
    Spectrum,
    /// Check that every irreducible closed set has one generic point.
    Sobriety {
        /// Bounded search instead of failing past the enumeration cap.
        #[arg(long)]
        partial: bool,
    },
    /// Truncated ascending chain of Weyl contexts.
    Chain {
        #[arg(long)]
        depth: usize,
    },
    /// Commutativity of contexts under automorphisms and gauges.
    Invariance {
        #[arg(long)]
        diffeo: bool,
        #[arg(long)]
        gauge: bool,
    },
    /// Daseinised projections and classical-law failures.
    Logic {
        /// Comma-separated projection names; all when omitted.
        #[arg(long, value_delimiter = ',')]
        projections: Option<Vec<String>>,
    },
    /// The acceptance suite over the shipped fixtures and an optional model.
    VerifyAll,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    let c = &cli.common;
    let exec = if c.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    };
    let options = LoadOptions {
        tol: c.tol,
        seed: c.seed,
        dim_cap: None,
    };
    let started = Instant::now();
    let command = match cli.command {
        Cmd::Contexts => Command::Contexts,
        Cmd::Spectrum => Command::Spectrum,
        Cmd::Sobriety { partial } => Command::Sobriety { partial },
        Cmd::Chain { depth } => Command::Chain { depth },
        Cmd::Invariance { diffeo, gauge } => Command::Invariance { diffeo, gauge },
        Cmd::Logic { projections } => Command::Logic { projections },
        Cmd::VerifyAll => {
            let mut models = load_fixtures(options)?;
            if let Some(path) = &c.model {
                models.push(load_model(path, options)?);
            }
            let v = verify_all(&models, exec)?;
            for crit in &v.criteria {
                let verdict = if crit.passed { "pass" } else { "FAIL" };
                eprintln!(
                    "criterion {:>2} {verdict}: {} ({})",
                    crit.id, crit.name, crit.detail
                );
            }
            emit(&v.report, &[], c)?;
            eprintln!("elapsed {:.2?}", started.elapsed());
            return Ok(v.passed());
        }
    };
    let path = c
        .model
        .as_ref()
        .with_context(|| format!("--model is required for {}", command.name()))?;
    let model = load_model(path, options)?;
    let out = commands::run(&command, &model, exec)?;
    emit(&out.report, &out.diagrams, c)?;
    eprintln!("elapsed {:.2?}", started.elapsed());
    Ok(out.report.passed())
}

fn emit(report: &Report, diagrams: &[commands::Diagram], c: &Common) -> Result<()> {
    let text = report.render();
    match &c.report {
        Some(path) => write(path, &text)?,
        None => print!("{text}"),
    }
    if let Some(dir) = &c.dot {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for (name, content) in diagrams {
            write(&dir.join(name), content)?;
        }
    }
    Ok(())
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}
