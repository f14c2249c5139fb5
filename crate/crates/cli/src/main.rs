//! `cyclelab`: limit-cycle analysis of planar polynomial systems.
//!
//! Exit status: 0 on success, 1 for usage errors (bad flags, unreadable or
//! malformed input, unknown or unbound names), 2 when a mathematical
//! precondition fails or a reproduction row does not pass.

mod args;
mod commands;
mod svg;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::Report;

const SIZE_WARNING: usize = 1 << 20;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Math(String),
}

impl From<cyclelab::Error> for Failure {
    fn from(e: cyclelab::Error) -> Self {
        if e.is_usage() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Math(e.to_string())
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "cyclelab", version, about = "Limit cycles of planar polynomial systems")]
struct Cli {
    /// Print the result as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Write the report to this file instead of standard output.
    #[arg(long, short, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lyapunov quantities L(0), L(1), ... at the origin.
    Lyap {
        file: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_order: usize,
        /// Simultaneous substitution `sym=expr;sym=expr` applied first.
        #[arg(long)]
        subst: Option<String>,
        /// Reduction step `k:sym=expr;...` requiring L(k) to vanish, or
        /// `sym=expr;...` for a plain restriction. Repeatable, in order.
        #[arg(long = "step")]
        steps: Vec<String>,
    },
    /// First or second order Melnikov function.
    Mel {
        file: PathBuf,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        order: u8,
        #[arg(long)]
        subst: Option<String>,
        /// Comma-separated perturbation parameters; defaults to the file's
        /// `perturb:` line, else every parameter.
        #[arg(long)]
        eps: Option<String>,
        /// Values used for root isolation, e.g. `a=1,b=-1/2`.
        #[arg(long)]
        at: Option<String>,
    },
    /// Tests whether `C = 0` is invariant and reports the cofactor.
    Cofactor {
        file: PathBuf,
        #[arg(long)]
        curve: String,
        #[arg(long)]
        subst: Option<String>,
    },
    /// Divergence of `X / C` for a candidate Dulac function `1 / C`.
    Dulac {
        file: PathBuf,
        #[arg(long)]
        curve: String,
        #[arg(long)]
        subst: Option<String>,
    },
    /// Reversibility flags with a Lyapunov cross-check.
    CenterCheck {
        file: PathBuf,
        #[arg(long)]
        subst: Option<String>,
        #[arg(long, default_value_t = 6)]
        max_order: usize,
    },
    /// Classical center conditions for the cubic Kukles family.
    KuklesConditions {
        /// All of `a1..a7`, e.g. `a1=1,a2=0,...`.
        #[arg(long)]
        at: String,
    },
    /// Integrates one orbit and prints it as CSV.
    Simulate {
        file: PathBuf,
        #[arg(long)]
        at: Option<String>,
        /// Multiplies the bound perturbation parameters.
        #[arg(long)]
        eps: Option<String>,
        #[arg(long, value_name = "X,Y", allow_hyphen_values = true)]
        x0: String,
        #[arg(long, default_value_t = 20.0)]
        t_max: f64,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Write the CSV here and print a summary instead.
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        portrait: Option<PathBuf>,
    },
    /// Limit cycles crossing the positive x-axis.
    Cycles {
        file: PathBuf,
        #[arg(long)]
        at: Option<String>,
        /// Multiplies the bound perturbation parameters.
        #[arg(long)]
        eps: Option<String>,
        #[arg(long, default_value = "0.05:2", value_name = "LO:HI")]
        range: String,
        #[arg(long, default_value_t = 64)]
        grid: usize,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_name = "PATH")]
        portrait: Option<PathBuf>,
    },
    /// Runs the reproduction suite and prints a pass/fail table.
    Reproduce {
        /// Row number (`3`, `ac3`), tag (`lyap`, `mel`, `inv`, `num`,
        /// `kukles`) or part of a row name.
        #[arg(long)]
        filter: Option<String>,
        /// Reference values to compare against instead of the built-in ones.
        #[arg(long, value_name = "PATH")]
        golden: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Lyap {
            file,
            max_order,
            subst,
            steps,
        } => commands::lyap(file, *max_order, subst.as_deref(), steps),
        Command::Mel {
            file,
            order,
            subst,
            eps,
            at,
        } => commands::mel(file, *order, subst.as_deref(), eps.as_deref(), at.as_deref()),
        Command::Cofactor { file, curve, subst } => commands::cofactor_cmd(file, curve, subst.as_deref()),
        Command::Dulac { file, curve, subst } => commands::dulac(file, curve, subst.as_deref()),
        Command::CenterCheck { file, subst, max_order } => commands::center_check(file, subst.as_deref(), *max_order),
        Command::KuklesConditions { at } => commands::kukles(at),
        Command::Simulate {
            file,
            at,
            eps,
            x0,
            t_max,
            tol,
            samples,
            csv,
            portrait,
        } => commands::simulate(commands::SimulateArgs {
            file,
            at: at.as_deref(),
            eps: eps.as_deref(),
            x0,
            t_max: *t_max,
            tol: *tol,
            samples: *samples,
            csv: csv.as_ref(),
            portrait: portrait.as_ref(),
        }),
        Command::Cycles {
            file,
            at,
            eps,
            range,
            grid,
            tol,
            portrait,
        } => commands::cycles(commands::CyclesArgs {
            file,
            at: at.as_deref(),
            eps: eps.as_deref(),
            range,
            grid: *grid,
            tol: *tol,
            portrait: portrait.as_ref(),
        }),
        Command::Reproduce { filter, golden, seed } => commands::reproduce(filter.as_deref(), golden.as_deref(), *seed),
    }
}

fn emit(cli: &Cli, report: &Report) -> Result<(), Failure> {
    let body = if cli.json {
        let mut s = serde_json::to_string_pretty(&report.json).map_err(|e| Failure::Math(e.to_string()))?;
        s.push('\n');
        s
    } else {
        report.text.clone()
    };
    if body.len() > SIZE_WARNING {
        eprintln!("warning: report is {} bytes", body.len());
    }
    match &cli.output {
        Some(p) => std::fs::write(p, body).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            // A closed pipe is not an error worth reporting.
            let _ = out.write_all(body.as_bytes());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = run(&cli).and_then(|r| emit(&cli, &r).map(|_| r.failed));
    match result {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(2),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Math(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
