//! Command-line front end: `halflight check <config> ...`.

pub mod config;
pub mod report;
pub mod run;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::sections::DirectionKind;
pub use config::{load_config, BackendChoice, Check, SurfaceConfig};
pub use report::Report;
pub use run::{run, RunOptions};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAIL: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "halflight", version, about = "Verify half-lightlike surface computations against a surface definition file")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TraceDirection {
    Xi,
    V,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every check listed in the config.
    Check {
        config: PathBuf,
        /// Evaluate only this parameter point, e.g. `0.1,-0.2`.
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        point: Option<[f64; 2]>,
        #[arg(long, value_enum)]
        backend: Option<BackendArg>,
        #[arg(long)]
        tol: Option<f64>,
        /// Write the JSON report here (`-` for stdout instead of the table).
        #[arg(long)]
        report: Option<PathBuf>,
        /// Include traced-curve samples for this direction.
        #[arg(long, value_enum)]
        trace: Option<TraceDirection>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BackendArg {
    Jet,
    Fd,
    Both,
}

fn parse_point(s: &str) -> Result<[f64; 2], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => {
            let a: f64 = a.parse().map_err(|e| format!("{a}: {e}"))?;
            let b: f64 = b.parse().map_err(|e| format!("{b}: {e}"))?;
            if a.is_finite() && b.is_finite() {
                Ok([a, b])
            } else {
                Err("coordinates must be finite".into())
            }
        }
        _ => Err(format!("expected `u1,u2`, got `{s}`")),
    }
}

fn execute(cli: Cli) -> Result<i32, Error> {
    let Command::Check {
        config,
        point,
        backend,
        tol,
        report,
        trace,
    } = cli.command;
    if let Some(t) = tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::Config("--tol: must be positive".into()));
        }
    }
    let cfg = load_config(&config)?;
    let opts = RunOptions {
        point,
        backend: backend.map(|b| match b {
            BackendArg::Jet => BackendChoice::Jet,
            BackendArg::Fd => BackendChoice::Fd,
            BackendArg::Both => BackendChoice::Both,
        }),
        tol,
        trace: trace.map(|t| match t {
            TraceDirection::Xi => DirectionKind::Degenerate,
            TraceDirection::V => DirectionKind::Nondegenerate,
        }),
    };
    let r = run(&cfg, &opts)?;
    match report.as_deref() {
        Some(p) if p.as_os_str() == "-" => print!("{}", r.to_json()),
        Some(p) => {
            std::fs::write(p, r.to_json()).map_err(|e| Error::Config(format!("{}: {e}", p.display())))?;
            print!("{}", r.table());
        }
        None => print!("{}", r.table()),
    }
    Ok(if r.passed { EXIT_PASS } else { EXIT_FAIL })
}

/// Parse arguments, run, and return the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
