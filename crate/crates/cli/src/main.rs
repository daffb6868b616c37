//! `plane4`: invariants of arrangements of transverse 2-planes in R⁴.
//!
//! Exit codes: 0 on success, 1 when `table1 --check` finds a mismatch,
//! 2 on usage or parse errors.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use plane4_core::FreeWord;
use serde::Serialize;

use commands::Usage;

#[derive(Parser)]
#[command(
    name = "plane4",
    version,
    about = "Invariants of 2-plane arrangements in R^4"
)]
struct Cli {
    /// Worker threads for torsion grids (output does not depend on it).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Torsion {
    /// Primes for torsion counts.
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    p: Vec<u64>,

    /// Ideal indices: integers or `n`, `n-1`, `n-2`, ...
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "1",
        allow_hyphen_values = true
    )]
    k: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Polynomials, delta, torsion counts and depth-2 data of an arrangement.
    Invariants {
        /// `perm:21435`, `cat:K`, `xi:n=6;A(2,4)A(1,2)` or `cable(cat:K,k=6,sign=+,r=1)`.
        spec: String,
        #[command(flatten)]
        torsion: Torsion,
        /// File of free-basis words (e.g. `x1 x1x2 x3`) for the Alexander matrix.
        #[arg(long)]
        basis: Option<PathBuf>,
    },
    /// Alexander matrix, Alexander polynomial and link polynomial.
    Alexander {
        spec: String,
        #[arg(long)]
        basis: Option<PathBuf>,
    },
    /// Reference table of arrangements of at most six planes.
    Table1 {
        /// Compare with the embedded values; exit 1 on any difference.
        #[arg(long)]
        check: bool,
    },
    /// Invariants of an r-cable: `cable cat:K r=2 [k=6] [sign=+]`.
    Cable {
        spec: String,
        /// `k=<plane>`, `sign=+|-`, `r=<copies>`.
        options: Vec<String>,
        #[command(flatten)]
        torsion: Torsion,
    },
    /// Depth-2 normal form of a permutation.
    NormalForm { perm: String },
    /// Number of depth-≤2 arrangements of n planes up to homotopy.
    CountClasses { n: usize },
    /// Check that a subtorus lies in V_k, e.g. `verify cat:K "t6=1 & t4=-1" --k 4`.
    Verify {
        spec: String,
        torus: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        k: String,
        /// Basis the torus is written in; defaults to the catalog display basis.
        #[arg(long)]
        basis: Option<PathBuf>,
    },
    /// Components of V_{n-2} of a depth-≤2 arrangement.
    Components { spec: String },
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn write_out(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn emit<T: Serialize + std::fmt::Display>(value: &T, json: bool) -> Result<()> {
    if json {
        write_out(&format!("{}\n", serde_json::to_string_pretty(value)?))
    } else {
        write_out(&value.to_string())
    }
}

fn load_basis(
    path: Option<&PathBuf>,
    spec: &plane4_core::arrangements::ArrangementSpec,
) -> Result<Option<Vec<FreeWord>>> {
    match path {
        Some(p) => {
            let n = spec.n().map_err(|e| Usage(e.to_string()))?;
            Ok(Some(commands::read_basis(p, n.saturating_sub(1).max(1))?))
        }
        None => Ok(None),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build_global()
            .map_err(|e| Usage(e.to_string()))?;
    }
    let json = cli.json;
    match cli.command {
        Command::Invariants {
            spec,
            torsion,
            basis,
        } => {
            let spec = commands::parse_spec(&spec)?;
            let basis = load_basis(basis.as_ref(), &spec)?;
            emit(
                &commands::invariants(&spec, &torsion.p, &torsion.k, basis.as_deref())?,
                json,
            )?;
        }
        Command::Alexander { spec, basis } => {
            let spec = commands::parse_spec(&spec)?;
            let basis = load_basis(basis.as_ref(), &spec)?;
            emit(&commands::alexander(&spec, basis.as_deref())?, json)?;
        }
        Command::Table1 { check } => {
            let (table, mismatches) = commands::table1(check)?;
            emit(&table, json)?;
            if check {
                let total = table.rows.len();
                eprintln!("check: {} of {total} rows match", total - mismatches);
                if mismatches > 0 {
                    return Ok(ExitCode::from(1));
                }
            }
        }
        Command::Cable {
            spec,
            options,
            torsion,
        } => {
            let spec = commands::cable_spec(&spec, &options)?;
            let n = spec.n().map_err(|e| Usage(e.to_string()))?;
            for &p in &torsion.p {
                if (p as f64).powi(n as i32) > 1000.0 {
                    eprintln!("counting over {p}^{n} torsion points");
                }
            }
            emit(
                &commands::invariants(&spec, &torsion.p, &torsion.k, None)?,
                json,
            )?;
        }
        Command::NormalForm { perm } => emit(&commands::normal_form(&perm)?, json)?,
        Command::CountClasses { n } => {
            let count = commands::count_classes(n)?;
            if json {
                write_out(&format!(
                    "{}\n",
                    serde_json::json!({ "n": n, "classes": count })
                ))?;
            } else {
                write_out(&format!("{count}\n"))?;
            }
        }
        Command::Verify {
            spec,
            torus,
            k,
            basis,
        } => {
            let spec = commands::parse_spec(&spec)?;
            let basis = match load_basis(basis.as_ref(), &spec)? {
                Some(b) => Some(b),
                None => commands::default_basis(&spec),
            };
            emit(
                &commands::verify(&spec, &torus, &k, basis.as_deref())?,
                json,
            )?;
        }
        Command::Components { spec } => {
            let spec = commands::parse_spec(&spec)?;
            emit(&commands::components(&spec)?, json)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
