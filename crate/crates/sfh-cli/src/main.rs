//! `sfh`: sutured Floer homology of Seifert surface complements.
//!
//! Exit status: 0 on success, 1 on a domain error (invalid diagram,
//! infeasible ranks, undetermined ranks, ...), 2 on a usage or parse error.

mod commands;
mod load;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// A usage error (bad input selection, unreadable file): exit status 2.
#[derive(Debug)]
pub struct Usage(pub String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

#[derive(Parser, Debug)]
#[command(name = "sfh", version, about = "Sutured Floer homology of Seifert surface complements")]
pub struct Cli {
    /// Emit a machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

/// Inputs: shipped fixtures by name and/or files.
#[derive(Args, Debug, Clone)]
pub struct Inputs {
    /// A shipped fixture (repeatable; see `sfh fixtures`).
    #[arg(long = "fixture", value_name = "NAME")]
    fixtures: Vec<String>,
    /// Input files (diagram, presentation or invariant; detected by content).
    #[arg(value_name = "FILE")]
    files: Vec<PathBuf>,
}

/// The total-rank assertion; exactly one is required.
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct Mode {
    /// The boundary knot is alternating: total rank |a_g|.
    #[arg(long)]
    alternating: bool,
    /// The boundary knot is fibered: total rank 1.
    #[arg(long)]
    fibered: bool,
    /// The total rank is known to be N.
    #[arg(long, value_name = "N")]
    total_rank: Option<u64>,
}

impl Mode {
    fn rank_mode(&self) -> sfh_core::RankMode {
        match (self.alternating, self.fibered, self.total_rank) {
            (true, _, _) => sfh_core::RankMode::Alternating,
            (_, true, _) => sfh_core::RankMode::Fibered,
            (_, _, Some(n)) => sfh_core::RankMode::Explicit(n),
            _ => unreachable!("clap enforces exactly one mode"),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse an input, validate it and check that it round-trips.
    Parse {
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Build the surface diagram of a presentation and decompose it.
    Build {
        #[command(flatten)]
        inputs: Inputs,
        /// Write `<name>-surface.diagram` and `<name>.diagram` here.
        #[arg(long, value_name = "DIR")]
        out_dir: Option<PathBuf>,
    },
    /// List generators grouped by relative Spin^c class.
    Generators {
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Compute the graded invariant.
    Invariant {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        mode: Mode,
        /// Also write the invariant in its text format to this file.
        #[arg(long, value_name = "FILE")]
        save: Option<PathBuf>,
    },
    /// Seifert matrix, intersection form and Alexander polynomial.
    Alexander {
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Try to prove two surfaces inequivalent from their invariants.
    Distinguish {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        mode: Mode,
        /// Search node budget.
        #[arg(long, default_value_t = sfh_core::equivalence::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Search for a unimodular congruence between Seifert matrices.
    Congruence {
        #[command(flatten)]
        inputs: Inputs,
        /// Largest absolute entry of the witness.
        #[arg(long, default_value_t = 5)]
        bound: i64,
        /// Also require the witness to preserve the intersection form.
        #[arg(long = "require-U")]
        require_u: bool,
    },
    /// The invariant of a boundary-connected sum.
    ConnectSum {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        mode: Mode,
        /// Also write the invariant in its text format to this file.
        #[arg(long, value_name = "FILE")]
        save: Option<PathBuf>,
    },
    /// List the shipped fixtures.
    Fixtures,
}

fn run(cli: Cli) -> anyhow::Result<commands::Report> {
    use commands as c;
    match cli.command {
        Command::Parse { inputs } => c::parse(&inputs),
        Command::Build { inputs, out_dir } => c::build(&inputs, out_dir.as_deref()),
        Command::Generators { inputs } => c::generators(&inputs),
        Command::Invariant { inputs, mode, save } => c::invariant(&inputs, mode.rank_mode(), save.as_deref()),
        Command::Alexander { inputs } => c::alexander(&inputs),
        Command::Distinguish { inputs, mode, budget } => c::distinguish(&inputs, mode.rank_mode(), budget),
        Command::Congruence {
            inputs,
            bound,
            require_u,
        } => c::congruence(&inputs, bound, require_u),
        Command::ConnectSum { inputs, mode, save } => c::connect_sum(&inputs, mode.rank_mode(), save.as_deref()),
        Command::Fixtures => c::fixtures(),
    }
}

fn exit_status(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Usage>().is_some() {
        return 2;
    }
    match err.downcast_ref::<sfh_core::Error>() {
        Some(e) if e.is_parse_error() => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(report) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("serializable"));
            } else {
                print!("{}", report.text);
            }
            ExitCode::from(report.status)
        }
        Err(err) => {
            let status = exit_status(&err);
            if json {
                let v = serde_json::json!({ "error": format!("{err:#}"), "status": status });
                println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
            } else {
                eprintln!("error: {err:#}");
            }
            ExitCode::from(status)
        }
    }
}
