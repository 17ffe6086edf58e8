use std::io::{ErrorKind, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use serde_json::json;

use fullinv_core::analyze::{analyze, endo_summary};
use fullinv_core::claims::{self, basic_report, ulm_report, Context};
use fullinv_core::lattice::{ExportFormat, FiLattice};
use fullinv_core::matrix::FundMatrix;
use fullinv_core::report::{ClaimReport, Status};
use fullinv_core::ulm::{BasicSequence, UlmSequence};
use fullinv_core::{Budget, Error, GroupSpec, GroupTable};

const EXIT_REFUTED: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "fullinv")]
#[command(
    about = "Fully invariant subgroups, indicators and endomorphism ideals of finite abelian p-groups"
)]
#[command(version)]
struct Cli {
    /// Largest group order that will be enumerated
    #[arg(long, global = true)]
    max_group: Option<u64>,

    /// Largest endomorphism ring that will be enumerated
    #[arg(long, global = true)]
    max_ring: Option<u64>,

    /// Largest ring whose ideal lattice will be enumerated
    #[arg(long, global = true)]
    max_ideals: Option<u64>,

    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Include per-claim wall-clock times (output is then not reproducible)
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants, indicator table, lattice summary and fundamental matrix
    Analyze {
        /// Group JSON file, or `-` for stdin
        group: PathBuf,
    },
    /// Check the claim catalogue on one group
    Verify {
        group: PathBuf,
        /// `all`, or a comma-separated list of claim ids or id prefixes
        #[arg(long, default_value = "all", value_delimiter = ',')]
        claims: Vec<String>,
    },
    /// Export the lattice of fully invariant subgroups
    Lattice {
        group: PathBuf,
        /// dot | json
        #[arg(long, default_value = "dot")]
        format: String,
    },
    /// Endomorphism ring, ideal count and dagger classes
    Endo { group: PathBuf },
    /// The fundamental matrix p^jG[p^i]
    Matrix { group: PathBuf },
    /// Ulm sum criterion on a symbolic Ulm sequence
    Ulm {
        /// Ulm sequence JSON, or a basic-group sequence with --basic
        sequence: PathBuf,
        /// Input is a sequence of basic groups
        #[arg(long)]
        basic: bool,
    },
}

enum Failure {
    Invalid(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_budget() {
            Failure::Budget(e.to_string())
        } else {
            Failure::Invalid(e.to_string())
        }
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    let mut s = String::new();
    if path == Path::new("-") {
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Invalid(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn read_group(path: &Path) -> Result<GroupSpec, Failure> {
    Ok(GroupSpec::from_json(&read_input(path)?)?)
}

/// Writes to stdout; a closed pipe ends the process quietly.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        if e.kind() == ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: stdout: {e}");
        std::process::exit(EXIT_INVALID as i32);
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serialisable")
}

fn print_reports(reports: &[ClaimReport], as_json: bool, summary: bool) {
    if as_json {
        emit(&format!("{}\n", pretty(&reports)));
        return;
    }
    for r in reports {
        emit(&format!("{}\n", r.render_text()));
    }
    if !summary {
        return;
    }
    let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
    let known = reports.iter().filter(|r| r.known_discrepancy).count();
    let unexpected = reports.iter().filter(|r| r.is_unexpected()).count();
    emit(&format!(
        "\n{} claims: {} verified, {} refuted ({} known discrepancies, {} unexpected), {} skipped\n",
        reports.len(),
        count(Status::Verified),
        count(Status::Refuted),
        known,
        unexpected,
        count(Status::Skipped)
    ));
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let defaults = Budget::default();
    let budget = Budget {
        max_group: cli.max_group.unwrap_or(defaults.max_group),
        max_ring: cli.max_ring.unwrap_or(defaults.max_ring),
        max_ideals: cli.max_ideals.unwrap_or(defaults.max_ideals),
        ..defaults
    };
    match &cli.command {
        Command::Analyze { group } => {
            let a = analyze(&read_group(group)?, &budget)?;
            if cli.json {
                emit(&format!("{}\n", pretty(&a)));
            } else {
                emit(&a.render_text());
            }
            Ok(0)
        }
        Command::Verify {
            group,
            claims: filters,
        } => {
            let g = read_group(group)?;
            let defs = claims::select(filters)?;
            let ctx = Context::new(&g, &budget)?;
            let reports = claims::run_claims(&ctx, &defs, cli.timing);
            print_reports(&reports, cli.json, true);
            let skipped: Vec<&ClaimReport> = reports
                .iter()
                .filter(|r| r.status == Status::Skipped)
                .collect();
            for r in &skipped {
                eprintln!(
                    "skipped {}: {}",
                    r.claim_id,
                    r.note.as_deref().unwrap_or("")
                );
            }
            Ok(if reports.iter().any(ClaimReport::is_unexpected) {
                EXIT_REFUTED
            } else if !skipped.is_empty() {
                EXIT_BUDGET
            } else {
                0
            })
        }
        Command::Lattice { group, format } => {
            let format = ExportFormat::from_str(format)?;
            let g = read_group(group)?;
            let t = GroupTable::new(&g, &budget)?;
            let l = FiLattice::enumerate(&t, &budget)?;
            emit(&l.export(&t, format));
            Ok(0)
        }
        Command::Endo { group } => {
            let s = endo_summary(&read_group(group)?, &budget)?;
            if cli.json {
                emit(&format!("{}\n", pretty(&s)));
            } else {
                emit(&s.render_text());
            }
            Ok(if s.ideal_count.is_none() {
                EXIT_BUDGET
            } else {
                0
            })
        }
        Command::Matrix { group } => {
            let g = read_group(group)?;
            let t = GroupTable::new(&g, &budget)?;
            let m = FundMatrix::build(&t);
            if cli.json {
                emit(&format!(
                    "{}\n",
                    pretty(&json!({"group": g, "matrix": m.to_json(&t)}))
                ));
            } else {
                emit(&m.render_text(&t));
            }
            Ok(0)
        }
        Command::Ulm { sequence, basic } => {
            let text = read_input(sequence)?;
            let report = if *basic {
                basic_report(&BasicSequence::from_json(&text)?)?
            } else {
                ulm_report(&UlmSequence::from_json(&text)?)
            };
            print_reports(std::slice::from_ref(&report), cli.json, false);
            Ok(if report.status == Status::Refuted {
                EXIT_REFUTED
            } else {
                0
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INVALID)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("budget exceeded: {msg}");
            ExitCode::from(EXIT_BUDGET)
        }
    }
}
