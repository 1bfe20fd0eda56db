use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qcalc::{AnalyticFunction, Quaternion};
use qcalc_cli::commands::{self, CliError, Integrand, Mode};
use qcalc_cli::suites::{self, Config, Suite};

/// Differentials and path integrals of functions of a quaternion variable.
#[derive(Parser)]
#[command(name = "qcalc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// First- or second-order differential of F at a point along a displacement.
    Diff {
        /// Function spec, e.g. `exp`, `pow:3`, `poly:[1,0,[0,1,0,0]]`.
        #[arg(long)]
        function: AnalyticFunction,
        /// Point as [q0,q1,q2,q3].
        #[arg(long, allow_hyphen_values = true)]
        point: Quaternion,
        /// Displacement as [q0,q1,q2,q3].
        #[arg(long, allow_hyphen_values = true)]
        delta: Quaternion,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        order: u8,
    },
    /// Path integral of D F, or the symmetric integral of t^n.
    Integrate {
        #[arg(long, required_unless_present = "power", conflicts_with = "power")]
        function: Option<AnalyticFunction>,
        /// Integrate t^n for this n.
        #[arg(long)]
        power: Option<u32>,
        #[arg(long, value_enum, default_value = "dcal")]
        mode: Mode,
        /// JSON file: {"waypoints": [[...], ...], "segments_per_leg": N}.
        #[arg(long)]
        path: PathBuf,
    },
    /// Run a seeded verification suite and print its report.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Override the number of random samples per case.
        #[arg(long)]
        cases: Option<usize>,
        /// Also write the report to this file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

/// Writes a line to stdout. A reader that hung up early (`| head`) is not an error.
fn emit(text: &str) -> Result<(), CliError> {
    match writeln!(std::io::stdout().lock(), "{text}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
            Err(CliError::Failure(format!("cannot write output: {e}")))
        }
        _ => Ok(()),
    }
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<(), CliError> {
    emit(&serde_json::to_string(value).expect("output serializes"))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Diff {
            function,
            point,
            delta,
            order,
        } => print_json(&commands::diff(&function, point, delta, order)?)?,
        Command::Integrate {
            function,
            power,
            mode,
            path,
        } => {
            let integrand = match (function, power) {
                (Some(f), _) => Integrand::Function(f),
                (None, Some(n)) => Integrand::Power(n),
                (None, None) => return Err(CliError::Usage("need --function or --power".into())),
            };
            let path = commands::read_path(&path)?;
            print_json(&commands::integrate(&integrand, mode, &path)?)?;
        }
        Command::Verify {
            suite,
            seed,
            cases,
            json,
        } => {
            let report = suites::run(suite, &Config { seed, cases });
            let text = report.to_json();
            emit(&text)?;
            if let Some(file) = json {
                std::fs::write(&file, format!("{text}\n")).map_err(|e| {
                    CliError::Failure(format!("cannot write {}: {e}", file.display()))
                })?;
            }
            if !report.ok() {
                return Err(CliError::Failure(format!(
                    "{} of {} cases failed",
                    report.summary.fail, report.summary.total
                )));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qcalc: {}", e.message());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
