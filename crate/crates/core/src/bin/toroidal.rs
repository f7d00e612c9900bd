use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use toroidal::cli::{self, Command, RunOptions};
use toroidal::monomialize::Mode;

#[derive(Parser)]
#[command(name = "toroidal", version, about = "Log smoothness and monomialization of toric morphism germs")]
struct Args {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Rational,
    RootCapable,
}

#[derive(clap::Args)]
struct Common {
    /// Scenario file, or the name of a bundled scenario.
    scenario: Option<String>,
    /// Truncation order N.
    #[arg(long)]
    order: Option<i64>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Write the machine-readable report here.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Include wall-clock time in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum Sub {
    /// Log smoothness test.
    Check(Common),
    /// Full monomialization with diagram verification.
    Monomialize(Common),
    /// Re-check the commuting diagram, optionally for a stored result.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Report written by an earlier `monomialize`.
        #[arg(long)]
        result: Option<PathBuf>,
    },
    /// Certificate for the residue field obstruction example.
    Counterexample(Common),
    /// List bundled scenarios.
    List,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let (command, common, result) = match args.command {
        Sub::Check(c) => (Command::Check, c, None),
        Sub::Monomialize(c) => (Command::Monomialize, c, None),
        Sub::Verify { common, result } => (Command::Verify, common, result),
        Sub::Counterexample(c) => (Command::Counterexample, c, None),
        Sub::List => {
            for name in cli::catalog::names() {
                println!("{name}");
            }
            return ExitCode::SUCCESS;
        }
    };
    let mut opts = RunOptions {
        order: common.order,
        mode: common.mode.map(|m| match m {
            ModeArg::Rational => Mode::RationalResidue,
            ModeArg::RootCapable => Mode::RootCapable,
        }),
        stored_result: None,
        timing: common.timing,
    };
    let loaded = match &result {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| e.to_string())
            .and_then(|text| serde_json::from_str(&text).map_err(|e| e.to_string()))
            .map(|v| opts.stored_result = Some(v))
            .map_err(|e| format!("{}: {e}", path.display())),
        None => Ok(()),
    };
    let outcome = match loaded {
        Ok(()) => cli::run_arg(command, common.scenario.as_deref(), &opts),
        Err(e) => cli::input_error_outcome(command, &e),
    };

    print!("{}", outcome.summary);
    if let Some(path) = &common.report {
        if let Err(e) = std::fs::write(path, cli::report_to_string(&outcome.report)) {
            eprintln!("cannot write {}: {e}", path.display());
            return ExitCode::from(cli::EXIT_INPUT as u8);
        }
    }
    ExitCode::from(outcome.exit_code as u8)
}
