use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hopfcheck::checks::{export_model, format_table, list_checks, run_all, run_check, Options, Report, Verdict};
use hopfcheck::cyclotomic::parse_rational;

#[derive(Parser)]
#[command(name = "hopfcheck", version, about = "Exact verification of small Hopf *-algebras and their corepresentation categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one check or all of them.
    Verify {
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        check: Option<String>,
        #[arg(long)]
        all: bool,
        /// Print reports as JSON.
        #[arg(long)]
        json: bool,
        /// Model file for `model.twist`.
        #[arg(long)]
        model: Option<PathBuf>,
        /// τ for the pentagon checks, as p/q.
        #[arg(long)]
        tau: Option<String>,
    },
    /// List registered checks whose id or title contains FILTER.
    List { filter: Option<String> },
    /// Write a built-in model (kp, vtilde, vtilde-twist, smash) as JSON.
    Export { id: String, path: PathBuf },
}

fn print_human(r: &Report) {
    let tag = match r.verdict {
        Verdict::Pass => "PASS",
        Verdict::Fail => "FAIL",
        Verdict::Error => "ERROR",
    };
    let note = if r.as_expected() { "" } else { "  (unexpected)" };
    println!("{tag:<5} {} ({} ms) [{}]{note}", r.id, r.elapsed_ms, r.anchor);
    if r.verdict == Verdict::Error {
        if let Some(e) = r.witness.get("error") {
            println!("      {}", e.as_str().unwrap_or_default());
        }
    }
}

fn exit_for(reports: &[Report]) -> ExitCode {
    if reports.iter().any(|r| r.verdict == Verdict::Error) {
        ExitCode::from(2)
    } else if reports.iter().all(Report::as_expected) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify { check, all, json, model, tau } => {
            let tau = match tau.as_deref().map(parse_rational) {
                None => None,
                Some(Ok(t)) => Some(t),
                Some(Err(e)) => {
                    eprintln!("error: --tau: {e}");
                    return ExitCode::from(2);
                }
            };
            let opts = Options { model, tau };
            let reports = if all {
                run_all(&opts)
            } else {
                match run_check(check.as_deref().unwrap_or_default(), &opts) {
                    Ok(r) => vec![r],
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(2);
                    }
                }
            };
            if json {
                let v = if all { serde_json::to_string_pretty(&reports) } else { serde_json::to_string_pretty(&reports[0]) };
                println!("{}", v.expect("serializable"));
            } else {
                reports.iter().for_each(print_human);
            }
            exit_for(&reports)
        }
        Command::List { filter } => {
            print!("{}", format_table(&list_checks(filter.as_deref())));
            ExitCode::SUCCESS
        }
        Command::Export { id, path } => {
            let text = match export_model(&id) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            match std::fs::write(&path, text) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {}: {e}", path.display());
                    ExitCode::from(2)
                }
            }
        }
    }
}
