//! `lexrecip` command-line tool.
//!
//! Exit codes: 0 on success, 2 when a checked identity fails, 1 on any
//! operational error.

mod commands;
mod formats;

use clap::Parser;
use serde_json::json;

use commands::Command;
use formats::{RunReport, Status};

#[derive(Debug, Parser)]
#[command(name = "lexrecip", version, about = "Order polynomials, Euler characteristic reciprocity and the lexicographic homeomorphism")]
struct Cli {
    /// Print a machine-readable run report instead of text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

fn main() {
    let cli = Cli::parse();
    let name = cli.command.name().to_string();
    let code = match cli.command.run() {
        Ok(outcome) => {
            if cli.json {
                let report = RunReport {
                    command: name,
                    inputs: outcome.inputs,
                    seed: outcome.seed,
                    result: outcome.result,
                    status: outcome.status,
                };
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                print!("{}", outcome.text);
                if let Some(seed) = outcome.seed {
                    println!("seed {seed}");
                }
            }
            outcome.status.exit_code()
        }
        Err(err) => {
            if cli.json {
                let report = RunReport {
                    command: name,
                    inputs: Vec::new(),
                    seed: None,
                    result: json!({ "message": format!("{err:#}") }),
                    status: Status::Error,
                };
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                eprintln!("error: {err:#}");
            }
            Status::Error.exit_code()
        }
    };
    std::process::exit(code);
}
