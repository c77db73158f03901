use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use chowcalc_cli::{execute, Outputs};

#[derive(Parser)]
#[command(name = "chowcalc", version, about = "Codimension-one cohomological Chow groups from resolution data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the groups described by a JSON config.
    Run {
        config: PathBuf,
        /// Write the text report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the machine-readable report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write the dual complex in DOT format here.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Debug logging (CHOWCALC_LOG takes precedence).
        #[arg(long)]
        verbose: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Command::Run { config, out, json, dot, verbose } = cli.command;
    let default = if verbose { "debug" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("CHOWCALC_LOG", default)).init();

    match execute(&config, &Outputs { report: out, json, dot }) {
        Ok((code, text)) => {
            if let Some(t) = text {
                print!("{t}");
            }
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
