use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use tauberlab::cli::{run, Cli, CONFIG_ENV};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = std::env::var_os(CONFIG_ENV).map(PathBuf::from);
    match run(&cli, config.as_deref()) {
        Ok(outcome) => {
            for r in &outcome.reports {
                println!("{r}");
            }
            for f in &outcome.files {
                eprintln!("wrote {}", f.display());
            }
            if outcome.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("tlab: {e}");
            ExitCode::from(2)
        }
    }
}
