use std::process::ExitCode;

use clap::Parser;

use pairrank_cli::cli::{Cli, Command};
use pairrank_cli::commands;

fn main() -> ExitCode {
    // clap exits with code 2 on usage errors (unknown flags, bad values).
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> pairrank_cli::Result<ExitCode> {
    match &cli.command {
        Command::Rank(args) => {
            print!("{}", commands::cmd_rank(args)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep(args) => {
            print!("{}", commands::cmd_sweep(args)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Crb(args) => {
            print!("{}", commands::cmd_crb(args)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Robustness(args) => {
            print!("{}", commands::cmd_robustness(args)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Check(args) => {
            let (text, all_passed) = commands::cmd_check(args)?;
            print!("{text}");
            Ok(if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}
