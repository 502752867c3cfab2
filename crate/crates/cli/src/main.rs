use std::process::ExitCode;

use clap::Parser;
use mcg_cli::{run, Cli, OutputFormat};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.render(cli.format));
            if cli.format == OutputFormat::Machine {
                println!();
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            match cli.format {
                OutputFormat::Text => eprintln!("error: {e}"),
                OutputFormat::Machine => println!(
                    "{}",
                    serde_json::to_string_pretty(&e.doc(cli.command.name())).expect("json")
                ),
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
