mod args;
mod commands;
mod error;

use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

use args::Cli;
use error::CliError;

fn emit(target: &str, text: &str) -> Result<(), CliError> {
    if target == "-" {
        std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(format!("stdout: {e}")))
    } else {
        std::fs::write(target, text).map_err(|e| CliError::Io(format!("{target}: {e}")))
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn fail(err: &CliError) -> i32 {
    eprintln!("error: {err}");
    print!("{}", pretty(&err.body()));
    err.exit_code()
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = e.print();
                    0
                }
                _ => {
                    let msg = e.to_string();
                    let msg = msg.trim_end().trim_start_matches("error: ");
                    fail(&CliError::Parse(msg.to_string()))
                }
            };
        }
    };
    match commands::run(&cli).and_then(|out| emit(&cli.common.output, &pretty(&out.body))) {
        Ok(()) => 0,
        Err(e) => fail(&e),
    }
}

fn main() {
    std::process::exit(run());
}
