use std::io::{self, BufRead};
use std::process::ExitCode;

use clap::Parser;
use serde_json::Value;

mod args;
mod commands;

use args::{Cli, Command};

/// How a run ended, mapped onto the exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A search came back empty or a check found violations.
    Negative,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let compact = cli.jsonl;
    if let Command::Batch { file } = &cli.command {
        return batch(file.as_deref());
    }
    let (code, out) = execute(cli);
    if let Some(v) = out {
        emit(&v, compact);
    }
    ExitCode::from(code)
}

fn emit(v: &Value, compact: bool) {
    if compact {
        println!("{v}");
    } else {
        println!("{}", serde_json::to_string_pretty(v).expect("values serialize"));
    }
}

/// Runs a parsed command line, returning the exit code and the JSON to print.
fn execute(cli: Cli) -> (u8, Option<Value>) {
    match commands::run(cli) {
        Ok((Status::Ok, v)) => (0, Some(v)),
        Ok((Status::Negative, v)) => (1, Some(v)),
        Err(e) => match e.downcast_ref::<ramsey_rings::Error>() {
            Some(err @ (ramsey_rings::Error::NotFound { .. }
            | ramsey_rings::Error::InsufficientBlocks { .. }
            | ramsey_rings::Error::SourceTooShort { .. })) => {
                eprintln!("ramsey-rings: {err}");
                (1, Some(commands::not_found_json(err)))
            }
            _ => {
                eprintln!("ramsey-rings: {e:#}");
                (2, None)
            }
        },
    }
}

/// One command line per input line; each result becomes one JSON line.
fn batch(file: Option<&std::path::Path>) -> ExitCode {
    let reader: Box<dyn BufRead> = match file {
        Some(p) => match std::fs::File::open(p) {
            Ok(f) => Box::new(io::BufReader::new(f)),
            Err(e) => {
                eprintln!("ramsey-rings: {}: {e}", p.display());
                return ExitCode::from(2);
            }
        },
        None => Box::new(io::stdin().lock()),
    };
    let mut worst = 0;
    for line in reader.lines() {
        let line = match line {
            Ok(l) => l,
            Err(e) => {
                eprintln!("ramsey-rings: {e}");
                return ExitCode::from(2);
            }
        };
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some(words) = args::split_words(line) else {
            eprintln!("ramsey-rings: unbalanced quotes in {line:?}");
            worst = 2;
            continue;
        };
        let argv = std::iter::once("ramsey-rings".to_string()).chain(words);
        let (code, out) = match Cli::try_parse_from(argv) {
            Ok(cli) if matches!(cli.command, Command::Batch { .. }) => {
                eprintln!("ramsey-rings: nested batch is not allowed");
                (2, None)
            }
            Ok(cli) => execute(cli),
            Err(e) => {
                eprintln!("ramsey-rings: {line}: {}", e.kind());
                (2, None)
            }
        };
        worst = worst.max(code);
        println!("{}", serde_json::json!({ "command": line, "exit": code, "output": out }));
    }
    ExitCode::from(worst)
}
