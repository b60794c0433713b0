//! `tiltbg`: exact tilt-stability computations from the command line.
//!
//! Exit codes: 0 success, 1 violation or counterexample (or nothing to
//! plot), 2 input error, 3 inconclusive certification.

mod args;
mod commands;

use std::io::Write as _;
use std::process::ExitCode;

use clap::Parser;
use tiltbg::Error;

use args::{Cli, Command, Format};
use commands::Output;

const EXIT_VIOLATION: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_INPUT) } else { ExitCode::SUCCESS };
        }
    };
    match execute(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("tiltbg: {e}");
            ExitCode::from(match e {
                Error::Inconclusive(_) => EXIT_INCONCLUSIVE,
                Error::EmptyLocus => EXIT_VIOLATION,
                _ => EXIT_INPUT,
            })
        }
    }
}

fn execute(cli: &Cli) -> tiltbg::Result<u8> {
    let is_plot = matches!(cli.command, Command::Plot { .. });
    let format = cli.opts.format.unwrap_or(if is_plot { Format::Svg } else { Format::Text });
    match (is_plot, format) {
        (true, Format::Json | Format::Text) => {
            return Err(Error::Parse("plot output is svg or csv".into()));
        }
        (false, Format::Svg | Format::Csv) => {
            return Err(Error::Parse("svg and csv output are only available for plot".into()));
        }
        _ => {}
    }
    let out = commands::run(&cli.command, &cli.opts)?;
    let mut code = 0;
    let (body, table) = match out {
        Output::Value { text, json } => match format {
            Format::Json => (serde_json::to_string_pretty(&json).expect("serializable"), None),
            _ => (text, None),
        },
        Output::Report(rep) => {
            if rep.verdict.is_failure() {
                code = EXIT_VIOLATION;
            }
            match format {
                Format::Json => (rep.to_json(), None),
                _ => (rep.to_text().trim_end().to_owned(), None),
            }
        }
        Output::Reports(reps) => {
            if reps.iter().any(|r| r.verdict.is_failure()) {
                code = EXIT_VIOLATION;
            }
            let table = commands::summary_table(&reps);
            match format {
                Format::Json => (serde_json::to_string_pretty(&reps).expect("serializable"), Some(table)),
                _ => {
                    let texts: Vec<String> = reps.iter().map(|r| r.to_text()).collect();
                    (format!("{}\n{}", texts.join("\n"), table.trim_end()), None)
                }
            }
        }
        Output::Plot(p) => match format {
            Format::Csv => (p.to_csv()?, None),
            _ => (p.to_svg()?, None),
        },
    };
    write(&body, cli.opts.out.as_deref())?;
    if let Some(t) = table {
        eprint!("{t}");
    }
    Ok(code)
}

fn write(body: &str, out: Option<&str>) -> tiltbg::Result<()> {
    let mut text = body.to_owned();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Parse(format!("cannot write {path}: {e}"))),
        None => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    Err(Error::Parse(format!("cannot write output: {e}")))
                }
                _ => Ok(()),
            }
        }
    }
}
