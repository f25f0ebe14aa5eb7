use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use char2forms::eval::run_session_text;
use char2forms::examples::{run_example, EXAMPLES};
use char2forms::report::Report;
use char2forms::Options;

const MISMATCH: u8 = 1;
const INPUT_ERROR: u8 = 2;

#[derive(Parser)]
#[command(name = "char2forms", version, about = "Exact checks for quadratic forms over purely inseparable extensions in characteristic 2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a session file.
    Run {
        session: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "degree-bound", default_value_t = 2)]
        degree_bound: u32,
        /// Write the JSON report to this path, or to stdout for `-`.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Record per-check wall-clock time in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Run one built-in example.
    Example {
        name: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run built-in examples.
    Examples {
        /// Run every example; without it the names are listed.
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn emit(report: &Report, json: Option<&PathBuf>) -> Result<(), String> {
    match json {
        Some(p) if p.as_os_str() == "-" => print!("{}", report.to_canonical_json()),
        Some(p) => {
            std::fs::write(p, report.to_canonical_json()).map_err(|e| format!("{}: {e}", p.display()))?;
            print!("{}", report.summary());
        }
        None => print!("{}", report.summary()),
    }
    Ok(())
}

fn status(all_match: bool) -> ExitCode {
    if all_match {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(MISMATCH)
    }
}

fn input_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(INPUT_ERROR)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(INPUT_ERROR) } else { ExitCode::SUCCESS };
        }
    };
    match cli.command {
        Command::Run { session, seed, degree_bound, json, timing } => {
            let text = match std::fs::read_to_string(&session) {
                Ok(t) => t,
                Err(e) => return input_error(format!("{}: {e}", session.display())),
            };
            let name = session.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            let opts = Options { seed, degree_bound, timing };
            match run_session_text(&name, &text, &opts) {
                Ok(report) => match emit(&report, json.as_ref()) {
                    Ok(()) => status(report.all_match()),
                    Err(e) => input_error(e),
                },
                Err(e) => input_error(format!("{}:{e}", session.display())),
            }
        }
        Command::Example { name, seed, json } => {
            let opts = Options { seed, ..Options::default() };
            match run_example(&name, &opts) {
                Some(report) => match emit(&report, json.as_ref()) {
                    Ok(()) => status(report.all_match()),
                    Err(e) => input_error(e),
                },
                None => input_error(format!("unknown example `{name}`; expected one of {}", EXAMPLES.join(", "))),
            }
        }
        Command::Examples { all, seed } => {
            if !all {
                for name in EXAMPLES {
                    println!("{name}");
                }
                return ExitCode::SUCCESS;
            }
            let opts = Options { seed, ..Options::default() };
            let mut ok = true;
            for name in EXAMPLES {
                let report = run_example(name, &opts).expect("listed example");
                print!("{}", report.summary());
                ok &= report.all_match();
            }
            status(ok)
        }
    }
}
