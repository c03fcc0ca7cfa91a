use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use pairstab_cli::corpus::{load_corpus, run_corpus, summarize};
use pairstab_cli::{run_job, RunOptions, JOB_SCHEMA};

/// Runs a JSON job document and prints the JSON report.
#[derive(Debug, Parser)]
#[command(name = "pairstab", version)]
struct Args {
    /// Job document; `-` or absent reads standard input.
    input: Option<PathBuf>,
    /// Step budget for exact computations, overriding the document.
    #[arg(long)]
    budget: Option<u64>,
    /// Seed for sampling jobs, overriding the document.
    #[arg(long)]
    seed: Option<u64>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include wall-clock time in the report.
    #[arg(long)]
    timing: bool,
    /// Run every entry of a golden corpus directory instead of one job.
    #[arg(long, conflicts_with = "input")]
    corpus: Option<PathBuf>,
    /// Print the job document schema and exit.
    #[arg(long)]
    schema: bool,
}

fn read_input(path: Option<&PathBuf>) -> std::io::Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn code(c: i32) -> ExitCode {
    ExitCode::from(c as u8)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let opts = RunOptions {
        budget: args.budget,
        seed: args.seed,
        timing: args.timing,
    };
    if args.schema {
        print!("{JOB_SCHEMA}");
        return code(0);
    }
    if let Some(dir) = &args.corpus {
        let entries = match load_corpus(dir) {
            Ok(e) => e,
            Err(e) => {
                eprintln!("error: {e}");
                return code(e.exit_code());
            }
        };
        let outcomes = run_corpus(&entries, &opts);
        for o in &outcomes {
            let status = if o.passed { "PASS" } else { "FAIL" };
            match &o.detail {
                Some(d) => println!("{status} {} {}: {d}", o.criterion, o.id),
                None => println!("{status} {} {}", o.criterion, o.id),
            }
        }
        let mut all = true;
        for (criterion, passed, total) in summarize(&outcomes) {
            let status = if passed == total { "PASS" } else { "FAIL" };
            all &= passed == total;
            println!("{criterion}: {status} ({passed}/{total})");
        }
        return code(if all { 0 } else { 1 });
    }
    let text = match read_input(args.input.as_ref()) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read input: {e}");
            return code(2);
        }
    };
    let report = run_job(&text, &opts);
    let out = report.to_pretty();
    match &args.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &out) {
                eprintln!("error: cannot write {}: {e}", p.display());
                return code(2);
            }
        }
        None => print!("{out}"),
    }
    code(report.exit_code)
}
