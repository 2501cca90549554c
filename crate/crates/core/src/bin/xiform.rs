use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use xiform::verify::{self, RunConfig, Suite};
use xiform::Error;

#[derive(Parser)]
#[command(name = "xiform", version, about = "Exact checks of the Hochschild/polyvector formality chain")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and report.
    Verify {
        #[arg(long, default_value_t = 2)]
        vars: usize,
        #[arg(long, default_value_t = 2)]
        max_weight: i64,
        #[arg(long, default_value_t = 3)]
        max_arity: usize,
        #[arg(long, default_value_t = 3)]
        max_factors: usize,
        #[arg(long, default_value_t = 3)]
        max_word_len: usize,
        #[arg(long, default_value_t = 2)]
        max_coef_deg: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Suite to run (repeatable): hkr, schouten, braces, xi, sigma,
        /// obstruction, cobar, harrison, witt. Default: all.
        #[arg(long = "suite")]
        suites: Vec<Suite>,
        /// Write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let Command::Verify { vars, max_weight, max_arity, max_factors, max_word_len, max_coef_deg, seed, mut suites, json } =
        cli.command;
    if suites.is_empty() {
        suites = Suite::ALL.to_vec();
    }
    suites.dedup();
    let cfg = RunConfig { vars, max_weight, max_arity, max_factors, max_word_len, max_coef_deg, seed, suites };
    if let Err(e) = cfg.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let reports = match verify::run(&cfg) {
        Ok(r) => r,
        Err(e @ Error::Config(_)) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
        Err(e) => {
            eprintln!("internal error: {e}");
            return ExitCode::from(3);
        }
    };
    print!("{}", verify::summary(&reports));
    if let Some(path) = json {
        if let Err(e) = std::fs::write(&path, verify::report_json(&reports)) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(3);
        }
    }
    if reports.iter().all(|r| r.passed()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
