//! Batch experiment runner.
//!
//! `discordant run <spec.json> [--threads N] [--out DIR]` reads one JSON
//! experiment spec, dispatches to the library, and writes CSV tables and
//! JSON certificates under the spec's output prefix. Exit codes: 0 on
//! success, 2 when the run completed but an assertion-style check failed
//! (a bound violated, a witness that does not verify, an inconsistent
//! cross-tab), 1 on parse/validation/IO errors.

mod runner;
mod spec;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "discordant",
    about = "Density and largeness experiments for subsets of countable semigroups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment spec.
    Run {
        /// Path to the JSON experiment spec.
        spec: PathBuf,
        /// Worker threads (default: DISCORDANT_THREADS or all cores).
        #[arg(long)]
        threads: Option<usize>,
        /// Directory that output prefixes are resolved against.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn thread_count(flag: Option<usize>) -> Option<usize> {
    flag.or_else(|| {
        std::env::var("DISCORDANT_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { spec, threads, out } => {
            if let Some(n) = thread_count(threads) {
                if let Err(e) = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global()
                {
                    eprintln!("error: could not configure {n} worker threads: {e}");
                    return ExitCode::from(1);
                }
            }
            run(spec, out)
        }
    }
}

fn run(spec_path: PathBuf, out_dir: Option<PathBuf>) -> ExitCode {
    let text = match std::fs::read_to_string(&spec_path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", spec_path.display());
            return ExitCode::from(1);
        }
    };
    let experiment = match spec::parse_spec(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let prefix = output_prefix(&experiment, out_dir);
    match runner::run_experiment(&experiment, &prefix) {
        Ok(outcome) => {
            for artifact in &outcome.artifacts {
                println!("wrote {}", artifact.display());
            }
            if outcome.checks_passed {
                ExitCode::SUCCESS
            } else {
                eprintln!("one or more checks failed; see the artifacts above");
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

/// The spec's output prefix, defaulting to out/<command>-<timestamp>,
/// resolved under --out when given.
fn output_prefix(experiment: &spec::ExperimentSpec, out_dir: Option<PathBuf>) -> PathBuf {
    let prefix = experiment.output.clone().unwrap_or_else(|| {
        let ts = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        format!("out/{}-{ts}", experiment.command)
    });
    match out_dir {
        Some(dir) => dir.join(prefix),
        None => PathBuf::from(prefix),
    }
}
