//! `qfmgeom`: run feature-map geometry experiments from a JSON config.
//!
//! Exit status: 0 on success, 1 on validation errors, 2 on numerical
//! failures. Every failed job prints one machine-parsable line to stderr:
//! `error job=<name> code=<CODE> message=<...>`.

mod config;
mod jobs;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::config::{Failure, Overrides};

#[derive(Parser)]
#[command(name = "qfmgeom", version, about = "Riemannian geometry of quantum feature maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the jobs listed in a JSON experiment configuration.
    Run {
        /// Path to the experiment config.
        config: PathBuf,
        /// Override the series truncation order (0..=12).
        #[arg(long)]
        order: Option<usize>,
        /// Override the frame strategy: coordinate | lie-basis.
        #[arg(long)]
        frame: Option<String>,
        /// Override the worker-thread count for grid sweeps.
        #[arg(long)]
        workers: Option<usize>,
        /// Override the output directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { config, order, frame, workers, out } => {
            run(config, Overrides { order, frame, workers, out })
        }
    }
}

fn run(config_path: PathBuf, overrides: Overrides) -> ExitCode {
    let experiment = match config::load(&config_path, overrides) {
        Ok(e) => e,
        Err(failure) => {
            report_failure("config", &failure);
            return ExitCode::from(failure.exit_code());
        }
    };

    if let Some(workers) = experiment.workers {
        if let Err(e) =
            rayon::ThreadPoolBuilder::new().num_threads(workers).build_global()
        {
            report_failure("config", &Failure::Validation(format!("worker pool: {e}")));
            return ExitCode::from(1);
        }
    }
    if let Err(e) = std::fs::create_dir_all(&experiment.out_dir) {
        report_failure("config", &Failure::Io(format!("creating output directory: {e}")));
        return ExitCode::from(2);
    }

    let mut worst: u8 = 0;
    for job in &experiment.jobs {
        println!("[{}]", job.name());
        match job.run(&experiment) {
            Ok(lines) => {
                for line in lines {
                    println!("  {line}");
                }
            }
            Err(failure) => {
                report_failure(job.name(), &failure);
                worst = worst.max(failure.exit_code());
            }
        }
    }
    ExitCode::from(worst)
}

fn report_failure(job: &str, failure: &Failure) {
    eprintln!("error job={job} code={} message={}", failure.code(), failure.message());
}
