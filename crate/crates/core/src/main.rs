use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use pils::cli::{self, DueDateSpec, ExperimentSpec};
use pils::Algorithm;

#[derive(Parser)]
#[command(name = "pils", about = "Bi-objective permutation flow shop experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InstanceArgs {
    /// Taillard-format instance file.
    #[arg(long)]
    instance: PathBuf,
    /// Due dates, one integer per job.
    #[arg(long, conflicts_with = "tau")]
    due_dates: Option<PathBuf>,
    /// Generate due dates as round(tau * completion time under the identity sequence).
    #[arg(long)]
    tau: Option<f64>,
}

impl InstanceArgs {
    fn due(&self) -> Option<DueDateSpec> {
        match (&self.due_dates, self.tau) {
            (Some(p), _) => Some(DueDateSpec::File(p.clone())),
            (None, Some(t)) => Some(DueDateSpec::Tightness(t)),
            (None, None) => None,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Seeded batches of PILS, MOS and/or random sampling with D1/D2 summary.
    Solve {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, value_delimiter = ',', default_value = "pils,mos")]
        algo: Vec<Algorithm>,
        #[arg(long, default_value_t = 10)]
        runs: usize,
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Reference front; pooled from all runs when absent.
        #[arg(long)]
        reference: Option<PathBuf>,
        /// Record the first descent and all local optima in the run files.
        #[arg(long)]
        trace: bool,
    },
    /// Exact front by enumerating all permutations (at most 10 jobs).
    Oracle {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// D1 and D2 of an approximation against a reference front.
    Metrics {
        #[arg(long)]
        reference: PathBuf,
        #[arg(long)]
        approx: PathBuf,
    },
    /// Evaluations needed to reach a local optimum from random starts.
    Descent {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, default_value_t = 100)]
        repetitions: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Objective vectors of uniformly random schedules.
    Sample {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, default_value_t = 50_000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(command: Command) -> pils::Result<()> {
    match command {
        Command::Solve {
            instance,
            algo,
            runs,
            budget,
            seed,
            out,
            reference,
            trace,
        } => {
            let summary = cli::cmd_solve(&ExperimentSpec {
                due_dates: instance.due(),
                instance: instance.instance,
                algorithms: algo,
                runs,
                budget,
                seed,
                out,
                reference,
                trace,
            })?;
            print!("{summary}");
        }
        Command::Oracle { instance, out } => {
            let front = cli::cmd_oracle(&instance.instance, instance.due().as_ref(), &out)?;
            println!("{} efficient points written to {}", front.len(), out.display());
        }
        Command::Metrics { reference, approx } => {
            let (_, line) = cli::cmd_metrics(&reference, &approx)?;
            println!("{line}");
        }
        Command::Descent {
            instance,
            repetitions,
            seed,
            out,
        } => {
            let table = cli::cmd_descent(&instance.instance, instance.due().as_ref(), repetitions, seed, &out)?;
            println!("{}\t{}\t{:.2}", table.instance, table.jobs, table.mean());
        }
        Command::Sample {
            instance,
            count,
            seed,
            out,
        } => {
            let rows = cli::cmd_sample(&instance.instance, instance.due().as_ref(), count, seed, &out)?;
            println!("{rows} samples written to {}", out.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::exit_code(&e) as u8)
        }
    }
}
