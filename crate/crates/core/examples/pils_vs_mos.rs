//! Head-to-head of PILS and the multi-operator search on one random
//! instance, scored against the pooled front of all runs.
//!
//! ```bash
//! cargo run --release -p pils --example pils_vs_mos -- 20 5 100000 10
//! ```
//! Arguments: jobs, machines, budget, runs (all optional).

use pils::problem::{assign_due_dates, DueDateSource};
use pils::{d_metrics, mos_run, pils_run, Front, Instance, RunResult, SolverConfig};
use rayon::prelude::*;

pub fn compare(jobs: usize, machines: usize, budget: u64, runs: u64, instance_seed: u64) -> pils::Result<[f64; 4]> {
    let inst = Instance::random(jobs, machines, instance_seed)?;
    let inst = assign_due_dates(inst, &DueDateSource::Tightness(0.6))?;

    let batch = |solver: fn(&Instance, &SolverConfig) -> pils::Result<RunResult>| {
        (0..runs)
            .into_par_iter()
            .map(|seed| solver(&inst, &SolverConfig::new(budget, seed)))
            .collect::<pils::Result<Vec<_>>>()
    };
    let pils = batch(pils_run)?;
    let mos = batch(mos_run)?;

    let reference = Front::from_objectives(pils.iter().chain(&mos).flat_map(|r| r.front.iter().map(|e| &e.objectives)))?;
    let mean = |runs: &[RunResult]| -> pils::Result<(f64, f64)> {
        let mut d = (0.0, 0.0);
        for r in runs {
            let m = d_metrics(&reference, &Front::from_objectives(&r.front_objectives())?)?;
            d.0 += m.d1 / runs.len() as f64;
            d.1 += m.d2 / runs.len() as f64;
        }
        Ok(d)
    };
    let (p1, p2) = mean(&pils)?;
    let (m1, m2) = mean(&mos)?;
    Ok([p1, m1, p2, m2])
}

pub fn run_with(jobs: usize, machines: usize, budget: u64, runs: u64) -> pils::Result<()> {
    println!("instance\tD1 PILS\tD1 MOS\tD2 PILS\tD2 MOS");
    let [p1, m1, p2, m2] = compare(jobs, machines, budget, runs, 1)?;
    println!("{jobs}x{machines}\t{p1:.4}\t{m1:.4}\t{p2:.4}\t{m2:.4}");
    Ok(())
}

pub fn run() -> pils::Result<()> {
    run_with(10, 5, 20_000, 4)
}

#[allow(dead_code)]
fn main() -> pils::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let arg = |i: usize, default: u64| args.get(i).copied().unwrap_or(default);
    run_with(arg(0, 20) as usize, arg(1, 5) as usize, arg(2, 100_000), arg(3, 10))
}
