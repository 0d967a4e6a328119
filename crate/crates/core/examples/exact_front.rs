//! Enumerate every schedule of a small instance and check how much of the
//! exact front PILS recovers.
//!
//! ```bash
//! cargo run --release -p pils --example exact_front
//! ```

use pils::problem::{assign_due_dates, DueDateSource};
use pils::{brute_force_pareto, d_metrics, pils_run, Front, Instance, SolverConfig};

pub fn run() -> pils::Result<()> {
    let inst = assign_due_dates(Instance::random(8, 5, 11)?, &DueDateSource::Tightness(0.6))?;
    let exact = brute_force_pareto(&inst)?;
    println!("exact front of {} ({} points):", inst.name(), exact.len());
    for e in &exact {
        println!("  {}\t{}", e.objectives, e.permutation);
    }

    let reference = Front::from_objectives(exact.iter().map(|e| &e.objectives))?;
    for seed in 0..5 {
        let run = pils_run(&inst, &SolverConfig::new(50_000, seed))?;
        let approx = Front::from_objectives(&run.front_objectives())?;
        let m = d_metrics(&reference, &approx)?;
        println!(
            "seed {seed}: {} points, D1 {:.4}, D2 {:.4}, {} descents",
            run.front.len(),
            m.d1,
            m.d2,
            run.descent_lengths.len()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> pils::Result<()> {
    run()
}
