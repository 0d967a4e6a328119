//! Average number of evaluations from a random schedule to a local optimum
//! of all three neighborhoods, for growing job counts.
//!
//! ```bash
//! cargo run --release -p pils --example descent_lengths
//! ```

use pils::problem::{assign_due_dates, DueDateSource};
use pils::{descent_stats, Instance};

pub fn run_with(sizes: &[(usize, usize, usize)]) -> pils::Result<()> {
    println!("instance\tjobs\tmean evaluations");
    for &(n, m, reps) in sizes {
        let inst = assign_due_dates(Instance::random(n, m, 7)?, &DueDateSource::Tightness(0.6))?;
        let counts = descent_stats(&inst, reps, 0)?;
        let mean = counts.iter().sum::<u64>() as f64 / counts.len() as f64;
        println!("{}x{}\t{}\t{:.1}", n, m, n, mean);
    }
    Ok(())
}

pub fn run() -> pils::Result<()> {
    run_with(&[(8, 5, 20), (12, 5, 20)])
}

#[allow(dead_code)]
fn main() -> pils::Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    if args.len() == 3 {
        return run_with(&[(args[0], args[1], args[2])]);
    }
    run_with(&[(10, 5, 100), (20, 5, 100), (50, 5, 100)])
}
