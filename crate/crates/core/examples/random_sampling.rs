//! Plot-ready data comparing random schedules, the first descent of PILS and
//! the final PILS front. Writes three tab-separated files into the given
//! directory (default: the system temp dir).
//!
//! ```bash
//! cargo run --release -p pils --example random_sampling -- /tmp/pils-plots
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use pils::cli::write_atomic;
use pils::problem::{assign_due_dates, DueDateSource};
use pils::{pils_run, random_sample, Instance, SolverConfig};

pub fn run_in(dir: &Path, jobs: usize, samples: usize, budget: u64) -> pils::Result<()> {
    let inst = assign_due_dates(Instance::random(jobs, 10, 3)?, &DueDateSource::Tightness(0.6))?;
    let points = random_sample(&inst, samples, 1)?;
    let run = pils_run(&inst, &SolverConfig::new(budget, 1).with_trace())?;

    let mut scatter = String::new();
    for p in &points {
        writeln!(scatter, "{p}").unwrap();
    }
    let mut descent = String::new();
    for p in run.trajectory.as_deref().unwrap_or_default() {
        writeln!(descent, "{p}").unwrap();
    }
    let mut front = String::new();
    for e in &run.front {
        writeln!(front, "{}", e.objectives).unwrap();
    }

    // Histogram of the sample on a 50 x 50 grid.
    let (lo0, hi0) = bounds(points.iter().map(|p| p[0]));
    let (lo1, hi1) = bounds(points.iter().map(|p| p[1]));
    let bin = |v: u64, lo: u64, hi: u64| ((v - lo) * 49 / (hi - lo).max(1)) as usize;
    let mut grid: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for p in &points {
        *grid.entry((bin(p[0], lo0, hi0), bin(p[1], lo1, hi1))).or_default() += 1;
    }
    let (&(b0, b1), &peak) = grid.iter().max_by_key(|(_, &c)| c).expect("non-empty sample");

    write_atomic(&dir.join("random.txt"), &scatter)?;
    write_atomic(&dir.join("descent.txt"), &descent)?;
    write_atomic(&dir.join("front.txt"), &front)?;
    println!("{} random schedules, C_max in [{lo0}, {hi0}], T_sum in [{lo1}, {hi1}]", points.len());
    println!(
        "densest cell ({peak} schedules) near C_max {}, T_sum {}",
        lo0 + (b0 as u64) * (hi0 - lo0) / 49,
        lo1 + (b1 as u64) * (hi1 - lo1) / 49
    );
    println!("first descent: {} steps; final front: {} points", run.trajectory.map_or(0, |t| t.len()), run.front.len());
    println!("files written to {}", dir.display());
    Ok(())
}

fn bounds(values: impl Iterator<Item = u64>) -> (u64, u64) {
    values.fold((u64::MAX, 0), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

pub fn run() -> pils::Result<()> {
    let dir = std::env::temp_dir().join("pils-random-sampling");
    std::fs::create_dir_all(&dir).map_err(|source| pils::Error::WriteOutput { path: dir.clone(), source })?;
    run_in(&dir, 20, 2_000, 20_000)
}

#[allow(dead_code)]
fn main() -> pils::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("pils-plots"));
    std::fs::create_dir_all(&dir).map_err(|source| pils::Error::WriteOutput { path: dir.clone(), source })?;
    run_in(&dir, 100, 50_000, 1_000_000)
}
