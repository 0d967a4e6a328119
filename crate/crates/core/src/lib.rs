//! Multi-objective permutation flow shop scheduling with Pareto Iterated
//! Local Search (PILS).
//!
//! Schedules are job permutations evaluated on makespan `C_max` and total
//! tardiness `T_sum`, both minimized. The crate provides
//!
//! - [`problem`]: instances, Taillard input, due dates, counted evaluation;
//! - [`archive`]: the non-dominated archive with per-entry investigation flags;
//! - [`neighborhoods`]: exchange and shift neighborhoods, block-reversal perturbation;
//! - [`solvers`]: PILS, the multi-operator search baseline (MOS), random
//!   sampling and descent-length statistics;
//! - [`metrics`]: D1/D2 quality against a reference front, exact fronts by enumeration;
//! - [`cli`]: the experiment harness used by the `pils` binary.
//!
//! Runnable walkthroughs live in the crate's `examples/` directory.

pub mod archive;
pub mod cli;
pub mod error;
pub mod metrics;
pub mod neighborhoods;
pub mod problem;
pub mod solvers;

pub use archive::{dominates, ArchiveEntry, FrontEntry, ParetoArchive};
pub use error::{Error, Result};
pub use metrics::{brute_force_pareto, d_metrics, Front, MetricReport};
pub use neighborhoods::{NeighborhoodKind, NeighborhoodOrder};
pub use problem::{Evaluator, Instance, ObjectiveVector, Permutation};
pub use solvers::{descent_stats, mos_run, pils_run, random_sample, Algorithm, RunResult, SolverConfig};
