//! Parse a Taillard instance, attach due dates and evaluate a few schedules.
//!
//! ```bash
//! cargo run -p pils --example evaluate_schedule
//! ```

use pils::problem::{assign_due_dates, completion_matrix, parse_taillard, DueDateSource};
use pils::{Evaluator, Permutation};

// 4 jobs on 3 machines, one row per machine.
const INSTANCE: &str = "\
number of jobs, number of machines, initial seed, upper bound and lower bound :
           4           3           0           0           0
processing times :
 5 3 6 2
 4 7 1 5
 3 2 8 4
";

pub fn run() -> pils::Result<()> {
    let inst = parse_taillard(INSTANCE)?.with_name("demo4x3");
    let inst = assign_due_dates(inst, &DueDateSource::Tightness(0.8))?;
    println!("{}: {} jobs x {} machines", inst.name(), inst.jobs(), inst.machines());
    println!("due dates: {:?}", inst.due_dates());

    let identity = Permutation::identity(inst.jobs());
    println!("completion times under {identity}:");
    for row in completion_matrix(&inst, &identity)? {
        println!("  {row:?}");
    }

    let mut eval = Evaluator::new(&inst);
    for seq in [[1, 2, 3, 4], [4, 3, 2, 1], [2, 4, 1, 3]] {
        let perm = Permutation::from_one_based(&seq)?;
        let obj = eval.evaluate(&perm)?;
        println!("{perm}\tC_max={}\tT_sum={}", obj[0], obj[1]);
    }
    println!("{} evaluations", eval.evaluations());
    Ok(())
}

#[allow(dead_code)]
fn main() -> pils::Result<()> {
    run()
}
