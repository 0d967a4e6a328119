//! Stream objective vectors through the archive and watch dominated points
//! being evicted.
//!
//! ```bash
//! cargo run -p pils --example pareto_archive
//! ```

use pils::{dominates, ObjectiveVector, ParetoArchive};

pub fn run() -> pils::Result<()> {
    println!("(3,5) dominates (3,6): {}", dominates(&[3, 5], &[3, 6])?);
    println!("(3,5) dominates (4,4): {}", dominates(&[3, 5], &[4, 4])?);

    let stream = [(9, 0), (7, 3), (9, 1), (8, 0), (6, 6), (5, 9), (6, 5)];
    let mut archive: ParetoArchive<usize> = ParetoArchive::new();
    for (id, (c, t)) in stream.into_iter().enumerate() {
        let inserted = archive.update(id, ObjectiveVector::from([c, t]));
        let now: Vec<String> = archive
            .objectives()
            .map(|o| format!("({},{})", o[0], o[1]))
            .collect();
        println!("offer ({c},{t}) -> {:<5} archive {}", inserted, now.join(" "));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> pils::Result<()> {
    run()
}
