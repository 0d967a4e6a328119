//! The three intensification neighborhoods and the perturbation move.
//!
//! ```bash
//! cargo run -p pils --example neighborhoods
//! ```

use pils::neighborhoods::{perturb, perturb_at, shuffle_order};
use pils::{NeighborhoodKind, Permutation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run() -> pils::Result<()> {
    let base = Permutation::identity(4);
    for kind in NeighborhoodKind::ALL {
        let neighbors = kind.neighbors(&base);
        let shown: Vec<String> = neighbors.iter().map(|p| format!("({p})")).collect();
        println!("{kind:?} of ({base}): {} neighbors", neighbors.len());
        println!("  {}", shown.join(" "));
    }

    for n in [10, 20, 50, 100] {
        println!("n = {n:>3}: {} neighbors per neighborhood", NeighborhoodKind::Exchange.size(n));
    }

    let seq = Permutation::identity(8);
    println!("block reversal at 2: ({})", perturb_at(&seq, 2)?);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..3 {
        println!("random perturbation: ({})", perturb(&seq, &mut rng));
    }
    println!("random neighborhood order: {:?}", shuffle_order(&mut rng).kinds());
    Ok(())
}

#[allow(dead_code)]
fn main() -> pils::Result<()> {
    run()
}
