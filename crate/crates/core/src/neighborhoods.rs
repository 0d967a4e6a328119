//! Intensification neighborhoods (exchange, forward shift, backward shift)
//! and the block-reversal perturbation used for diversification.
//!
//! Each intensification neighborhood of a sequence of length `n` holds
//! exactly `n(n-1)/2` moves, enumerated in a fixed canonical order.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::problem::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NeighborhoodKind {
    /// Swap the jobs at two positions.
    Exchange,
    /// Move a job to an earlier position.
    ForwardShift,
    /// Move a job to a later position.
    BackwardShift,
}

impl NeighborhoodKind {
    pub const ALL: [NeighborhoodKind; 3] = [
        NeighborhoodKind::Exchange,
        NeighborhoodKind::ForwardShift,
        NeighborhoodKind::BackwardShift,
    ];

    /// `n(n-1)/2` for every kind.
    pub fn size(self, n: usize) -> usize {
        n * n.saturating_sub(1) / 2
    }

    /// All moves of this kind on a sequence of length `n`, in canonical order.
    pub fn moves(self, n: usize) -> Vec<Move> {
        let mut moves = Vec::with_capacity(self.size(n));
        match self {
            NeighborhoodKind::Exchange => {
                for i in 0..n {
                    for j in i + 1..n {
                        moves.push(Move::Exchange(i, j));
                    }
                }
            }
            NeighborhoodKind::ForwardShift => {
                for from in 1..n {
                    for to in 0..from {
                        moves.push(Move::Shift { from, to });
                    }
                }
            }
            NeighborhoodKind::BackwardShift => {
                for from in 0..n {
                    for to in from + 1..n {
                        moves.push(Move::Shift { from, to });
                    }
                }
            }
        }
        moves
    }

    /// Every neighbor of `perm`, materialized in canonical order.
    pub fn neighbors(self, perm: &Permutation) -> Vec<Permutation> {
        self.moves(perm.len())
            .into_iter()
            .map(|mv| {
                let mut seq = perm.as_slice().to_vec();
                mv.apply(&mut seq);
                Permutation::from_vec_unchecked(seq)
            })
            .collect()
    }
}

pub fn exchange_all(perm: &Permutation) -> Vec<Permutation> {
    NeighborhoodKind::Exchange.neighbors(perm)
}

pub fn forward_shift_all(perm: &Permutation) -> Vec<Permutation> {
    NeighborhoodKind::ForwardShift.neighbors(perm)
}

pub fn backward_shift_all(perm: &Permutation) -> Vec<Permutation> {
    NeighborhoodKind::BackwardShift.neighbors(perm)
}

/// A single neighborhood move on sequence positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    Exchange(usize, usize),
    /// Remove the job at `from` and reinsert it at `to`; the jobs in between
    /// slide by one position.
    Shift { from: usize, to: usize },
}

impl Move {
    pub fn apply(self, seq: &mut [usize]) {
        match self {
            Move::Exchange(i, j) => seq.swap(i, j),
            Move::Shift { from, to } if from > to => seq[to..=from].rotate_right(1),
            Move::Shift { from, to } => seq[from..=to].rotate_left(1),
        }
    }

    pub fn inverse(self) -> Move {
        match self {
            Move::Exchange(i, j) => Move::Exchange(i, j),
            Move::Shift { from, to } => Move::Shift { from: to, to: from },
        }
    }
}

/// The order in which the three neighborhoods are tried during a descent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NeighborhoodOrder([NeighborhoodKind; 3]);

impl NeighborhoodOrder {
    pub fn canonical() -> Self {
        NeighborhoodOrder(NeighborhoodKind::ALL)
    }

    pub fn kinds(&self) -> &[NeighborhoodKind; 3] {
        &self.0
    }

    pub fn get(&self, i: usize) -> NeighborhoodKind {
        self.0[i]
    }
}

impl Default for NeighborhoodOrder {
    fn default() -> Self {
        Self::canonical()
    }
}

/// Uniformly random order of the three neighborhoods.
pub fn shuffle_order<R: Rng + ?Sized>(rng: &mut R) -> NeighborhoodOrder {
    let mut kinds = NeighborhoodKind::ALL;
    kinds.shuffle(rng);
    NeighborhoodOrder(kinds)
}

/// Reverses the four jobs starting at position `start`.
pub fn perturb_at(perm: &Permutation, start: usize) -> Result<Permutation> {
    if start + 4 > perm.len() {
        return Err(Error::invalid(format!(
            "perturbation block at {start} does not fit {} jobs",
            perm.len()
        )));
    }
    let mut seq = perm.as_slice().to_vec();
    seq[start..start + 4].reverse();
    Ok(Permutation::from_vec_unchecked(seq))
}

/// Reverses a uniformly chosen block of four consecutive jobs. With fewer than
/// four jobs a random pair of positions is exchanged instead, and a single job
/// is left as is.
pub fn perturb<R: Rng + ?Sized>(perm: &Permutation, rng: &mut R) -> Permutation {
    let mut seq = perm.as_slice().to_vec();
    perturb_in_place(&mut seq, rng);
    Permutation::from_vec_unchecked(seq)
}

pub(crate) fn perturb_in_place<R: Rng + ?Sized>(seq: &mut [usize], rng: &mut R) {
    let n = seq.len();
    if n >= 4 {
        let start = rng.random_range(0..=n - 4);
        seq[start..start + 4].reverse();
    } else if n >= 2 {
        let i = rng.random_range(0..n);
        let j = (i + rng.random_range(1..n)) % n;
        seq.swap(i, j);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::{HashMap, HashSet};

    fn p(seq: &[usize]) -> Permutation {
        Permutation::from_one_based(seq).unwrap()
    }

    #[test]
    fn exchange_examples() {
        assert_eq!(exchange_all(&p(&[1, 2])), vec![p(&[2, 1])]);
        assert_eq!(
            exchange_all(&p(&[1, 2, 3])),
            vec![p(&[2, 1, 3]), p(&[3, 2, 1]), p(&[1, 3, 2])]
        );
        assert_eq!(exchange_all(&Permutation::identity(20)).len(), 190);
        assert!(exchange_all(&p(&[1])).is_empty());
    }

    #[test]
    fn shift_examples() {
        let base = p(&[1, 2, 3, 4]);
        let fwd = forward_shift_all(&base);
        assert!(fwd.contains(&p(&[4, 1, 2, 3])));
        let mut seq = base.as_slice().to_vec();
        Move::Shift { from: 3, to: 0 }.apply(&mut seq);
        assert_eq!(seq, p(&[4, 1, 2, 3]).into_inner());

        let bwd = backward_shift_all(&base);
        assert!(bwd.contains(&p(&[2, 3, 4, 1])));
        let mut seq = base.as_slice().to_vec();
        Move::Shift { from: 0, to: 3 }.apply(&mut seq);
        assert_eq!(seq, p(&[2, 3, 4, 1]).into_inner());

        assert_eq!(forward_shift_all(&p(&[1, 2])), vec![p(&[2, 1])]);
        assert_eq!(backward_shift_all(&p(&[1, 2])), vec![p(&[2, 1])]);
        assert_eq!(forward_shift_all(&Permutation::identity(20)).len(), 190);
        assert_eq!(backward_shift_all(&Permutation::identity(20)).len(), 190);
    }

    #[test]
    fn shifts_tile_all_insertions() {
        // Both directions together give n(n-1) moves, each a distinct insertion.
        let n = 7;
        let all: Vec<Move> = NeighborhoodKind::ForwardShift
            .moves(n)
            .into_iter()
            .chain(NeighborhoodKind::BackwardShift.moves(n))
            .collect();
        assert_eq!(all.len(), n * (n - 1));
        let pairs: HashSet<(usize, usize)> = all
            .iter()
            .map(|m| match *m {
                Move::Shift { from, to } => (from, to),
                Move::Exchange(..) => unreachable!(),
            })
            .collect();
        assert_eq!(pairs.len(), n * (n - 1));
    }

    #[test]
    fn move_inverse_restores() {
        let base: Vec<usize> = (0..6).collect();
        for kind in NeighborhoodKind::ALL {
            for mv in kind.moves(6) {
                let mut seq = base.clone();
                mv.apply(&mut seq);
                assert_ne!(seq, base);
                mv.inverse().apply(&mut seq);
                assert_eq!(seq, base);
            }
        }
    }

    #[test]
    fn perturb_examples() {
        assert_eq!(perturb_at(&p(&[1, 2, 3, 4, 5]), 0).unwrap(), p(&[4, 3, 2, 1, 5]));
        assert_eq!(perturb_at(&p(&[1, 2, 3, 4]), 0).unwrap(), p(&[4, 3, 2, 1]));
        assert!(perturb_at(&p(&[1, 2, 3, 4]), 1).is_err());
        let twice = perturb_at(&perturb_at(&p(&[1, 2, 3, 4, 5, 6]), 2).unwrap(), 2).unwrap();
        assert_eq!(twice, p(&[1, 2, 3, 4, 5, 6]));
    }

    #[test]
    fn perturb_fallbacks() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..4 {
            for _ in 0..20 {
                let base = Permutation::identity(n);
                let out = perturb(&base, &mut rng);
                assert!(Permutation::is_valid(out.as_slice()));
                let changed = (0..n).filter(|&i| out[i] != base[i]).count();
                assert_eq!(changed, if n == 1 { 0 } else { 2 });
            }
        }
    }

    #[test]
    fn perturb_changes_exactly_one_block() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let base = Permutation::identity(12);
        let mut starts = HashSet::new();
        for _ in 0..500 {
            let out = perturb(&base, &mut rng);
            let diff: Vec<usize> = (0..12).filter(|&i| out[i] != base[i]).collect();
            assert_eq!(diff.len(), 4);
            assert_eq!(diff[3] - diff[0], 3);
            starts.insert(diff[0]);
        }
        assert_eq!(starts.len(), 9);
    }

    #[test]
    fn shuffle_order_is_uniform_and_replayable() {
        let mut a = ChaCha8Rng::seed_from_u64(3);
        let mut b = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            assert_eq!(shuffle_order(&mut a), shuffle_order(&mut b));
        }

        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut counts: HashMap<NeighborhoodOrder, usize> = HashMap::new();
        for _ in 0..6000 {
            let order = shuffle_order(&mut rng);
            let distinct: HashSet<_> = order.kinds().iter().collect();
            assert_eq!(distinct.len(), 3);
            *counts.entry(order).or_default() += 1;
        }
        assert_eq!(counts.len(), 6);
        for (order, c) in counts {
            let freq = c as f64 / 6000.0;
            assert!((freq - 1.0 / 6.0).abs() <= 0.03, "{order:?} at {freq}");
        }
    }
}
