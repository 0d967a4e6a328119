//! Unbounded archive of mutually non-dominated solutions.

use std::fmt::Write as _;

use rand::Rng;

use crate::error::{Error, Result};
use crate::problem::{ObjectiveVector, Permutation};

/// Pareto dominance under minimization: `a` is nowhere worse than `b` and
/// strictly better somewhere.
pub fn dominates<T: PartialOrd>(a: &[T], b: &[T]) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    Ok(dominates_unchecked(a, b))
}

#[inline]
pub(crate) fn dominates_unchecked<T: PartialOrd>(a: &[T], b: &[T]) -> bool {
    debug_assert_eq!(a.len(), b.len());
    let mut strict = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        strict |= x < y;
    }
    strict
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArchiveEntry<S = Permutation> {
    pub solution: S,
    pub objectives: ObjectiveVector,
    /// Set once every neighborhood of this solution has been explored.
    pub investigated: bool,
}

/// Keeps every non-dominated point offered to it. Distinct solutions with
/// equal objective vectors are all kept; re-offering a stored solution is a
/// no-op.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParetoArchive<S = Permutation> {
    entries: Vec<ArchiveEntry<S>>,
}

impl<S> Default for ParetoArchive<S> {
    fn default() -> Self {
        ParetoArchive { entries: Vec::new() }
    }
}

impl<S> ParetoArchive<S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[ArchiveEntry<S>] {
        &self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ArchiveEntry<S>> {
        self.entries.iter()
    }

    /// Objective vectors currently stored, in archive order.
    pub fn objectives(&self) -> impl Iterator<Item = &ObjectiveVector> {
        self.entries.iter().map(|e| &e.objectives)
    }

    /// Offers a solution. Returns `true` if it was inserted, in which case
    /// every entry it dominates has been removed.
    pub fn update(&mut self, solution: S, objectives: ObjectiveVector) -> bool
    where
        S: PartialEq,
    {
        if !self.admits(&objectives, |s| *s == solution) {
            return false;
        }
        self.insert(solution, objectives);
        true
    }

    /// Whether a candidate would be kept. `same` identifies an already-stored
    /// copy of it.
    fn admits(&self, objectives: &ObjectiveVector, same: impl Fn(&S) -> bool) -> bool {
        !self.entries.iter().any(|e| {
            dominates_unchecked(e.objectives.values(), objectives.values())
                || (e.objectives == *objectives && same(&e.solution))
        })
    }

    fn insert(&mut self, solution: S, objectives: ObjectiveVector) {
        self.entries
            .retain(|e| !dominates_unchecked(objectives.values(), e.objectives.values()));
        self.entries.push(ArchiveEntry {
            solution,
            objectives,
            investigated: false,
        });
    }

    pub fn position(&self, solution: &S) -> Option<usize>
    where
        S: PartialEq,
    {
        self.entries.iter().position(|e| e.solution == *solution)
    }

    pub fn contains(&self, solution: &S) -> bool
    where
        S: PartialEq,
    {
        self.position(solution).is_some()
    }

    /// Flags a stored solution as investigated. Returns `false` if it is not
    /// in the archive.
    pub fn mark_investigated(&mut self, solution: &S) -> bool
    where
        S: PartialEq,
    {
        match self.position(solution) {
            Some(i) => {
                self.entries[i].investigated = true;
                true
            }
            None => false,
        }
    }

    pub fn has_uninvestigated(&self) -> bool {
        self.entries.iter().any(|e| !e.investigated)
    }

    /// Uniformly random entry whose neighborhoods are still unexplored.
    pub fn select_uninvestigated<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<&ArchiveEntry<S>> {
        let pending = self.entries.iter().filter(|e| !e.investigated).count();
        if pending == 0 {
            return None;
        }
        let pick = rng.random_range(0..pending);
        self.entries.iter().filter(|e| !e.investigated).nth(pick)
    }

    /// Uniformly random entry, flags ignored.
    pub fn select_any<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<&ArchiveEntry<S>> {
        if self.entries.is_empty() {
            return Err(Error::EmptyArchive);
        }
        Ok(&self.entries[rng.random_range(0..self.entries.len())])
    }
}

impl ParetoArchive<Permutation> {
    /// [`ParetoArchive::update`] without materializing rejected candidates.
    pub(crate) fn offer_seq(&mut self, objectives: &ObjectiveVector, seq: &[usize]) -> bool {
        if !self.admits(objectives, |p| p.as_slice() == seq) {
            return false;
        }
        self.insert(Permutation::from_vec_unchecked(seq.to_vec()), objectives.clone());
        true
    }

    /// Copy of the stored points, sorted by objectives then permutation.
    pub fn snapshot(&self) -> Vec<FrontEntry> {
        let mut front: Vec<FrontEntry> = self
            .entries
            .iter()
            .map(|e| FrontEntry {
                objectives: e.objectives.clone(),
                permutation: e.solution.clone(),
            })
            .collect();
        front.sort();
        front
    }
}

impl<'a, S> IntoIterator for &'a ParetoArchive<S> {
    type Item = &'a ArchiveEntry<S>;
    type IntoIter = std::slice::Iter<'a, ArchiveEntry<S>>;

    fn into_iter(self) -> Self::IntoIter {
        self.entries.iter()
    }
}

/// One exported front point with its witness schedule.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FrontEntry {
    pub objectives: ObjectiveVector,
    pub permutation: Permutation,
}

/// One line per point: objective values, then the permutation, tab separated.
/// Callers pass entries already sorted (see [`ParetoArchive::snapshot`]).
pub fn export_front(front: &[FrontEntry]) -> String {
    let mut out = String::new();
    for e in front {
        writeln!(out, "{}\t{}", e.objectives, e.permutation).unwrap();
    }
    out
}

/// Inverse of [`export_front`]. `first_line` is the line number of the first
/// line of `text` within its file, for error messages.
pub fn parse_front_export(text: &str, first_line: usize) -> Result<Vec<FrontEntry>> {
    let mut front = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = first_line + idx;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() < 2 {
            return Err(Error::parse(lineno, "expected objective values and a permutation"));
        }
        let (objs, perm) = fields.split_at(fields.len() - 1);
        let objectives = objs
            .iter()
            .map(|t| t.trim().parse::<u64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| Error::parse(lineno, format!("bad objective value: {e}")))?;
        let jobs = perm[0]
            .split_whitespace()
            .map(str::parse::<usize>)
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| Error::parse(lineno, format!("bad job number: {e}")))?;
        let permutation = Permutation::from_one_based(&jobs).map_err(|e| Error::parse(lineno, e.to_string()))?;
        front.push(FrontEntry {
            objectives: ObjectiveVector::new(objectives),
            permutation,
        });
    }
    Ok(front)
}
