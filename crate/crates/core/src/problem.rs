//! Permutation flow shop instances and schedule evaluation.
//!
//! Jobs are indexed from zero in memory. Every text format read or written by
//! this crate numbers jobs from one, matching the usual benchmark notation.

use std::fmt;
use std::ops::Index;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Processing time or due date, in integral time units.
pub type Time = u64;

/// A permutation flow shop instance: `n` jobs, each visiting the `m` machines
/// in the same order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    name: String,
    jobs: usize,
    machines: usize,
    /// Job-major: `processing[j * machines + k]` is the time of job `j` on machine `k`.
    processing: Vec<Time>,
    due: Vec<Time>,
}

impl Instance {
    /// Builds an instance from a job-major processing-time matrix and one due date per job.
    pub fn new(name: impl Into<String>, processing: Vec<Vec<Time>>, due: Vec<Time>) -> Result<Self> {
        let jobs = processing.len();
        if jobs == 0 {
            return Err(Error::invalid("instance needs at least one job"));
        }
        let machines = processing[0].len();
        if machines == 0 {
            return Err(Error::invalid("instance needs at least one machine"));
        }
        if let Some(row) = processing.iter().find(|row| row.len() != machines) {
            return Err(Error::DimensionMismatch {
                expected: machines,
                found: row.len(),
            });
        }
        if due.len() != jobs {
            return Err(Error::DimensionMismatch {
                expected: jobs,
                found: due.len(),
            });
        }
        Ok(Instance {
            name: name.into(),
            jobs,
            machines,
            processing: processing.into_iter().flatten().collect(),
            due,
        })
    }

    /// Random instance with processing times drawn uniformly from `1..=99` and
    /// all due dates zero.
    pub fn random(jobs: usize, machines: usize, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let processing = (0..jobs)
            .map(|_| (0..machines).map(|_| rng.random_range(1..=99)).collect())
            .collect();
        Instance::new(format!("rand{jobs}x{machines}s{seed}"), processing, vec![0; jobs])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn jobs(&self) -> usize {
        self.jobs
    }

    pub fn machines(&self) -> usize {
        self.machines
    }

    pub fn processing_time(&self, job: usize, machine: usize) -> Time {
        self.processing[job * self.machines + machine]
    }

    /// Processing times of one job on machines `0..m`.
    pub fn job_row(&self, job: usize) -> &[Time] {
        &self.processing[job * self.machines..(job + 1) * self.machines]
    }

    pub fn due_dates(&self) -> &[Time] {
        &self.due
    }

    fn check(&self, perm: &Permutation) -> Result<()> {
        if perm.len() != self.jobs {
            return Err(Error::DimensionMismatch {
                expected: self.jobs,
                found: perm.len(),
            });
        }
        Ok(())
    }
}

/// A job sequence, shared by every machine.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    /// Validates that `seq` is a bijection on `0..seq.len()`.
    pub fn new(seq: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; seq.len()];
        for &job in &seq {
            match seen.get_mut(job) {
                Some(slot) if !*slot => *slot = true,
                Some(_) => return Err(Error::invalid(format!("job {job} appears twice"))),
                None => return Err(Error::invalid(format!("job {job} out of range"))),
            }
        }
        Ok(Permutation(seq))
    }

    /// Like [`Permutation::new`] but with jobs numbered from one.
    pub fn from_one_based(seq: &[usize]) -> Result<Self> {
        let shifted = seq
            .iter()
            .map(|&j| j.checked_sub(1).ok_or_else(|| Error::invalid("job numbers start at 1")))
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(shifted)
    }

    pub(crate) fn from_vec_unchecked(seq: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(seq.clone()).is_ok());
        Permutation(seq)
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut seq: Vec<usize> = (0..n).collect();
        seq.shuffle(rng);
        Permutation(seq)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }

    pub fn is_valid(seq: &[usize]) -> bool {
        let mut seen = vec![false; seq.len()];
        seq.iter().all(|&j| match seen.get_mut(j) {
            Some(slot) if !*slot => {
                *slot = true;
                true
            }
            _ => false,
        })
    }
}

impl Index<usize> for Permutation {
    type Output = usize;

    fn index(&self, pos: usize) -> &usize {
        &self.0[pos]
    }
}

/// Space separated, jobs numbered from one.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, job) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", job + 1)?;
        }
        Ok(())
    }
}

/// A point in outcome space. For the flow shop this is `(C_max, T_sum)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjectiveVector(SmallVec<[u64; 2]>);

impl ObjectiveVector {
    pub fn new(values: impl IntoIterator<Item = u64>) -> Self {
        ObjectiveVector(values.into_iter().collect())
    }

    pub fn values(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(|&v| v as f64).collect()
    }
}

impl From<[u64; 2]> for ObjectiveVector {
    fn from(v: [u64; 2]) -> Self {
        ObjectiveVector(SmallVec::from_buf(v))
    }
}

impl Index<usize> for ObjectiveVector {
    type Output = u64;

    fn index(&self, i: usize) -> &u64 {
        &self.0[i]
    }
}

/// Tab separated.
impl fmt::Display for ObjectiveVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("\t")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Semi-active completion times: entry `[pos][k]` is when the job at sequence
/// position `pos` finishes on machine `k`.
pub fn completion_matrix(inst: &Instance, perm: &Permutation) -> Result<Vec<Vec<Time>>> {
    inst.check(perm)?;
    let m = inst.machines();
    let mut rows: Vec<Vec<Time>> = Vec::with_capacity(perm.len());
    for (pos, &job) in perm.as_slice().iter().enumerate() {
        let mut row = Vec::with_capacity(m);
        for k in 0..m {
            let above = if pos > 0 { rows[pos - 1][k] } else { 0 };
            let left = if k > 0 { row[k - 1] } else { 0 };
            row.push(above.max(left) + inst.processing_time(job, k));
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Counts every schedule it evaluates. One evaluator belongs to one run.
#[derive(Clone, Debug)]
pub struct Evaluator<'a> {
    instance: &'a Instance,
    count: u64,
    front: Vec<Time>,
}

impl<'a> Evaluator<'a> {
    pub fn new(instance: &'a Instance) -> Self {
        Evaluator {
            instance,
            count: 0,
            front: vec![0; instance.machines()],
        }
    }

    pub fn instance(&self) -> &'a Instance {
        self.instance
    }

    /// Number of evaluations performed so far.
    pub fn evaluations(&self) -> u64 {
        self.count
    }

    /// `(C_max, T_sum)` of the schedule; costs one evaluation.
    pub fn evaluate(&mut self, perm: &Permutation) -> Result<ObjectiveVector> {
        self.instance.check(perm)?;
        Ok(self.evaluate_seq(perm.as_slice()))
    }

    pub(crate) fn evaluate_seq(&mut self, seq: &[usize]) -> ObjectiveVector {
        debug_assert_eq!(seq.len(), self.instance.jobs());
        self.count += 1;
        self.front.iter_mut().for_each(|c| *c = 0);
        let due = self.instance.due_dates();
        let mut makespan = 0;
        let mut tardiness = 0;
        for &job in seq {
            let mut done = 0;
            for (slot, &p) in self.front.iter_mut().zip(self.instance.job_row(job)) {
                done = done.max(*slot) + p;
                *slot = done;
            }
            makespan = makespan.max(done);
            tardiness += done.saturating_sub(due[job]);
        }
        ObjectiveVector::from([makespan, tardiness])
    }
}

/// Where due dates come from.
#[derive(Clone, Debug, PartialEq)]
pub enum DueDateSource {
    /// One value per job, in job order.
    Values(Vec<Time>),
    /// `d_j = round(tightness * C_j)` where `C_j` is job `j`'s completion time
    /// when jobs run in index order. Tightness must lie in `(0, 1]`.
    Tightness(f64),
}

pub fn assign_due_dates(mut inst: Instance, source: &DueDateSource) -> Result<Instance> {
    match source {
        DueDateSource::Values(values) => {
            if values.len() != inst.jobs() {
                return Err(Error::DimensionMismatch {
                    expected: inst.jobs(),
                    found: values.len(),
                });
            }
            inst.due = values.clone();
        }
        &DueDateSource::Tightness(tau) => {
            if !(tau > 0.0 && tau <= 1.0) {
                return Err(Error::invalid(format!("due-date tightness {tau} not in (0, 1]")));
            }
            let matrix = completion_matrix(&inst, &Permutation::identity(inst.jobs()))?;
            let last = inst.machines() - 1;
            // Under the identity sequence, position j holds job j.
            inst.due = matrix
                .iter()
                .map(|row| (tau * row[last] as f64).round() as Time)
                .collect();
        }
    }
    Ok(inst)
}

/// Whitespace-separated non-negative integers, one per job.
pub fn parse_due_dates(text: &str) -> Result<Vec<Time>> {
    let mut values = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        for token in line.split_whitespace() {
            let v = token
                .parse::<Time>()
                .map_err(|_| Error::parse(idx + 1, format!("not a due date: {token:?}")))?;
            values.push(v);
        }
    }
    Ok(values)
}

/// Reads a Taillard flow shop instance: a header with `n m` (any further
/// header numbers such as seed and bounds are ignored) followed by the
/// processing times, one row per machine. Lines starting with a letter are
/// labels and are skipped, as are `#` comments. Due dates are left at zero.
pub fn parse_taillard(text: &str) -> Result<Instance> {
    let mut header: Option<(usize, usize)> = None;
    let mut times: Vec<Time> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with(|c: char| c.is_alphabetic()) {
            continue;
        }
        last_line = lineno;
        let numbers = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u64>()
                    .map_err(|_| Error::parse(lineno, format!("not a non-negative integer: {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;

        match header {
            None => {
                if numbers.len() < 2 {
                    return Err(Error::parse(lineno, "header needs job and machine counts"));
                }
                let (n, m) = (numbers[0] as usize, numbers[1] as usize);
                if n == 0 || m == 0 {
                    return Err(Error::parse(lineno, "job and machine counts must be positive"));
                }
                header = Some((n, m));
            }
            Some((n, m)) => {
                if times.len() + numbers.len() > n * m {
                    return Err(Error::parse(
                        lineno,
                        format!("more than {} processing times", n * m),
                    ));
                }
                times.extend(numbers);
            }
        }
    }

    let (n, m) = header.ok_or_else(|| Error::parse(last_line.max(1), "missing header"))?;
    if times.len() != n * m {
        return Err(Error::parse(
            last_line,
            format!("expected {} processing times, found {}", n * m, times.len()),
        ));
    }
    // Input is machine-major.
    let processing = (0..n)
        .map(|j| (0..m).map(|k| times[k * n + j]).collect())
        .collect();
    Instance::new("unnamed", processing, vec![0; n])
}

/// Writes the instance back in Taillard layout (header `n m`, one row per machine).
pub fn write_taillard(inst: &Instance) -> String {
    let mut out = format!("{} {}\n", inst.jobs(), inst.machines());
    for k in 0..inst.machines() {
        let row: Vec<String> = (0..inst.jobs())
            .map(|j| inst.processing_time(j, k).to_string())
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
