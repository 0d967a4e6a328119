//! Pareto Iterated Local Search, the multi-operator search baseline, random
//! sampling and descent-length measurement.
//!
//! All solvers share one search state: a counting evaluator, the archive and
//! a seeded ChaCha stream. The first random draw of every run is the initial
//! permutation, so PILS and MOS started with the same seed evaluate the same
//! first schedule.
//!
//! Budget policy: the run stops as soon as the evaluation counter reaches the
//! budget. A neighborhood cut short this way is abandoned (its evaluated
//! members were already offered to the archive, but no move is made), so
//! `evaluations_used <= budget` always holds.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::archive::{dominates_unchecked, export_front, parse_front_export, FrontEntry, ParetoArchive};
use crate::error::{Error, Result};
use crate::neighborhoods::{perturb_in_place, shuffle_order, Move, NeighborhoodKind, NeighborhoodOrder};
use crate::problem::{Evaluator, Instance, ObjectiveVector, Permutation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    /// Maximum number of schedule evaluations, including the initial one.
    pub budget: u64,
    pub seed: u64,
    /// Keep the first descent's trajectory and every certified local optimum.
    pub record_trace: bool,
}

impl SolverConfig {
    pub fn new(budget: u64, seed: u64) -> Self {
        SolverConfig {
            budget,
            seed,
            record_trace: false,
        }
    }

    pub fn with_trace(mut self) -> Self {
        self.record_trace = true;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.budget == 0 {
            return Err(Error::invalid("evaluation budget must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Pils,
    Mos,
    Sample,
}

impl Algorithm {
    pub fn tag(self) -> &'static str {
        match self {
            Algorithm::Pils => "pils",
            Algorithm::Mos => "mos",
            Algorithm::Sample => "sample",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pils" => Ok(Algorithm::Pils),
            "mos" => Ok(Algorithm::Mos),
            "sample" => Ok(Algorithm::Sample),
            other => Err(Error::invalid(format!("unknown algorithm {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunResult {
    pub instance: String,
    pub algorithm: Algorithm,
    pub seed: u64,
    pub budget: u64,
    pub evaluations_used: u64,
    /// Final archive, sorted.
    pub front: Vec<FrontEntry>,
    /// Neighbor evaluations spent in each completed descent.
    pub descent_lengths: Vec<u64>,
    /// Incumbent objective vectors along the first descent.
    pub trajectory: Option<Vec<ObjectiveVector>>,
    /// Every solution at which a descent stopped.
    pub local_optima: Option<Vec<FrontEntry>>,
}

impl RunResult {
    pub fn front_objectives(&self) -> Vec<ObjectiveVector> {
        self.front.iter().map(|e| e.objectives.clone()).collect()
    }
}

enum Explore {
    Exhausted,
    Improved(Move, ObjectiveVector),
    NotImproved,
}

struct Search<'a> {
    eval: Evaluator<'a>,
    archive: ParetoArchive,
    rng: ChaCha8Rng,
    budget: u64,
    moves: [Vec<Move>; 3],
    scratch: Vec<usize>,
}

fn kind_index(kind: NeighborhoodKind) -> usize {
    match kind {
        NeighborhoodKind::Exchange => 0,
        NeighborhoodKind::ForwardShift => 1,
        NeighborhoodKind::BackwardShift => 2,
    }
}

impl<'a> Search<'a> {
    fn new(inst: &'a Instance, budget: u64, rng: ChaCha8Rng) -> Self {
        let n = inst.jobs();
        Search {
            eval: Evaluator::new(inst),
            archive: ParetoArchive::new(),
            rng,
            budget,
            moves: NeighborhoodKind::ALL.map(|k| k.moves(n)),
            scratch: Vec::with_capacity(n),
        }
    }

    fn exhausted(&self) -> bool {
        self.eval.evaluations() >= self.budget
    }

    fn evaluate_and_offer(&mut self, seq: &[usize]) -> Option<ObjectiveVector> {
        if self.exhausted() {
            return None;
        }
        let obj = self.eval.evaluate_seq(seq);
        self.archive.offer_seq(&obj, seq);
        Some(obj)
    }

    /// Random permutation, evaluated and offered to the archive.
    fn random_start(&mut self) -> Option<(Vec<usize>, ObjectiveVector)> {
        let perm = Permutation::random(self.eval.instance().jobs(), &mut self.rng).into_inner();
        let obj = self.evaluate_and_offer(&perm)?;
        Some((perm, obj))
    }

    /// Evaluates the whole neighborhood of `x`, offering every neighbor to
    /// the archive. The move taken is the first neighbor, in canonical order,
    /// that dominates `x` and is not itself dominated by another neighbor.
    fn explore(&mut self, x: &[usize], x_obj: &ObjectiveVector, kind: NeighborhoodKind) -> Explore {
        let moves = std::mem::take(&mut self.moves[kind_index(kind)]);
        self.scratch.clear();
        self.scratch.extend_from_slice(x);
        let mut scratch = std::mem::take(&mut self.scratch);

        let mut improving: Vec<(Move, ObjectiveVector)> = Vec::new();
        let mut exhausted = false;
        for &mv in &moves {
            if self.exhausted() {
                exhausted = true;
                break;
            }
            mv.apply(&mut scratch);
            let obj = self.eval.evaluate_seq(&scratch);
            self.archive.offer_seq(&obj, &scratch);
            if dominates_unchecked(obj.values(), x_obj.values()) {
                improving.push((mv, obj));
            }
            mv.inverse().apply(&mut scratch);
        }

        self.moves[kind_index(kind)] = moves;
        self.scratch = scratch;
        if exhausted {
            return Explore::Exhausted;
        }
        // Anything dominating an improving neighbor also dominates `x`, so
        // checking against `improving` alone is enough.
        let best = improving.iter().position(|(_, obj)| {
            !improving
                .iter()
                .any(|(_, other)| dominates_unchecked(other.values(), obj.values()))
        });
        match best {
            Some(i) => {
                let (mv, obj) = improving.swap_remove(i);
                Explore::Improved(mv, obj)
            }
            None => Explore::NotImproved,
        }
    }

    /// Variable-neighborhood descent from `x` until no neighborhood holds a
    /// dominating neighbor. Returns the neighbor evaluations spent, or `None`
    /// when the budget ran out first.
    fn descend(
        &mut self,
        x: &mut [usize],
        x_obj: &mut ObjectiveVector,
        order: &mut NeighborhoodOrder,
        mut trace: Option<&mut Vec<ObjectiveVector>>,
    ) -> Option<u64> {
        let start = self.eval.evaluations();
        if let Some(t) = trace.as_deref_mut() {
            t.push(x_obj.clone());
        }
        let mut i = 0;
        while i < NeighborhoodKind::ALL.len() {
            match self.explore(x, x_obj, order.get(i)) {
                Explore::Exhausted => return None,
                Explore::Improved(mv, obj) => {
                    mv.apply(x);
                    *x_obj = obj;
                    if let Some(t) = trace.as_deref_mut() {
                        t.push(x_obj.clone());
                    }
                    i = 0;
                    *order = shuffle_order(&mut self.rng);
                }
                Explore::NotImproved => i += 1,
            }
        }
        Some(self.eval.evaluations() - start)
    }
}

fn finish(inst: &Instance, algorithm: Algorithm, cfg: &SolverConfig, search: Search<'_>) -> RunResult {
    RunResult {
        instance: inst.name().to_string(),
        algorithm,
        seed: cfg.seed,
        budget: cfg.budget,
        evaluations_used: search.eval.evaluations(),
        front: search.archive.snapshot(),
        descent_lengths: Vec::new(),
        trajectory: None,
        local_optima: None,
    }
}

/// Pareto Iterated Local Search.
///
/// Descends through the three neighborhoods (in an order reshuffled after
/// every improving move) until the incumbent is locally optimal with respect
/// to all of them, marks it investigated, then continues from a random
/// uninvestigated archive member. Once every member is investigated, a random
/// member is perturbed and the descent restarts from there.
pub fn pils_run(inst: &Instance, cfg: &SolverConfig) -> Result<RunResult> {
    cfg.validate()?;
    let mut search = Search::new(inst, cfg.budget, ChaCha8Rng::seed_from_u64(cfg.seed));
    let (mut x, mut x_obj) = search.random_start().expect("budget >= 1");

    let mut descents = Vec::new();
    let mut trajectory = cfg.record_trace.then(Vec::new);
    let mut optima = cfg.record_trace.then(Vec::new);

    if inst.jobs() > 1 {
        let mut order = NeighborhoodOrder::canonical();
        loop {
            let trace = if descents.is_empty() { trajectory.as_mut() } else { None };
            let Some(spent) = search.descend(&mut x, &mut x_obj, &mut order, trace) else {
                break;
            };
            descents.push(spent);
            let local = Permutation::from_vec_unchecked(x.clone());
            if let Some(o) = optima.as_mut() {
                o.push(FrontEntry {
                    objectives: x_obj.clone(),
                    permutation: local.clone(),
                });
            }
            search.archive.mark_investigated(&local);

            if let Some(next) = search.archive.select_uninvestigated(&mut search.rng) {
                x = next.solution.as_slice().to_vec();
                x_obj = next.objectives.clone();
            } else {
                let chosen = search.archive.select_any(&mut search.rng)?;
                x = chosen.solution.as_slice().to_vec();
                perturb_in_place(&mut x, &mut search.rng);
                match search.evaluate_and_offer(&x) {
                    Some(obj) => x_obj = obj,
                    None => break,
                }
            }
        }
    }

    let mut result = finish(inst, Algorithm::Pils, cfg, search);
    result.descent_lengths = descents;
    result.trajectory = trajectory;
    result.local_optima = optima;
    Ok(result)
}

/// Multi-objective multi-operator search: repeatedly explores one randomly
/// chosen neighborhood of a random uninvestigated archive member, marking the
/// member investigated if it survives the update. When nothing is left to
/// investigate the search restarts from a random permutation, keeping the
/// archive.
pub fn mos_run(inst: &Instance, cfg: &SolverConfig) -> Result<RunResult> {
    cfg.validate()?;
    let mut search = Search::new(inst, cfg.budget, ChaCha8Rng::seed_from_u64(cfg.seed));
    search.random_start().expect("budget >= 1");

    if inst.jobs() > 1 {
        loop {
            let Some(entry) = search.archive.select_uninvestigated(&mut search.rng) else {
                if search.random_start().is_none() {
                    break;
                }
                continue;
            };
            let x = entry.solution.clone();
            let x_obj = entry.objectives.clone();
            let kind = *NeighborhoodKind::ALL.choose(&mut search.rng).expect("three kinds");
            if let Explore::Exhausted = search.explore(x.as_slice(), &x_obj, kind) {
                break;
            }
            search.archive.mark_investigated(&x);
        }
    }

    Ok(finish(inst, Algorithm::Mos, cfg, search))
}

/// Objective vectors of `count` uniformly random permutations.
pub fn random_sample(inst: &Instance, count: usize, seed: u64) -> Result<Vec<ObjectiveVector>> {
    if count == 0 {
        return Err(Error::invalid("sample count must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut eval = Evaluator::new(inst);
    Ok((0..count)
        .map(|_| {
            let perm = Permutation::random(inst.jobs(), &mut rng);
            eval.evaluate_seq(perm.as_slice())
        })
        .collect())
}

/// Random sampling packaged as a run: the front is the non-dominated subset
/// of the sample.
pub fn sample_run(inst: &Instance, cfg: &SolverConfig) -> Result<(RunResult, Vec<ObjectiveVector>)> {
    cfg.validate()?;
    let count = usize::try_from(cfg.budget).map_err(|_| Error::invalid("sample count too large"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut search = Search::new(inst, cfg.budget, ChaCha8Rng::seed_from_u64(0));
    let mut points = Vec::with_capacity(count);
    for _ in 0..count {
        let perm = Permutation::random(inst.jobs(), &mut rng);
        points.extend(search.evaluate_and_offer(perm.as_slice()));
    }
    Ok((finish(inst, Algorithm::Sample, cfg, search), points))
}

/// Evaluations needed to reach a local optimum from `repetitions` random
/// starts. Repetition `r` draws from ChaCha stream `r` of `seed`, so counts
/// are reproducible and independent of scheduling.
pub fn descent_stats(inst: &Instance, repetitions: usize, seed: u64) -> Result<Vec<u64>> {
    if repetitions == 0 {
        return Err(Error::invalid("repetitions must be at least 1"));
    }
    Ok((0..repetitions)
        .into_par_iter()
        .map(|rep| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(rep as u64);
            let mut search = Search::new(inst, u64::MAX, rng);
            let (mut x, mut x_obj) = search.random_start().expect("unbounded budget");
            let mut order = NeighborhoodOrder::canonical();
            search
                .descend(&mut x, &mut x_obj, &mut order, None)
                .expect("unbounded budget")
        })
        .collect())
}

/// Line-oriented record; see [`RunResult::from_str`] for the reader.
impl fmt::Display for RunResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "instance {}", self.instance)?;
        writeln!(f, "algorithm {}", self.algorithm)?;
        writeln!(f, "seed {}", self.seed)?;
        writeln!(f, "budget {}", self.budget)?;
        writeln!(f, "evaluations_used {}", self.evaluations_used)?;
        let mut lengths = String::from("descent_lengths");
        for l in &self.descent_lengths {
            write!(lengths, " {l}")?;
        }
        writeln!(f, "{lengths}")?;
        writeln!(f, "front {}", self.front.len())?;
        f.write_str(&export_front(&self.front))?;
        if let Some(t) = &self.trajectory {
            writeln!(f, "trajectory {}", t.len())?;
            for v in t {
                writeln!(f, "{v}")?;
            }
        }
        if let Some(o) = &self.local_optima {
            writeln!(f, "local_optima {}", o.len())?;
            f.write_str(&export_front(o))?;
        }
        Ok(())
    }
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn next_line(&mut self) -> Option<(usize, &'a str)> {
        let (i, l) = self.inner.next()?;
        self.last = i + 1;
        Some((i + 1, l))
    }

    fn keyed(&mut self, key: &str) -> Result<&'a str> {
        let (no, line) = self
            .next_line()
            .ok_or_else(|| Error::parse(self.last + 1, format!("missing {key:?}")))?;
        match line.split_once(' ') {
            Some((k, rest)) if k == key => Ok(rest),
            None if line == key => Ok(""),
            _ => Err(Error::parse(no, format!("expected {key:?}"))),
        }
    }

    fn number<T: FromStr>(&mut self, key: &str) -> Result<T> {
        let line = self.last + 1;
        self.keyed(key)?
            .trim()
            .parse()
            .map_err(|_| Error::parse(line, format!("bad value for {key:?}")))
    }

    fn block(&mut self, count: usize) -> Result<(usize, String)> {
        let first = self.last + 1;
        let mut text = String::new();
        for _ in 0..count {
            let (_, l) = self
                .next_line()
                .ok_or_else(|| Error::parse(self.last + 1, "section is truncated"))?;
            text.push_str(l);
            text.push('\n');
        }
        Ok((first, text))
    }
}

impl FromStr for RunResult {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = Lines {
            inner: text.lines().enumerate(),
            last: 0,
        };
        let instance = lines.keyed("instance")?.to_string();
        let algorithm = lines.keyed("algorithm")?.parse()?;
        let seed = lines.number("seed")?;
        let budget = lines.number("budget")?;
        let evaluations_used = lines.number("evaluations_used")?;
        let lengths_line = lines.last + 1;
        let descent_lengths = lines
            .keyed("descent_lengths")?
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<Vec<u64>, _>>()
            .map_err(|_| Error::parse(lengths_line, "bad descent length"))?;
        let count = lines.number("front")?;
        let (first, block) = lines.block(count)?;
        let front = parse_front_export(&block, first)?;

        let mut result = RunResult {
            instance,
            algorithm,
            seed,
            budget,
            evaluations_used,
            front,
            descent_lengths,
            trajectory: None,
            local_optima: None,
        };
        while let Some((no, line)) = lines.next_line() {
            if line.trim().is_empty() {
                continue;
            }
            let (key, count) = line
                .split_once(' ')
                .and_then(|(k, c)| Some((k, c.trim().parse::<usize>().ok()?)))
                .ok_or_else(|| Error::parse(no, "expected a section header"))?;
            let (first, block) = lines.block(count)?;
            match key {
                "trajectory" => {
                    let points = block
                        .lines()
                        .enumerate()
                        .map(|(i, l)| {
                            l.split('\t')
                                .map(str::parse::<u64>)
                                .collect::<Result<Vec<_>, _>>()
                                .map(ObjectiveVector::new)
                                .map_err(|_| Error::parse(first + i, "bad trajectory point"))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    result.trajectory = Some(points);
                }
                "local_optima" => result.local_optima = Some(parse_front_export(&block, first)?),
                other => return Err(Error::parse(no, format!("unknown section {other:?}"))),
            }
        }
        Ok(result)
    }
}
