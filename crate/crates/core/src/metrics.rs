//! Approximation quality against a reference front, and exact fronts of
//! small instances by enumeration.
//!
//! For a reference front `R` and an approximation `A`, each objective gets
//! the weight `w_k = 1 / range_k`, the range being taken over `R` (a zero
//! range gives weight 1). The distance from `r` to `a` is the weighted excess
//! `max_k w_k * max(0, a_k - r_k)`. `D1` is the mean over `R` of the distance
//! to the nearest point of `A`, and `D2` is the largest such distance.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::archive::{dominates_unchecked, FrontEntry};
use crate::error::{Error, Result};
use crate::problem::{Evaluator, Instance, ObjectiveVector, Permutation};

/// Largest job count [`brute_force_pareto`] accepts.
pub const MAX_ENUMERATION_JOBS: usize = 10;

/// A set of mutually non-dominated points in outcome space.
#[derive(Clone, Debug, PartialEq)]
pub struct Front {
    points: Vec<Vec<f64>>,
}

impl Front {
    /// Keeps the non-dominated, distinct points of `points`, sorted.
    pub fn from_points(points: Vec<Vec<f64>>) -> Result<Self> {
        if let Some(first) = points.first() {
            let dim = first.len();
            if let Some(p) = points.iter().find(|p| p.len() != dim) {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.len(),
                });
            }
            if points.iter().flatten().any(|v| !v.is_finite()) {
                return Err(Error::invalid("front values must be finite"));
            }
        }
        let mut kept: Vec<Vec<f64>> = points
            .iter()
            .filter(|p| !points.iter().any(|q| dominates_unchecked(q, p)))
            .cloned()
            .collect();
        kept.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        kept.dedup();
        Ok(Front { points: kept })
    }

    pub fn from_objectives<'a>(objectives: impl IntoIterator<Item = &'a ObjectiveVector>) -> Result<Self> {
        Front::from_points(objectives.into_iter().map(ObjectiveVector::to_f64).collect())
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> Option<usize> {
        self.points.first().map(Vec::len)
    }

    /// One point per line, whitespace-separated. Blank lines and `#` comments
    /// are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut points = Vec::new();
        let mut dim = None;
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let point = line
                .split_whitespace()
                .map(str::parse::<f64>)
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Error::parse(idx + 1, format!("bad objective value: {e}")))?;
            match dim {
                None => dim = Some(point.len()),
                Some(d) if d != point.len() => {
                    return Err(Error::parse(idx + 1, format!("expected {d} values, found {}", point.len())))
                }
                _ => {}
            }
            points.push(point);
        }
        Front::from_points(points)
    }
}

/// Space separated, one point per line.
impl fmt::Display for Front {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.points {
            let row: Vec<String> = p.iter().map(f64::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MetricReport {
    pub d1: f64,
    pub d2: f64,
    pub reference_size: usize,
    pub approx_size: usize,
}

impl fmt::Display for MetricReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "d1 {}", self.d1)?;
        writeln!(f, "d2 {}", self.d2)?;
        writeln!(f, "reference_size {}", self.reference_size)?;
        writeln!(f, "approx_size {}", self.approx_size)
    }
}

impl FromStr for MetricReport {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut fields = [None; 4];
        const KEYS: [&str; 4] = ["d1", "d2", "reference_size", "approx_size"];
        for (idx, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once(' ')
                .ok_or_else(|| Error::parse(idx + 1, "expected `key value`"))?;
            let slot = KEYS
                .iter()
                .position(|k| *k == key)
                .ok_or_else(|| Error::parse(idx + 1, format!("unknown key {key:?}")))?;
            let v: f64 = value
                .trim()
                .parse()
                .map_err(|_| Error::parse(idx + 1, format!("bad value for {key}")))?;
            fields[slot] = Some(v);
        }
        let get = |i: usize| fields[i].ok_or_else(|| Error::parse(0, format!("missing {}", KEYS[i])));
        Ok(MetricReport {
            d1: get(0)?,
            d2: get(1)?,
            reference_size: get(2)? as usize,
            approx_size: get(3)? as usize,
        })
    }
}

fn weights(reference: &Front) -> Vec<f64> {
    let dim = reference.dim().unwrap_or(0);
    (0..dim)
        .map(|k| {
            let (lo, hi) = reference
                .points
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| (lo.min(p[k]), hi.max(p[k])));
            let range = hi - lo;
            if range > 0.0 {
                1.0 / range
            } else {
                1.0
            }
        })
        .collect()
}

/// Weighted excess of `a` over `r`.
fn excess(weights: &[f64], r: &[f64], a: &[f64]) -> f64 {
    weights
        .iter()
        .zip(r.iter().zip(a))
        .map(|(w, (r, a))| w * (a - r).max(0.0))
        .fold(0.0, f64::max)
}

pub fn d_metrics(reference: &Front, approx: &Front) -> Result<MetricReport> {
    if reference.is_empty() || approx.is_empty() {
        return Err(Error::EmptyFront);
    }
    if reference.dim() != approx.dim() {
        return Err(Error::DimensionMismatch {
            expected: reference.dim().unwrap_or(0),
            found: approx.dim().unwrap_or(0),
        });
    }
    let w = weights(reference);
    let nearest: Vec<f64> = reference
        .points
        .iter()
        .map(|r| {
            approx
                .points
                .iter()
                .map(|a| excess(&w, r, a))
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    Ok(MetricReport {
        d1: nearest.iter().sum::<f64>() / nearest.len() as f64,
        d2: nearest.iter().copied().fold(0.0, f64::max),
        reference_size: reference.len(),
        approx_size: approx.len(),
    })
}

/// Rearranges `seq` into the next lexicographic permutation; `false` after the last.
fn next_permutation(seq: &mut [usize]) -> bool {
    let Some(i) = seq.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = seq.iter().rposition(|&x| x > seq[i]).expect("pivot has a successor");
    seq.swap(i, j);
    seq[i + 1..].reverse();
    true
}

/// Adds `obj` unless an existing point dominates or equals it; the first
/// permutation reaching a vector stays its witness.
fn keep_first(front: &mut Vec<FrontEntry>, obj: &ObjectiveVector, seq: &[usize]) {
    if front
        .iter()
        .any(|e| e.objectives == *obj || dominates_unchecked(e.objectives.values(), obj.values()))
    {
        return;
    }
    front.retain(|e| !dominates_unchecked(obj.values(), e.objectives.values()));
    front.push(FrontEntry {
        objectives: obj.clone(),
        permutation: Permutation::from_vec_unchecked(seq.to_vec()),
    });
}

/// Exact Pareto front by evaluating all `n!` schedules, with the
/// lexicographically first witness for every efficient vector.
pub fn brute_force_pareto(inst: &Instance) -> Result<Vec<FrontEntry>> {
    let n = inst.jobs();
    if n > MAX_ENUMERATION_JOBS {
        return Err(Error::TooLarge {
            n,
            max: MAX_ENUMERATION_JOBS,
        });
    }
    // One slice of the enumeration per leading job, merged in order.
    let partial: Vec<Vec<FrontEntry>> = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut eval = Evaluator::new(inst);
            let mut seq: Vec<usize> = std::iter::once(first).chain((0..n).filter(|&j| j != first)).collect();
            let mut front = Vec::new();
            loop {
                let obj = eval.evaluate_seq(&seq);
                keep_first(&mut front, &obj, &seq);
                if !next_permutation(&mut seq[1..]) {
                    break;
                }
            }
            front
        })
        .collect();
    let mut front = Vec::new();
    for e in partial.into_iter().flatten() {
        keep_first(&mut front, &e.objectives, e.permutation.as_slice());
    }
    front.sort();
    Ok(front)
}
