//! Experiment harness behind the `pils` binary: loading instances, seeded
//! run batches, metric files and the text outputs consumed by plotting tools.
//!
//! Every command is deterministic in its inputs; repeating one with the same
//! arguments rewrites byte-identical files.

use std::fmt::{self, Write as _};
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::metrics::{brute_force_pareto, d_metrics, Front, MetricReport};
use crate::problem::{assign_due_dates, parse_due_dates, parse_taillard, DueDateSource, Instance, ObjectiveVector};
use crate::solvers::{descent_stats, mos_run, pils_run, random_sample, sample_run, Algorithm, RunResult, SolverConfig};

/// Due dates as given on the command line.
#[derive(Clone, Debug, PartialEq)]
pub enum DueDateSpec {
    File(PathBuf),
    Tightness(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentSpec {
    pub instance: PathBuf,
    /// `None` leaves every due date at zero.
    pub due_dates: Option<DueDateSpec>,
    pub algorithms: Vec<Algorithm>,
    pub runs: usize,
    /// Evaluations per run; for `sample` this is the sample size.
    pub budget: u64,
    /// Run `i` uses seed `seed + i`.
    pub seed: u64,
    pub out: PathBuf,
    pub reference: Option<PathBuf>,
    pub trace: bool,
}

impl ExperimentSpec {
    fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::invalid("runs must be at least 1"));
        }
        if self.budget == 0 {
            return Err(Error::invalid("budget must be at least 1"));
        }
        if self.algorithms.is_empty() {
            return Err(Error::invalid("select at least one algorithm"));
        }
        Ok(())
    }
}

/// Process exit status for a failed command.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidArgument(_) | Error::DimensionMismatch { .. } => 2,
        Error::ReadInput { .. } | Error::Parse { .. } => 3,
        Error::WriteOutput { .. } => 4,
        Error::TooLarge { .. } => 5,
        Error::EmptyArchive | Error::EmptyFront => 6,
    }
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::ReadInput {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes through a temporary sibling and renames, so readers never see a
/// partial file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let wrap = |source| Error::WriteOutput {
        path: path.to_path_buf(),
        source,
    };
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, contents).map_err(wrap)?;
    fs::rename(&tmp, path).map_err(wrap)
}

fn with_file_context<T>(path: &Path, res: Result<T>) -> Result<T> {
    res.map_err(|e| match e {
        Error::Parse { line, message } => Error::Parse {
            line,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    })
}

/// Reads a Taillard instance, names it after the file stem and applies the
/// due dates.
pub fn load_instance(path: &Path, due: Option<&DueDateSpec>) -> Result<Instance> {
    let text = read_text(path)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "instance".into());
    let inst = with_file_context(path, parse_taillard(&text))?.with_name(name);
    let source = match due {
        None => return Ok(inst),
        Some(DueDateSpec::File(p)) => DueDateSource::Values(with_file_context(p, parse_due_dates(&read_text(p)?))?),
        Some(&DueDateSpec::Tightness(tau)) => DueDateSource::Tightness(tau),
    };
    assign_due_dates(inst, &source)
}

/// Reads either a plain front (one point per line) or a run record, whose
/// front is used.
pub fn read_front(path: &Path) -> Result<Front> {
    let text = read_text(path)?;
    if text.starts_with("instance ") {
        let run: RunResult = with_file_context(path, text.parse())?;
        Front::from_objectives(&run.front_objectives())
    } else {
        with_file_context(path, Front::parse(&text))
    }
}

fn scatter_text(points: &[ObjectiveVector]) -> String {
    let mut out = String::with_capacity(points.len() * 12);
    for p in points {
        writeln!(out, "{p}").unwrap();
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlgorithmSummary {
    pub algorithm: Algorithm,
    pub reports: Vec<MetricReport>,
}

impl AlgorithmSummary {
    pub fn mean_d1(&self) -> f64 {
        self.reports.iter().map(|r| r.d1).sum::<f64>() / self.reports.len() as f64
    }

    pub fn mean_d2(&self) -> f64 {
        self.reports.iter().map(|r| r.d2).sum::<f64>() / self.reports.len() as f64
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveSummary {
    pub instance: String,
    pub reference: Front,
    pub algorithms: Vec<AlgorithmSummary>,
}

impl SolveSummary {
    pub fn algorithm(&self, algorithm: Algorithm) -> Option<&AlgorithmSummary> {
        self.algorithms.iter().find(|a| a.algorithm == algorithm)
    }
}

/// Mean D1 block then mean D2 block, one column per algorithm, four decimals.
impl fmt::Display for SolveSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut header = String::from("instance");
        let mut row = self.instance.clone();
        for a in &self.algorithms {
            write!(header, "\tD1 {}", a.algorithm)?;
            write!(row, "\t{:.4}", a.mean_d1())?;
        }
        for a in &self.algorithms {
            write!(header, "\tD2 {}", a.algorithm)?;
            write!(row, "\t{:.4}", a.mean_d2())?;
        }
        writeln!(f, "{header}")?;
        writeln!(f, "{row}")
    }
}

pub fn run_file_name(algorithm: Algorithm, run: usize) -> String {
    format!("{algorithm}_run{run:03}.txt")
}

pub fn metrics_file_name(algorithm: Algorithm, run: usize) -> String {
    format!("{algorithm}_run{run:03}.metrics.txt")
}

pub fn scatter_file_name(run: usize) -> String {
    format!("sample_run{run:03}.scatter.txt")
}

struct Job {
    algorithm: Algorithm,
    run: usize,
    result: RunResult,
    scatter: Option<Vec<ObjectiveVector>>,
}

/// Runs every selected algorithm `runs` times and writes, into `spec.out`:
/// one run record and one metric file per run, the reference front used
/// (`reference.txt`), the random-sample scatter files, and `summary.txt`.
pub fn cmd_solve(spec: &ExperimentSpec) -> Result<SolveSummary> {
    spec.validate()?;
    let inst = load_instance(&spec.instance, spec.due_dates.as_ref())?;
    let provided = spec.reference.as_deref().map(read_front).transpose()?;
    fs::create_dir_all(&spec.out).map_err(|source| Error::WriteOutput {
        path: spec.out.clone(),
        source,
    })?;

    let mut algorithms = spec.algorithms.clone();
    algorithms.sort();
    algorithms.dedup();
    let plan: Vec<(Algorithm, usize)> = algorithms
        .iter()
        .flat_map(|&a| (0..spec.runs).map(move |r| (a, r)))
        .collect();

    let jobs: Vec<Job> = plan
        .par_iter()
        .map(|&(algorithm, run)| -> Result<Job> {
            let mut cfg = SolverConfig::new(spec.budget, spec.seed.wrapping_add(run as u64));
            cfg.record_trace = spec.trace;
            let (result, scatter) = match algorithm {
                Algorithm::Pils => (pils_run(&inst, &cfg)?, None),
                Algorithm::Mos => (mos_run(&inst, &cfg)?, None),
                Algorithm::Sample => {
                    let (r, pts) = sample_run(&inst, &cfg)?;
                    (r, Some(pts))
                }
            };
            let job = Job {
                algorithm,
                run,
                result,
                scatter,
            };
            write_atomic(&spec.out.join(run_file_name(algorithm, run)), &job.result.to_string())?;
            if let Some(points) = &job.scatter {
                write_atomic(&spec.out.join(scatter_file_name(run)), &scatter_text(points))?;
            }
            Ok(job)
        })
        .collect::<Result<_>>()?;

    let reference = match provided {
        Some(front) => front,
        None => Front::from_objectives(jobs.iter().flat_map(|j| j.result.front.iter().map(|e| &e.objectives)))?,
    };
    write_atomic(&spec.out.join("reference.txt"), &reference.to_string())?;

    let mut summaries: Vec<AlgorithmSummary> = algorithms
        .iter()
        .map(|&algorithm| AlgorithmSummary {
            algorithm,
            reports: Vec::new(),
        })
        .collect();
    for job in &jobs {
        let approx = Front::from_objectives(&job.result.front_objectives())?;
        let report = d_metrics(&reference, &approx)?;
        write_atomic(&spec.out.join(metrics_file_name(job.algorithm, job.run)), &report.to_string())?;
        summaries
            .iter_mut()
            .find(|s| s.algorithm == job.algorithm)
            .expect("planned algorithm")
            .reports
            .push(report);
    }

    let summary = SolveSummary {
        instance: inst.name().to_string(),
        reference,
        algorithms: summaries,
    };
    write_atomic(&spec.out.join("summary.txt"), &summary.to_string())?;
    Ok(summary)
}

/// Writes the exact front of a small instance in reference-front format.
pub fn cmd_oracle(instance: &Path, due: Option<&DueDateSpec>, out: &Path) -> Result<Front> {
    let inst = load_instance(instance, due)?;
    let exact = brute_force_pareto(&inst)?;
    let front = Front::from_objectives(exact.iter().map(|e| &e.objectives))?;
    write_atomic(out, &front.to_string())?;
    Ok(front)
}

/// `D1 D2` at four decimals.
pub fn cmd_metrics(reference: &Path, approx: &Path) -> Result<(MetricReport, String)> {
    let report = d_metrics(&read_front(reference)?, &read_front(approx)?)?;
    let line = format!("{:.4} {:.4}", report.d1, report.d2);
    Ok((report, line))
}

/// Evaluations-to-local-optimum counts for one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentTable {
    pub instance: String,
    pub jobs: usize,
    pub counts: Vec<u64>,
}

impl DescentTable {
    pub fn mean(&self) -> f64 {
        self.counts.iter().sum::<u64>() as f64 / self.counts.len() as f64
    }
}

impl fmt::Display for DescentTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "instance\tjobs\tmean_evaluations")?;
        writeln!(f, "{}\t{}\t{:.2}", self.instance, self.jobs, self.mean())?;
        writeln!(f, "repetition\tevaluations")?;
        for (i, c) in self.counts.iter().enumerate() {
            writeln!(f, "{}\t{c}", i + 1)?;
        }
        Ok(())
    }
}

impl FromStr for DescentTable {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let mut next = |what: &str| {
            lines
                .next()
                .map(|(i, l)| (i + 1, l))
                .ok_or_else(|| Error::parse(0, format!("missing {what}")))
        };
        let (no, header) = next("header")?;
        if header != "instance\tjobs\tmean_evaluations" {
            return Err(Error::parse(no, "unexpected header"));
        }
        let (no, row) = next("summary row")?;
        let fields: Vec<&str> = row.split('\t').collect();
        if fields.len() != 3 {
            return Err(Error::parse(no, "expected instance, jobs and mean"));
        }
        let jobs = fields[1].parse().map_err(|_| Error::parse(no, "bad job count"))?;
        let (no, sub) = next("count header")?;
        if sub != "repetition\tevaluations" {
            return Err(Error::parse(no, "unexpected count header"));
        }
        let mut counts = Vec::new();
        for (i, line) in lines {
            let count = line
                .split_once('\t')
                .and_then(|(_, c)| c.parse().ok())
                .ok_or_else(|| Error::parse(i + 1, "bad count row"))?;
            counts.push(count);
        }
        if counts.is_empty() {
            return Err(Error::parse(no, "no counts"));
        }
        Ok(DescentTable {
            instance: fields[0].to_string(),
            jobs,
            counts,
        })
    }
}

pub fn cmd_descent(
    instance: &Path,
    due: Option<&DueDateSpec>,
    repetitions: usize,
    seed: u64,
    out: &Path,
) -> Result<DescentTable> {
    let inst = load_instance(instance, due)?;
    let table = DescentTable {
        instance: inst.name().to_string(),
        jobs: inst.jobs(),
        counts: descent_stats(&inst, repetitions, seed)?,
    };
    write_atomic(out, &table.to_string())?;
    Ok(table)
}

/// Scatter file of `count` random schedules, one `C_max<TAB>T_sum` row each.
pub fn cmd_sample(instance: &Path, due: Option<&DueDateSpec>, count: usize, seed: u64, out: &Path) -> Result<usize> {
    let inst = load_instance(instance, due)?;
    let points = random_sample(&inst, count, seed)?;
    write_atomic(out, &scatter_text(&points))?;
    Ok(points.len())
}
