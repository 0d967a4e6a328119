use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use pils::cli::{
    self, cmd_descent, cmd_metrics, cmd_oracle, cmd_sample, cmd_solve, metrics_file_name, run_file_name,
    DescentTable, DueDateSpec, ExperimentSpec,
};
use pils::problem::write_taillard;
use pils::{Algorithm, Error, Front, Instance, MetricReport, RunResult};
use tempfile::TempDir;

fn write_instance(dir: &Path, name: &str, n: usize, m: usize, seed: u64) -> PathBuf {
    let path = dir.join(format!("{name}.txt"));
    fs::write(&path, write_taillard(&Instance::random(n, m, seed).unwrap())).unwrap();
    path
}

fn spec(instance: &Path, out: &Path) -> ExperimentSpec {
    ExperimentSpec {
        instance: instance.to_path_buf(),
        due_dates: Some(DueDateSpec::Tightness(0.6)),
        algorithms: vec![Algorithm::Pils, Algorithm::Mos],
        runs: 3,
        budget: 5_000,
        seed: 4,
        out: out.to_path_buf(),
        reference: None,
        trace: false,
    }
}

/// Sorted (file name, bytes) pairs of a directory.
fn snapshot(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), fs::read(e.path()).unwrap())
        })
        .collect();
    files.sort();
    files
}

#[test]
fn solve_writes_consistent_files() {
    let dir = TempDir::new().unwrap();
    let inst = write_instance(dir.path(), "inst", 10, 4, 1);
    let out = dir.path().join("out");
    let summary = cmd_solve(&spec(&inst, &out)).unwrap();
    assert_eq!(summary.instance, "inst");

    for alg in [Algorithm::Pils, Algorithm::Mos] {
        let agg = summary.algorithm(alg).unwrap();
        let mut d1 = 0.0;
        let mut d2 = 0.0;
        for run in 0..3 {
            let text = fs::read_to_string(out.join(run_file_name(alg, run))).unwrap();
            let record: RunResult = text.parse().unwrap();
            assert_eq!(record.to_string(), text);
            assert_eq!((record.algorithm, record.seed, record.budget), (alg, 4 + run as u64, 5_000));
            assert!(record.evaluations_used <= 5_000);
            let report: MetricReport = fs::read_to_string(out.join(metrics_file_name(alg, run)))
                .unwrap()
                .parse()
                .unwrap();
            d1 += report.d1;
            d2 += report.d2;
        }
        assert!((d1 / 3.0 - agg.mean_d1()).abs() < 1e-9);
        assert!((d2 / 3.0 - agg.mean_d2()).abs() < 1e-9);
    }

    let pooled = cli::read_front(&out.join("reference.txt")).unwrap();
    assert_eq!(pooled, summary.reference);
    let table = fs::read_to_string(out.join("summary.txt")).unwrap();
    assert!(table.starts_with("instance\tD1 pils\tD1 mos\tD2 pils\tD2 mos\n"));
}

#[test]
fn solve_is_byte_reproducible_and_reference_can_be_supplied() {
    let dir = TempDir::new().unwrap();
    let inst = write_instance(dir.path(), "inst", 9, 3, 2);
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    cmd_solve(&spec(&inst, &a)).unwrap();
    cmd_solve(&spec(&inst, &b)).unwrap();
    assert_eq!(snapshot(&a), snapshot(&b));

    let exact = dir.path().join("exact.txt");
    cmd_oracle(&inst, Some(&DueDateSpec::Tightness(0.6)), &exact).unwrap();
    let mut with_ref = spec(&inst, &dir.path().join("c"));
    with_ref.reference = Some(exact.clone());
    let summary = cmd_solve(&with_ref).unwrap();
    assert_eq!(summary.reference, cli::read_front(&exact).unwrap());
}

#[test]
fn sample_only_solve_writes_scatter() {
    let dir = TempDir::new().unwrap();
    let inst = write_instance(dir.path(), "inst", 12, 3, 3);
    let out = dir.path().join("out");
    let mut s = spec(&inst, &out);
    s.algorithms = vec![Algorithm::Sample];
    s.runs = 1;
    s.budget = 1_000;
    cmd_solve(&s).unwrap();
    let scatter = fs::read_to_string(out.join(cli::scatter_file_name(0))).unwrap();
    assert_eq!(scatter.lines().count(), 1_000);
    assert!(scatter.lines().all(|l| l.split('\t').count() == 2));
}

#[test]
fn oracle_metrics_and_guard() {
    let dir = TempDir::new().unwrap();
    let toy = dir.path().join("toy.txt");
    fs::write(&toy, "2 2\n3 2\n2 4\n").unwrap();
    let due = dir.path().join("due.txt");
    fs::write(&due, "5 6\n").unwrap();
    let front = cmd_oracle(&toy, Some(&DueDateSpec::File(due)), &dir.path().join("f.txt")).unwrap();
    assert!(!front.is_empty());

    let r = dir.path().join("r.txt");
    let a = dir.path().join("a.txt");
    fs::write(&r, "0 10\n10 0\n").unwrap();
    fs::write(&a, "10 10\n").unwrap();
    assert_eq!(cmd_metrics(&r, &a).unwrap().1, "1.0000 1.0000");
    assert_eq!(cmd_metrics(&r, &r).unwrap().1, "0.0000 0.0000");

    let big = write_instance(dir.path(), "big", 11, 2, 1);
    let err = cmd_oracle(&big, None, &dir.path().join("x.txt")).unwrap_err();
    assert!(matches!(err, Error::TooLarge { n: 11, .. }));
    assert!(!dir.path().join("x.txt").exists());
}

#[test]
fn descent_and_sample_round_trip() {
    let dir = TempDir::new().unwrap();
    let inst = write_instance(dir.path(), "inst", 10, 3, 5);
    let out = dir.path().join("d.txt");
    let table = cmd_descent(&inst, None, 7, 1, &out).unwrap();
    assert_eq!(table.counts.len(), 7);
    let parsed: DescentTable = fs::read_to_string(&out).unwrap().parse().unwrap();
    assert_eq!(parsed, table);

    let s1 = dir.path().join("s1.txt");
    let s2 = dir.path().join("s2.txt");
    assert_eq!(cmd_sample(&inst, None, 300, 9, &s1).unwrap(), 300);
    cmd_sample(&inst, None, 300, 9, &s2).unwrap();
    assert_eq!(fs::read(&s1).unwrap(), fs::read(&s2).unwrap());
    assert_eq!(Front::parse(&fs::read_to_string(&s1).unwrap()).unwrap().dim(), Some(2));
}

#[test]
fn input_errors_are_reported() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("missing.txt");
    let err = cmd_sample(&missing, None, 10, 0, &dir.path().join("o.txt")).unwrap_err();
    assert!(matches!(err, Error::ReadInput { .. }));

    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "2 2\n1 2\n3\n").unwrap();
    let err = cmd_sample(&bad, None, 10, 0, &dir.path().join("o.txt")).unwrap_err();
    assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");

    let inst = write_instance(dir.path(), "inst", 5, 2, 1);
    let due = dir.path().join("due.txt");
    fs::write(&due, "1 2 3\n").unwrap();
    let err = cmd_sample(&inst, Some(&DueDateSpec::File(due)), 10, 0, &dir.path().join("o.txt")).unwrap_err();
    assert!(matches!(err, Error::DimensionMismatch { expected: 5, found: 3 }));

    let mut s = spec(&inst, &dir.path().join("out"));
    s.runs = 0;
    assert!(matches!(cmd_solve(&s), Err(Error::InvalidArgument(_))));
}

fn pils_bin(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_pils")).args(args).output().unwrap()
}

#[test]
fn binary_exit_codes() {
    let dir = TempDir::new().unwrap();
    let inst = write_instance(dir.path(), "inst", 6, 2, 1);
    let inst = inst.to_str().unwrap();
    let out = dir.path().join("front.txt");

    let ok = pils_bin(&["oracle", "--instance", inst, "--tau", "0.6", "--out", out.to_str().unwrap()]);
    assert!(ok.status.success(), "{}", String::from_utf8_lossy(&ok.stderr));
    assert!(Front::parse(&fs::read_to_string(&out).unwrap()).is_ok());

    let metrics = pils_bin(&["metrics", "--reference", out.to_str().unwrap(), "--approx", out.to_str().unwrap()]);
    assert_eq!(String::from_utf8_lossy(&metrics.stdout).trim(), "0.0000 0.0000");

    let missing = pils_bin(&["sample", "--instance", "/nonexistent/x.txt", "--out", out.to_str().unwrap()]);
    assert_eq!(missing.status.code(), Some(3));

    let big = write_instance(dir.path(), "big", 11, 2, 1);
    let guard = pils_bin(&["oracle", "--instance", big.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(guard.status.code(), Some(5));

    let bad_tau = pils_bin(&["sample", "--instance", inst, "--tau", "1.5", "--out", out.to_str().unwrap()]);
    assert_eq!(bad_tau.status.code(), Some(2));

    let usage = pils_bin(&["solve", "--algo", "nope", "--instance", inst, "--out", "x"]);
    assert!(!usage.status.success());
}
