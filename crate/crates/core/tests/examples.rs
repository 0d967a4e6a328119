// Each example is compiled into this test and driven through its `run`.

#[path = "../examples/evaluate_schedule.rs"]
mod evaluate_schedule;
#[path = "../examples/pareto_archive.rs"]
mod pareto_archive;
#[path = "../examples/exact_front.rs"]
mod exact_front;
#[path = "../examples/pils_vs_mos.rs"]
mod pils_vs_mos;
#[path = "../examples/descent_lengths.rs"]
mod descent_lengths;
#[path = "../examples/random_sampling.rs"]
mod random_sampling;

#[test]
fn evaluate_schedule_runs() {
    evaluate_schedule::run().unwrap();
}

#[test]
fn pareto_archive_runs() {
    pareto_archive::run().unwrap();
}

#[test]
fn neighborhoods_runs() {
    neighborhoods::run().unwrap();
}

#[test]
fn exact_front_runs() {
    exact_front::run().unwrap();
}

#[test]
fn pils_vs_mos_runs() {
    pils_vs_mos::run().unwrap();
    let [d1_pils, d1_mos, d2_pils, d2_mos] = pils_vs_mos::compare(8, 3, 5_000, 2, 3).unwrap();
    assert!([d1_pils, d1_mos, d2_pils, d2_mos].iter().all(|d| d.is_finite() && *d >= 0.0));
}

#[test]
fn descent_lengths_runs() {
    descent_lengths::run().unwrap();
    descent_lengths::run_with(&[(6, 3, 5)]).unwrap();
}

#[test]
fn random_sampling_runs() {
    random_sampling::run().unwrap();
    let dir = tempfile::tempdir().unwrap();
    random_sampling::run_in(dir.path(), 10, 500, 5_000).unwrap();
    for name in ["random.txt", "descent.txt", "front.txt"] {
        assert!(dir.path().join(name).exists(), "{name}");
    }
}
