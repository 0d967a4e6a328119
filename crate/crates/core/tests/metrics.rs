use pils::problem::{assign_due_dates, DueDateSource};
use pils::{brute_force_pareto, d_metrics, Evaluator, Front, Instance, ParetoArchive, Permutation};
use proptest::prelude::*;

fn points(max: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(0u32..500, 2), 1..max)
        .prop_map(|v| v.into_iter().map(|p| p.into_iter().map(f64::from).collect()).collect())
}

proptest! {
    #[test]
    fn d1_never_exceeds_d2(r in points(30), a in points(30)) {
        let m = d_metrics(&Front::from_points(r).unwrap(), &Front::from_points(a).unwrap()).unwrap();
        prop_assert!(m.d1 >= 0.0 && m.d1 <= m.d2 + 1e-12);
    }

    #[test]
    fn adding_points_never_hurts(r in points(30), a in points(30), extra in points(10)) {
        let reference = Front::from_points(r).unwrap();
        let before = d_metrics(&reference, &Front::from_points(a.clone()).unwrap()).unwrap();
        let after = d_metrics(&reference, &Front::from_points([a, extra].concat()).unwrap()).unwrap();
        prop_assert!(after.d1 <= before.d1 + 1e-12);
        prop_assert!(after.d2 <= before.d2 + 1e-12);
    }

    #[test]
    fn covering_the_reference_scores_zero(r in points(30), extra in points(10)) {
        let reference = Front::from_points(r.clone()).unwrap();
        let m = d_metrics(&reference, &Front::from_points([r, extra].concat()).unwrap()).unwrap();
        prop_assert_eq!((m.d1, m.d2), (0.0, 0.0));
    }

    #[test]
    fn invariant_under_objective_scaling(r in points(20), a in points(20), s0 in 1u32..50, s1 in 1u32..50) {
        let scale = |pts: &[Vec<f64>]| -> Vec<Vec<f64>> {
            pts.iter().map(|p| vec![p[0] * f64::from(s0), p[1] * f64::from(s1)]).collect()
        };
        // A zero range falls back to unit weight, which is not scale free.
        let reference = Front::from_points(r.clone()).unwrap();
        for k in 0..2 {
            let lo = reference.points().iter().map(|p| p[k]).fold(f64::INFINITY, f64::min);
            let hi = reference.points().iter().map(|p| p[k]).fold(f64::NEG_INFINITY, f64::max);
            prop_assume!(hi > lo);
        }
        let plain = d_metrics(&Front::from_points(r.clone()).unwrap(), &Front::from_points(a.clone()).unwrap()).unwrap();
        let scaled = d_metrics(&Front::from_points(scale(&r)).unwrap(), &Front::from_points(scale(&a)).unwrap()).unwrap();
        prop_assert!((plain.d1 - scaled.d1).abs() < 1e-9);
        prop_assert!((plain.d2 - scaled.d2).abs() < 1e-9);
    }
}

/// Every ordering of `seq[k..]`, by recursive swapping.
fn permutations(seq: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == seq.len() {
        out.push(seq.clone());
        return;
    }
    for i in k..seq.len() {
        seq.swap(k, i);
        permutations(seq, k + 1, out);
        seq.swap(k, i);
    }
}

#[test]
fn enumeration_matches_streaming_archive() {
    for (n, m, seed) in [(5, 3, 1), (6, 4, 2), (7, 2, 3)] {
        let inst = assign_due_dates(Instance::random(n, m, seed).unwrap(), &DueDateSource::Tightness(0.5)).unwrap();
        let mut ev = Evaluator::new(&inst);
        let mut archive = ParetoArchive::new();
        let mut all = Vec::new();
        permutations(&mut (0..n).collect(), 0, &mut all);
        assert_eq!(all.len(), (1..=n).product::<usize>());
        for seq in all {
            let perm = Permutation::new(seq).unwrap();
            let obj = ev.evaluate(&perm).unwrap();
            archive.update(perm, obj);
        }
        let mut streamed: Vec<_> = archive.objectives().cloned().collect();
        streamed.sort();
        streamed.dedup();
        let exact: Vec<_> = brute_force_pareto(&inst).unwrap().into_iter().map(|e| e.objectives).collect();
        assert_eq!(exact, streamed, "n={n}");
    }
}

#[test]
fn hand_checked_values() {
    let reference = Front::from_points(vec![vec![0.0, 10.0], vec![10.0, 0.0]]).unwrap();
    let approx = Front::from_points(vec![vec![5.0, 5.0]]).unwrap();
    let m = d_metrics(&reference, &approx).unwrap();
    assert!((m.d1 - 0.5).abs() < 1e-9 && (m.d2 - 0.5).abs() < 1e-9);
}
