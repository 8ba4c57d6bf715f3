mod common;

use boxehvi::decomposition::partition;
use boxehvi::pareto::hypervolume_slicing;
use boxehvi::{dominates, hvi, hypervolume, nd_filter, ParetoApprox, RefPoint};
use proptest::prelude::*;
use rand::Rng;

/// Inclusion-exclusion over subsets, in the minimization convention.
fn hv_min_inclusion_exclusion(a: &[Vec<f64>], r: &[f64]) -> f64 {
    let n = a.len();
    let mut total = 0.0;
    for mask in 1u32..(1 << n) {
        let mut v = 1.0;
        for k in 0..r.len() {
            let worst = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| a[i][k])
                .fold(f64::NEG_INFINITY, f64::max);
            v *= (r[k] - worst).max(0.0);
        }
        total += if mask.count_ones() % 2 == 1 { v } else { -v };
    }
    total
}

/// Unit voxels of `[0, top)^3` whose centre is dominated by the set.
fn voxels(points: &[Vec<f64>], top: usize) -> usize {
    let mut count = 0;
    for i in 0..top {
        for j in 0..top {
            for k in 0..top {
                let c = [i as f64 + 0.5, j as f64 + 0.5, k as f64 + 0.5];
                if points.iter().any(|p| p.iter().zip(&c).all(|(a, b)| a >= b)) {
                    count += 1;
                }
            }
        }
    }
    count
}

fn figure_right() -> Vec<Vec<f64>> {
    vec![vec![4.0, 4.0, 1.0], vec![1.0, 2.0, 4.0], vec![2.0, 1.0, 3.0]]
}

#[test]
fn three_d_hypervolume_matches_voxels() {
    let pts = figure_right();
    let p = ParetoApprox::new(pts.clone()).unwrap();
    let hv = hypervolume(&p, &RefPoint::zeros(3)).unwrap();
    assert_eq!(hv, voxels(&pts, 6) as f64);
}

#[test]
fn three_d_improvement_matches_voxels() {
    let pts = figure_right();
    let p = ParetoApprox::new(pts.clone()).unwrap();
    let y = vec![3.0, 3.0, 2.0];
    let mut with = pts.clone();
    with.push(y.clone());
    let want = voxels(&with, 6) - voxels(&pts, 6);
    assert_eq!(hvi(&y, &p, &RefPoint::zeros(3)).unwrap(), want as f64);
}

#[test]
fn filter_worked_example() {
    let pts = vec![vec![1.0, 2.5], vec![2.0, 1.5], vec![3.0, 1.0], vec![2.8, 2.3]];
    let f = nd_filter(&pts).unwrap();
    assert_eq!(f.points(), &[vec![1.0, 2.5], vec![3.0, 1.0], vec![2.8, 2.3]]);
}

#[test]
fn sweep_decomposition_and_sampling_agree() {
    let mut rng = common::rng(21);
    for d in 2..=3 {
        for &n in &[1usize, 7, 50] {
            let p = common::random_front(&mut rng, d, n);
            let r = RefPoint::zeros(d);
            let sweep = hypervolume(&p, &r).unwrap();
            let ideal: Vec<f64> = (0..d)
                .map(|k| p.points().iter().map(|q| q[k]).fold(0.0, f64::max))
                .collect();
            let bbox: f64 = ideal.iter().product();
            let part = partition(&p, &r).unwrap();
            let by_boxes = bbox - part.clipped_volume(&ideal);
            assert!((sweep - by_boxes).abs() <= 1e-9 * sweep, "d={d} n={n}");

            let samples = 1_000_000;
            let hits = (0..samples)
                .filter(|_| {
                    let z: Vec<f64> = ideal.iter().map(|&t| rng.random::<f64>() * t).collect();
                    p.points().iter().any(|q| q.iter().zip(&z).all(|(a, b)| a >= b))
                })
                .count() as f64;
            let f = hits / samples as f64;
            let se = bbox * (f * (1.0 - f) / samples as f64).sqrt();
            assert!((sweep - bbox * f).abs() <= 4.0 * se, "d={d} n={n}");
        }
    }
}

#[test]
fn general_dimension_matches_slicing() {
    let mut rng = common::rng(22);
    for d in 4..=5 {
        for &n in &[1usize, 5, 15] {
            let p = common::random_front(&mut rng, d, n);
            let r = RefPoint::zeros(d);
            let a = hypervolume(&p, &r).unwrap();
            let b = hypervolume_slicing(p.points(), r.coords());
            assert!((a - b).abs() <= 1e-9 * b, "d={d} n={n}: {a} {b}");
        }
    }
}

fn point(d: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(prop_oneof![(1u8..6).prop_map(f64::from), 0.5f64..6.0], d)
}

fn points(d: usize, max: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(point(d), 1..max)
}

proptest! {
    #[test]
    fn dominance_is_strict_partial_order(a in point(3), b in point(3), c in point(3)) {
        prop_assert!(!dominates(&a, &a).unwrap());
        prop_assert!(!(dominates(&a, &b).unwrap() && dominates(&b, &a).unwrap()));
        if dominates(&a, &b).unwrap() && dominates(&b, &c).unwrap() {
            prop_assert!(dominates(&a, &c).unwrap());
        }
    }

    #[test]
    fn filter_is_idempotent_and_complete(pts in points(3, 25)) {
        let f = nd_filter(&pts).unwrap();
        let kept = f.points();
        let again = nd_filter(kept).unwrap();
        prop_assert_eq!(again.points(), kept);
        for (i, a) in kept.iter().enumerate() {
            for (j, b) in kept.iter().enumerate() {
                prop_assert!(i == j || !dominates(a, b).unwrap());
            }
        }
        for q in &pts {
            prop_assert!(kept.contains(q) || kept.iter().any(|k| dominates(k, q).unwrap()));
        }
    }

    #[test]
    fn improvement_is_nonnegative_and_consistent(pts in points(3, 12), y in point(3)) {
        let p = nd_filter(&pts).unwrap();
        let r = RefPoint::zeros(3);
        let gain = hvi(&y, &p, &r).unwrap();
        prop_assert!(gain >= 0.0);
        let mut all = p.points().to_vec();
        all.push(y.clone());
        let after = hypervolume(&nd_filter(&all).unwrap(), &r).unwrap();
        let before = hypervolume(&p, &r).unwrap();
        prop_assert!(after >= before);
        prop_assert!((after - before - gain).abs() <= 1e-9 * after.max(1.0));
    }

    #[test]
    fn four_d_improvement_matches_difference(pts in points(4, 10), y in point(4)) {
        let p = nd_filter(&pts).unwrap();
        let r = RefPoint::zeros(4);
        let gain = hvi(&y, &p, &r).unwrap();
        let mut all = p.points().to_vec();
        all.push(y);
        let diff = hypervolume_slicing(&all, r.coords()) - hypervolume_slicing(p.points(), r.coords());
        prop_assert!((gain - diff).abs() <= 1e-9 * diff.abs().max(1.0), "{} {}", gain, diff);
    }

    #[test]
    fn negation_gives_minimization_volume(pts in points(3, 8)) {
        let p = nd_filter(&pts).unwrap();
        let r = RefPoint::zeros(3);
        let neg: Vec<Vec<f64>> = p.points().iter().map(|q| q.iter().map(|v| -v).collect()).collect();
        let want = hv_min_inclusion_exclusion(&neg, &[0.0; 3]);
        let got = hypervolume(&p, &r).unwrap();
        prop_assert!((got - want).abs() <= 1e-9 * want.max(1.0));
    }
}
