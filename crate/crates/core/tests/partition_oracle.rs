mod common;

use boxehvi::decomposition::{partition_2d, partition_3d, partition_dd};
use boxehvi::{BoxPartition, ParetoApprox, RefPoint};
use common::*;
use rand::Rng;

fn check(p: &ParetoApprox, part: &BoxPartition, samples: usize, seed: u64) -> usize {
    let d = p.dim();
    let r = vec![0.0; d];
    let top = 11.0;
    let grid = BoxGrid::new(part.boxes(), [-0.5, -0.5], [top, top], 48);
    let mut rng = rng(seed);
    let mut bad = 0;
    for _ in 0..samples {
        let z: Vec<f64> = (0..d).map(|_| rng.random::<f64>() * (top + 0.5) - 0.5).collect();
        let (closed, open) = grid.count(&z);
        let want = nondominated(&z, p, &r);
        if open > 1 || (closed > 0) != want {
            bad += 1;
        }
    }
    bad
}

#[test]
fn general_dimension_boxes_tile_nondominated_space() {
    let mut g = rng(7);
    for d in 2..=5 {
        for &n in &[1usize, 10, 50] {
            for t in 0..3 {
                let p = random_front(&mut g, d, n);
                let part = partition_dd(&p, &RefPoint::zeros(d));
                assert_eq!(check(&p, &part, 20_000, t), 0, "d={d} n={n}");
            }
        }
    }
}

#[test]
fn tied_fronts_tile_nondominated_space() {
    let mut g = rng(11);
    for d in 2..=5 {
        for t in 0..10 {
            let p = tied_front(&mut g, d, 30, 4);
            let part = partition_dd(&p, &RefPoint::zeros(d));
            assert_eq!(check(&p, &part, 20_000, t), 0, "dd d={d} {:?}", p.points());
            if d == 2 {
                let part = partition_2d(&p, &RefPoint::zeros(d)).unwrap();
                assert_eq!(check(&p, &part, 20_000, t), 0);
            }
            if d == 3 {
                let part = partition_3d(&p, &RefPoint::zeros(d)).unwrap();
                assert_eq!(check(&p, &part, 20_000, t), 0, "3d {:?}", p.points());
            }
        }
    }
}
