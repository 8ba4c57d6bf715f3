use boxehvi::surrogate::{corr, KrigingModel};

fn smooth(x: f64) -> f64 {
    (5.0 * x).sin() + 0.5 * x
}

#[test]
fn beats_constant_predictor_on_held_out_points() {
    let xs: Vec<Vec<f64>> = (0..8).map(|i| vec![i as f64 / 7.0]).collect();
    let ys: Vec<f64> = xs.iter().map(|x| smooth(x[0])).collect();
    let m = KrigingModel::fit(&xs, &ys, 1000).unwrap();
    let held: Vec<f64> = (0..50).map(|i| (i as f64 + 0.5) / 50.0).collect();
    let rmse = |f: &dyn Fn(f64) -> f64| {
        (held.iter().map(|&x| (f(x) - smooth(x)).powi(2)).sum::<f64>() / held.len() as f64).sqrt()
    };
    let kriging = rmse(&|x| m.predict(&[x]).unwrap().0);
    let constant = rmse(&|_| m.mu_hat());
    assert!(kriging < constant, "{kriging} vs {constant}");
}

#[test]
fn symmetric_data_gives_symmetric_predictions() {
    let xs: Vec<Vec<f64>> = [0.0, 0.2, 0.35, 0.65, 0.8, 1.0].iter().map(|&v| vec![v]).collect();
    let ys: Vec<f64> = xs.iter().map(|x| (x[0] - 0.5).powi(2)).collect();
    let m = KrigingModel::fit(&xs, &ys, 500).unwrap();
    for t in [0.05, 0.1, 0.25, 0.4] {
        let (a, va) = m.predict(&[0.5 + t]).unwrap();
        let (b, vb) = m.predict(&[0.5 - t]).unwrap();
        assert!((a - b).abs() < 1e-9 && (va - vb).abs() < 1e-9 * m.sigma2_hat(), "t={t}");
    }
}

#[test]
fn variance_grows_away_from_data() {
    let xs: Vec<Vec<f64>> = (0..6).map(|i| vec![i as f64 / 5.0]).collect();
    let ys: Vec<f64> = xs.iter().map(|x| smooth(x[0])).collect();
    let m = KrigingModel::fit(&xs, &ys, 1000).unwrap();
    for dir in [1.0, -1.0] {
        let start = if dir > 0.0 { 1.0 } else { 0.0 };
        let mut prev = -1.0;
        for k in 0..60 {
            let (_, v) = m.predict(&[start + dir * k as f64 * 0.05]).unwrap();
            assert!(v >= 0.0);
            assert!(v >= prev - 1e-12 * m.sigma2_hat(), "dir={dir} k={k}");
            prev = v;
        }
    }
}

#[test]
fn correlation_identity_and_symmetry() {
    let pts = [vec![0.1, 0.9, 0.4], vec![0.5, 0.2, 0.7], vec![1.0, 0.0, 0.3]];
    let theta = [0.5, 3.0, 20.0];
    for a in &pts {
        assert_eq!(corr(a, a, &theta).unwrap(), 1.0);
        for b in &pts {
            assert_eq!(corr(a, b, &theta).unwrap(), corr(b, a, &theta).unwrap());
        }
    }
}
