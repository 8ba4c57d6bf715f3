//! Nelder-Mead minimization inside a box. Trial points are clamped to the box.

/// Best point found and its objective value.
#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
}

/// Minimizes `f` starting at `x0` with initial edge length `step`, using at most
/// `budget >= 1` evaluations. The start is always evaluated first, so the
/// returned value never exceeds `f(x0)`. Non-finite values count as `+inf`.
pub fn minimize<F>(mut f: F, x0: &[f64], step: f64, lo: f64, hi: f64, budget: usize) -> Minimum
where
    F: FnMut(&[f64]) -> f64,
{
    let n = x0.len();
    let clamp = |x: &mut Vec<f64>| x.iter_mut().for_each(|v| *v = v.clamp(lo, hi));
    let mut evals = 0usize;
    let mut eval = |x: &[f64], evals: &mut usize| {
        *evals += 1;
        let v = f(x);
        if v.is_finite() {
            v
        } else {
            f64::INFINITY
        }
    };

    let mut start = x0.to_vec();
    clamp(&mut start);
    let f0 = eval(&start, &mut evals);
    let mut simplex: Vec<(Vec<f64>, f64)> = vec![(start.clone(), f0)];
    for i in 0..n {
        if evals >= budget {
            break;
        }
        let mut v = start.clone();
        // step away from the nearer bound so the vertex stays distinct
        v[i] = if v[i] + step <= hi { v[i] + step } else { v[i] - step };
        clamp(&mut v);
        let fv = eval(&v, &mut evals);
        simplex.push((v, fv));
    }
    if simplex.len() < n + 1 {
        return best_of(simplex, evals);
    }

    let (alpha, gamma, rho, shrink) = (1.0, 2.0, 0.5, 0.5);
    while evals < budget {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[n].1 - simplex[0].1;
        let size = simplex[1..]
            .iter()
            .map(|(v, _)| v.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if spread.abs() <= 1e-12 * (1.0 + simplex[0].1.abs()) && size <= 1e-9 {
            break;
        }
        let mut centroid = vec![0.0; n];
        for (v, _) in &simplex[..n] {
            for k in 0..n {
                centroid[k] += v[k] / n as f64;
            }
        }
        let along = |t: f64| -> Vec<f64> {
            let mut p: Vec<f64> = (0..n)
                .map(|k| centroid[k] + t * (simplex[n].0[k] - centroid[k]))
                .collect();
            p.iter_mut().for_each(|v| *v = v.clamp(lo, hi));
            p
        };
        let xr = along(-alpha);
        let fr = eval(&xr, &mut evals);
        if fr < simplex[0].1 {
            if evals >= budget {
                simplex[n] = (xr, fr);
                break;
            }
            let xe = along(-alpha * gamma);
            let fe = eval(&xe, &mut evals);
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
        } else {
            if evals >= budget {
                if fr < simplex[n].1 {
                    simplex[n] = (xr, fr);
                }
                break;
            }
            let (xc, fc) = if fr < simplex[n].1 {
                let xc = along(-alpha * rho);
                let fc = eval(&xc, &mut evals);
                (xc, fc)
            } else {
                let xc = along(rho);
                let fc = eval(&xc, &mut evals);
                (xc, fc)
            };
            if fc < simplex[n].1.min(fr) {
                simplex[n] = (xc, fc);
            } else {
                if fr < simplex[n].1 {
                    simplex[n] = (xr, fr);
                }
                let best = simplex[0].0.clone();
                for v in simplex.iter_mut().skip(1) {
                    if evals >= budget {
                        break;
                    }
                    let mut p: Vec<f64> = (0..n).map(|k| best[k] + shrink * (v.0[k] - best[k])).collect();
                    clamp(&mut p);
                    let fp = eval(&p, &mut evals);
                    *v = (p, fp);
                }
            }
        }
    }
    best_of(simplex, evals)
}

fn best_of(simplex: Vec<(Vec<f64>, f64)>, evaluations: usize) -> Minimum {
    let (x, value) = simplex
        .into_iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("nonempty simplex");
    Minimum {
        x,
        value,
        evaluations,
    }
}
