//! Restarted (mu, lambda) evolution strategy for maximizing a cheap criterion
//! over a box.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::par::{map_slice, Execution};

/// One evaluated point, in evaluation order.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub x: Vec<f64>,
    pub value: f64,
}

/// Strategy parameters. Step sizes are relative to the box width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EsParams {
    pub parents: usize,
    pub offspring: usize,
    pub initial_step: f64,
    pub min_step: f64,
    /// Generations without improving the restart's best before restarting.
    pub patience: usize,
}

impl Default for EsParams {
    fn default() -> Self {
        Self {
            parents: 5,
            offspring: 20,
            initial_step: 0.2,
            min_step: 1e-6,
            patience: 10,
        }
    }
}

/// Evaluates `f` on exactly `budget` points of the box and returns them all.
///
/// A tenth of the budget (at most 200) goes to a uniform design; the strategy
/// then restarts from the best design points, and later from fresh uniform
/// parents. Non-finite criterion values are treated as `-inf`.
pub fn maximize<F, R>(
    f: F,
    bounds: &[(f64, f64)],
    budget: usize,
    params: EsParams,
    rng: &mut R,
    exec: Execution,
) -> Vec<Candidate>
where
    F: Fn(&[f64]) -> f64 + Sync + Send,
    R: Rng + ?Sized,
{
    let m = bounds.len();
    let to_box = |u: &[f64]| -> Vec<f64> {
        u.iter()
            .zip(bounds)
            .map(|(t, (lo, hi))| (lo + t * (hi - lo)).clamp(*lo, *hi))
            .collect()
    };
    let mut all: Vec<Candidate> = Vec::with_capacity(budget);
    let eval_batch = |units: &[Vec<f64>], all: &mut Vec<Candidate>| -> Vec<f64> {
        let xs: Vec<Vec<f64>> = units.iter().map(|u| to_box(u)).collect();
        let vals = map_slice(&xs, exec, |x| {
            let v = f(x);
            if v.is_nan() {
                f64::NEG_INFINITY
            } else {
                v
            }
        });
        for (x, &value) in xs.into_iter().zip(&vals) {
            all.push(Candidate { x, value });
        }
        vals
    };
    let uniform = |rng: &mut R, k: usize| -> Vec<Vec<f64>> {
        (0..k).map(|_| (0..m).map(|_| rng.random::<f64>()).collect()).collect()
    };

    let n0 = (budget / 10).clamp(1, 200).min(budget);
    let design = uniform(rng, n0);
    let design_vals = eval_batch(&design, &mut all);
    let mut ranked: Vec<usize> = (0..n0).collect();
    ranked.sort_by(|&a, &b| design_vals[b].total_cmp(&design_vals[a]).then(a.cmp(&b)));
    let mut parents: Vec<(Vec<f64>, f64, f64)> = ranked
        .iter()
        .take(params.parents)
        .map(|&i| (design[i].clone(), design_vals[i], params.initial_step))
        .collect();

    let tau = 1.0 / (2.0 * m as f64).sqrt();
    let mut best = parents.first().map_or(f64::NEG_INFINITY, |p| p.1);
    let mut stall = 0usize;
    while all.len() < budget {
        let lambda = params.offspring.min(budget - all.len());
        let mut kids: Vec<Vec<f64>> = Vec::with_capacity(lambda);
        let mut steps: Vec<f64> = Vec::with_capacity(lambda);
        for k in 0..lambda {
            let (px, _, ps) = &parents[k % parents.len()];
            let z: f64 = StandardNormal.sample(rng);
            let s = ps * (tau * z).exp();
            let child: Vec<f64> = px
                .iter()
                .map(|&v| {
                    let e: f64 = StandardNormal.sample(rng);
                    (v + s * e).clamp(0.0, 1.0)
                })
                .collect();
            kids.push(child);
            steps.push(s);
        }
        let vals = eval_batch(&kids, &mut all);
        let mut order: Vec<usize> = (0..lambda).collect();
        order.sort_by(|&a, &b| vals[b].total_cmp(&vals[a]).then(a.cmp(&b)));
        parents = order
            .iter()
            .take(params.parents)
            .map(|&i| (kids[i].clone(), vals[i], steps[i]))
            .collect();
        if parents[0].1 > best {
            best = parents[0].1;
            stall = 0;
        } else {
            stall += 1;
        }
        let max_step = parents.iter().map(|p| p.2).fold(0.0, f64::max);
        if (stall >= params.patience || max_step < params.min_step) && all.len() < budget {
            let k = params.parents.min(budget - all.len());
            let fresh = uniform(rng, k);
            let fv = eval_batch(&fresh, &mut all);
            parents = fresh
                .into_iter()
                .zip(fv)
                .map(|(x, v)| (x, v, params.initial_step))
                .collect();
            best = parents.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
            stall = 0;
        }
    }
    all
}

/// Index of the largest value; ties go to the lowest index.
pub fn argmax(cands: &[Candidate]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, c) in cands.iter().enumerate() {
        match best {
            Some(b) if cands[b].value >= c.value => {}
            _ => best = Some(i),
        }
    }
    best
}
