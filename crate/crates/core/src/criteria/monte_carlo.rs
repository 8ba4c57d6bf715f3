//! Monte Carlo estimators of EHVI and PoI.
//!
//! Samples are drawn in fixed-size batches. Batch `b` uses a ChaCha8 generator
//! seeded with `seed` on stream `b`, so the estimate depends only on
//! `(seed, samples)`: batch statistics are merged in batch order whatever the
//! number of workers.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use super::GaussPred;
use crate::error::{Error, Result};
use crate::par::{map_indexed, Execution};
use crate::pareto::{weakly_dominates, HviEvaluator, ParetoApprox, RefPoint};

/// Samples per batch.
pub const BATCH: usize = 8192;

const MIN_SAMPLES: usize = 1000;

/// Sample mean with its standard error `sd / sqrt(samples)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub value: f64,
    pub std_error: f64,
    pub samples: usize,
}

#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    n: f64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.n += 1.0;
        let delta = x - self.mean;
        self.mean += delta / self.n;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, o: Moments) -> Moments {
        if o.n == 0.0 {
            return self;
        }
        if self.n == 0.0 {
            return o;
        }
        let n = self.n + o.n;
        let delta = o.mean - self.mean;
        Moments {
            n,
            mean: self.mean + delta * o.n / n,
            m2: self.m2 + o.m2 + delta * delta * self.n * o.n / n,
        }
    }
}

fn estimate<F>(pred: &GaussPred, samples: usize, seed: u64, exec: Execution, f: F) -> Result<McEstimate>
where
    F: Fn(&[f64]) -> f64 + Sync + Send,
{
    if samples < MIN_SAMPLES {
        return Err(Error::InvalidArgument(format!(
            "at least {MIN_SAMPLES} samples required, got {samples}"
        )));
    }
    let d = pred.dim();
    let batches = samples.div_ceil(BATCH);
    let parts = map_indexed(batches, exec, |b| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(b as u64);
        let count = BATCH.min(samples - b * BATCH);
        let mut y = vec![0.0; d];
        let mut m = Moments::default();
        for _ in 0..count {
            for k in 0..d {
                let z: f64 = StandardNormal.sample(&mut rng);
                y[k] = pred.mu()[k] + pred.sigma()[k] * z;
            }
            m.push(f(&y));
        }
        m
    });
    let total = parts.into_iter().fold(Moments::default(), Moments::merge);
    let var = if total.n > 1.0 {
        (total.m2 / (total.n - 1.0)).max(0.0)
    } else {
        0.0
    };
    Ok(McEstimate {
        value: total.mean,
        std_error: (var / total.n).sqrt(),
        samples,
    })
}

/// Average hypervolume improvement of normal samples, each computed exactly
/// by [`HviEvaluator`]. Samples outside `[r, inf)` contribute zero.
pub fn mc_ehvi(pred: &GaussPred, p: &ParetoApprox, r: &RefPoint, samples: usize, seed: u64) -> Result<McEstimate> {
    mc_ehvi_with(pred, p, r, samples, seed, Execution::default())
}

pub fn mc_ehvi_with(
    pred: &GaussPred,
    p: &ParetoApprox,
    r: &RefPoint,
    samples: usize,
    seed: u64,
    exec: Execution,
) -> Result<McEstimate> {
    pred.check_dim(p.dim())?;
    let oracle = HviEvaluator::new(p, r)?;
    estimate(pred, samples, seed, exec, |y| oracle.eval_unchecked(y))
}

/// Fraction of normal samples not weakly dominated by any member of `p`.
pub fn mc_poi(pred: &GaussPred, p: &ParetoApprox, samples: usize, seed: u64) -> Result<McEstimate> {
    mc_poi_with(pred, p, samples, seed, Execution::default())
}

pub fn mc_poi_with(
    pred: &GaussPred,
    p: &ParetoApprox,
    samples: usize,
    seed: u64,
    exec: Execution,
) -> Result<McEstimate> {
    pred.check_dim(p.dim())?;
    let pts = p.points();
    estimate(pred, samples, seed, exec, |y| {
        if pts.iter().any(|q| weakly_dominates(q, y)) {
            0.0
        } else {
            1.0
        }
    })
}
