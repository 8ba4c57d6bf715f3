use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

/// Latin hypercube sample of `eta` points: along every coordinate each of the
/// `eta` equal-width strata holds exactly one point, jittered uniformly inside.
pub fn lhs<R: Rng + ?Sized>(eta: usize, bounds: &[(f64, f64)], rng: &mut R) -> Result<Vec<Vec<f64>>> {
    if eta == 0 {
        return Err(Error::InvalidArgument("LHS needs at least one point".into()));
    }
    if bounds.iter().any(|(lo, hi)| !(lo < hi)) {
        return Err(Error::InvalidArgument("bounds need lo < hi".into()));
    }
    let mut pts = vec![vec![0.0; bounds.len()]; eta];
    let mut strata: Vec<usize> = (0..eta).collect();
    for (k, &(lo, hi)) in bounds.iter().enumerate() {
        strata.shuffle(rng);
        for (i, p) in pts.iter_mut().enumerate() {
            let u: f64 = rng.random();
            let t = (strata[i] as f64 + u) / eta as f64;
            p[k] = (lo + t * (hi - lo)).min(hi);
        }
    }
    Ok(pts)
}
