use super::GaussPred;
use crate::decomposition::{self, BoxPartition, Hyperbox};
use crate::error::Result;
use crate::gauss::std_interval;
use crate::pareto::{weakly_dominates, ParetoApprox, RefPoint};
use crate::sum::Neumaier;

/// Probability that the prediction lands in the non-dominated space of `p`.
/// The partition is taken with reference `(-inf, .., -inf)`.
pub fn poi(pred: &GaussPred, p: &ParetoApprox) -> Result<f64> {
    pred.check_dim(p.dim())?;
    if pred.is_degenerate() {
        return Ok(indicator(pred.mu(), p.points()));
    }
    let part = decomposition::partition(p, &RefPoint::neg_infinity(p.dim()))?;
    Ok(poi_boxes(pred, part.boxes()))
}

/// Deterministic limit: one unless some member weakly dominates `y`.
fn indicator(y: &[f64], points: &[Vec<f64>]) -> f64 {
    if points.iter().any(|q| weakly_dominates(q, y)) {
        0.0
    } else {
        1.0
    }
}

/// Sum over boxes of the product of interval probabilities.
pub fn poi_boxes(pred: &GaussPred, boxes: &[Hyperbox]) -> f64 {
    let (m, s) = (pred.mu(), pred.sigma());
    let mut acc = Neumaier::default();
    for b in boxes {
        let mut prod = 1.0;
        for k in 0..pred.dim() {
            prod *= std_interval((b.lower[k] - m[k]) / s[k], (b.upper[k] - m[k]) / s[k]);
            if prod == 0.0 {
                break;
            }
        }
        acc.add(prod);
    }
    acc.value().clamp(0.0, 1.0)
}

/// PoI against a fixed front with the partition computed once.
#[derive(Debug, Clone)]
pub struct PoiEvaluator {
    points: Vec<Vec<f64>>,
    partition: BoxPartition,
}

impl PoiEvaluator {
    pub fn new(p: &ParetoApprox) -> Result<Self> {
        Ok(Self {
            points: p.points().to_vec(),
            partition: decomposition::partition(p, &RefPoint::neg_infinity(p.dim()))?,
        })
    }

    pub fn eval(&self, pred: &GaussPred) -> Result<f64> {
        pred.check_dim(self.partition.dim())?;
        if pred.is_degenerate() {
            return Ok(indicator(pred.mu(), &self.points));
        }
        Ok(poi_boxes(pred, self.partition.boxes()))
    }
}
