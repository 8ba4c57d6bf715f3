use super::GaussPred;
use crate::decomposition::{self, BoxPartition, Hyperbox};
use crate::error::{Error, Result};
use crate::gauss::{expected_overlap, psi_inf, vartheta_unchecked};
use crate::pareto::{strictly_greater, weakly_dominates, HviEvaluator, ParetoApprox, RefPoint};
use crate::sum::Neumaier;

fn check(pred: &GaussPred, p: &ParetoApprox, r: &RefPoint) -> Result<()> {
    pred.check_dim(p.dim())?;
    p.check_reference(r)?;
    if !r.is_finite() {
        return Err(Error::InvalidArgument(
            "EHVI needs a finite reference point".into(),
        ));
    }
    Ok(())
}

/// `Psi(l, l) - Psi(l, u)` and `vartheta(l, u)`, the latter zero for `u = inf`.
#[inline]
fn omega(l: f64, u: f64, mu: f64, sigma: f64) -> (f64, f64) {
    let w0 = psi_inf(l, l, mu, sigma) - psi_inf(l, u, mu, sigma);
    let w1 = if u == f64::INFINITY {
        0.0
    } else {
        vartheta_unchecked(l, u, mu, sigma)
    };
    (w0, w1)
}

/// Bi-objective EHVI over the `n + 1` vertical slices.
pub fn ehvi_2d(pred: &GaussPred, p: &ParetoApprox, r: &RefPoint) -> Result<f64> {
    let part = decomposition::partition_2d(p, r)?;
    check(pred, p, r)?;
    if pred.is_degenerate() {
        return Ok(HviEvaluator::new(p, r)?.eval_unchecked(pred.mu()));
    }
    let (m, s) = (pred.mu(), pred.sigma());
    let mut acc = Neumaier::default();
    for b in part.boxes() {
        let (l, u) = (&b.lower, &b.upper);
        let (w0, w1) = omega(l[0], u[0], m[0], s[0]);
        let tail = psi_inf(l[1], l[1], m[1], s[1]);
        acc.add(w0 * tail + w1 * tail);
    }
    Ok(acc.value().max(0.0))
}

/// Three-objective EHVI over the sweep slices: four products per slice.
pub fn ehvi_3d(pred: &GaussPred, p: &ParetoApprox, r: &RefPoint) -> Result<f64> {
    let part = decomposition::partition_3d(p, r)?;
    check(pred, p, r)?;
    if pred.is_degenerate() {
        return Ok(HviEvaluator::new(p, r)?.eval_unchecked(pred.mu()));
    }
    let (m, s) = (pred.mu(), pred.sigma());
    let mut acc = Neumaier::default();
    for b in part.boxes() {
        let (l, u) = (&b.lower, &b.upper);
        let (a0, a1) = omega(l[0], u[0], m[0], s[0]);
        let (b0, b1) = omega(l[1], u[1], m[1], s[1]);
        let tail = psi_inf(l[2], l[2], m[2], s[2]);
        acc.add(a0 * b0 * tail + a0 * b1 * tail + a1 * b0 * tail + a1 * b1 * tail);
    }
    Ok(acc.value().max(0.0))
}

/// General-dimension EHVI over the local lower bound boxes.
pub fn ehvi_dd(pred: &GaussPred, p: &ParetoApprox, r: &RefPoint) -> Result<f64> {
    check(pred, p, r)?;
    if pred.is_degenerate() {
        return Ok(HviEvaluator::new(p, r)?.eval_unchecked(pred.mu()));
    }
    let part = decomposition::partition_dd(p, r);
    Ok(ehvi_boxes(pred, part.boxes()))
}

/// Dedicated path for two and three objectives, general path otherwise.
pub fn ehvi(pred: &GaussPred, p: &ParetoApprox, r: &RefPoint) -> Result<f64> {
    match p.dim() {
        2 => ehvi_2d(pred, p, r),
        3 => ehvi_3d(pred, p, r),
        _ => ehvi_dd(pred, p, r),
    }
}

/// EHVI over an arbitrary disjoint box cover of the non-dominated space.
///
/// Per box, the product over the first `d - 1` coordinates of either the
/// `Psi` difference or `vartheta` is summed over all `2^(d-1)` selections, then
/// multiplied by the last-coordinate factor. Selections using `vartheta` on an
/// unbounded side vanish and are skipped.
pub fn ehvi_boxes(pred: &GaussPred, boxes: &[Hyperbox]) -> f64 {
    let d = pred.dim();
    let (m, s) = (pred.mu(), pred.sigma());
    let mut w = vec![(0.0, 0.0); d];
    let mut acc = Neumaier::default();
    for b in boxes {
        for k in 0..d {
            w[k] = omega(b.lower[k], b.upper[k], m[k], s[k]);
        }
        let (last0, last1) = w[d - 1];
        let last = last0 + last1;
        if last == 0.0 {
            continue;
        }
        let mut inner = 0.0;
        'sel: for bits in 0u32..(1 << (d - 1)) {
            let mut prod = 1.0;
            for (k, &(w0, w1)) in w.iter().enumerate().take(d - 1) {
                if bits >> k & 1 == 1 {
                    if b.upper[k] == f64::INFINITY {
                        continue 'sel;
                    }
                    prod *= w1;
                } else {
                    prod *= w0;
                }
            }
            inner += prod;
        }
        acc.add(inner * last);
    }
    acc.value().max(0.0)
}

/// EHVI as the sum over boxes of the product of one-dimensional expected
/// overlaps. Algebraically equal to the selection sum; kept as a cross-check.
pub fn ehvi_factored(pred: &GaussPred, boxes: &[Hyperbox]) -> f64 {
    let (m, s) = (pred.mu(), pred.sigma());
    let acc: Neumaier = boxes
        .iter()
        .map(|b| {
            (0..pred.dim())
                .map(|k| expected_overlap(b.lower[k], b.upper[k], m[k], s[k]))
                .product::<f64>()
        })
        .collect();
    acc.value().max(0.0)
}

/// EHVI against a fixed front and reference, with the partition computed once.
#[derive(Debug, Clone)]
pub struct EhviEvaluator {
    points: Vec<Vec<f64>>,
    r: Vec<f64>,
    partition: BoxPartition,
}

impl EhviEvaluator {
    pub fn new(p: &ParetoApprox, r: &RefPoint) -> Result<Self> {
        p.check_reference(r)?;
        if !r.is_finite() {
            return Err(Error::InvalidArgument(
                "EHVI needs a finite reference point".into(),
            ));
        }
        Ok(Self {
            points: p.points().to_vec(),
            r: r.coords().to_vec(),
            partition: decomposition::partition(p, r)?,
        })
    }

    pub fn partition(&self) -> &BoxPartition {
        &self.partition
    }

    pub fn eval(&self, pred: &GaussPred) -> Result<f64> {
        pred.check_dim(self.r.len())?;
        if pred.is_degenerate() {
            let y = pred.mu();
            if !strictly_greater(y, &self.r) || self.points.iter().any(|q| weakly_dominates(q, y)) {
                return Ok(0.0);
            }
            return Ok(self.partition.clipped_volume(y));
        }
        Ok(ehvi_boxes(pred, self.partition.boxes()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig1() -> ParetoApprox {
        ParetoApprox::new(vec![vec![3.0, 1.0], vec![2.0, 1.5], vec![1.0, 2.5]]).unwrap()
    }

    #[test]
    fn degenerate_prediction_is_hvi() {
        let g = GaussPred::new(vec![2.8, 2.3], vec![0.0, 0.0]).unwrap();
        let v = ehvi_2d(&g, &fig1(), &RefPoint::zeros(2)).unwrap();
        assert!((v - 1.84).abs() < 1e-12);
    }

    #[test]
    fn tiny_sigma_inside_dominated_region() {
        let g = GaussPred::new(vec![0.5, 0.5], vec![1e-3, 1e-3]).unwrap();
        assert!(ehvi_2d(&g, &fig1(), &RefPoint::zeros(2)).unwrap() <= 1e-12);
    }

    #[test]
    fn paths_agree_on_worked_example() {
        let g = GaussPred::new(vec![2.5, 2.0], vec![0.7, 0.8]).unwrap();
        let r = RefPoint::zeros(2);
        let a = ehvi_2d(&g, &fig1(), &r).unwrap();
        let b = ehvi_dd(&g, &fig1(), &r).unwrap();
        assert!(a > 0.0);
        assert!((a - b).abs() <= 1e-12 * a);
    }

    #[test]
    fn selection_sum_equals_product_form() {
        let p = ParetoApprox::new(vec![
            vec![1.0, 3.0, 4.0, 2.0],
            vec![4.0, 2.0, 3.0, 1.0],
            vec![2.0, 4.0, 2.0, 3.0],
        ])
        .unwrap();
        let r = RefPoint::zeros(4);
        let g = GaussPred::new(vec![2.0, 3.0, 2.5, 2.0], vec![1.0, 0.5, 2.0, 1.5]).unwrap();
        let part = decomposition::partition_dd(&p, &r);
        let a = ehvi_boxes(&g, part.boxes());
        let b = ehvi_factored(&g, part.boxes());
        assert!((a - b).abs() <= 1e-12 * a, "{a} {b}");
    }

    #[test]
    fn evaluator_matches_direct() {
        let g = GaussPred::new(vec![2.5, 2.0], vec![0.7, 0.8]).unwrap();
        let r = RefPoint::zeros(2);
        let e = EhviEvaluator::new(&fig1(), &r).unwrap();
        let a = e.eval(&g).unwrap();
        let b = ehvi_2d(&g, &fig1(), &r).unwrap();
        assert!((a - b).abs() <= 1e-12 * a);
    }

    #[test]
    fn rejects_infinite_reference() {
        let g = GaussPred::new(vec![2.5, 2.0], vec![0.7, 0.8]).unwrap();
        assert!(ehvi_dd(&g, &fig1(), &RefPoint::neg_infinity(2)).is_err());
    }
}
