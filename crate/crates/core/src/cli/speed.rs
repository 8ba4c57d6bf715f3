//! Timing of exact EHVI on random fronts.

use std::hint::black_box;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::benchmarks::{random_front, FrontKind, FrontSpec};
use crate::criteria::{ehvi, ehvi_dd, GaussPred};
use crate::decomposition;
use crate::error::{Error, Result};
use crate::par::{map_indexed, Execution};
use crate::pareto::RefPoint;

/// Prediction used for every timed evaluation.
pub const MU: f64 = 10.0;
pub const SIGMA: f64 = 2.5;

/// Repetitions of one evaluation are timed together until at least this long.
const MIN_TIMED: Duration = Duration::from_millis(2);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    /// Dedicated path for two and three objectives.
    Auto,
    /// General box decomposition in every dimension.
    Dd,
}

impl std::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Algorithm::Auto),
            "dd" => Ok(Algorithm::Dd),
            _ => Err(Error::Parse(format!("unknown algorithm '{s}'"))),
        }
    }
}

impl Algorithm {
    pub fn label(self, d: usize) -> &'static str {
        match (self, d) {
            (Algorithm::Auto, 2) => "slices2d",
            (Algorithm::Auto, 3) => "sweep3d",
            _ => "boxes_dd",
        }
    }
}

/// One `(d, n)` cell of the report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpeedRow {
    pub d: usize,
    pub n: usize,
    pub kind: FrontKind,
    pub algorithm: &'static str,
    pub mean_seconds: f64,
    pub repetitions: usize,
    /// Mean number of boxes in the partitions.
    pub mean_boxes: f64,
    /// Sum of the EHVI values, identical across runs with the same seed.
    pub checksum: f64,
}

/// Front seed of repetition `rep` in cell `(d, n)`.
pub fn front_seed(seed: u64, d: usize, n: usize, rep: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(((d as u64) << 48) ^ ((n as u64) << 24) ^ rep as u64)
}

fn time_one(f: &dyn Fn() -> Result<f64>) -> Result<(f64, f64)> {
    let value = f()?;
    let mut reps = 1u32;
    loop {
        let t = Instant::now();
        for _ in 0..reps {
            black_box(f()?);
        }
        let e = t.elapsed();
        if e >= MIN_TIMED || reps >= 1 << 20 {
            return Ok((value, e.as_secs_f64() / reps as f64));
        }
        reps *= 2;
    }
}

pub struct SpeedPlan {
    pub ds: Vec<usize>,
    pub ns: Vec<usize>,
    pub kind: FrontKind,
    pub algorithm: Algorithm,
    pub reps: usize,
    pub seed: u64,
    pub exec: Execution,
}

pub fn run(plan: &SpeedPlan) -> Result<Vec<SpeedRow>> {
    if plan.reps == 0 {
        return Err(Error::InvalidArgument("reps must be positive".into()));
    }
    if let Some(&d) = plan.ds.iter().find(|&&d| !(2..=5).contains(&d)) {
        return Err(Error::InvalidArgument(format!("d must be in 2..=5, got {d}")));
    }
    if let Some(&n) = plan.ns.iter().find(|&&n| n == 0) {
        return Err(Error::InvalidArgument(format!("n must be positive, got {n}")));
    }
    let mut rows = Vec::new();
    for &d in &plan.ds {
        let pred = GaussPred::new(vec![MU; d], vec![SIGMA; d])?;
        let r = RefPoint::zeros(d);
        for &n in &plan.ns {
            let per_rep = map_indexed(plan.reps, plan.exec, |rep| -> Result<(f64, f64, usize)> {
                let p = random_front(FrontSpec::new(plan.kind, d, n, front_seed(plan.seed, d, n, rep)))?;
                let boxes = match plan.algorithm {
                    Algorithm::Auto => decomposition::partition(&p, &r)?.len(),
                    Algorithm::Dd => decomposition::partition_dd(&p, &r).len(),
                };
                let f = || match plan.algorithm {
                    Algorithm::Auto => ehvi(&pred, &p, &r),
                    Algorithm::Dd => ehvi_dd(&pred, &p, &r),
                };
                let (v, t) = time_one(&f)?;
                Ok((v, t, boxes))
            });
            let per_rep: Vec<(f64, f64, usize)> = per_rep.into_iter().collect::<Result<_>>()?;
            let k = plan.reps as f64;
            rows.push(SpeedRow {
                d,
                n,
                kind: plan.kind,
                algorithm: plan.algorithm.label(d),
                mean_seconds: per_rep.iter().map(|x| x.1).sum::<f64>() / k,
                repetitions: plan.reps,
                mean_boxes: per_rep.iter().map(|x| x.2 as f64).sum::<f64>() / k,
                checksum: per_rep.iter().map(|x| x.0).sum(),
            });
        }
    }
    Ok(rows)
}

/// Least-squares slope of `log(mean_seconds)` against `log(n)`.
pub fn loglog_slope(rows: &[SpeedRow]) -> Option<f64> {
    if rows.len() < 2 {
        return None;
    }
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| ((r.n as f64).ln(), r.mean_seconds.ln()))
        .collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}
