//! DTLZ test problems and random non-dominated fronts.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mobgo::Problem;
use crate::pareto::{nd_filter, ParetoApprox};

/// Supported DTLZ problems.
pub const DTLZ_IDS: [u32; 6] = [1, 2, 3, 4, 5, 7];

const DTLZ4_ALPHA: f64 = 100.0;

/// Minimization DTLZ objectives `f(x)` for `x in [0, 1]^m` and `d` objectives.
pub fn dtlz_objectives(id: u32, x: &[f64], d: usize) -> Result<Vec<f64>> {
    let m = x.len();
    if d < 2 || m < d {
        return Err(Error::InvalidArgument(format!(
            "DTLZ needs 2 <= d <= m, got d={d}, m={m}"
        )));
    }
    let (head, tail) = x.split_at(d - 1);
    let k = tail.len() as f64;
    let rastrigin = || {
        100.0
            * (k + tail
                .iter()
                .map(|&v| (v - 0.5).powi(2) - (20.0 * PI * (v - 0.5)).cos())
                .sum::<f64>())
    };
    let sphere = || tail.iter().map(|&v| (v - 0.5).powi(2)).sum::<f64>();
    Ok(match id {
        1 => {
            let g = rastrigin();
            (0..d)
                .map(|j| {
                    let mut f = 0.5 * (1.0 + g);
                    f *= head[..d - 1 - j].iter().product::<f64>();
                    if j > 0 {
                        f *= 1.0 - head[d - 1 - j];
                    }
                    f
                })
                .collect()
        }
        2 => spherical(head, 1.0 + sphere(), d),
        3 => spherical(head, 1.0 + rastrigin(), d),
        4 => {
            let warped: Vec<f64> = head.iter().map(|v| v.powf(DTLZ4_ALPHA)).collect();
            spherical(&warped, 1.0 + sphere(), d)
        }
        5 => {
            let g = sphere();
            let mut angles = Vec::with_capacity(d - 1);
            angles.push(head[0]);
            for &v in &head[1..] {
                angles.push((1.0 + 2.0 * g * v) / (2.0 * (1.0 + g)));
            }
            spherical(&angles, 1.0 + g, d)
        }
        7 => {
            let g = 1.0 + 9.0 / k * tail.iter().sum::<f64>();
            let h = d as f64
                - head
                    .iter()
                    .map(|&f| f / (1.0 + g) * (1.0 + (3.0 * PI * f).sin()))
                    .sum::<f64>();
            let mut f = head.to_vec();
            f.push((1.0 + g) * h);
            f
        }
        _ => {
            return Err(Error::InvalidArgument(format!(
                "unsupported DTLZ id {id}, expected one of {DTLZ_IDS:?}"
            )))
        }
    })
}

/// `f_j = scale * prod_{i < d-1-j} cos(t_i pi/2) * sin(t_{d-1-j} pi/2)` with the
/// sine omitted for `j = 0`.
fn spherical(t: &[f64], scale: f64, d: usize) -> Vec<f64> {
    (0..d)
        .map(|j| {
            let mut f = scale;
            for &v in &t[..d - 1 - j] {
                f *= (v * PI / 2.0).cos();
            }
            if j > 0 {
                f *= (t[d - 1 - j] * PI / 2.0).sin();
            }
            f
        })
        .collect()
}

/// DTLZ problem on `[0, 1]^m` in the maximization convention (objectives negated).
pub fn dtlz(id: u32, m: usize, d: usize) -> Result<Problem> {
    if !DTLZ_IDS.contains(&id) {
        return Err(Error::InvalidArgument(format!(
            "unsupported DTLZ id {id}, expected one of {DTLZ_IDS:?}"
        )));
    }
    dtlz_objectives(id, &vec![0.5; m], d)?;
    Problem::new(
        format!("dtlz{id}"),
        vec![(0.0, 1.0); m],
        d,
        Arc::new(move |x: &[f64]| {
            Ok(dtlz_objectives(id, x, d)?.into_iter().map(|f| -f).collect())
        }),
    )
}

/// Customary three-objective reference point for each DTLZ problem, in the
/// native minimization coordinates.
pub fn dtlz_reference(id: u32) -> Option<[f64; 3]> {
    match id {
        1 => Some([400.0; 3]),
        2 | 4 => Some([2.5; 3]),
        3 => Some([1500.0; 3]),
        5 => Some([11.0; 3]),
        7 => Some([1.0, 1.0, 10.0]),
        _ => None,
    }
}

/// Shape of a random front.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrontKind {
    /// On the sphere of radius `R` in the positive orthant.
    ConcaveSpherical,
    /// `R` minus the concave shell, bulging toward the origin.
    ConvexSpherical,
}

impl fmt::Display for FrontKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FrontKind::ConcaveSpherical => "concave",
            FrontKind::ConvexSpherical => "convex",
        })
    }
}

impl FromStr for FrontKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "concave" | "concave_spherical" | "concavespherical" => Ok(FrontKind::ConcaveSpherical),
            "convex" | "convex_spherical" | "convexspherical" => Ok(FrontKind::ConvexSpherical),
            _ => Err(Error::Parse(format!("unknown front kind '{s}'"))),
        }
    }
}

/// Parameters of a random front.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrontSpec {
    pub kind: FrontKind,
    pub d: usize,
    pub n: usize,
    pub seed: u64,
    pub radius: f64,
}

impl FrontSpec {
    pub const DEFAULT_RADIUS: f64 = 10.0;

    pub fn new(kind: FrontKind, d: usize, n: usize, seed: u64) -> Self {
        Self {
            kind,
            d,
            n,
            seed,
            radius: Self::DEFAULT_RADIUS,
        }
    }
}

/// `n` mutually non-dominated points on a spherical shell, drawn from
/// normalized absolute Gaussian vectors. Deterministic per seed.
pub fn random_front(spec: FrontSpec) -> Result<ParetoApprox> {
    if spec.d < 2 {
        return Err(Error::DimensionTooSmall(spec.d));
    }
    if spec.n == 0 {
        return Err(Error::Empty);
    }
    if !(spec.radius > 0.0 && spec.radius.is_finite()) {
        return Err(Error::InvalidArgument(format!("radius must be positive, got {}", spec.radius)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut pts: Vec<Vec<f64>> = Vec::with_capacity(spec.n);
    loop {
        while pts.len() < spec.n {
            let g: Vec<f64> = (0..spec.d)
                .map(|_| {
                    let z: f64 = StandardNormal.sample(&mut rng);
                    z.abs()
                })
                .collect();
            let norm = g.iter().map(|v| v * v).sum::<f64>().sqrt();
            if !(norm > 0.0) {
                continue;
            }
            let y: Vec<f64> = match spec.kind {
                FrontKind::ConcaveSpherical => g.iter().map(|v| spec.radius * v / norm).collect(),
                FrontKind::ConvexSpherical => {
                    g.iter().map(|v| spec.radius * (1.0 - v / norm)).collect()
                }
            };
            if y.iter().all(|v| *v > 0.0) {
                pts.push(y);
            }
        }
        let front = nd_filter(&pts)?;
        if front.len() == spec.n {
            return Ok(front);
        }
        pts = front.into_points();
    }
}
