//! Ordinary Kriging with a Gaussian correlation kernel.
//!
//! Hyperparameters maximize the concentrated log-likelihood
//! `-(n/2) ln sigma2_hat - (1/2) ln |R|` over `log10 theta in [-3, 3]^m` with a
//! bounded Nelder-Mead search. Inputs are rescaled to the unit cube when box
//! bounds are supplied.

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};
use serde::Serialize;

use crate::criteria::GaussPred;
use crate::error::{Error, Result};
use crate::simplex;

/// Added to the correlation of a point with itself.
pub const NUGGET: f64 = 1e-10;

/// Likelihood evaluations spent by a default fit.
pub const DEFAULT_BUDGET: usize = 1000;

/// Variance floor applied when stacking predictions for the criteria.
pub const VARIANCE_FLOOR: f64 = 1e-12;

const LOG10_THETA_MIN: f64 = -3.0;
const LOG10_THETA_MAX: f64 = 3.0;

/// Gaussian correlation `prod_i exp(-theta_i (x_i - x2_i)^2)`.
pub fn corr(x: &[f64], x2: &[f64], theta: &[f64]) -> Result<f64> {
    if x.len() != x2.len() || x.len() != theta.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            got: if x2.len() != x.len() { x2.len() } else { theta.len() },
        });
    }
    if let Some(&t) = theta.iter().find(|t| !(**t >= 0.0)) {
        return Err(Error::InvalidArgument(format!("theta must be nonnegative, got {t}")));
    }
    Ok(corr_unchecked(x, x2, theta))
}

#[inline]
fn corr_unchecked(x: &[f64], x2: &[f64], theta: &[f64]) -> f64 {
    let mut s = 0.0;
    for i in 0..x.len() {
        let dx = x[i] - x2[i];
        s += theta[i] * dx * dx;
    }
    (-s).exp()
}

/// Options for [`KrigingModel::fit_with`].
#[derive(Debug, Clone, PartialEq)]
pub struct FitOptions {
    /// Likelihood evaluations for the hyperparameter search; 1 keeps the start.
    pub budget: usize,
    /// Box used to rescale inputs to `[0, 1]^m`. `None` leaves inputs as given.
    pub bounds: Option<Vec<(f64, f64)>>,
    /// Starting `theta` (default all ones).
    pub theta0: Option<Vec<f64>>,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            bounds: None,
            theta0: None,
        }
    }
}

/// A fitted ordinary Kriging model for one output.
#[derive(Debug, Clone)]
pub struct KrigingModel {
    theta: Vec<f64>,
    mu_hat: f64,
    sigma2_hat: f64,
    log_likelihood: f64,
    bounds: Option<Vec<(f64, f64)>>,
    train_x: Vec<Vec<f64>>,
    /// Normalized inputs.
    xs: Vec<Vec<f64>>,
    train_y: Vec<f64>,
    chol: Cholesky<f64, Dyn>,
    /// `R^-1 (y - mu_hat)`.
    alpha: DVector<f64>,
    /// `L^-1 1`.
    w: DVector<f64>,
    /// `1' R^-1 1`.
    one_r_one: f64,
}

/// Serializable snapshot of a fitted model.
#[derive(Debug, Clone, Serialize)]
pub struct KrigingDump {
    pub theta: Vec<f64>,
    pub mu_hat: f64,
    pub sigma2_hat: f64,
    pub log_likelihood: f64,
    pub bounds: Option<Vec<(f64, f64)>>,
    pub train_x: Vec<Vec<f64>>,
    pub train_y: Vec<f64>,
}

struct Factored {
    chol: Cholesky<f64, Dyn>,
    alpha: DVector<f64>,
    w: DVector<f64>,
    one_r_one: f64,
    mu_hat: f64,
    sigma2_hat: f64,
    log_likelihood: f64,
}

fn factor(xs: &[Vec<f64>], ys: &DVector<f64>, theta: &[f64]) -> Option<Factored> {
    let n = xs.len();
    let r = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            1.0 + NUGGET
        } else {
            corr_unchecked(&xs[i], &xs[j], theta)
        }
    });
    let chol = Cholesky::new(r)?;
    let ones = DVector::from_element(n, 1.0);
    let r_one = chol.solve(&ones);
    let r_y = chol.solve(ys);
    let one_r_one = ones.dot(&r_one);
    if !(one_r_one > 0.0) {
        return None;
    }
    let mu_hat = ones.dot(&r_y) / one_r_one;
    let resid = ys - DVector::from_element(n, mu_hat);
    let alpha = chol.solve(&resid);
    let sigma2_hat = (resid.dot(&alpha) / n as f64).max(0.0);
    let log_det: f64 = 2.0 * chol.l_dirty().diagonal().iter().map(|v| v.ln()).sum::<f64>();
    let log_likelihood = -(n as f64) / 2.0 * sigma2_hat.ln() - 0.5 * log_det;
    let mut w = ones;
    chol.l_dirty().solve_lower_triangular_mut(&mut w);
    Some(Factored {
        chol,
        alpha,
        w,
        one_r_one,
        mu_hat,
        sigma2_hat,
        log_likelihood,
    })
}

fn normalize(x: &[f64], bounds: &Option<Vec<(f64, f64)>>) -> Vec<f64> {
    match bounds {
        None => x.to_vec(),
        Some(b) => x
            .iter()
            .zip(b)
            .map(|(v, (lo, hi))| (v - lo) / (hi - lo))
            .collect(),
    }
}

impl KrigingModel {
    /// Fit with default options and the given likelihood budget.
    pub fn fit(xs: &[Vec<f64>], ys: &[f64], budget: usize) -> Result<Self> {
        Self::fit_with(
            xs,
            ys,
            &FitOptions {
                budget,
                ..FitOptions::default()
            },
        )
    }

    pub fn fit_with(xs: &[Vec<f64>], ys: &[f64], opts: &FitOptions) -> Result<Self> {
        let n = xs.len();
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "Kriging needs at least 2 training points, got {n}"
            )));
        }
        if ys.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: ys.len(),
            });
        }
        if opts.budget == 0 {
            return Err(Error::InvalidArgument("budget must be at least 1".into()));
        }
        let m = xs[0].len();
        if m == 0 {
            return Err(Error::InvalidArgument("empty decision vectors".into()));
        }
        for (i, x) in xs.iter().enumerate() {
            if x.len() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    got: x.len(),
                });
            }
            if let Some(index) = x.iter().position(|v| !v.is_finite()) {
                return Err(Error::NonFinite { point: i, index });
            }
        }
        if let Some(index) = ys.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { point: index, index: 0 });
        }
        if let Some(b) = &opts.bounds {
            if b.len() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    got: b.len(),
                });
            }
            if b.iter().any(|(lo, hi)| !(lo < hi)) {
                return Err(Error::InvalidArgument("bounds need lo < hi".into()));
            }
        }
        for i in 0..n {
            for j in 0..i {
                if xs[i] == xs[j] {
                    return Err(Error::DuplicateInput(j, i));
                }
            }
        }

        let norm: Vec<Vec<f64>> = xs.iter().map(|x| normalize(x, &opts.bounds)).collect();
        let yv = DVector::from_column_slice(ys);
        let start: Vec<f64> = match &opts.theta0 {
            Some(t) if t.len() == m => t
                .iter()
                .map(|v| v.log10().clamp(LOG10_THETA_MIN, LOG10_THETA_MAX))
                .collect(),
            Some(t) => {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    got: t.len(),
                })
            }
            None => vec![0.0; m],
        };
        let to_theta = |t: &[f64]| -> Vec<f64> { t.iter().map(|v| 10f64.powf(*v)).collect() };

        let constant = ys.iter().all(|&v| v == ys[0]);
        let log_theta = if constant || opts.budget == 1 {
            start
        } else {
            simplex::minimize(
                |t| match factor(&norm, &yv, &to_theta(t)) {
                    Some(f) => -f.log_likelihood,
                    None => f64::INFINITY,
                },
                &start,
                0.5,
                LOG10_THETA_MIN,
                LOG10_THETA_MAX,
                opts.budget,
            )
            .x
        };
        let theta = to_theta(&log_theta);
        let f = factor(&norm, &yv, &theta).ok_or(Error::NotPositiveDefinite)?;
        Ok(Self {
            theta,
            mu_hat: f.mu_hat,
            sigma2_hat: f.sigma2_hat,
            log_likelihood: f.log_likelihood,
            bounds: opts.bounds.clone(),
            train_x: xs.to_vec(),
            xs: norm,
            train_y: ys.to_vec(),
            chol: f.chol,
            alpha: f.alpha,
            w: f.w,
            one_r_one: f.one_r_one,
        })
    }

    /// Concentrated log-likelihood of `theta` on this model's training data.
    pub fn log_likelihood_at(&self, theta: &[f64]) -> Result<f64> {
        if theta.len() != self.theta.len() {
            return Err(Error::DimensionMismatch {
                expected: self.theta.len(),
                got: theta.len(),
            });
        }
        let yv = DVector::from_column_slice(&self.train_y);
        factor(&self.xs, &yv, theta)
            .map(|f| f.log_likelihood)
            .ok_or(Error::NotPositiveDefinite)
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn mu_hat(&self) -> f64 {
        self.mu_hat
    }

    pub fn sigma2_hat(&self) -> f64 {
        self.sigma2_hat
    }

    pub fn log_likelihood(&self) -> f64 {
        self.log_likelihood
    }

    pub fn input_dim(&self) -> usize {
        self.theta.len()
    }

    pub fn train_x(&self) -> &[Vec<f64>] {
        &self.train_x
    }

    pub fn train_y(&self) -> &[f64] {
        &self.train_y
    }

    /// Predictive mean and variance (clamped at zero).
    pub fn predict(&self, x: &[f64]) -> Result<(f64, f64)> {
        if x.len() != self.input_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.input_dim(),
                got: x.len(),
            });
        }
        let z = normalize(x, &self.bounds);
        let n = self.xs.len();
        // an exact training input correlates with itself like the diagonal does
        let mut c = DVector::from_fn(n, |i, _| {
            if self.xs[i] == z {
                1.0 + NUGGET
            } else {
                corr_unchecked(&z, &self.xs[i], &self.theta)
            }
        });
        let mean = self.mu_hat + c.dot(&self.alpha);
        self.chol.l_dirty().solve_lower_triangular_mut(&mut c);
        let ctc = c.dot(&c);
        let one_c = self.w.dot(&c);
        let var = self.sigma2_hat * (1.0 - ctc + (1.0 - one_c).powi(2) / self.one_r_one);
        Ok((mean, var.max(0.0)))
    }

    pub fn dump(&self) -> KrigingDump {
        KrigingDump {
            theta: self.theta.clone(),
            mu_hat: self.mu_hat,
            sigma2_hat: self.sigma2_hat,
            log_likelihood: self.log_likelihood,
            bounds: self.bounds.clone(),
            train_x: self.train_x.clone(),
            train_y: self.train_y.clone(),
        }
    }
}

/// Stacks per-objective predictions into a [`GaussPred`], flooring variances at
/// [`VARIANCE_FLOOR`].
pub fn predict_multi(models: &[KrigingModel], x: &[f64]) -> Result<GaussPred> {
    let mut mu = Vec::with_capacity(models.len());
    let mut sigma = Vec::with_capacity(models.len());
    for model in models {
        let (m, v) = model.predict(x)?;
        mu.push(m);
        sigma.push(v.max(VARIANCE_FLOOR).sqrt());
    }
    GaussPred::new(mu, sigma)
}
