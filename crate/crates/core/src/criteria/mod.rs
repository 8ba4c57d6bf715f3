//! Infill criteria: exact EHVI and PoI over box partitions, and Monte Carlo
//! estimators used as independent oracles.

mod exact;
mod monte_carlo;
mod poi;

pub use exact::{ehvi, ehvi_2d, ehvi_3d, ehvi_boxes, ehvi_dd, ehvi_factored, EhviEvaluator};
pub use monte_carlo::{mc_ehvi, mc_ehvi_with, mc_poi, mc_poi_with, McEstimate, BATCH};
pub use poi::{poi, poi_boxes, PoiEvaluator};

use crate::error::{Error, Result};

/// Independent normal prediction per objective.
///
/// A zero standard deviation is allowed and sends every criterion to its
/// deterministic limit (hypervolume improvement at `mu`, or the improvement
/// indicator for PoI).
#[derive(Debug, Clone, PartialEq)]
pub struct GaussPred {
    mu: Vec<f64>,
    sigma: Vec<f64>,
}

impl GaussPred {
    pub fn new(mu: Vec<f64>, sigma: Vec<f64>) -> Result<Self> {
        if mu.len() != sigma.len() {
            return Err(Error::DimensionMismatch {
                expected: mu.len(),
                got: sigma.len(),
            });
        }
        if mu.len() < 2 {
            return Err(Error::DimensionTooSmall(mu.len()));
        }
        if let Some(i) = mu.iter().position(|m| !m.is_finite()) {
            return Err(Error::NonFinite { point: 0, index: i });
        }
        if let Some(&s) = sigma.iter().find(|s| !(s.is_finite() && **s >= 0.0)) {
            return Err(Error::InvalidSigma(s));
        }
        Ok(Self { mu, sigma })
    }

    pub fn dim(&self) -> usize {
        self.mu.len()
    }

    pub fn mu(&self) -> &[f64] {
        &self.mu
    }

    pub fn sigma(&self) -> &[f64] {
        &self.sigma
    }

    /// Some coordinate has zero spread.
    pub fn is_degenerate(&self) -> bool {
        self.sigma.contains(&0.0)
    }

    pub(crate) fn check_dim(&self, d: usize) -> Result<()> {
        if self.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: self.dim(),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(GaussPred::new(vec![1.0, 2.0], vec![1.0]).is_err());
        assert!(GaussPred::new(vec![1.0, 2.0], vec![1.0, -1.0]).is_err());
        assert!(GaussPred::new(vec![1.0, f64::INFINITY], vec![1.0, 1.0]).is_err());
        let g = GaussPred::new(vec![1.0, 2.0], vec![0.0, 1.0]).unwrap();
        assert!(g.is_degenerate());
    }
}
