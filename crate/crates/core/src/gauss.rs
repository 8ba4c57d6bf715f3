//! One-dimensional Gaussian kernels for the closed-form integrals.
//!
//! All kernels take arguments in the order `(a, b, mu, sigma)`.

use crate::error::{Error, Result};

const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// A univariate normal with `sigma > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gauss1D {
    mu: f64,
    sigma: f64,
}

impl Gauss1D {
    pub fn new(mu: f64, sigma: f64) -> Result<Self> {
        if !mu.is_finite() {
            return Err(Error::InvalidArgument(format!("mean must be finite, got {mu}")));
        }
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::InvalidSigma(sigma));
        }
        Ok(Self { mu, sigma })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }
}

/// Standard normal density.
#[inline]
pub fn std_phi(s: f64) -> f64 {
    if s.is_infinite() {
        return 0.0;
    }
    INV_SQRT_2PI * (-0.5 * s * s).exp()
}

/// Standard normal distribution function, via `erfc` so the lower tail keeps
/// full relative accuracy.
#[inline]
pub fn std_cdf(s: f64) -> f64 {
    if s == f64::INFINITY {
        return 1.0;
    }
    if s == f64::NEG_INFINITY {
        return 0.0;
    }
    0.5 * libm::erfc(-s * std::f64::consts::FRAC_1_SQRT_2)
}

/// Upper tail `1 - Phi(s)`, accurate for large `s`.
#[inline]
pub fn std_sf(s: f64) -> f64 {
    std_cdf(-s)
}

/// `P(a < Z < b)` for a standard normal `Z`, avoiding cancellation in either tail.
#[inline]
pub fn std_interval(a: f64, b: f64) -> f64 {
    if a >= b {
        return 0.0;
    }
    if a > 0.0 {
        std_sf(a) - std_sf(b)
    } else {
        std_cdf(b) - std_cdf(a)
    }
}

/// `int_b^inf (z - a) N(z; mu, sigma) dz = sigma phi(t) + (mu - a)(1 - Phi(t))`
/// with `t = (b - mu) / sigma`. Zero for `b = +inf`.
#[inline]
pub fn psi_inf(a: f64, b: f64, mu: f64, sigma: f64) -> f64 {
    if b == f64::INFINITY {
        return 0.0;
    }
    let t = (b - mu) / sigma;
    sigma * std_phi(t) + (mu - a) * std_sf(t)
}

/// `psi_inf` with the parameters of `g`.
#[inline]
pub fn psi(a: f64, b: f64, g: Gauss1D) -> f64 {
    psi_inf(a, b, g.mu, g.sigma)
}

/// Constant-improvement tail `(u - l)(1 - Phi((u - mu) / sigma))`.
pub fn vartheta(l: f64, u: f64, g: Gauss1D) -> Result<f64> {
    if !(l < u) || !l.is_finite() || !u.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "vartheta needs finite l < u, got l={l}, u={u}"
        )));
    }
    Ok(vartheta_unchecked(l, u, g.mu, g.sigma))
}

#[inline]
pub(crate) fn vartheta_unchecked(l: f64, u: f64, mu: f64, sigma: f64) -> f64 {
    (u - l) * std_sf((u - mu) / sigma)
}

/// One-dimensional improvement `min(u, y) - l` on the improving range `y >= l`.
pub fn ell(u: f64, y: f64, l: f64) -> Result<f64> {
    if y < l || u < l {
        return Err(Error::InvalidArgument(format!(
            "ell needs l <= y and l <= u, got l={l}, y={y}, u={u}"
        )));
    }
    Ok(u.min(y) - l)
}

/// `int_l^u (1 - Phi((z - mu) / sigma)) dz`, the expected length of
/// `[l, min(Y, u)]` truncated at zero. Equals `psi(l,l) - psi(l,u) + vartheta`.
#[inline]
pub(crate) fn expected_overlap(l: f64, u: f64, mu: f64, sigma: f64) -> f64 {
    let w0 = psi_inf(l, l, mu, sigma) - psi_inf(l, u, mu, sigma);
    if u == f64::INFINITY {
        w0
    } else {
        w0 + vartheta_unchecked(l, u, mu, sigma)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn density_values() {
        close(std_phi(0.0), 0.3989422804, 1e-10);
        close(std_phi(1.0), 0.2419707245, 1e-10);
        assert_eq!(std_phi(f64::INFINITY), 0.0);
        assert_eq!(std_phi(f64::NEG_INFINITY), 0.0);
    }

    #[test]
    fn cdf_values() {
        assert_eq!(std_cdf(0.0), 0.5);
        assert_eq!(std_cdf(f64::INFINITY), 1.0);
        assert_eq!(std_cdf(f64::NEG_INFINITY), 0.0);
        close(std_cdf(1.0), 0.8413447461, 1e-10);
        // deep lower tail keeps relative accuracy
        let t = std_cdf(-30.0);
        assert!(t > 0.0 && (t / 4.906713927148187e-198 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn psi_values() {
        let g = Gauss1D::new(0.0, 1.0).unwrap();
        close(psi(0.0, 0.0, g), 0.3989422804, 1e-10);
        assert_eq!(psi(3.0, f64::INFINITY, g), 0.0);
        close(psi(0.0, 1.0, g), 0.2419707245, 1e-10);
    }

    #[test]
    fn vartheta_values() {
        let g = Gauss1D::new(0.0, 1.0).unwrap();
        close(vartheta(0.0, 1.0, g).unwrap(), 0.1586552539, 1e-10);
        close(vartheta(0.0, 2.0, g).unwrap(), 0.0455002639, 1e-10);
        let far = Gauss1D::new(-1e6, 1.0).unwrap();
        assert_eq!(vartheta(0.0, 1.0, far).unwrap(), 0.0);
        assert!(vartheta(1.0, 1.0, g).is_err());
    }

    #[test]
    fn ell_values() {
        assert_eq!(ell(5.0, 3.0, 1.0).unwrap(), 2.0);
        assert_eq!(ell(5.0, 9.0, 1.0).unwrap(), 4.0);
        assert_eq!(ell(f64::INFINITY, 3.0, 1.0).unwrap(), 2.0);
        assert!(ell(5.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn sigma_must_be_positive() {
        assert!(Gauss1D::new(0.0, 0.0).is_err());
        assert!(Gauss1D::new(0.0, -1.0).is_err());
        assert!(Gauss1D::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn interval_tails() {
        close(std_interval(-1.0, 1.0), 0.6826894921370859, 1e-14);
        let hi = std_interval(10.0, 11.0);
        assert!(hi > 0.0 && (hi / 7.619661958203076e-24 - 1.0).abs() < 1e-9);
        assert_eq!(std_interval(1.0, 1.0), 0.0);
    }
}
