//! Annuli with log-domain radii and the closed-form monomial norms.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// Centered circular ring `r < |z - center| < R`, stored with log radii so
/// that radii like 1e-300 remain representable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Annulus {
    pub center: Complex64,
    pub log_r_inner: f64,
    pub log_r_outer: f64,
}

impl Annulus {
    pub fn new(center: Complex64, log_r_inner: f64, log_r_outer: f64) -> Result<Self> {
        if !log_r_inner.is_finite() || !log_r_outer.is_finite() {
            return Err(Error::Domain(format!(
                "log radii must be finite, got ({log_r_inner}, {log_r_outer})"
            )));
        }
        if !(log_r_inner < log_r_outer) {
            return Err(Error::Domain(format!(
                "need log_r_inner < log_r_outer, got ({log_r_inner}, {log_r_outer})"
            )));
        }
        if !center.re.is_finite() || !center.im.is_finite() {
            return Err(Error::Domain("center must be finite".into()));
        }
        Ok(Self { center, log_r_inner, log_r_outer })
    }

    /// Ring `r < |z - center| < R` from plain radii.
    pub fn from_radii(center: Complex64, r_inner: f64, r_outer: f64) -> Result<Self> {
        if !(r_inner > 0.0) || !r_inner.is_finite() {
            return Err(Error::Domain(format!("inner radius must be positive and finite, got {r_inner}")));
        }
        if !(r_outer > 0.0) || !r_outer.is_finite() {
            return Err(Error::Domain(format!("outer radius must be positive and finite, got {r_outer}")));
        }
        Self::new(center, r_inner.ln(), r_outer.ln())
    }

    pub fn r_inner(&self) -> f64 {
        self.log_r_inner.exp()
    }

    pub fn r_outer(&self) -> f64 {
        self.log_r_outer.exp()
    }

    /// Modulus ratio q = r/R in (0,1).
    pub fn modulus(&self) -> f64 {
        (self.log_r_inner - self.log_r_outer).exp()
    }
}

/// Series truncation policy for the infinite sums over the Laurent index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Truncation {
    pub rel_tol: f64,
    pub n_min: usize,
    pub n_max: usize,
    pub compensated: bool,
}

impl Default for Truncation {
    fn default() -> Self {
        Self { rel_tol: 1e-14, n_min: 8, n_max: 100_000, compensated: true }
    }
}

impl Truncation {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return Err(Error::Domain(format!("rel_tol must lie in (0,1), got {}", self.rel_tol)));
        }
        if self.n_min == 0 || self.n_min > self.n_max {
            return Err(Error::Domain(format!(
                "need 0 < n_min <= n_max, got ({}, {})",
                self.n_min, self.n_max
            )));
        }
        Ok(())
    }
}

/// Squared L2 norm of the monomial z^n over the ring with the given log radii:
/// 2pi (R^{2(n+1)} - r^{2(n+1)}) / (2(n+1)) for n != -1, and
/// 2pi (log R - log r) for n = -1.
///
/// Evaluated by factoring out the dominant exponential, so extreme radii never
/// hit a naive power of a tiny number.
pub fn alpha_norm(n: i64, log_r: f64, log_big_r: f64) -> Result<f64> {
    if !log_r.is_finite() || !log_big_r.is_finite() {
        return Err(Error::Domain(format!("log radii must be finite, got ({log_r}, {log_big_r})")));
    }
    if !(log_r < log_big_r) {
        return Err(Error::Domain(format!("need log_r < log_R, got ({log_r}, {log_big_r})")));
    }
    let m = n + 1;
    if m == 0 {
        return Ok(TWO_PI * (log_big_r - log_r));
    }
    let tm = 2.0 * m as f64;
    // (e^{tm logR} - e^{tm logr})/tm, factored around the dominant endpoint.
    let v = if m > 0 {
        (tm * log_big_r).exp() * (-((tm * (log_r - log_big_r)).exp_m1())) / tm
    } else {
        (tm * log_r).exp() * (tm * (log_big_r - log_r)).exp_m1() / tm
    };
    Ok(TWO_PI * v)
}
