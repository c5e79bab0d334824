//! Weighted power sums phi(j), psi(j) and the extremal values J^(0..2) at the
//! point 1 of the canonical annulus P(r^{1-alpha}, r^{-alpha}), r = e^{-L}.
//!
//! Internal phi/psi values use 2pi-free norms; the 2pi is restored when the
//! J values are assembled, so J^(0) is the true Bergman kernel.
//!
//! The psi series is additionally accumulated with the dominant exponential
//! family factored out (psi(j) = s * hat_psi(j), s = e^{-2 min(alpha,1-alpha) L}),
//! and the J^(1), J^(2) assemblies combine the pieces in log space. This keeps
//! the cancellation-free forms alive at L in the hundreds, where the raw psi
//! products would underflow.

use crate::annulus::{alpha_norm, Truncation, TWO_PI};
use crate::error::{Error, Result};

/// Neumaier compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
struct Comp {
    s: f64,
    c: f64,
    compensated: bool,
}

impl Comp {
    fn new(compensated: bool) -> Self {
        Self { s: 0.0, c: 0.0, compensated }
    }

    fn add(&mut self, x: f64) {
        if !self.compensated {
            self.s += x;
            return;
        }
        let t = self.s + x;
        if self.s.abs() >= x.abs() {
            self.c += (self.s - t) + x;
        } else {
            self.c += (x - t) + self.s;
        }
        self.s = t;
    }

    fn value(&self) -> f64 {
        self.s + self.c
    }
}

/// The series values psi(0..4), phi(0..4) at a given (alpha, L).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiTable {
    pub alpha: f64,
    pub l: f64,
    pub psi: [f64; 5],
    pub phi: [f64; 5],
    pub terms_used: usize,
    pub tail_bound: f64,
    /// log of the factored-out family scale s = e^{-2 min(alpha,1-alpha) L}.
    pub log_scale: f64,
    /// hat_psi(j) = psi(j)/s, accumulated directly (no underflow at large L).
    pub psi_hat: [f64; 5],
}

/// Solution (beta, gamma) of the two normal equations
/// phi(2) = beta phi(1) + gamma phi(0), phi(3) = beta phi(2) + gamma phi(1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremalShift {
    pub beta: f64,
    pub gamma: f64,
}

/// The extremal values J^(0), J^(1), J^(2) (true L2 normalization, kernel
/// convention K_disk(0) = 1/pi).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JTriple {
    pub j0: f64,
    pub j1: f64,
    pub j2: f64,
}

/// JTriple plus the relative discrepancy between the cancellation-free and
/// the naive phi-quotient evaluations. The naive values are NaN when the
/// naive denominator has lost all its digits (large L).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JTripleDetail {
    pub triple: JTriple,
    pub naive_j1_rel: f64,
    pub naive_j2_rel: f64,
}

/// Sum psi(j) = sum_{n>=0} 2(n+1)/(1 - r^{2(n+1)}) (n^j r^{2(n+1)alpha}
/// + (-1)^j (n+2)^j r^{2(n+1)(1-alpha)}) for j = 0..4 and assemble
/// phi(j) = (-1)^j/L + psi(j).
///
/// Powers of r are taken as exp of log-domain products throughout.
/// Termination: the current term of BOTH exponential families must fall below
/// rel_tol times the positive partial sum of the j = 4 series, after at least
/// n_min terms.
pub fn phi_psi_table(alpha: f64, l: f64, trunc: &Truncation) -> Result<PhiTable> {
    trunc.validate()?;
    if !(alpha > 0.0 && alpha < 1.0) || !alpha.is_finite() {
        return Err(Error::Domain(format!("alpha must lie in (0,1), got {alpha}")));
    }
    if !(l > 0.0) || !l.is_finite() {
        return Err(Error::Domain(format!("L must be positive and finite, got {l}")));
    }

    let log_scale = -2.0 * alpha.min(1.0 - alpha) * l;
    let mut acc = [Comp::new(trunc.compensated); 5];
    let mut terms_used = 0usize;
    let mut converged = false;
    let mut last_a = 0.0f64;
    let mut last_b = 0.0f64;
    let mut last_n = 0usize;

    for n in 0..=trunc.n_max {
        let m = (n + 1) as f64;
        // 1 - r^{2(n+1)} evaluated as -expm1.
        let denom = -(-2.0 * m * l).exp_m1();
        let w = 2.0 * m / denom;
        // Family factors with the dominant scale divided out; both exponents
        // are <= 0, so neither can overflow.
        let a = (-2.0 * m * alpha * l - log_scale).exp();
        let b = (-2.0 * m * (1.0 - alpha) * l - log_scale).exp();
        let nf = n as f64;
        let np2 = nf + 2.0;
        let mut npow = 1.0;
        let mut np2pow = 1.0;
        for (j, slot) in acc.iter_mut().enumerate() {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            slot.add(w * (npow * a + sign * np2pow * b));
            npow *= nf;
            np2pow *= np2;
        }
        terms_used = n + 1;
        let fa = w * nf.max(1.0).powi(4) * a;
        let fb = w * np2.powi(4) * b;
        last_a = fa;
        last_b = fb;
        last_n = n;
        let ref4 = acc[4].value();
        if n + 1 >= trunc.n_min && fa <= trunc.rel_tol * ref4 && fb <= trunc.rel_tol * ref4 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Convergence { n_max: trunc.n_max, last_term: last_a.max(last_b) });
    }

    let scale = log_scale.exp();

    // Geometric majorant on the truncated tail: consecutive term ratios are
    // bounded by the family decay times a polynomial growth fudge.
    let fudge = ((last_n as f64 + 3.0) / (last_n as f64 + 2.0)).powi(5);
    let qa = (-2.0 * alpha * l).exp() * fudge;
    let qb = (-2.0 * (1.0 - alpha) * l).exp() * fudge;
    let tail_a = if qa < 1.0 { last_a * scale * qa / (1.0 - qa) } else { f64::INFINITY };
    let tail_b = if qb < 1.0 { last_b * scale * qb / (1.0 - qb) } else { f64::INFINITY };
    let tail_bound = tail_a + tail_b;

    let psi_hat = [acc[0].value(), acc[1].value(), acc[2].value(), acc[3].value(), acc[4].value()];
    let mut psi = [0.0f64; 5];
    let mut phi = [0.0f64; 5];
    for j in 0..5 {
        psi[j] = scale * psi_hat[j];
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        phi[j] = sign / l + psi[j];
    }

    if !(phi[0] > 0.0 && phi[2] > 0.0 && phi[4] > 0.0) {
        return Err(Error::Internal(format!(
            "even phi moments must be positive, got ({}, {}, {})",
            phi[0], phi[2], phi[4]
        )));
    }

    Ok(PhiTable { alpha, l, psi, phi, terms_used, tail_bound, log_scale, psi_hat })
}

/// Solve the 2x2 normal system for (beta, gamma).
pub fn extremal_shift(t: &PhiTable) -> Result<ExtremalShift> {
    let denom = t.phi[1] * t.phi[1] - t.phi[2] * t.phi[0];
    if !(denom < 0.0) {
        return Err(Error::Internal(format!(
            "phi(1)^2 - phi(2)phi(0) must be negative (Cauchy-Schwarz), got {denom}"
        )));
    }
    let beta = (t.phi[2] * t.phi[1] - t.phi[3] * t.phi[0]) / denom;
    let gamma = (t.phi[1] * t.phi[3] - t.phi[2] * t.phi[2]) / denom;
    Ok(ExtremalShift { beta, gamma })
}

/// 1/L coefficient of the expanded J^(2) numerator
/// N = phi(4)phi(1)^2 - phi(4)phi(2)phi(0) - 2phi(3)phi(2)phi(1)
///   + phi(3)^2 phi(0) + phi(2)^3 after substituting phi(j) = (-1)^j/L + psi(j).
/// The 1/L^3 and 1/L^2 coefficients vanish identically (see the symbolic
/// check in `poly`).
pub fn j2_numerator_c1(psi: &[f64; 5]) -> f64 {
    let [p0, p1, p2, p3, p4] = *psi;
    p1 * p1 - 2.0 * p1 * p4 - p4 * p2 - p4 * p0 - p2 * p0 + 2.0 * p2 * p1 - 2.0 * p3 * p1
        + 2.0 * p2 * p3
        + p3 * p3
        - 2.0 * p0 * p3
        + 3.0 * p2 * p2
}

/// Constant (in 1/L) coefficient of the expanded J^(2) numerator.
pub fn j2_numerator_c0(psi: &[f64; 5]) -> f64 {
    let [p0, p1, p2, p3, p4] = *psi;
    p4 * p1 * p1 - p4 * p2 * p0 - 2.0 * p3 * p2 * p1 + p3 * p3 * p0 + p2 * p2 * p2
}

/// Expanded (exact-cancellation) value of the J^(2) numerator,
/// N = c1(psi)/L + c0(psi).
pub fn j2_numerator_expanded(t: &PhiTable) -> f64 {
    j2_numerator_c1(&t.psi) / t.l + j2_numerator_c0(&t.psi)
}

/// Expanded value of the denominator phi(1)^2 - phi(2)phi(0)
/// = -(psi(2) + psi(0) + 2psi(1))/L + (psi(1)^2 - psi(2)psi(0)).
/// The 1/L^2 coefficient vanishes identically.
pub fn denominator_expanded(t: &PhiTable) -> f64 {
    let [p0, p1, p2, _, _] = t.psi;
    -(p2 + p0 + 2.0 * p1) / t.l + (p1 * p1 - p2 * p0)
}

/// Naive phi-product value of the J^(2) numerator, for cross-checking only.
pub fn j2_numerator_naive(t: &PhiTable) -> f64 {
    let [f0, f1, f2, f3, f4] = t.phi;
    f4 * f1 * f1 - f4 * f2 * f0 - 2.0 * f3 * f2 * f1 + f3 * f3 * f0 + f2 * f2 * f2
}

/// Scale-factored pieces of the cancellation-free assembly:
/// denominator = s * d_hat, numerator = s^2 * n_hat, with s = e^{log_scale}.
/// Both hats are strictly negative for a healthy table.
struct ScaledParts {
    d_hat: f64,
    n_hat: f64,
}

fn scaled_parts(t: &PhiTable) -> Result<ScaledParts> {
    let s = t.log_scale.exp();
    let h = &t.psi_hat;
    // denominator/s = -(h2 + h0 + 2h1)/L + s*(h1^2 - h2*h0)
    let d_hat = -(h[2] + h[0] + 2.0 * h[1]) / t.l + s * (h[1] * h[1] - h[2] * h[0]);
    // numerator/s^2 = c1(h)/L + s*c0(h)
    let n_hat = j2_numerator_c1(h) / t.l + s * j2_numerator_c0(h);
    if !(d_hat < 0.0) {
        return Err(Error::Internal(format!(
            "scaled denominator must be negative, got {d_hat} (series underflow?)"
        )));
    }
    if !(n_hat < 0.0) {
        return Err(Error::Internal(format!("scaled J^(2) numerator must be negative, got {n_hat}")));
    }
    Ok(ScaledParts { d_hat, n_hat })
}

/// Natural logs of the true-normalized J^(0..2) at the point 1 of
/// P(r^{1-alpha}, r^{-alpha}); always finite, even where the linear values
/// would under- or overflow (extreme L).
pub fn log_j_triple(alpha: f64, l: f64, trunc: &Truncation) -> Result<[f64; 3]> {
    // The triple is invariant under alpha -> 1 - alpha (inversion of the ring
    // composed with a scaling fixes the canonical point). Evaluating on the
    // alpha <= 1/2 side keeps a non-cancelling leading term in the expanded
    // numerator; on the other side the O(1) parts of hat_psi cancel exactly
    // and the assembly loses all digits once L is large.
    let alpha = if alpha > 0.5 { 1.0 - alpha } else { alpha };
    let t = phi_psi_table(alpha, l, trunc)?;
    let p = scaled_parts(&t)?;
    let log_phi0 = t.phi[0].ln();
    Ok([
        log_phi0 - TWO_PI.ln(),
        t.log_scale + (-p.d_hat).ln() - log_phi0 - TWO_PI.ln(),
        t.log_scale + (p.n_hat / p.d_hat).ln() - TWO_PI.ln(),
    ])
}

/// J^(0..2) at the point 1 of P(r^{1-alpha}, r^{-alpha}), cancellation-free
/// path, with the relative discrepancy against the naive quotients recorded.
pub fn j_triple_with_discrepancy(alpha: f64, l: f64, trunc: &Truncation) -> Result<JTripleDetail> {
    // Reflect to the numerically stable side; see `log_j_triple`.
    let alpha = if alpha > 0.5 { 1.0 - alpha } else { alpha };
    let t = phi_psi_table(alpha, l, trunc)?;
    let p = scaled_parts(&t)?;

    let log_phi0 = t.phi[0].ln();
    let j0 = (log_phi0 - TWO_PI.ln()).exp();
    // J1 = -den/phi0 = s*(-d_hat)/phi0, assembled in log space.
    let log_j1_paper = t.log_scale + (-p.d_hat).ln() - log_phi0;
    let j1 = (log_j1_paper - TWO_PI.ln()).exp();
    // J2 = num/den = s*n_hat/d_hat.
    let log_j2_paper = t.log_scale + (p.n_hat / p.d_hat).ln();
    let j2 = (log_j2_paper - TWO_PI.ln()).exp();

    let triple = JTriple { j0, j1, j2 };
    if !(triple.j0 > 0.0 && triple.j1 > 0.0 && triple.j2 > 0.0) {
        return Err(Error::Internal(format!(
            "J values must be positive, got ({}, {}, {})",
            triple.j0, triple.j1, triple.j2
        )));
    }

    // Naive path straight from the phi's; meaningful only while the naive
    // denominator keeps digits (mild L).
    let d_naive = t.phi[1] * t.phi[1] - t.phi[2] * t.phi[0];
    let (naive_j1_rel, naive_j2_rel) = if d_naive < 0.0 {
        let j1_naive = (t.phi[2] * t.phi[0] - t.phi[1] * t.phi[1]) / t.phi[0];
        let j2_naive = j2_numerator_naive(&t) / d_naive;
        let j1_paper = log_j1_paper.exp();
        let j2_paper = log_j2_paper.exp();
        (((j1_naive - j1_paper) / j1_paper).abs(), ((j2_naive - j2_paper) / j2_paper).abs())
    } else {
        (f64::NAN, f64::NAN)
    };

    Ok(JTripleDetail { triple, naive_j1_rel, naive_j2_rel })
}

/// J^(0..2) at the point 1 of P(r^{1-alpha}, r^{-alpha}).
pub fn j_triple_at_one(alpha: f64, l: f64, trunc: &Truncation) -> Result<JTriple> {
    Ok(j_triple_with_discrepancy(alpha, l, trunc)?.triple)
}

/// Curvature defect J^(0)J^(2)/(J^(1))^2 of the canonical geometry; scale-free
/// and assembled in log space, so it survives L in the hundreds where the
/// physical J's would over- or underflow.
pub fn defect_canonical(alpha: f64, l: f64, trunc: &Truncation) -> Result<f64> {
    // Reflect to the numerically stable side; see `log_j_triple`.
    let alpha = if alpha > 0.5 { 1.0 - alpha } else { alpha };
    let t = phi_psi_table(alpha, l, trunc)?;
    let p = scaled_parts(&t)?;
    // defect = phi0^3 num/den^3 = phi0^3 * s^2 n_hat/(s^3 d_hat^3)
    //        = phi0^3 * (-n_hat) / (s * (-d_hat)^3).
    let log_defect =
        3.0 * t.phi[0].ln() + (-p.n_hat).ln() - t.log_scale - 3.0 * (-p.d_hat).ln();
    let defect = log_defect.exp();
    if !(defect > 0.0) {
        return Err(Error::Internal(format!("defect must be positive, got {defect}")));
    }
    Ok(defect)
}

/// Brute-force oracle: phi(j) as a partial sum over explicit monomial norms
/// of P(r^{1-alpha}, r^{-alpha}), one alpha_norm call per Laurent index.
pub fn brute_force_phi(alpha: f64, l: f64, range: i64) -> Result<[f64; 5]> {
    let log_r = -(1.0 - alpha) * l;
    let log_big_r = alpha * l;
    let mut out = [0.0f64; 5];
    for n in -range..=range {
        let norm = alpha_norm(n, log_r, log_big_r)?;
        let nf = n as f64;
        let mut p = 1.0;
        for slot in out.iter_mut() {
            *slot += p * TWO_PI / norm;
            p *= nf;
        }
    }
    Ok(out)
}
