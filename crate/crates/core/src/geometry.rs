//! Reduction of arbitrary (annulus, point) queries to the canonical point-1
//! computation, plus kernel/metric/curvature assembly and convergence
//! harnesses for domain exhaustion.

use num_complex::Complex64;

use crate::annulus::{Annulus, Truncation};
use crate::error::{Error, Result};
use crate::series::{defect_canonical, j_triple_at_one, JTriple};

/// Canonical coordinates of a point inside an annulus: the point sits at
/// q^alpha of P(q, 1) with q = e^{-L}, and physical values are recovered by
/// J^(j)(z) = scale^{-2(j+1)} J_canonical^(j)(1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalPoint {
    pub alpha: f64,
    pub l: f64,
    pub scale: f64,
    pub log_scale: f64,
}

/// Kernel, metric and curvature data at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BergmanEval {
    pub j: JTriple,
    pub kernel: f64,
    pub metric_sq: f64,
    pub curvature: f64,
    pub defect: f64,
}

/// Translate/rotate/dilate the query to canonical coordinates. Only
/// |z - center| enters: rotations leave every J invariant.
pub fn normalize(ann: &Annulus, z: Complex64) -> Result<CanonicalPoint> {
    let d = (z - ann.center).norm();
    if !(d > 0.0) || !d.is_finite() {
        return Err(Error::OutOfDomain(format!(
            "|z - center| = {d} is not a positive finite distance"
        )));
    }
    let log_d = d.ln();
    if !(log_d > ann.log_r_inner) {
        return Err(Error::OutOfDomain(format!(
            "log|z - center| = {log_d} <= log r_inner = {}",
            ann.log_r_inner
        )));
    }
    if !(log_d < ann.log_r_outer) {
        return Err(Error::OutOfDomain(format!(
            "log|z - center| = {log_d} >= log r_outer = {}",
            ann.log_r_outer
        )));
    }
    let l = ann.log_r_outer - ann.log_r_inner;
    let alpha = (log_d - ann.log_r_outer) / (ann.log_r_inner - ann.log_r_outer);
    Ok(CanonicalPoint { alpha, l, scale: d, log_scale: log_d })
}

fn assemble(triple_canonical: JTriple, log_scale: f64) -> BergmanEval {
    // Scale factors applied in log space; the defect is scale-free and is
    // computed before any exponentiation can overflow.
    let defect = triple_canonical.j0 * triple_canonical.j2 / (triple_canonical.j1 * triple_canonical.j1);
    let j0 = (triple_canonical.j0.ln() - 2.0 * log_scale).exp();
    let j1 = (triple_canonical.j1.ln() - 4.0 * log_scale).exp();
    let j2 = (triple_canonical.j2.ln() - 6.0 * log_scale).exp();
    let metric_sq = (triple_canonical.j1.ln() - triple_canonical.j0.ln() - 2.0 * log_scale).exp();
    BergmanEval {
        j: JTriple { j0, j1, j2 },
        kernel: j0,
        metric_sq,
        curvature: 2.0 - defect,
        defect,
    }
}

/// Kernel, metric and curvature of `ann` at `z`.
pub fn bergman_eval(ann: &Annulus, z: Complex64, trunc: &Truncation) -> Result<BergmanEval> {
    let c = normalize(ann, z)?;
    let triple = j_triple_at_one(c.alpha, c.l, trunc)?;
    Ok(assemble(triple, c.log_scale))
}

/// Same as `bergman_eval` for the canonical geometry P(e^{-L}, 1) at e^{-alpha L},
/// taking (alpha, L) directly so extreme L never passes through linear radii.
pub fn bergman_eval_canonical(alpha: f64, l: f64, trunc: &Truncation) -> Result<BergmanEval> {
    let triple = j_triple_at_one(alpha, l, trunc)?;
    Ok(assemble(triple, -alpha * l))
}

/// Curvature of P(e^{-L}, 1) at the point e^{-alpha L}; scale-free, finite for
/// any L the series can resolve.
pub fn curvature_canonical(alpha: f64, l: f64, trunc: &Truncation) -> Result<f64> {
    Ok(2.0 - defect_canonical(alpha, l, trunc)?)
}

/// Report of the inclusion monotonicity check J_{P(q1,1)} >= J_{P(q2,1)} for
/// q1 > q2 (the smaller ring sits inside the larger one).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonotonicityReport {
    pub j_inner_domain: [f64; 3],
    pub j_outer_domain: [f64; 3],
    pub pass: bool,
}

pub fn inclusion_monotonicity_check(
    q1: f64,
    q2: f64,
    z: Complex64,
    trunc: &Truncation,
) -> Result<MonotonicityReport> {
    if !(q1 > 0.0 && q1 < 1.0 && q2 > 0.0 && q2 < 1.0 && q1 >= q2) {
        return Err(Error::Domain(format!("need 0 < q2 <= q1 < 1, got ({q1}, {q2})")));
    }
    let a1 = Annulus::new(Complex64::new(0.0, 0.0), q1.ln(), 0.0)?;
    let a2 = Annulus::new(Complex64::new(0.0, 0.0), q2.ln(), 0.0)?;
    let e1 = bergman_eval(&a1, z, trunc)?;
    let e2 = bergman_eval(&a2, z, trunc)?;
    let ji = [e1.j.j0, e1.j.j1, e1.j.j2];
    let jo = [e2.j.j0, e2.j.j1, e2.j.j2];
    let pass = ji.iter().zip(jo.iter()).all(|(a, b)| *a >= *b * (1.0 - 1e-12));
    Ok(MonotonicityReport { j_inner_domain: ji, j_outer_domain: jo, pass })
}

/// Exhaustion mode for `prop1_exhaustion_study`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExhaustionMode {
    /// Moduli decrease monotonically to the target (domains increase).
    Increasing,
    /// Moduli may oscillate while converging to the target.
    GeneralExhaustion,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExhaustionRow {
    pub q_nu: f64,
    pub abs_err: [f64; 3],
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExhaustionTable {
    pub rows: Vec<ExhaustionRow>,
    pub target_j: [f64; 3],
    pub pass: bool,
}

/// Evaluate J^(0..2) along a sequence of ring moduli q_nu converging to q and
/// tabulate the distance to the target values; the last row must be within
/// 1e-8 relative for the study to pass.
pub fn prop1_exhaustion_study(
    mode: ExhaustionMode,
    q: f64,
    z: Complex64,
    moduli: &[f64],
    trunc: &Truncation,
) -> Result<ExhaustionTable> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::Domain(format!("target modulus must lie in (0,1), got {q}")));
    }
    if moduli.is_empty() {
        return Err(Error::Domain("empty exhaustion sequence".into()));
    }
    if mode == ExhaustionMode::Increasing {
        for w in moduli.windows(2) {
            if w[1] > w[0] {
                return Err(Error::Domain(format!(
                    "increasing mode requires non-increasing moduli, got {} then {}",
                    w[0], w[1]
                )));
            }
        }
    }
    let target = Annulus::new(Complex64::new(0.0, 0.0), q.ln(), 0.0)?;
    let te = bergman_eval(&target, z, trunc)?;
    let target_j = [te.j.j0, te.j.j1, te.j.j2];
    let mut rows = Vec::with_capacity(moduli.len());
    for &q_nu in moduli {
        if !(q_nu > 0.0 && q_nu < 1.0) {
            return Err(Error::Domain(format!("sequence modulus must lie in (0,1), got {q_nu}")));
        }
        let ann = Annulus::new(Complex64::new(0.0, 0.0), q_nu.ln(), 0.0)?;
        let e = bergman_eval(&ann, z, trunc)?;
        rows.push(ExhaustionRow {
            q_nu,
            abs_err: [
                (e.j.j0 - target_j[0]).abs(),
                (e.j.j1 - target_j[1]).abs(),
                (e.j.j2 - target_j[2]).abs(),
            ],
        });
    }
    let last = rows.last().unwrap();
    let pass = (0..3).all(|i| last.abs_err[i] <= 1e-8 * target_j[i].abs());
    Ok(ExhaustionTable { rows, target_j, pass })
}
