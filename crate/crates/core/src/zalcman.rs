//! Sandwich-annulus curvature certificates and the deterministic constructor
//! of the disk-minus-holes domain whose curvature approaches 2 along one
//! point sequence and diverges to -infinity along another.
//!
//! Every certificate is for a finite-stage sandwich P(c, rad, d) subset D
//! subset P(c, rad, 1); the passage to the infinite-hole limit domain is an
//! assumption recorded on the output, not a verified claim.

use crate::annulus::Truncation;
use crate::error::{Error, Result};
use crate::series::log_j_triple;

/// exp with the result clamped into (0, f64::MAX]: an overflowing defect is
/// reported as f64::MAX, which keeps the certified bounds valid (the true
/// defect is even larger) and the intervals JSON-serializable.
fn exp_clamped(x: f64) -> f64 {
    if x > 709.0 {
        f64::MAX
    } else {
        x.exp()
    }
}

/// Assumption string attached to every emitted domain.
pub const PROP1_ASSUMPTION: &str = "finite-stage certificates only; Prop-1 limit step assumed";

/// Candidate ceiling for the constructor's hole-index search.
pub const CONSTRUCT_CEILING: u32 = 2000;

/// Closed hole disk centered at theta^n on the positive axis with radius
/// theta^{2n}. Log fields are primary: the linear `center` underflows for
/// large n and is kept for reporting only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hole {
    pub center: f64,
    pub log_center: f64,
    pub log_radius: f64,
    pub n: u32,
}

impl Hole {
    pub fn new(theta: f64, n: u32) -> Result<Self> {
        if !(theta > 0.0 && theta < 1.0) {
            return Err(Error::Domain(format!("theta must lie in (0,1), got {theta}")));
        }
        if n == 0 {
            return Err(Error::Domain("hole index must be positive".into()));
        }
        let lt = theta.ln();
        let log_center = n as f64 * lt;
        let log_radius = 2.0 * n as f64 * lt;
        Ok(Self { center: log_center.exp(), log_center, log_radius, n })
    }

    /// log(center + radius), computed without leaving log space.
    pub fn log_outer_reach(&self) -> f64 {
        self.log_center + (self.log_radius - self.log_center).exp().ln_1p()
    }

    /// log(center - radius); radius < center always holds for n >= 1.
    pub fn log_inner_reach(&self) -> f64 {
        self.log_center + (-(self.log_radius - self.log_center).exp()).ln_1p()
    }
}

/// Two-sided certified curvature bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureInterval {
    pub lo: f64,
    pub hi: f64,
}

/// One certified stage of the construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stage {
    pub hole: Hole,
    /// Test point at distance (theta^{2n})^{1/4} from the hole center.
    pub x_point: f64,
    /// Test point at distance (theta^{2n})^{1/2} from the hole center.
    pub y_point: f64,
    /// Certified hole-free outer radius around the hole center.
    pub clearance: f64,
    pub log_clearance: f64,
    pub x_cert: CurvatureInterval,
    pub y_cert: CurvatureInterval,
}

/// The constructed domain: 1/2 disk minus the listed holes, with per-stage
/// certificates.
#[derive(Debug, Clone, PartialEq)]
pub struct ZalcmanDomain {
    pub theta: f64,
    pub stages: Vec<Stage>,
}

/// Sandwich interval in pure log coordinates: hole radius, clearance and the
/// point distance rho are given as logs of lengths relative to the hole
/// center. Valid for any domain D with P(c, rad, d) subset D subset
/// P(c, rad, 1):
/// lo = 2 - Jup0*Jup2/Jlow1^2, hi = 2 - Jlow0*Jlow2/Jup1^2, where "up" is the
/// small annulus P(c, rad, d) and "low" the large annulus P(c, rad, 1).
pub fn sandwich_interval_logs(
    log_radius: f64,
    log_clearance: f64,
    log_rho: f64,
    trunc: &Truncation,
) -> Result<CurvatureInterval> {
    if !(log_clearance <= 0.0) {
        return Err(Error::Domain(format!(
            "clearance must be <= 1 (log {log_clearance} must be <= 0)"
        )));
    }
    if !(log_radius < log_rho && log_rho < log_clearance) {
        return Err(Error::OutOfDomain(format!(
            "need log_radius < log_rho < log_clearance, got ({log_radius}, {log_rho}, {log_clearance})"
        )));
    }
    // Canonical coordinates of the two sandwich annuli; both share the same
    // physical point, so the scale factors cancel in the mixed defects.
    let l_small = log_clearance - log_radius;
    let a_small = (log_rho - log_clearance) / (log_radius - log_clearance);
    let l_large = -log_radius;
    let a_large = log_rho / log_radius;
    let up = log_j_triple(a_small, l_small, trunc)?;
    let low = log_j_triple(a_large, l_large, trunc)?;
    let defect_up = exp_clamped(up[0] + up[2] - 2.0 * low[1]);
    let defect_lo = exp_clamped(low[0] + low[2] - 2.0 * up[1]);
    let lo = 2.0 - defect_up;
    let hi = 2.0 - defect_lo;
    if !(lo <= hi) {
        return Err(Error::Internal(format!("certified interval inverted: [{lo}, {hi}]")));
    }
    Ok(CurvatureInterval { lo, hi })
}

/// Sandwich interval for a point on the positive axis at linear scale; thin
/// wrapper over `sandwich_interval_logs` for holes whose coordinates are
/// representable linearly.
pub fn sandwich_curvature_bounds(
    hole: &Hole,
    clearance: f64,
    z: f64,
    trunc: &Truncation,
) -> Result<CurvatureInterval> {
    if !(clearance > 0.0 && clearance <= 1.0) {
        return Err(Error::Domain(format!("clearance must lie in (0,1], got {clearance}")));
    }
    let rho = (z - hole.center).abs();
    if !(rho > 0.0) {
        return Err(Error::OutOfDomain("point coincides with the hole center".into()));
    }
    sandwich_interval_logs(hole.log_radius, clearance.ln(), rho.ln(), trunc)
}

/// Report of the two-domain ratio check 1 <= J_{P(r,s)}(r^a)/J_{P(r,1)}(r^a)
/// <= e^{eps L}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioReport {
    pub ratios: [f64; 3],
    pub upper_bound: f64,
    pub pass: bool,
}

/// Compute the three J ratios through the rescaling identity
/// J_{P(r,s)}^(j)(r^a) = s^{-2(j+1)} J_{P(r/s,1)}^(j)(r^a/s): in canonical
/// coordinates the ratio is J_can(a2, L2)/J_can(a, L) with
/// a2 = (aL + log s)/(L + log s) read on the rescaled ring.
pub fn ratio_bound_check(
    l: f64,
    s: f64,
    alpha: f64,
    eps: f64,
    trunc: &Truncation,
) -> Result<RatioReport> {
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::Domain(format!("s must lie in (0,1), got {s}")));
    }
    if !(eps > 0.0) {
        return Err(Error::Domain(format!("eps must be positive, got {eps}")));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!("alpha must lie in (0,1), got {alpha}")));
    }
    let ls = s.ln();
    if !(-l < ls) {
        return Err(Error::Domain(format!("need r = e^{{-{l}}} < s = {s}")));
    }
    // Point must lie inside P(r, s): r^alpha < s.
    if !(-alpha * l < ls) {
        return Err(Error::Domain(format!(
            "point r^alpha = e^{{{}}} is not inside P(r, s = {s})",
            -alpha * l
        )));
    }
    let l2 = l + ls;
    let a2 = (-alpha * l - ls) / (-l - ls);
    let base = log_j_triple(alpha, l, trunc)?;
    let cut = log_j_triple(a2, l2, trunc)?;
    let ratios = [
        exp_clamped(cut[0] - base[0]),
        exp_clamped(cut[1] - base[1]),
        exp_clamped(cut[2] - base[2]),
    ];
    let upper_bound = (eps * l).exp();
    let pass = ratios
        .iter()
        .all(|&r| r >= 1.0 - 1e-12 && r <= upper_bound * (1.0 + 1e-12));
    Ok(RatioReport { ratios, upper_bound, pass })
}

const LOG_HALF: f64 = -std::f64::consts::LN_2;

/// Geometry conditions (a) for a candidate stage, in log-safe arithmetic.
fn geometry_ok(hole: &Hole, log_clearance: f64, slack: f64, prior: &[Stage]) -> bool {
    // Hole reach strictly below the slack-tightened clearance.
    if !(hole.log_outer_reach() < log_clearance + (1.0 - slack).ln()) {
        return false;
    }
    // Hole inside the open half disk.
    if !(hole.log_outer_reach() < LOG_HALF) {
        return false;
    }
    // Test points strictly inside the clearance annulus.
    let lt = hole.log_radius / (2.0 * hole.n as f64);
    let log_rho_x = hole.n as f64 * lt / 2.0;
    let log_rho_y = hole.n as f64 * lt;
    for lr in [log_rho_x, log_rho_y] {
        if !(hole.log_radius < lr && lr < log_clearance) {
            return false;
        }
    }
    // Disjoint from every prior closed hole.
    for st in prior {
        if !(hole.log_outer_reach() < st.hole.log_inner_reach()) {
            return false;
        }
    }
    true
}

/// Deterministic constructor. Stage k searches candidate hole indices
/// n = 2 n_{k-1}+1, +1 steps, up to `CONSTRUCT_CEILING`, accepting the first
/// n whose geometry holds and whose sandwich certificates clear the stage-k
/// targets with multiplicative slack on the defect.
pub fn construct(theta: f64, stages: usize, slack: f64) -> Result<ZalcmanDomain> {
    construct_with_ceiling(theta, stages, slack, CONSTRUCT_CEILING)
}

pub fn construct_with_ceiling(
    theta: f64,
    stages: usize,
    slack: f64,
    ceiling: u32,
) -> Result<ZalcmanDomain> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::Domain(format!("theta must lie in (0,1), got {theta}")));
    }
    if stages == 0 {
        return Err(Error::Domain("stage count must be >= 1".into()));
    }
    if !(0.0..1.0).contains(&slack) {
        return Err(Error::Domain(format!("slack must lie in [0,1), got {slack}")));
    }
    let trunc = Truncation::default();
    let lt = theta.ln();

    // n0: smallest n with theta^n + theta^{2n} < 1/4.
    let mut n0 = 1u32;
    loop {
        let reach = (n0 as f64 * lt).exp() + (2.0 * n0 as f64 * lt).exp();
        if reach < 0.25 {
            break;
        }
        n0 += 1;
        if n0 > ceiling {
            return Err(Error::Construction {
                stage: 0,
                reason: "no hole index satisfies theta^n + theta^{2n} < 1/4".into(),
            });
        }
    }

    let mut out = ZalcmanDomain { theta, stages: Vec::with_capacity(stages) };
    let mut n_prev = n0;
    for k in 1..=stages {
        let log_clearance = if k == 1 {
            0.25f64.ln()
        } else {
            // d_k = theta^{n_{k-1}} - theta^{2 n_{k-1}}, in log space.
            let np = n_prev as f64;
            np * lt + (-(np * lt).exp()).ln_1p()
        };
        let target_up = 1.0 / k as f64;
        let target_lo = 2.0 + k as f64;

        let mut found = None;
        let mut last_reason = String::from("no candidate reached");
        let mut n = 2 * n_prev + 1;
        while n <= ceiling {
            let hole = Hole::new(theta, n)?;
            if !geometry_ok(&hole, log_clearance, slack, &out.stages) {
                last_reason = format!("geometry conditions fail at n = {n}");
                n += 1;
                continue;
            }
            let log_rho_x = n as f64 * lt / 2.0;
            let log_rho_y = n as f64 * lt;
            // A candidate whose certificate cannot even be evaluated (series
            // underflow at extreme aspect ratios) is simply not certifiable.
            let certs = sandwich_interval_logs(hole.log_radius, log_clearance, log_rho_x, &trunc)
                .and_then(|x| {
                    let y =
                        sandwich_interval_logs(hole.log_radius, log_clearance, log_rho_y, &trunc)?;
                    Ok((x, y))
                });
            let (x_cert, y_cert) = match certs {
                Ok(pair) => pair,
                Err(e) => {
                    last_reason = format!("at n = {n}: certificate evaluation failed: {e}");
                    n += 1;
                    continue;
                }
            };
            let defect_up_x = 2.0 - x_cert.lo;
            let defect_lo_y = 2.0 - y_cert.hi;
            // Certify with multiplicative slack widening on the defects.
            let x_ok = defect_up_x * (1.0 + slack) < target_up;
            let y_ok = defect_lo_y / (1.0 + slack) > target_lo;
            if x_ok && y_ok {
                found = Some(Stage {
                    hole,
                    x_point: hole.center + log_rho_x.exp(),
                    y_point: hole.center + log_rho_y.exp(),
                    clearance: log_clearance.exp(),
                    log_clearance,
                    x_cert,
                    y_cert,
                });
                break;
            }
            last_reason = if !x_ok {
                format!(
                    "at n = {n}: defect upper bound {defect_up_x:.6e} * (1+slack) >= 1/k = {target_up:.6e}"
                )
            } else {
                format!(
                    "at n = {n}: defect lower bound {defect_lo_y:.6e} / (1+slack) <= 2+k = {target_lo:.6e}"
                )
            };
            n += 1;
        }
        match found {
            Some(stage) => {
                n_prev = stage.hole.n;
                out.stages.push(stage);
            }
            None => {
                return Err(Error::Construction {
                    stage: k,
                    reason: format!("candidate ceiling {ceiling} reached; {last_reason}"),
                })
            }
        }
    }
    Ok(out)
}

/// Geometry/certificate re-validation report.
#[derive(Debug, Clone, PartialEq)]
pub struct GeometryReport {
    pub pass: bool,
    pub first_violation: Option<String>,
}

/// Re-check every structural invariant of a domain in log-safe arithmetic.
pub fn validate_geometry(dom: &ZalcmanDomain) -> GeometryReport {
    let fail = |msg: String| GeometryReport { pass: false, first_violation: Some(msg) };
    if !(dom.theta > 0.0 && dom.theta < 1.0) {
        return fail(format!("theta {} outside (0,1)", dom.theta));
    }
    for (i, st) in dom.stages.iter().enumerate() {
        let k = i + 1;
        let h = &st.hole;
        if i > 0 && h.n <= dom.stages[i - 1].hole.n {
            return fail(format!("stage {k}: hole index {} not increasing", h.n));
        }
        if !(h.log_radius < h.log_center) {
            return fail(format!("stage {k}: hole contains the origin"));
        }
        if !(h.log_outer_reach() < LOG_HALF) {
            return fail(format!("stage {k}: hole leaves the half disk"));
        }
        for (j, other) in dom.stages.iter().enumerate() {
            if j > i && !(other.hole.log_outer_reach() < h.log_inner_reach()) {
                return fail(format!("stages {k}/{}: closed holes overlap", j + 1));
            }
        }
        // Test points strictly inside the certified annulus around the hole.
        for (name, p) in [("x", st.x_point), ("y", st.y_point)] {
            let rho = p - h.center;
            if !(rho > 0.0) {
                return fail(format!("stage {k}: {name} point not outside the hole center"));
            }
            if !(rho.ln() > h.log_radius && rho.ln() < st.log_clearance) {
                return fail(format!("stage {k}: {name} point outside the certified annulus"));
            }
        }
        if !(st.x_cert.lo <= st.x_cert.hi && st.y_cert.lo <= st.y_cert.hi) {
            return fail(format!("stage {k}: inverted certificate interval"));
        }
        if !(st.x_cert.hi < 2.0 && st.y_cert.hi < 2.0) {
            return fail(format!("stage {k}: certificate reaches curvature 2"));
        }
        if !(st.x_cert.lo > 2.0 - 1.0 / k as f64) {
            return fail(format!(
                "stage {k}: x certificate lo = {} misses 2 - 1/k",
                st.x_cert.lo
            ));
        }
        if !(st.y_cert.hi < -(k as f64)) {
            return fail(format!("stage {k}: y certificate hi = {} misses -k", st.y_cert.hi));
        }
    }
    GeometryReport { pass: true, first_violation: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use crate::geometry::bergman_eval;
    use crate::annulus::Annulus;
    use num_complex::Complex64;

    fn tr() -> Truncation {
        Truncation::default()
    }

    #[test]
    fn degenerate_sandwich_collapses() {
        let hole = Hole::new(0.5, 3).unwrap();
        let z = hole.center + 0.05;
        let iv = sandwich_curvature_bounds(&hole, 1.0, z, &tr()).unwrap();
        assert_relative_eq!(iv.lo, iv.hi, max_relative = 1e-12);
        // The collapsed value is the plain curvature of P(center, radius, 1).
        let ann = Annulus::new(Complex64::new(hole.center, 0.0), hole.log_radius, 0.0).unwrap();
        let e = bergman_eval(&ann, Complex64::new(z, 0.0), &tr()).unwrap();
        assert_relative_eq!(iv.lo, e.curvature, max_relative = 1e-10);
    }

    #[test]
    fn interval_contains_both_bounding_curvatures() {
        let hole = Hole::new(0.5, 4).unwrap();
        for &d in &[0.3f64, 0.6, 0.9] {
            let z = hole.center + 0.02;
            let iv = sandwich_curvature_bounds(&hole, d, z, &tr()).unwrap();
            let small =
                Annulus::new(Complex64::new(hole.center, 0.0), hole.log_radius, d.ln()).unwrap();
            let large = Annulus::new(Complex64::new(hole.center, 0.0), hole.log_radius, 0.0).unwrap();
            let zs = Complex64::new(z, 0.0);
            let rs = bergman_eval(&small, zs, &tr()).unwrap().curvature;
            let rl = bergman_eval(&large, zs, &tr()).unwrap().curvature;
            let slackened = 1e-12 * (iv.hi - iv.lo).abs().max(1.0);
            assert!(iv.lo - slackened <= rs && rs <= iv.hi + slackened, "small, d={d}");
            assert!(iv.lo - slackened <= rl && rl <= iv.hi + slackened, "large, d={d}");
        }
    }

    #[test]
    fn interval_width_shrinks_with_clearance() {
        let hole = Hole::new(0.5, 4).unwrap();
        let z = hole.center + 0.02;
        let mut prev = f64::INFINITY;
        for &d in &[0.3f64, 0.6, 0.9] {
            let iv = sandwich_curvature_bounds(&hole, d, z, &tr()).unwrap();
            let width = iv.hi - iv.lo;
            assert!(width < prev, "d={d}: width {width} vs {prev}");
            prev = width;
        }
    }

    #[test]
    fn sandwich_rejects_bad_points() {
        let hole = Hole::new(0.5, 3).unwrap();
        // Inside the hole.
        assert!(sandwich_curvature_bounds(&hole, 0.25, hole.center + 1e-3, &tr()).is_err());
        // Outside the clearance.
        assert!(sandwich_curvature_bounds(&hole, 0.25, hole.center + 0.3, &tr()).is_err());
        assert!(sandwich_curvature_bounds(&hole, 1.5, hole.center + 0.05, &tr()).is_err());
    }

    #[test]
    fn ratio_check_inclusion_direction() {
        let rep = ratio_bound_check(6.0 * 10f64.ln(), 0.25, 0.5, 0.05, &tr()).unwrap();
        for r in rep.ratios {
            assert!(r >= 1.0 - 1e-12, "ratio {r} below 1");
        }
        // s near 1: ratios within 1e-2 of 1.
        let rep = ratio_bound_check(5.0, 0.999, 0.5, 0.05, &tr()).unwrap();
        for r in rep.ratios {
            assert!((r - 1.0).abs() < 1e-2, "ratio {r}");
        }
        assert!(rep.pass);
        // r >= s rejected.
        assert!(ratio_bound_check(1.0, 0.5, 0.5, 0.05, &tr()).is_err());
        // Point outside P(r, s) rejected.
        assert!(ratio_bound_check(10.0, 0.25, 0.05, 0.05, &tr()).is_err());
    }

    #[test]
    fn construct_single_stage() {
        let dom = construct(0.5, 1, 0.1).unwrap();
        assert_eq!(dom.stages.len(), 1);
        let st = &dom.stages[0];
        assert!(st.x_cert.lo > 1.0, "x lo {}", st.x_cert.lo);
        assert!(st.y_cert.hi < -1.0, "y hi {}", st.y_cert.hi);
        let rep = validate_geometry(&dom);
        assert!(rep.pass, "{:?}", rep.first_violation);
    }

    #[test]
    fn construct_deterministic_and_slack_robust() {
        let a = construct(0.5, 1, 0.0).unwrap();
        let b = construct(0.5, 1, 1e-3).unwrap();
        let c = construct(0.5, 1, 1e-3).unwrap();
        assert_eq!(b, c);
        // The certificate inequalities move by ~0.1% per slack step while one
        // candidate step moves them by ~0.14%, so the accepted index shifts
        // by at most one.
        assert!(a.stages[0].hole.n.abs_diff(b.stages[0].hole.n) <= 1);
    }

    #[test]
    fn construct_second_stage_exhausts_ceiling() {
        // Stage 2 needs the mixed defect bound 4/(d^4 L) below 1/2 with
        // d = theta^{n_1} - theta^{2 n_1}, which forces astronomically large
        // indices; the search must fail cleanly at the ceiling.
        match construct(0.5, 2, 0.1) {
            Err(Error::Construction { stage, reason }) => {
                assert_eq!(stage, 2);
                assert!(reason.contains("ceiling"), "{reason}");
            }
            other => panic!("expected construction failure, got {other:?}"),
        }
    }

    #[test]
    fn validate_geometry_detects_overlap() {
        let t = tr();
        let mk = |n: u32| {
            let hole = Hole::new(0.9, n).unwrap();
            let log_cl = 0.25f64.ln();
            let lrx = hole.log_radius * 0.55;
            Stage {
                hole,
                x_point: hole.center + lrx.exp(),
                y_point: hole.center + (hole.log_radius * 0.5).exp(),
                clearance: 0.25,
                log_clearance: log_cl,
                x_cert: sandwich_interval_logs(hole.log_radius, log_cl, lrx, &t)
                    .unwrap_or(CurvatureInterval { lo: 1.9, hi: 1.95 }),
                y_cert: CurvatureInterval { lo: -1e6, hi: -10.0 },
            }
        };
        let dom = ZalcmanDomain { theta: 0.9, stages: vec![mk(10), mk(11)] };
        let rep = validate_geometry(&dom);
        assert!(!rep.pass);
        assert!(rep.first_violation.as_deref().unwrap().contains("overlap"), "{rep:?}");
    }

    #[test]
    fn validate_geometry_single_hand_built_stage() {
        // theta = 0.5, n = 5: hole center 2^-5, radius 2^-10, inside the
        // half disk with a 1/4 clearance; the x point sits at distance
        // 2^-2.5 < 1/4 from the center.
        let dom = construct(0.5, 1, 0.2).unwrap();
        let mut st = dom.stages[0];
        st.hole = Hole::new(0.5, 5).unwrap();
        // Only the geometry fields are exercised here; rebuild points and
        // certificates consistently for the small hole.
        let log_cl = 0.25f64.ln();
        let lt = 0.5f64.ln();
        let lrx = 5.0 * lt / 2.0;
        let lry = 5.0 * lt;
        st.x_point = st.hole.center + lrx.exp();
        st.y_point = st.hole.center + lry.exp();
        st.clearance = 0.25;
        st.log_clearance = log_cl;
        let geom = ZalcmanDomain { theta: 0.5, stages: vec![st] };
        // Hole geometry passes; certificates for so small an index do not,
        // so only the pre-certificate checks are expected to hold.
        let rep = validate_geometry(&geom);
        if let Some(v) = &rep.first_violation {
            assert!(v.contains("certificate"), "unexpected violation {v}");
        }
        assert!(st.hole.center + st.hole.log_radius.exp() < 0.5);
        assert!(st.hole.log_outer_reach() < LOG_HALF);
    }

    #[test]
    fn certificate_monotone_under_clearance_widening() {
        let dom = construct(0.5, 1, 0.1).unwrap();
        let st = &dom.stages[0];
        let d2 = 0.5 * (1.0 + st.clearance);
        let lt = (0.5f64).ln();
        let n = st.hole.n as f64;
        let iv_x =
            sandwich_interval_logs(st.hole.log_radius, d2.ln(), n * lt / 2.0, &tr()).unwrap();
        // Wider clearance tightens the sandwich: the new interval sits inside
        // a 1%-inflated copy of the old one.
        let pad = 0.01 * (st.x_cert.hi - st.x_cert.lo).abs().max(0.01);
        assert!(iv_x.lo >= st.x_cert.lo - pad);
        assert!(iv_x.hi <= st.x_cert.hi + pad);
    }

    #[test]
    fn realized_triples_satisfy_ratio_bounds() {
        let dom = construct(0.5, 1, 0.1).unwrap();
        let st = &dom.stages[0];
        // The stage's small annulus P(c, rad, d) against P(c, rad, 1) at the
        // x point, phrased in the canonical (L, s, alpha) coordinates.
        let l = -st.hole.log_radius;
        let s = st.clearance;
        let alpha = (st.hole.n as f64 * (0.5f64).ln() / 2.0) / st.hole.log_radius;
        let rep = ratio_bound_check(l, s, alpha, 0.05, &tr()).unwrap();
        assert!(rep.pass, "{rep:?}");
    }

    #[test]
    fn construct_input_checks() {
        assert!(construct(0.0, 1, 0.1).is_err());
        assert!(construct(1.0, 1, 0.1).is_err());
        assert!(construct(0.5, 0, 0.1).is_err());
        assert!(construct(0.5, 1, 1.0).is_err());
    }
}
