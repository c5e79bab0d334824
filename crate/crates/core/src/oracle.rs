//! Implementation-independent recomputation of J^(0..2): build the Gram
//! matrix of a truncated Laurent basis by tensor quadrature and solve the
//! defining constrained quadratic extremal problems directly.

use num_complex::Complex64;

use crate::annulus::{alpha_norm, Annulus};
use crate::error::{Error, Result};
use crate::geometry::BergmanEval;
use crate::quad::gauss_legendre_on;
use crate::series::JTriple;

/// Quadrature sizes for the Gram build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadSpec {
    pub radial_nodes: usize,
    pub angular_nodes: usize,
}

impl QuadSpec {
    /// Node counts sized for the stiffest radial exponential e^{(2N+2)u} on
    /// [log r, log R] and spectral exactness of the angular rule.
    pub fn recommended(n: usize, ann: &Annulus) -> Self {
        let l = ann.log_r_outer - ann.log_r_inner;
        let sigma = (2.0 * n as f64 + 2.0) * l / 2.0;
        let radial = ((0.75 * sigma).ceil() as usize + 40).max(64);
        QuadSpec { radial_nodes: radial, angular_nodes: 4 * n + 4 }
    }
}

/// Quadrature-built Gram matrix of the Laurent basis lambda^n,
/// n in [basis_lo, basis_hi], over the annulus.
#[derive(Debug, Clone)]
pub struct GramSystem {
    pub basis_lo: i64,
    pub basis_hi: i64,
    /// Row-major (basis_hi-basis_lo+1)^2 Hermitian matrix.
    pub gram: Vec<Complex64>,
    pub quad: QuadSpec,
    pub ann: Annulus,
}

impl GramSystem {
    pub fn dim(&self) -> usize {
        (self.basis_hi - self.basis_lo + 1) as usize
    }

    pub fn entry(&self, m: i64, n: i64) -> Complex64 {
        let k = self.dim();
        let i = (m - self.basis_lo) as usize;
        let j = (n - self.basis_lo) as usize;
        self.gram[i * k + j]
    }
}

/// In-place lower Cholesky of a Hermitian matrix; Err carries the failing
/// pivot index.
fn cholesky(a: &mut [Complex64], k: usize) -> std::result::Result<(), usize> {
    for i in 0..k {
        for j in 0..=i {
            let mut sum = a[i * k + j];
            for p in 0..j {
                sum -= a[i * k + p] * a[j * k + p].conj();
            }
            if i == j {
                if !(sum.re > 0.0) || sum.im.abs() > 1e-8 * sum.re {
                    return Err(i);
                }
                a[i * k + i] = Complex64::new(sum.re.sqrt(), 0.0);
            } else {
                a[i * k + j] = sum / a[j * k + j];
            }
        }
    }
    Ok(())
}

/// Solve L L^H x = b given the lower factor from `cholesky`.
fn cholesky_solve(l: &[Complex64], k: usize, b: &[Complex64]) -> Vec<Complex64> {
    let mut y = b.to_vec();
    for i in 0..k {
        for p in 0..i {
            let yp = y[p];
            y[i] -= l[i * k + p] * yp;
        }
        y[i] /= l[i * k + i];
    }
    for i in (0..k).rev() {
        for p in (i + 1)..k {
            let yp = y[p];
            y[i] -= l[p * k + i].conj() * yp;
        }
        y[i] /= l[i * k + i];
    }
    y
}

/// Cholesky with a single diagonal-ridge retry (shift 1e-14 x trace).
fn cholesky_with_ridge(h: &[Complex64], k: usize) -> Result<Vec<Complex64>> {
    let mut a = h.to_vec();
    if cholesky(&mut a, k).is_ok() {
        return Ok(a);
    }
    let trace: f64 = (0..k).map(|i| h[i * k + i].re).sum();
    let mut a = h.to_vec();
    for i in 0..k {
        a[i * k + i] += Complex64::new(1e-14 * trace, 0.0);
    }
    match cholesky(&mut a, k) {
        Ok(()) => Ok(a),
        Err(pivot) => Err(Error::Quadrature { pivot }),
    }
}

/// Build the Gram matrix by Gauss-Legendre in u = log rho and the uniform
/// trapezoid rule in theta (spectrally exact for frequencies |m-n| < M).
pub fn build_gram(ann: &Annulus, n: usize, quad: QuadSpec) -> Result<GramSystem> {
    if n < 4 {
        return Err(Error::Domain(format!("basis half-width N must be >= 4, got {n}")));
    }
    if quad.radial_nodes < 64 {
        return Err(Error::Domain(format!(
            "radial_nodes must be >= 64, got {}",
            quad.radial_nodes
        )));
    }
    if quad.angular_nodes < 4 * n + 4 {
        return Err(Error::Domain(format!(
            "angular_nodes must be >= 4N+4 = {}, got {}",
            4 * n + 4,
            quad.angular_nodes
        )));
    }
    let lo = -(n as i64);
    let hi = n as i64;
    let k = (hi - lo + 1) as usize;

    // Radial factors int e^{s u} du for every occurring s = m + n' + 2.
    let rule = gauss_legendre_on(quad.radial_nodes, ann.log_r_inner, ann.log_r_outer);
    let s_min = 2 * lo + 2;
    let s_max = 2 * hi + 2;
    let mut radial = Vec::with_capacity((s_max - s_min + 1) as usize);
    for s in s_min..=s_max {
        let mut acc = 0.0f64;
        for &(u, w) in &rule {
            acc += w * (s as f64 * u).exp();
        }
        if !acc.is_finite() {
            return Err(Error::Domain(format!(
                "radial integral overflows at exponent {s}; shrink N or the ring"
            )));
        }
        radial.push(acc);
    }

    // Angular factors (2pi/M) sum_l e^{i k theta_l} for k = m - n'.
    let m_nodes = quad.angular_nodes;
    let mut angular = vec![Complex64::new(0.0, 0.0); 2 * k - 1];
    for (idx, slot) in angular.iter_mut().enumerate() {
        let freq = idx as i64 - (k as i64 - 1);
        let mut acc = Complex64::new(0.0, 0.0);
        for l in 0..m_nodes {
            let th = 2.0 * std::f64::consts::PI * l as f64 / m_nodes as f64;
            acc += Complex64::from_polar(1.0, freq as f64 * th);
        }
        *slot = acc * (2.0 * std::f64::consts::PI / m_nodes as f64);
    }

    let mut gram = vec![Complex64::new(0.0, 0.0); k * k];
    for i in 0..k {
        for j in 0..k {
            let m = lo + i as i64;
            let nn = lo + j as i64;
            let s = (m + nn + 2 - s_min) as usize;
            let freq = (m - nn + k as i64 - 1) as usize;
            gram[i * k + j] = angular[freq] * radial[s];
        }
    }
    // Hermitianize against quadrature roundoff.
    for i in 0..k {
        for j in 0..i {
            let avg = 0.5 * (gram[i * k + j] + gram[j * k + i].conj());
            gram[i * k + j] = avg;
            gram[j * k + i] = avg.conj();
        }
        gram[i * k + i] = Complex64::new(gram[i * k + i].re, 0.0);
    }

    // Positive-definiteness check on the diagonally scaled copy.
    let scale: Vec<f64> = (0..k).map(|i| 1.0 / gram[i * k + i].re.sqrt()).collect();
    let mut scaled = vec![Complex64::new(0.0, 0.0); k * k];
    for i in 0..k {
        for j in 0..k {
            scaled[i * k + j] = gram[i * k + j] * scale[i] * scale[j];
        }
    }
    cholesky_with_ridge(&scaled, k)?;

    Ok(GramSystem { basis_lo: lo, basis_hi: hi, gram, quad, ann: *ann })
}

fn check_inside(ann: &Annulus, z: Complex64) -> Result<Complex64> {
    let zc = z - ann.center;
    let d = zc.norm();
    if !(d > 0.0) || !d.is_finite() {
        return Err(Error::OutOfDomain("point coincides with the center".into()));
    }
    let log_d = d.ln();
    if !(log_d > ann.log_r_inner && log_d < ann.log_r_outer) {
        return Err(Error::OutOfDomain(format!(
            "log|z - center| = {log_d} outside ({}, {})",
            ann.log_r_inner, ann.log_r_outer
        )));
    }
    Ok(zc)
}

/// Evaluation functional of the i-th derivative on the basis:
/// d_i(n) = n(n-1)...(n-i+1) z_c^{n-i}.
fn derivative_functional(g: &GramSystem, zc: Complex64, i: u32) -> Vec<Complex64> {
    let k = g.dim();
    let mut d = Vec::with_capacity(k);
    for idx in 0..k {
        let n = g.basis_lo + idx as i64;
        let mut falling = 1.0f64;
        for p in 0..i as i64 {
            falling *= (n - p) as f64;
        }
        d.push(zc.powi((n - i as i64) as i32) * falling);
    }
    d
}

/// Truncated-space extremal value sup |f^(j)(z)|^2 over the unit ball with
/// the lower derivatives pinned to zero, plus the worst relative constraint
/// residual of the maximizer.
pub fn extremal_j_with_residual(g: &GramSystem, z: Complex64, j: u32) -> Result<(f64, f64)> {
    if j > 2 {
        return Err(Error::Domain(format!("derivative order must be <= 2, got {j}")));
    }
    let zc = check_inside(&g.ann, z)?;
    let k = g.dim();

    // Diagonal scaling for conditioning; the scaled diagonal is all ones.
    let scale: Vec<f64> = (0..k).map(|i| 1.0 / g.gram[i * k + i].re.sqrt()).collect();
    let mut ghat = vec![Complex64::new(0.0, 0.0); k * k];
    for a in 0..k {
        for b in 0..k {
            ghat[a * k + b] = g.gram[a * k + b] * scale[a] * scale[b];
        }
    }
    let dhat: Vec<Vec<Complex64>> = (0..=j)
        .map(|i| {
            let mut d = derivative_functional(g, zc, i);
            for (v, s) in d.iter_mut().zip(scale.iter()) {
                *v *= *s;
            }
            d
        })
        .collect();

    // Null-space basis of the constraint rows d_0..d_{j-1} by reduced row
    // echelon form with column pivoting.
    let jc = j as usize;
    let nfree = k - jc;
    let mut rows: Vec<Vec<Complex64>> = dhat[..jc].to_vec();
    let mut pivots: Vec<usize> = Vec::with_capacity(jc);
    for r in 0..jc {
        let (p, pmag) = (0..k)
            .filter(|c| !pivots.contains(c))
            .map(|c| (c, rows[r][c].norm()))
            .fold((usize::MAX, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if !(pmag > 0.0) {
            return Err(Error::Internal("constraint rows are rank deficient".into()));
        }
        let piv = rows[r][p];
        for c in 0..k {
            rows[r][c] /= piv;
        }
        for r2 in 0..jc {
            if r2 != r {
                let f = rows[r2][p];
                if f.norm() > 0.0 {
                    for c in 0..k {
                        let v = rows[r][c];
                        rows[r2][c] -= f * v;
                    }
                }
            }
        }
        pivots.push(p);
    }
    let free: Vec<usize> = (0..k).filter(|c| !pivots.contains(c)).collect();

    // Column c of Q (indexed by free variable f): unit at f, -rref entry at
    // each pivot column.
    let q_col = |fi: usize, out: &mut Vec<Complex64>| {
        out.clear();
        out.resize(k, Complex64::new(0.0, 0.0));
        out[free[fi]] = Complex64::new(1.0, 0.0);
        for (r, &p) in pivots.iter().enumerate() {
            out[p] = -rows[r][free[fi]];
        }
    };

    // Materialize Q (k x nfree) column-wise.
    let mut qcols: Vec<Vec<Complex64>> = Vec::with_capacity(nfree);
    let mut buf = Vec::new();
    for fi in 0..nfree {
        q_col(fi, &mut buf);
        qcols.push(buf.clone());
    }

    // Reduced system H = Q^H Ghat Q and reduced functional c = d_j Q.
    let mut gq: Vec<Vec<Complex64>> = Vec::with_capacity(nfree);
    for col in &qcols {
        let mut v = vec![Complex64::new(0.0, 0.0); k];
        for a in 0..k {
            let mut acc = Complex64::new(0.0, 0.0);
            for b in 0..k {
                acc += ghat[a * k + b] * col[b];
            }
            v[a] = acc;
        }
        gq.push(v);
    }
    let mut h = vec![Complex64::new(0.0, 0.0); nfree * nfree];
    for a in 0..nfree {
        for b in 0..nfree {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..k {
                acc += qcols[a][i].conj() * gq[b][i];
            }
            h[a * nfree + b] = acc;
        }
    }
    for a in 0..nfree {
        for b in 0..a {
            let avg = 0.5 * (h[a * nfree + b] + h[b * nfree + a].conj());
            h[a * nfree + b] = avg;
            h[b * nfree + a] = avg.conj();
        }
        h[a * nfree + a] = Complex64::new(h[a * nfree + a].re, 0.0);
    }
    let mut c = vec![Complex64::new(0.0, 0.0); nfree];
    for (a, col) in qcols.iter().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..k {
            acc += dhat[jc][i] * col[i];
        }
        c[a] = acc;
    }

    // sup |c^T a|^2 over a^H H a <= 1 equals cbar^H H^{-1} cbar.
    let cbar: Vec<Complex64> = c.iter().map(|v| v.conj()).collect();
    let l = cholesky_with_ridge(&h, nfree)?;
    let y = cholesky_solve(&l, nfree, &cbar);
    let mut value = Complex64::new(0.0, 0.0);
    for a in 0..nfree {
        value += cbar[a].conj() * y[a];
    }
    let value = value.re;
    if !(value > 0.0) || !value.is_finite() {
        return Err(Error::Internal(format!("extremal value must be positive, got {value}")));
    }

    // Maximizer in hat coordinates, for the constraint-residual report.
    let mut a_hat = vec![Complex64::new(0.0, 0.0); k];
    for (fi, col) in qcols.iter().enumerate() {
        for i in 0..k {
            a_hat[i] += col[i] * y[fi];
        }
    }
    let norm_a = a_hat.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    let mut worst = 0.0f64;
    for d in dhat[..jc].iter() {
        let dot: Complex64 = d.iter().zip(a_hat.iter()).map(|(x, y)| x * y).sum();
        let norm_d = d.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        worst = worst.max(dot.norm() / (norm_d * norm_a));
    }
    Ok((value, worst))
}

/// Truncated-space extremal value; increases with N and converges to J^(j)
/// from below.
pub fn extremal_j(g: &GramSystem, z: Complex64, j: u32) -> Result<f64> {
    Ok(extremal_j_with_residual(g, z, j)?.0)
}

/// Validity envelope of the oracle: modulus in [0.02, 0.9] and N <= 60.
pub fn check_envelope(ann: &Annulus, n: usize) -> Result<()> {
    let q = ann.modulus();
    if !(0.02..=0.9).contains(&q) {
        return Err(Error::Envelope(format!(
            "modulus q = {q:.3e} outside the validated range [0.02, 0.9]"
        )));
    }
    if n > 60 {
        return Err(Error::Envelope(format!("basis half-width N = {n} exceeds 60")));
    }
    Ok(())
}

/// Full kernel/metric/curvature evaluation through the oracle path; asserts
/// the validity envelope.
pub fn oracle_bergman(ann: &Annulus, z: Complex64, n: usize, quad: QuadSpec) -> Result<BergmanEval> {
    check_envelope(ann, n)?;
    let g = build_gram(ann, n, quad)?;
    let j0 = extremal_j(&g, z, 0)?;
    let j1 = extremal_j(&g, z, 1)?;
    let j2 = extremal_j(&g, z, 2)?;
    let defect = j0 * j2 / (j1 * j1);
    Ok(BergmanEval {
        j: JTriple { j0, j1, j2 },
        kernel: j0,
        metric_sq: j1 / j0,
        curvature: 2.0 - defect,
        defect,
    })
}

/// Largest relative deviation between a Gram diagonal and the closed-form
/// monomial norms, for diagnostics.
pub fn diagonal_deviation(g: &GramSystem) -> Result<f64> {
    let mut worst = 0.0f64;
    for n in g.basis_lo..=g.basis_hi {
        let exact = alpha_norm(n, g.ann.log_r_inner, g.ann.log_r_outer)?;
        let got = g.entry(n, n).re;
        worst = worst.max(((got - exact) / exact).abs());
    }
    Ok(worst)
}
