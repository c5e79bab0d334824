//! Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on the
//! Legendre polynomial, accurate to machine precision for the rule sizes the
//! oracle needs (a few hundred nodes).

/// Legendre polynomial P_n and its derivative at x, by the three-term
/// recurrence.
fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0f64;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1], in
/// ascending node order.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 2, "rule needs at least 2 nodes");
    let mut out = vec![(0.0f64, 0.0f64); n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi-style initial guess for the i-th root from the top.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-15 * x.abs().max(1.0) {
                let (p2, d2) = legendre_and_derivative(n, x);
                dp = d2;
                x -= p2 / d2;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out[n - 1 - i] = (x, w);
        out[i] = (-x, w);
    }
    if n % 2 == 1 {
        let (_, d) = legendre_and_derivative(n, 0.0);
        out[n / 2] = (0.0, 2.0 / (d * d));
    }
    out
}

/// Map the rule to [a, b]: returns (node, weight) pairs.
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (b + a);
    gauss_legendre(n).into_iter().map(|(x, w)| (mid + half * x, half * w)).collect()
}
