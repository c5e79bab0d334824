//! Property tests for the structural invariants of the series and geometry
//! paths: positivity, Cauchy-Schwarz, symmetry, covariance and inclusion
//! monotonicity on randomized inputs.

use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bergman_annuli::geometry::inclusion_monotonicity_check;
use bergman_annuli::series::defect_canonical;
use bergman_annuli::{bergman_eval, curvature_canonical, j_triple_at_one, Annulus, Truncation};

fn tr() -> Truncation {
    Truncation::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // J0, J1, J2 positive and the defect positive (curvature < 2) across the
    // canonical parameter range.
    #[test]
    fn j_triple_positive(alpha in 0.02f64..0.98, l in 0.2f64..120.0) {
        let t = j_triple_at_one(alpha, l, &tr()).unwrap();
        prop_assert!(t.j0 > 0.0 && t.j1 > 0.0 && t.j2 > 0.0);
        let d = defect_canonical(alpha, l, &tr()).unwrap();
        prop_assert!(d > 0.0);
    }

    // Curvature strictly below 2 everywhere.
    #[test]
    fn curvature_below_two(alpha in 0.02f64..0.98, l in 0.2f64..200.0) {
        let r = curvature_canonical(alpha, l, &tr()).unwrap();
        prop_assert!(r < 2.0, "curvature {r}");
    }

    // Inversion symmetry: the triple is invariant under alpha -> 1 - alpha.
    #[test]
    fn inversion_symmetry(alpha in 0.02f64..0.5, l in 0.2f64..80.0) {
        let a = j_triple_at_one(alpha, l, &tr()).unwrap();
        let b = j_triple_at_one(1.0 - alpha, l, &tr()).unwrap();
        prop_assert!((a.j0 - b.j0).abs() <= 1e-12 * a.j0);
        prop_assert!((a.j1 - b.j1).abs() <= 1e-12 * a.j1);
        prop_assert!((a.j2 - b.j2).abs() <= 1e-12 * a.j2);
    }

    // Scaling covariance: J^(j)_{sD}(sz) = s^{-2(j+1)} J^(j)_D(z), metric_sq
    // by s^-2, curvature invariant.
    #[test]
    fn scaling_covariance(
        q in 0.05f64..0.6,
        a in 0.1f64..0.9,
        s in 0.3f64..4.0,
    ) {
        let base = Annulus::from_radii(Complex64::new(0.0, 0.0), q, 1.0).unwrap();
        let scaled = Annulus::from_radii(Complex64::new(0.0, 0.0), s * q, s).unwrap();
        let z = Complex64::new(q.powf(a), 0.0);
        let e1 = bergman_eval(&base, z, &tr()).unwrap();
        let e2 = bergman_eval(&scaled, z * s, &tr()).unwrap();
        let tol = 1e-11;
        prop_assert!((e2.j.j0 - e1.j.j0 / s.powi(2)).abs() <= tol * e2.j.j0);
        prop_assert!((e2.j.j1 - e1.j.j1 / s.powi(4)).abs() <= tol * e2.j.j1);
        prop_assert!((e2.j.j2 - e1.j.j2 / s.powi(6)).abs() <= tol * e2.j.j2);
        prop_assert!((e2.metric_sq - e1.metric_sq / (s * s)).abs() <= tol * e2.metric_sq);
        prop_assert!((e2.curvature - e1.curvature).abs() <= tol * e1.curvature.abs().max(1.0));
    }

    // Rotation invariance of the full evaluation.
    #[test]
    fn rotation_invariance(
        q in 0.05f64..0.6,
        a in 0.1f64..0.9,
        th in 0.0f64..std::f64::consts::TAU,
    ) {
        let ann = Annulus::from_radii(Complex64::new(0.0, 0.0), q, 1.0).unwrap();
        let rho = q.powf(a);
        let e1 = bergman_eval(&ann, Complex64::new(rho, 0.0), &tr()).unwrap();
        let e2 = bergman_eval(&ann, Complex64::from_polar(rho, th), &tr()).unwrap();
        prop_assert!((e1.kernel - e2.kernel).abs() <= 1e-12 * e1.kernel);
        prop_assert!((e1.curvature - e2.curvature).abs() <= 1e-12 * e1.curvature.abs().max(1.0));
    }
}

// Inclusion monotonicity on 20 seeded random (q1 > q2, z) pairs; deterministic
// across runs by construction.
#[test]
fn inclusion_monotonicity_randomized() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xd0_5eed);
    for case in 0..20 {
        let q2: f64 = rng.gen_range(0.01..0.4);
        let q1: f64 = rng.gen_range((q2 + 1e-3)..0.8);
        let rho: f64 = rng.gen_range(q1.powf(0.6)..0.98);
        let th: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let z = Complex64::from_polar(rho, th);
        let rep = inclusion_monotonicity_check(q1, q2, z, &tr()).unwrap();
        assert!(rep.pass, "case {case}: q1={q1} q2={q2} z={z} report {rep:?}");
    }
}
