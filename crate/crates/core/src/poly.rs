//! Exact polynomial algebra over the variables u = 1/L and psi(0..4),
//! used to certify the cancellation structure of the expanded J^(2)
//! numerator and denominator as polynomial identities, not numerically.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

/// Multivariate polynomial with i64 coefficients in the 6 variables
/// [u, psi0, psi1, psi2, psi3, psi4], keyed by exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<[u8; 6], i64>,
}

pub const VAR_U: usize = 0;

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: i64) -> Self {
        let mut p = Self::zero();
        p.insert([0; 6], c);
        p
    }

    pub fn var(i: usize) -> Self {
        let mut key = [0u8; 6];
        key[i] = 1;
        let mut p = Self::zero();
        p.insert(key, 1);
        p
    }

    fn insert(&mut self, key: [u8; 6], c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(key).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut p = Self::zero();
        for (k, v) in &self.terms {
            p.insert(*k, v * c);
        }
        p
    }

    /// Coefficient of u^k, as a polynomial in the psi variables.
    pub fn coeff_of_u(&self, k: u8) -> Poly {
        let mut p = Self::zero();
        for (key, v) in &self.terms {
            if key[VAR_U] == k {
                let mut nk = *key;
                nk[VAR_U] = 0;
                p.insert(nk, *v);
            }
        }
        p
    }

    pub fn max_u_degree(&self) -> u8 {
        self.terms.keys().map(|k| k[VAR_U]).max().unwrap_or(0)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut p = self.clone();
        for (k, v) in &rhs.terms {
            p.insert(*k, *v);
        }
        p
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &rhs.scale(-1)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(-1)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut p = Poly::zero();
        for (ka, va) in &self.terms {
            for (kb, vb) in &rhs.terms {
                let mut k = [0u8; 6];
                for i in 0..6 {
                    k[i] = ka[i] + kb[i];
                }
                p.insert(k, va * vb);
            }
        }
        p
    }
}

fn psi(j: usize) -> Poly {
    Poly::var(1 + j)
}

/// phi(j) = (-1)^j u + psi(j) as a symbolic polynomial.
fn phi(j: usize) -> Poly {
    let sign = if j % 2 == 0 { 1 } else { -1 };
    &Poly::var(VAR_U).scale(sign) + &psi(j)
}

/// Symbolic J^(2) numerator N = phi4 phi1^2 - phi4 phi2 phi0
/// - 2 phi3 phi2 phi1 + phi3^2 phi0 + phi2^3.
pub fn symbolic_numerator() -> Poly {
    let (f0, f1, f2, f3, f4) = (phi(0), phi(1), phi(2), phi(3), phi(4));
    let t1 = &(&f4 * &f1) * &f1;
    let t2 = &(&f4 * &f2) * &f0;
    let t3 = (&(&f3 * &f2) * &f1).scale(2);
    let t4 = &(&f3 * &f3) * &f0;
    let t5 = &(&f2 * &f2) * &f2;
    &(&(&(&t1 - &t2) - &t3) + &t4) + &t5
}

/// Symbolic denominator phi1^2 - phi2 phi0.
pub fn symbolic_denominator() -> Poly {
    let (f0, f1, f2) = (phi(0), phi(1), phi(2));
    &(&f1 * &f1) - &(&f2 * &f0)
}

/// The 1/L coefficient of the numerator implemented in `series`, symbolically:
/// psi1^2 - 2 psi1 psi4 - psi4 psi2 - psi4 psi0 - psi2 psi0 + 2 psi2 psi1
/// - 2 psi3 psi1 + 2 psi2 psi3 + psi3^2 - 2 psi0 psi3 + 3 psi2^2.
pub fn implemented_c1() -> Poly {
    let (p0, p1, p2, p3, p4) = (psi(0), psi(1), psi(2), psi(3), psi(4));
    let mut acc = &p1 * &p1;
    acc = &acc - &(&p1 * &p4).scale(2);
    acc = &acc - &(&p4 * &p2);
    acc = &acc - &(&p4 * &p0);
    acc = &acc - &(&p2 * &p0);
    acc = &acc + &(&p2 * &p1).scale(2);
    acc = &acc - &(&p3 * &p1).scale(2);
    acc = &acc + &(&p2 * &p3).scale(2);
    acc = &acc + &(&p3 * &p3);
    acc = &acc - &(&p0 * &p3).scale(2);
    acc = &acc + &(&p2 * &p2).scale(3);
    acc
}

/// The constant coefficient of the numerator implemented in `series`.
pub fn implemented_c0() -> Poly {
    let (p0, p1, p2, p3, p4) = (psi(0), psi(1), psi(2), psi(3), psi(4));
    let mut acc = &(&p4 * &p1) * &p1;
    acc = &acc - &(&(&p4 * &p2) * &p0);
    acc = &acc - &(&(&p3 * &p2) * &p1).scale(2);
    acc = &acc + &(&(&p3 * &p3) * &p0);
    acc = &acc + &(&(&p2 * &p2) * &p2);
    acc
}

/// Certify, as exact polynomial identities, that the expansion of the J^(2)
/// numerator in powers of u = 1/L has zero u^3 and u^2 coefficients, that its
/// u^1 and u^0 coefficients equal the forms implemented in `series`, and that
/// the denominator expansion has zero u^2 coefficient with u^1 coefficient
/// -(psi2 + psi0 + 2 psi1).
pub fn verify_cancellation_identities() -> Result<(), String> {
    let n = symbolic_numerator();
    if !n.coeff_of_u(3).is_zero() {
        return Err("numerator u^3 coefficient is not identically zero".into());
    }
    if !n.coeff_of_u(2).is_zero() {
        return Err("numerator u^2 coefficient is not identically zero".into());
    }
    if n.coeff_of_u(1) != implemented_c1() {
        return Err("numerator u coefficient differs from the implemented c1".into());
    }
    if n.coeff_of_u(0) != implemented_c0() {
        return Err("numerator constant coefficient differs from the implemented c0".into());
    }
    let d = symbolic_denominator();
    if !d.coeff_of_u(2).is_zero() {
        return Err("denominator u^2 coefficient is not identically zero".into());
    }
    let expected_d1 = -&(&(&psi(2) + &psi(0)) + &psi(1).scale(2));
    if d.coeff_of_u(1) != expected_d1 {
        return Err("denominator u coefficient differs from -(psi2 + psi0 + 2 psi1)".into());
    }
    let expected_d0 = &(&psi(1) * &psi(1)) - &(&psi(2) * &psi(0));
    if d.coeff_of_u(0) != expected_d0 {
        return Err("denominator constant coefficient differs from psi1^2 - psi2 psi0".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annulus::Truncation;
    use crate::series::{j2_numerator_c0, j2_numerator_c1, phi_psi_table};

    #[test]
    fn cancellation_identities_hold() {
        verify_cancellation_identities().unwrap();
    }

    #[test]
    fn numerator_u_degree_collapses_to_one() {
        // Each cubic term in the numerator has u-degree 3 on its own, but the
        // u^3 and u^2 coefficients cancel identically across terms, leaving a
        // polynomial of u-degree 1.
        let f2 = phi(2);
        assert_eq!((&(&f2 * &f2) * &f2).max_u_degree(), 3);
        assert_eq!(symbolic_numerator().max_u_degree(), 1);
        assert_eq!(symbolic_denominator().max_u_degree(), 1);
    }

    #[test]
    fn symbolic_and_numeric_coefficients_agree() {
        // Evaluate the symbolic u^1/u^0 coefficients at real psi values and
        // compare with the closed forms in `series`.
        let t = phi_psi_table(0.4, 2.5, &Truncation::default()).unwrap();
        let eval = |p: &Poly| {
            let vars = [1.0, t.psi[0], t.psi[1], t.psi[2], t.psi[3], t.psi[4]];
            let mut s = 0.0f64;
            for (k, c) in &p.terms {
                let mut m = *c as f64;
                for (i, &e) in k.iter().enumerate() {
                    m *= vars[i].powi(e as i32);
                }
                s += m;
            }
            s
        };
        let c1 = eval(&implemented_c1());
        let c0 = eval(&implemented_c0());
        approx::assert_relative_eq!(c1, j2_numerator_c1(&t.psi), max_relative = 1e-12);
        approx::assert_relative_eq!(c0, j2_numerator_c0(&t.psi), max_relative = 1e-12);
    }

    #[test]
    fn poly_arithmetic_basics() {
        let x = Poly::var(1);
        let y = Poly::var(2);
        let p = &(&x + &y) * &(&x - &y);
        let q = &(&x * &x) - &(&y * &y);
        assert_eq!(p, q);
        assert!((&p - &q).is_zero());
        assert_eq!(Poly::constant(0), Poly::zero());
    }
}
