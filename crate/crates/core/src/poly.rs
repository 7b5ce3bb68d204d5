//! Dense complex polynomials in ascending coefficient order.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `coeffs[k]` multiplies `z^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<Complex64>,
}

impl Poly {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Complex64) -> Self {
        Poly::new(vec![c])
    }

    pub fn one() -> Self {
        Poly::constant(ONE)
    }

    /// `z^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![ZERO; k + 1];
        coeffs[k] = ONE;
        Poly { coeffs }
    }

    /// `c0 + c1 z`.
    pub fn linear(c0: Complex64, c1: Complex64) -> Self {
        Poly::new(vec![c0, c1])
    }

    /// Monic polynomial `prod (z - r)`.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        roots.iter().fold(Poly::one(), |acc, &r| acc * Poly::linear(-r, ONE))
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^k`, zero past the end.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&ZERO) {
            self.coeffs.pop();
        }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(self.coeffs.iter().enumerate().skip(1).map(|(k, &c)| c * k as f64).collect())
    }

    pub fn scale(&self, s: Complex64) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Synthetic division by `(z - root)`; returns `(quotient, remainder)`.
    pub fn div_linear(&self, root: Complex64) -> (Poly, Complex64) {
        if self.coeffs.is_empty() {
            return (Poly::zero(), ZERO);
        }
        let n = self.coeffs.len();
        let mut q = vec![ZERO; n - 1];
        let mut carry = ZERO;
        for k in (0..n).rev() {
            let v = self.coeffs[k] + carry;
            if k == 0 {
                return (Poly::new(q), v);
            }
            q[k - 1] = v;
            carry = v * root;
        }
        unreachable!()
    }

    /// `z^d * conj(p(1/conj(z)))`: reversed, conjugated coefficients padded to
    /// length `d + 1`. Roots `r` map to `1/conj(r)`.
    pub fn reflect(&self, d: usize) -> Poly {
        assert!(self.coeffs.len() <= d + 1, "reflect degree below polynomial degree");
        Poly::new((0..=d).map(|k| self.coeff(d - k).conj()).collect())
    }

    /// Roots via the eigenvalues of the companion matrix, polished by Newton steps.
    /// Exact zero low-order coefficients are deflated as roots at the origin.
    pub fn roots(&self) -> Result<Vec<Complex64>> {
        let lead = match self.coeffs.iter().position(|c| *c != ZERO) {
            Some(k) => k,
            None => return Err(Error::InvalidInput("roots of the zero polynomial".into())),
        };
        let mut roots = vec![ZERO; lead];
        let reduced = &self.coeffs[lead..];
        let n = reduced.len() - 1;
        if n == 0 {
            return Ok(roots);
        }
        let top = reduced[n];
        let mut companion = DMatrix::<Complex64>::zeros(n, n);
        for i in 1..n {
            companion[(i, i - 1)] = ONE;
        }
        for i in 0..n {
            companion[(i, n - 1)] = -reduced[i] / top;
        }
        let schur =
            Schur::try_new(companion, 1e-15, 10_000).ok_or(Error::RootFindingFailure { degree: self.degree() })?;
        let eig = schur.eigenvalues().ok_or(Error::RootFindingFailure { degree: self.degree() })?;
        let deriv = self.derivative();
        for mut r in eig.iter().copied() {
            if !(r.re.is_finite() && r.im.is_finite()) {
                return Err(Error::RootFindingFailure { degree: self.degree() });
            }
            let mut res = self.eval(r).norm();
            for _ in 0..8 {
                let d = deriv.eval(r);
                if d == ZERO {
                    break;
                }
                let cand = r - self.eval(r) / d;
                let cand_res = self.eval(cand).norm();
                if !(cand_res < res) {
                    break;
                }
                r = cand;
                res = cand_res;
            }
            roots.push(r);
        }
        Ok(roots)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(-ONE)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eval_and_arithmetic() {
        let p = Poly::new(vec![c(1.0, 0.0), c(0.0, 2.0), c(3.0, 0.0)]);
        let z = c(0.5, -0.25);
        let direct = c(1.0, 0.0) + c(0.0, 2.0) * z + c(3.0, 0.0) * z * z;
        assert!((p.eval(z) - direct).norm() < 1e-15);
        let q = Poly::linear(c(-1.0, 0.0), ONE);
        assert!(((&p * &q).eval(z) - p.eval(z) * q.eval(z)).norm() < 1e-14);
        assert!(((&p - &p).is_zero()));
    }

    #[test]
    fn synthetic_division_recovers_factor() {
        let roots = [c(0.3, 0.1), c(-0.5, 0.2), c(0.0, -0.9)];
        let p = Poly::from_roots(&roots);
        let (q, rem) = p.div_linear(roots[1]);
        assert!(rem.norm() < 1e-15);
        let back = &q * &Poly::linear(-roots[1], ONE);
        for k in 0..4 {
            assert!((back.coeff(k) - p.coeff(k)).norm() < 1e-15);
        }
    }

    #[test]
    fn companion_roots() {
        let roots = [c(0.5, 0.0), c(-0.3, 0.4), c(1.7, -2.0), c(0.0, 0.25)];
        let p = Poly::from_roots(&roots).scale(c(2.0, -1.0));
        let found = p.roots().unwrap();
        assert_eq!(found.len(), 4);
        for r in roots {
            let best = found.iter().map(|f| (f - r).norm()).fold(f64::MAX, f64::min);
            assert!(best < 1e-12, "missed root {r}");
        }
    }

    #[test]
    fn zero_roots_are_deflated_exactly() {
        let p = Poly::monomial(3);
        assert_eq!(p.roots().unwrap(), vec![ZERO; 3]);
        assert!(Poly::zero().roots().is_err());
    }

    #[test]
    fn reflect_maps_roots_to_reflections() {
        let r = c(0.4, -0.2);
        let p = Poly::linear(-r, ONE);
        let q = p.reflect(1);
        let image = ONE / r.conj();
        assert!(q.eval(image).norm() < 1e-14);
        // padding multiplies by z
        let q2 = p.reflect(2);
        assert_eq!(q2.coeff(0), ZERO);
    }
}
