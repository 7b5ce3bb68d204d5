//! Rational functions analytic on a neighbourhood of the closed disk.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::Poly;

/// Minimum admissible pole modulus.
pub const MIN_POLE_MODULUS: f64 = 1.0 + 1e-9;

/// `num / den` with every pole strictly outside the closed unit disk.
/// The denominator is normalized so that `den(0) = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalAnalytic {
    num: Poly,
    den: Poly,
    pole_radius: f64,
}

impl RationalAnalytic {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        let d0 = den.coeff(0);
        if d0 == Complex64::new(0.0, 0.0) {
            return Err(Error::PoleOnOrInsideDisk { modulus: 0.0 });
        }
        let pole_radius = if den.degree() == 0 {
            f64::INFINITY
        } else {
            den.roots()?.iter().map(|r| r.norm()).fold(f64::INFINITY, f64::min)
        };
        if !(pole_radius >= MIN_POLE_MODULUS) {
            return Err(Error::PoleOnOrInsideDisk { modulus: pole_radius });
        }
        let inv = d0.inv();
        Ok(RationalAnalytic { num: num.scale(inv), den: den.scale(inv), pole_radius })
    }

    /// Assembles a function whose poles are already known to satisfy the invariant.
    pub(crate) fn from_trusted(num: Poly, den: Poly, pole_radius: f64) -> Self {
        let inv = den.coeff(0).inv();
        RationalAnalytic { num: num.scale(inv), den: den.scale(inv), pole_radius }
    }

    pub fn polynomial(p: Poly) -> Self {
        RationalAnalytic { num: p, den: Poly::one(), pole_radius: f64::INFINITY }
    }

    pub fn constant(c: Complex64) -> Self {
        RationalAnalytic::polynomial(Poly::constant(c))
    }

    pub fn zero() -> Self {
        RationalAnalytic::polynomial(Poly::zero())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    /// Smallest pole modulus, infinite for polynomials.
    pub fn pole_radius(&self) -> f64 {
        self.pole_radius
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.num.eval(z) / self.den.eval(z)
    }

    pub fn value_at_zero(&self) -> Complex64 {
        self.num.coeff(0)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        RationalAnalytic { num: self.num.scale(s), den: self.den.clone(), pole_radius: self.pole_radius }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return RationalAnalytic {
                num: &self.num + &other.num,
                den: self.den.clone(),
                pole_radius: self.pole_radius,
            };
        }
        RationalAnalytic {
            num: &(&self.num * &other.den) + &(&other.num * &self.den),
            den: &self.den * &other.den,
            pole_radius: self.pole_radius.min(other.pole_radius),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        RationalAnalytic {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
            pole_radius: self.pole_radius.min(other.pole_radius),
        }
    }

    pub fn add_constant(&self, c: Complex64) -> Self {
        RationalAnalytic { num: &self.num + &self.den.scale(c), den: self.den.clone(), pole_radius: self.pole_radius }
    }

    /// First `n` Maclaurin coefficients by power-series division.
    pub fn taylor(&self, n: usize) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        let dd = self.den.degree();
        for k in 0..n {
            let mut v = self.num.coeff(k);
            for j in 1..=dd.min(k) {
                v -= self.den.coeff(j) * out[k - j];
            }
            out[k] = v;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_poles_in_closed_disk() {
        // 1 / (1 - z) has its pole on the circle
        let den = Poly::linear(c(1.0, 0.0), c(-1.0, 0.0));
        assert!(matches!(RationalAnalytic::new(Poly::one(), den), Err(Error::PoleOnOrInsideDisk { .. })));
        let den = Poly::linear(c(0.0, 0.0), c(1.0, 0.0));
        assert!(RationalAnalytic::new(Poly::one(), den).is_err());
        let den = Poly::linear(c(2.0, 0.0), c(-1.0, 0.0));
        let f = RationalAnalytic::new(Poly::one(), den).unwrap();
        assert!((f.pole_radius() - 2.0).abs() < 1e-12);
        assert!((f.eval(c(0.0, 0.0)) - c(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn geometric_taylor() {
        let den = Poly::linear(c(1.0, 0.0), c(-0.5, 0.0));
        let f = RationalAnalytic::new(Poly::one(), den).unwrap();
        for (n, t) in f.taylor(40).iter().enumerate() {
            assert!((t - c(0.5f64.powi(n as i32), 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn arithmetic_matches_pointwise() {
        let f =
            RationalAnalytic::new(Poly::new(vec![c(1.0, 1.0), c(0.0, 2.0)]), Poly::linear(c(1.0, 0.0), c(0.3, -0.2)))
                .unwrap();
        let g = RationalAnalytic::polynomial(Poly::new(vec![c(0.5, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]));
        let z = c(0.3, -0.7);
        assert!((f.add(&g).eval(z) - (f.eval(z) + g.eval(z))).norm() < 1e-14);
        assert!((f.mul(&g).eval(z) - f.eval(z) * g.eval(z)).norm() < 1e-14);
        assert!((f.sub(&f).eval(z)).norm() < 1e-14);
        assert!((f.add_constant(c(2.0, 0.0)).eval(z) - f.eval(z) - 2.0).norm() < 1e-14);
    }
}
