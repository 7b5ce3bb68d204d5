//! Finite Blaschke products and the Crofoot disk-automorphism composition.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::sampling;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Largest admissible zero modulus.
pub const MAX_ZERO_MODULUS: f64 = 1.0 - 1e-12;
const UNIMODULAR_TOL: f64 = 1e-14;

/// A point of the open unit disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint(Complex64);

impl DiskPoint {
    pub fn new(value: Complex64) -> Result<Self> {
        if value.norm() <= MAX_ZERO_MODULUS && value.re.is_finite() && value.im.is_finite() {
            Ok(DiskPoint(value))
        } else {
            Err(Error::InvariantViolation(format!("disk point {value} has modulus {} >= 1", value.norm())))
        }
    }

    pub fn origin() -> Self {
        DiskPoint(Complex64::new(0.0, 0.0))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }
}

/// A point of the unit circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPoint(Complex64);

impl BoundaryPoint {
    pub fn new(value: Complex64) -> Result<Self> {
        if (value.norm() - 1.0).abs() <= UNIMODULAR_TOL {
            Ok(BoundaryPoint(value))
        } else {
            Err(Error::InvariantViolation(format!("boundary point {value} has modulus {}", value.norm())))
        }
    }

    pub fn from_angle(theta: f64) -> Self {
        BoundaryPoint(Complex64::from_polar(1.0, theta))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }
}

impl From<DiskPoint> for Complex64 {
    fn from(p: DiskPoint) -> Complex64 {
        p.0
    }
}

impl From<BoundaryPoint> for Complex64 {
    fn from(p: BoundaryPoint) -> Complex64 {
        p.0
    }
}

/// `c * prod (z - a_j) / (1 - conj(a_j) z)` with `|c| = 1` and every `|a_j| < 1`.
///
/// Zero order is significant for the model-space basis built on top of it;
/// two products describe the same function when [`BlaschkeProduct::agrees_with`] holds.
#[derive(Debug, Clone, PartialEq)]
pub struct BlaschkeProduct {
    constant: Complex64,
    zeros: Vec<Complex64>,
}

impl BlaschkeProduct {
    pub fn new(constant: Complex64, zeros: Vec<Complex64>) -> Result<Self> {
        if zeros.is_empty() {
            return Err(Error::InvariantViolation("Blaschke product must have at least one zero".into()));
        }
        if !((constant.norm() - 1.0).abs() <= UNIMODULAR_TOL) {
            return Err(Error::InvariantViolation(format!(
                "constant {constant} is not unimodular (|c| = {})",
                constant.norm()
            )));
        }
        for (j, a) in zeros.iter().enumerate() {
            if !(a.norm() <= MAX_ZERO_MODULUS) {
                return Err(Error::InvariantViolation(format!("zero {j} = {a} has modulus {} >= 1", a.norm())));
            }
        }
        Ok(BlaschkeProduct { constant, zeros })
    }

    /// `z^n`.
    pub fn monomial(n: usize) -> Self {
        BlaschkeProduct::new(ONE, vec![Complex64::new(0.0, 0.0); n]).expect("degree >= 1")
    }

    pub fn constant(&self) -> Complex64 {
        self.constant
    }

    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.zeros.iter().fold(self.constant, |acc, a| acc * (z - a) / (ONE - a.conj() * z))
    }

    /// Exact derivative by the product rule over the Möbius factors, which
    /// stays regular at the zeros of the product.
    pub fn derivative(&self, z: Complex64) -> Complex64 {
        let factors: Vec<Complex64> = self.zeros.iter().map(|a| (z - a) / (ONE - a.conj() * z)).collect();
        let mut total = Complex64::new(0.0, 0.0);
        for (k, a) in self.zeros.iter().enumerate() {
            let den = ONE - a.conj() * z;
            let mut term = (1.0 - a.norm_sqr()) / (den * den);
            for (j, f) in factors.iter().enumerate() {
                if j != k {
                    term *= f;
                }
            }
            total += term;
        }
        self.constant * total
    }

    /// `c * prod (z - a_j)`.
    pub fn numerator(&self) -> Poly {
        Poly::from_roots(&self.zeros).scale(self.constant)
    }

    /// `prod (1 - conj(a_j) z)`.
    pub fn denominator(&self) -> Poly {
        self.zeros.iter().fold(Poly::one(), |acc, a| acc * Poly::linear(ONE, -a.conj()))
    }

    /// Maximum deviation of the two products over a fixed set of closed-disk sample points.
    pub fn max_deviation(&self, other: &BlaschkeProduct) -> f64 {
        sampling::closed_disk_points(64, 0x5eed)
            .into_iter()
            .map(|z| (self.eval(z) - other.eval(z)).norm())
            .fold(0.0, f64::max)
    }

    pub fn agrees_with(&self, other: &BlaschkeProduct, tol: f64) -> bool {
        self.max_deviation(other) <= tol
    }

    /// The composition `(w - B(z)) / (1 - conj(w) B(z))`, again a Blaschke
    /// product of the same degree. Its zeros solve `B(z) = w`.
    pub fn crofoot_target(&self, w: DiskPoint) -> Result<BlaschkeProduct> {
        let w = w.value();
        if w == Complex64::new(0.0, 0.0) {
            return BlaschkeProduct::new(-self.constant, self.zeros.clone());
        }
        let level = &self.denominator().scale(w) - &self.numerator();
        let zeros = level.roots()?;
        if zeros.len() != self.degree() {
            return Err(Error::RootFindingFailure { degree: self.degree() });
        }
        for (j, z) in zeros.iter().enumerate() {
            if !(z.norm() <= MAX_ZERO_MODULUS) {
                return Err(Error::InvariantViolation(format!("recovered zero {j} = {z} lies outside the disk")));
            }
            let residual = (self.eval(*z) - w).norm();
            if residual > 1e-12 {
                return Err(Error::RootFindingFailure { degree: self.degree() });
            }
        }
        let target = |z: Complex64| {
            let b = self.eval(z);
            (w - b) / (ONE - w.conj() * b)
        };
        let shape = BlaschkeProduct { constant: ONE, zeros };
        let anchor = ONE;
        let constant = target(anchor) / shape.eval(anchor);
        let result = BlaschkeProduct::new(constant / constant.norm(), shape.zeros)?;

        let deviation = sampling::closed_disk_points(64, 0xc0f0)
            .into_iter()
            .map(|z| (result.eval(z) - target(z)).norm())
            .fold(0.0, f64::max);
        if deviation > 1e-10 {
            return Err(Error::InvariantViolation(format!(
                "Crofoot target deviates by {deviation:e} from the composed map"
            )));
        }
        Ok(result)
    }

    /// Whether applying [`crofoot_target`](Self::crofoot_target) twice with the same point returns `self`.
    pub fn involution_check(&self, w: DiskPoint) -> Result<bool> {
        let twice = self.crofoot_target(w)?.crofoot_target(w)?;
        Ok(self.agrees_with(&twice, 1e-9))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eval_examples() {
        let sq = BlaschkeProduct::monomial(2);
        assert!((sq.eval(c(0.5, 0.0)) - c(0.25, 0.0)).norm() < 1e-15);
        let half = BlaschkeProduct::new(ONE, vec![c(0.5, 0.0)]).unwrap();
        assert!(half.eval(c(0.5, 0.0)).norm() < 1e-15);
        assert!((half.eval(ONE) - ONE).norm() < 1e-15);
    }

    #[test]
    fn unimodular_on_circle() {
        let b = BlaschkeProduct::new(
            Complex64::from_polar(1.0, 0.7),
            vec![c(0.5, -0.2), c(-0.3, 0.6), c(0.0, 0.0), c(0.8, 0.1)],
        )
        .unwrap();
        for k in 0..256 {
            let z = Complex64::from_polar(1.0, k as f64 * std::f64::consts::TAU / 256.0);
            assert!((b.eval(z).norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn derivative_examples() {
        let sq = BlaschkeProduct::monomial(2);
        assert!((sq.derivative(c(0.5, 0.0)) - ONE).norm() < 1e-15);
        let id = BlaschkeProduct::monomial(1);
        assert!((id.derivative(c(0.2, 0.3)) - ONE).norm() < 1e-15);
        // (1 - |a|^2) / (1 - a)^2 at z = 1, a = 1/2
        let half = BlaschkeProduct::new(ONE, vec![c(0.5, 0.0)]).unwrap();
        assert!((half.derivative(ONE) - c(3.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn derivative_matches_central_differences() {
        let b = BlaschkeProduct::new(Complex64::from_polar(1.0, -1.1), vec![c(0.4, 0.1), c(-0.2, -0.5), c(0.4, 0.1)])
            .unwrap();
        let h = 1e-6;
        for z in sampling::open_disk_points(50, 3, 0.9) {
            let fd = (b.eval(z + h) - b.eval(z - h)) / (2.0 * h);
            let exact = b.derivative(z);
            assert!((fd - exact).norm() <= 1e-6 * exact.norm().max(1.0));
        }
        // finite-difference check of the boundary example
        let half = BlaschkeProduct::new(ONE, vec![c(0.5, 0.0)]).unwrap();
        let fd = (half.eval(c(1.0 + h, 0.0)) - half.eval(c(1.0 - h, 0.0))) / (2.0 * h);
        assert!((fd - c(3.0, 0.0)).norm() < 1e-6);
    }

    #[test]
    fn rejects_degenerate_input() {
        assert!(BlaschkeProduct::new(ONE, vec![]).is_err());
        assert!(BlaschkeProduct::new(c(1.1, 0.0), vec![c(0.0, 0.0)]).is_err());
        let err = BlaschkeProduct::new(ONE, vec![c(0.1, 0.0), c(1.0, 0.0)]).unwrap_err();
        assert!(err.to_string().contains("zero 1"));
        assert!(DiskPoint::new(c(0.6, 0.8)).is_err());
        assert!(BoundaryPoint::new(c(0.6, 0.8)).is_ok());
    }

    #[test]
    fn crofoot_degree_one() {
        let a = c(0.3, -0.4);
        let target = BlaschkeProduct::monomial(1).crofoot_target(DiskPoint::new(a).unwrap()).unwrap();
        assert_eq!(target.degree(), 1);
        for z in sampling::closed_disk_points(20, 1) {
            let expected = (a - z) / (ONE - a.conj() * z);
            assert!((target.eval(z) - expected).norm() < 1e-12);
        }
    }

    #[test]
    fn crofoot_at_origin_negates() {
        let b = BlaschkeProduct::new(c(0.0, 1.0), vec![c(0.2, 0.1), c(-0.5, 0.0)]).unwrap();
        let t = b.crofoot_target(DiskPoint::origin()).unwrap();
        assert_eq!(t.zeros(), b.zeros());
        assert_eq!(t.constant(), -b.constant());
    }

    #[test]
    fn crofoot_square_quarter() {
        let t = BlaschkeProduct::monomial(2).crofoot_target(DiskPoint::new(c(0.25, 0.0)).unwrap()).unwrap();
        let mut zs: Vec<f64> = t.zeros().iter().map(|z| z.re).collect();
        zs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((zs[0] + 0.5).abs() < 1e-13 && (zs[1] - 0.5).abs() < 1e-13);
        assert!(t.zeros().iter().all(|z| z.im.abs() < 1e-13));
    }

    #[test]
    fn involution_examples() {
        let id = BlaschkeProduct::monomial(1);
        assert!(id.involution_check(DiskPoint::new(c(0.3, 0.0)).unwrap()).unwrap());
        let cube = BlaschkeProduct::monomial(3);
        assert!(cube.involution_check(DiskPoint::origin()).unwrap());
    }
}
