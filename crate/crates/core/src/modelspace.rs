//! The model space `K_alpha = H^2 ⊖ alpha H^2` in its Takenaka-Malmquist basis.
//!
//! For zeros `a_1, .., a_n` (in stored order) the basis is
//!
//! ```text
//! e_k(z) = sqrt(1 - |a_k|^2) / (1 - conj(a_k) z) * prod_{j<k} (z - a_j) / (1 - conj(a_j) z)
//! ```
//!
//! which is orthonormal in `H^2`. Elements are coefficient vectors over this
//! basis; inner products are plain `l^2` sums.

use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::blaschke::BlaschkeProduct;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::quadrature::CircleQuadrature;
use crate::rational::RationalAnalytic;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Below this distance from a boundary point the pointwise kernel formulas
/// switch to their divided (singularity-free) rational form.
const REMOVABLE_RADIUS: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct ModelSpaceBasis {
    alpha: BlaschkeProduct,
    scales: Vec<f64>,
    quad: CircleQuadrature,
}

impl ModelSpaceBasis {
    pub fn new(alpha: BlaschkeProduct) -> Arc<Self> {
        Self::with_quadrature(alpha, CircleQuadrature::default())
    }

    pub fn with_quadrature(alpha: BlaschkeProduct, quad: CircleQuadrature) -> Arc<Self> {
        let scales = alpha.zeros().iter().map(|a| (1.0 - a.norm_sqr()).sqrt()).collect();
        Arc::new(ModelSpaceBasis { alpha, scales, quad })
    }

    pub fn alpha(&self) -> &BlaschkeProduct {
        &self.alpha
    }

    pub fn dim(&self) -> usize {
        self.scales.len()
    }

    pub fn quadrature(&self) -> &CircleQuadrature {
        &self.quad
    }

    /// Two bases span the same coordinates when their zero lists coincide.
    pub fn same_space(&self, other: &ModelSpaceBasis) -> bool {
        self.alpha.zeros() == other.alpha.zeros()
    }

    /// Writes `e_1(z), .., e_n(z)` into `out`.
    pub fn eval_into(&self, z: Complex64, out: &mut [Complex64]) {
        let mut prefix = ONE;
        for (k, a) in self.alpha.zeros().iter().enumerate() {
            let den = ONE - a.conj() * z;
            out[k] = prefix * self.scales[k] / den;
            prefix *= (z - a) / den;
        }
    }

    pub fn eval_basis(&self, z: Complex64) -> Vec<Complex64> {
        let mut out = vec![ZERO; self.dim()];
        self.eval_into(z, &mut out);
        out
    }

    /// `e_k` as an explicit rational function over the common denominator of `alpha`.
    pub fn basis_numerator(&self, k: usize) -> Poly {
        let zeros = self.alpha.zeros();
        let mut p = Poly::constant(Complex64::new(self.scales[k], 0.0));
        for a in &zeros[..k] {
            p = p * Poly::linear(-a, ONE);
        }
        for a in &zeros[k + 1..] {
            p = p * Poly::linear(ONE, -a.conj());
        }
        p
    }

    pub fn basis_rational(&self, k: usize) -> RationalAnalytic {
        RationalAnalytic::from_trusted(
            self.basis_numerator(k),
            self.alpha.denominator(),
            alpha_pole_radius(&self.alpha),
        )
    }

    pub fn element(self: &Arc<Self>, coeffs: Vec<Complex64>) -> Result<ModelSpaceElement> {
        if coeffs.len() != self.dim() {
            return Err(Error::InvalidInput(format!("expected {} coefficients, got {}", self.dim(), coeffs.len())));
        }
        Ok(ModelSpaceElement { basis: Arc::clone(self), coeffs })
    }

    pub fn zero_element(self: &Arc<Self>) -> ModelSpaceElement {
        ModelSpaceElement { basis: Arc::clone(self), coeffs: vec![ZERO; self.dim()] }
    }

    /// The `k`-th basis vector.
    pub fn unit(self: &Arc<Self>, k: usize) -> ModelSpaceElement {
        let mut coeffs = vec![ZERO; self.dim()];
        coeffs[k] = ONE;
        ModelSpaceElement { basis: Arc::clone(self), coeffs }
    }

    /// Reproducing kernel at a point of the closed disk: coefficients `conj(e_k(w))`.
    /// Boundary points are admissible since finite Blaschke products have an
    /// angular derivative everywhere on the circle.
    pub fn kernel(self: &Arc<Self>, w: impl Into<Complex64>) -> ModelSpaceElement {
        let w = w.into();
        let coeffs = self.eval_basis(w).into_iter().map(|v| v.conj()).collect();
        ModelSpaceElement { basis: Arc::clone(self), coeffs }
    }

    /// Conjugate kernel `(alpha(z) - alpha(w)) / (z - w)`, projected onto the basis.
    pub fn conjugate_kernel(self: &Arc<Self>, w: impl Into<Complex64>) -> Result<ModelSpaceElement> {
        let f = conjugate_kernel_rational(&self.alpha, w.into());
        self.project(|z| f.eval(z))
    }

    /// Orthogonal projection of a boundary function onto the model space.
    pub fn project<F>(self: &Arc<Self>, f: F) -> Result<ModelSpaceElement>
    where
        F: Fn(Complex64) -> Complex64,
    {
        let n = self.dim();
        let mut basis = vec![ZERO; n];
        let coeffs = self.quad.integrate(n, |z, out| {
            self.eval_into(z, &mut basis);
            let v = f(z);
            for (o, e) in out.iter_mut().zip(basis.iter()) {
                *o = v * e.conj();
            }
        })?;
        Ok(ModelSpaceElement { basis: Arc::clone(self), coeffs })
    }

    /// Matrix of `C f = alpha conj(z) conj(f)` on the circle:
    /// `M[j][k] = <C e_k, e_j>`.
    pub fn conjugation_matrix(self: &Arc<Self>) -> Result<ConjugationMatrix> {
        let n = self.dim();
        let mut basis = vec![ZERO; n];
        let flat = self.quad.integrate(n * n, |z, out| {
            self.eval_into(z, &mut basis);
            let w = self.alpha.eval(z) * z.conj();
            for j in 0..n {
                for k in 0..n {
                    out[j * n + k] = w * (basis[k] * basis[j]).conj();
                }
            }
        })?;
        Ok(ConjugationMatrix { basis: Arc::clone(self), matrix: DMatrix::from_row_slice(n, n, &flat) })
    }

    /// Gram matrix of the basis computed by quadrature.
    pub fn gram_matrix(&self) -> Result<DMatrix<Complex64>> {
        let n = self.dim();
        let mut basis = vec![ZERO; n];
        let flat = self.quad.integrate(n * n, |z, out| {
            self.eval_into(z, &mut basis);
            for j in 0..n {
                for k in 0..n {
                    out[j * n + k] = basis[k] * basis[j].conj();
                }
            }
        })?;
        Ok(DMatrix::from_row_slice(n, n, &flat))
    }
}

pub(crate) fn alpha_pole_radius(alpha: &BlaschkeProduct) -> f64 {
    alpha
        .zeros()
        .iter()
        .map(|a| if a.norm() == 0.0 { f64::INFINITY } else { 1.0 / a.norm() })
        .fold(f64::INFINITY, f64::min)
}

/// `k_w(z) = (1 - conj(alpha(w)) alpha(z)) / (1 - conj(w) z)` as a rational
/// function. For `|w| = 1` the removable factor `1 - conj(w) z` is divided out.
pub fn kernel_rational(alpha: &BlaschkeProduct, w: Complex64) -> RationalAnalytic {
    let d = alpha.denominator();
    let num = &d - &alpha.numerator().scale(alpha.eval(w).conj());
    let radius = alpha_pole_radius(alpha);
    if w.norm() < 1.0 - 1e-12 {
        let den = &d * &Poly::linear(ONE, -w.conj());
        let r = if w.norm() == 0.0 { radius } else { radius.min(1.0 / w.norm()) };
        RationalAnalytic::from_trusted(num, den, r)
    } else {
        // 1 - conj(w) z = -conj(w) (z - w)
        let (q, _) = num.div_linear(w);
        RationalAnalytic::from_trusted(q.scale(-ONE / w.conj()), d, radius)
    }
}

/// `(alpha(z) - alpha(w)) / (z - w)` with the removable factor divided out.
pub fn conjugate_kernel_rational(alpha: &BlaschkeProduct, w: Complex64) -> RationalAnalytic {
    let d = alpha.denominator();
    let num = &alpha.numerator() - &d.scale(alpha.eval(w));
    let (q, _) = num.div_linear(w);
    RationalAnalytic::from_trusted(q, d, alpha_pole_radius(alpha))
}

/// Pointwise reproducing-kernel formula, regular at `z = w` on the circle.
pub fn kernel_value(alpha: &BlaschkeProduct, w: Complex64, z: Complex64) -> Complex64 {
    if w.norm() >= 1.0 - 1e-12 && (z - w).norm() < REMOVABLE_RADIUS {
        return kernel_rational(alpha, w).eval(z);
    }
    (ONE - alpha.eval(w).conj() * alpha.eval(z)) / (ONE - w.conj() * z)
}

/// Pointwise difference quotient `(alpha(z) - alpha(w)) / (z - w)`.
pub fn conjugate_kernel_value(alpha: &BlaschkeProduct, w: Complex64, z: Complex64) -> Complex64 {
    if (z - w).norm() < REMOVABLE_RADIUS {
        return conjugate_kernel_rational(alpha, w).eval(z);
    }
    (alpha.eval(z) - alpha.eval(w)) / (z - w)
}

/// A vector of `K_alpha` in Takenaka-Malmquist coordinates.
#[derive(Debug, Clone)]
pub struct ModelSpaceElement {
    basis: Arc<ModelSpaceBasis>,
    coeffs: Vec<Complex64>,
}

impl ModelSpaceElement {
    pub fn basis(&self) -> &Arc<ModelSpaceBasis> {
        &self.basis
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.basis.eval_basis(z).iter().zip(self.coeffs.iter()).map(|(e, c)| e * c).sum()
    }

    fn check_same(&self, other: &ModelSpaceElement) -> Result<()> {
        if Arc::ptr_eq(&self.basis, &other.basis) || self.basis.same_space(&other.basis) {
            Ok(())
        } else {
            Err(Error::BasisMismatch)
        }
    }

    /// `<self, other> = sum u_k conj(v_k)`.
    pub fn inner_product(&self, other: &ModelSpaceElement) -> Result<Complex64> {
        self.check_same(other)?;
        Ok(self.coeffs.iter().zip(other.coeffs.iter()).map(|(u, v)| u * v.conj()).sum())
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn add(&self, other: &ModelSpaceElement) -> Result<ModelSpaceElement> {
        self.check_same(other)?;
        Ok(self.with_coeffs(self.coeffs.iter().zip(other.coeffs.iter()).map(|(u, v)| u + v).collect()))
    }

    pub fn sub(&self, other: &ModelSpaceElement) -> Result<ModelSpaceElement> {
        self.check_same(other)?;
        Ok(self.with_coeffs(self.coeffs.iter().zip(other.coeffs.iter()).map(|(u, v)| u - v).collect()))
    }

    pub fn scale(&self, s: Complex64) -> ModelSpaceElement {
        self.with_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Euclidean distance between coefficient vectors.
    pub fn distance(&self, other: &ModelSpaceElement) -> Result<f64> {
        Ok(self.sub(other)?.norm())
    }

    fn with_coeffs(&self, coeffs: Vec<Complex64>) -> ModelSpaceElement {
        ModelSpaceElement { basis: Arc::clone(&self.basis), coeffs }
    }

    /// The element as `p / D_alpha` with `deg p < n`.
    pub fn to_rational(&self) -> RationalAnalytic {
        let num = (0..self.basis.dim())
            .fold(Poly::zero(), |acc, k| &acc + &self.basis.basis_numerator(k).scale(self.coeffs[k]));
        RationalAnalytic::from_trusted(num, self.basis.alpha.denominator(), alpha_pole_radius(&self.basis.alpha))
    }
}

/// Coefficient form of the conjugation: `coeffs(C f) = M conj(coeffs(f))`.
#[derive(Debug, Clone)]
pub struct ConjugationMatrix {
    basis: Arc<ModelSpaceBasis>,
    matrix: DMatrix<Complex64>,
}

impl ConjugationMatrix {
    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn apply(&self, f: &ModelSpaceElement) -> Result<ModelSpaceElement> {
        if !self.basis.same_space(&f.basis) {
            return Err(Error::BasisMismatch);
        }
        let n = self.basis.dim();
        let coeffs = (0..n).map(|j| (0..n).map(|k| self.matrix[(j, k)] * f.coeffs[k].conj()).sum()).collect();
        Ok(ModelSpaceElement { basis: Arc::clone(&f.basis), coeffs })
    }

    /// `max(||M M^* - I||, ||M - M^T||)` entrywise.
    pub fn unitary_symmetric_defect(&self) -> f64 {
        let n = self.matrix.nrows();
        let id = DMatrix::<Complex64>::identity(n, n);
        let unitary = (&self.matrix * self.matrix.adjoint() - id).iter().map(|v| v.norm()).fold(0.0, f64::max);
        let symmetric = (&self.matrix - self.matrix.transpose()).iter().map(|v| v.norm()).fold(0.0, f64::max);
        unitary.max(symmetric)
    }
}
