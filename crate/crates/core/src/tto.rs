//! Matrices of asymmetric truncated Toeplitz operators `A_phi f = P_beta(phi f)`
//! from `K_alpha` into `K_beta`, Crofoot transforms, symbol transport and
//! rank-one operators.

use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::blaschke::{BlaschkeProduct, BoundaryPoint, DiskPoint};
use crate::error::{Error, Result};
use crate::modelspace::{
    alpha_pole_radius, conjugate_kernel_rational, kernel_rational, kernel_value, ModelSpaceBasis, ModelSpaceElement,
};
use crate::poly::Poly;
use crate::rational::RationalAnalytic;
use crate::split::split_on_circle;
use crate::symbols::{make_symbol, Symbol};

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Largest singular value.
pub fn operator_norm(m: &DMatrix<Complex64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().svd(false, false).singular_values.max()
}

/// Dense matrix of an operator `K_alpha -> K_beta` in Takenaka-Malmquist
/// coordinates: `entries[(j, k)] = <A e_k^alpha, e_j^beta>`.
#[derive(Debug, Clone)]
pub struct AttoMatrix {
    alpha: BlaschkeProduct,
    beta: BlaschkeProduct,
    entries: DMatrix<Complex64>,
}

impl AttoMatrix {
    pub fn new(alpha: BlaschkeProduct, beta: BlaschkeProduct, entries: DMatrix<Complex64>) -> Result<Self> {
        if entries.nrows() != beta.degree() || entries.ncols() != alpha.degree() {
            return Err(Error::InvalidInput(format!(
                "matrix shape {}x{} does not match dim K_beta x dim K_alpha = {}x{}",
                entries.nrows(),
                entries.ncols(),
                beta.degree(),
                alpha.degree()
            )));
        }
        Ok(AttoMatrix { alpha, beta, entries })
    }

    pub fn alpha(&self) -> &BlaschkeProduct {
        &self.alpha
    }

    pub fn beta(&self) -> &BlaschkeProduct {
        &self.beta
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn norm(&self) -> f64 {
        operator_norm(&self.entries)
    }

    /// Operator norm of `self - other`.
    pub fn distance(&self, other: &AttoMatrix) -> f64 {
        operator_norm(&(&self.entries - &other.entries))
    }

    pub fn max_entry_distance(&self, other: &AttoMatrix) -> f64 {
        (&self.entries - &other.entries).iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: Complex64) -> AttoMatrix {
        AttoMatrix { alpha: self.alpha.clone(), beta: self.beta.clone(), entries: &self.entries * s }
    }

    /// Applies the operator to an element of `K_alpha`.
    pub fn apply(&self, f: &ModelSpaceElement, target: &Arc<ModelSpaceBasis>) -> Result<ModelSpaceElement> {
        let v = &self.entries * nalgebra::DVector::from_column_slice(f.coeffs());
        target.element(v.iter().copied().collect())
    }
}

/// Assembles the matrix of `A_phi` by circle quadrature of
/// `phi(z) e_k^alpha(z) conj(e_j^beta(z))`.
pub fn atto_matrix(alpha: &Arc<ModelSpaceBasis>, beta: &Arc<ModelSpaceBasis>, s: &Symbol) -> Result<AttoMatrix> {
    atto_matrix_fn(alpha, beta, |z| s.eval(z))
}

/// [`atto_matrix`] for an arbitrary boundary function.
pub fn atto_matrix_fn<F>(alpha: &Arc<ModelSpaceBasis>, beta: &Arc<ModelSpaceBasis>, phi: F) -> Result<AttoMatrix>
where
    F: Fn(Complex64) -> Complex64,
{
    let (na, nb) = (alpha.dim(), beta.dim());
    let mut ea = vec![ZERO; na];
    let mut eb = vec![ZERO; nb];
    let flat = alpha.quadrature().integrate(na * nb, |z, out| {
        alpha.eval_into(z, &mut ea);
        beta.eval_into(z, &mut eb);
        let p = phi(z);
        for j in 0..nb {
            let row = p * eb[j].conj();
            for k in 0..na {
                out[j * na + k] = row * ea[k];
            }
        }
    })?;
    AttoMatrix::new(alpha.alpha().clone(), beta.alpha().clone(), DMatrix::from_row_slice(nb, na, &flat))
}

/// Conjugate transpose, an operator `K_beta -> K_alpha`.
pub fn adjoint_matrix(m: &AttoMatrix) -> AttoMatrix {
    AttoMatrix { alpha: m.beta.clone(), beta: m.alpha.clone(), entries: m.entries.adjoint() }
}

/// `f -> <f, v> u` for `u` in `K_beta`, `v` in `K_alpha`.
pub fn outer_product(u: &ModelSpaceElement, v: &ModelSpaceElement) -> AttoMatrix {
    let (nb, na) = (u.coeffs().len(), v.coeffs().len());
    let entries = DMatrix::from_fn(nb, na, |j, k| u.coeffs()[j] * v.coeffs()[k].conj());
    AttoMatrix { alpha: v.basis().alpha().clone(), beta: u.basis().alpha().clone(), entries }
}

/// The unitary `J_w f = sqrt(1 - |w|^2) / (1 - conj(w) alpha) f` from `K_alpha`
/// onto `K_{alpha_w}`.
#[derive(Debug, Clone)]
pub struct CrofootOperator {
    source: Arc<ModelSpaceBasis>,
    target: Arc<ModelSpaceBasis>,
    w: DiskPoint,
    matrix: DMatrix<Complex64>,
}

impl CrofootOperator {
    pub fn source(&self) -> &Arc<ModelSpaceBasis> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ModelSpaceBasis> {
        &self.target
    }

    pub fn point(&self) -> DiskPoint {
        self.w
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    /// Largest entry of `J^* J - I`.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.matrix.ncols();
        (self.matrix.adjoint() * &self.matrix - DMatrix::<Complex64>::identity(n, n))
            .iter()
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }

    pub fn apply(&self, f: &ModelSpaceElement) -> Result<ModelSpaceElement> {
        let v = &self.matrix * nalgebra::DVector::from_column_slice(f.coeffs());
        self.target.element(v.iter().copied().collect())
    }

    /// Inverse through the matrix adjoint.
    pub fn apply_adjoint(&self, g: &ModelSpaceElement) -> Result<ModelSpaceElement> {
        let v = self.matrix.adjoint() * nalgebra::DVector::from_column_slice(g.coeffs());
        self.source.element(v.iter().copied().collect())
    }

    /// Inverse through the multiplier `(1 - conj(w) alpha) / sqrt(1 - |w|^2)`.
    pub fn apply_inverse_formula(&self, g: &ModelSpaceElement) -> Result<ModelSpaceElement> {
        let w = self.w.value();
        let s = (1.0 - w.norm_sqr()).sqrt();
        let alpha = self.source.alpha();
        self.source.project(|z| (ONE - w.conj() * alpha.eval(z)) / s * g.eval(z))
    }
}

pub fn crofoot_operator(alpha: &Arc<ModelSpaceBasis>, w: DiskPoint) -> Result<CrofootOperator> {
    let target_fn = alpha.alpha().crofoot_target(w)?;
    let target = ModelSpaceBasis::with_quadrature(target_fn, *alpha.quadrature());
    let wv = w.value();
    let s = (1.0 - wv.norm_sqr()).sqrt();
    let n = alpha.dim();
    let mut es = vec![ZERO; n];
    let mut et = vec![ZERO; n];
    let flat = alpha.quadrature().integrate(n * n, |z, out| {
        alpha.eval_into(z, &mut es);
        target.eval_into(z, &mut et);
        let m = s / (ONE - wv.conj() * alpha.alpha().eval(z));
        for j in 0..n {
            let row = m * et[j].conj();
            for k in 0..n {
                out[j * n + k] = row * es[k];
            }
        }
    })?;
    Ok(CrofootOperator { source: Arc::clone(alpha), target, w, matrix: DMatrix::from_row_slice(n, n, &flat) })
}

/// Projects `(1 - |w|^2) / ((1 - w conj(alpha(z))) (1 - conj(w) alpha)) k_z^alpha`
/// onto `K_{alpha_w}`; it coincides with the kernel of `K_{alpha_w}` at `z`.
pub fn kernel_transform(alpha: &Arc<ModelSpaceBasis>, w: DiskPoint, z: DiskPoint) -> Result<ModelSpaceElement> {
    let target_fn = alpha.alpha().crofoot_target(w)?;
    let target = ModelSpaceBasis::with_quadrature(target_fn, *alpha.quadrature());
    kernel_transform_into(alpha.alpha(), &target, w, z)
}

/// [`kernel_transform`] onto an existing `K_{alpha_w}` basis.
pub fn kernel_transform_into(
    alpha: &BlaschkeProduct,
    target: &Arc<ModelSpaceBasis>,
    w: DiskPoint,
    z: DiskPoint,
) -> Result<ModelSpaceElement> {
    let (w, z) = (w.value(), z.value());
    let front = (1.0 - w.norm_sqr()) / (ONE - w * alpha.eval(z).conj());
    target.project(|l| front / (ONE - w.conj() * alpha.eval(l)) * kernel_value(alpha, z, l))
}

/// Symbol of `J_b^beta A_phi (J_a^alpha)^{-1}` on `K_{alpha_a} -> K_{beta_b}`:
///
/// ```text
/// (1 - conj(a) alpha)(1 - b conj(beta)) / (sqrt(1 - |a|^2) sqrt(1 - |b|^2)) * phi
/// ```
///
/// The product is cleared of conjugates with `conj(beta) = 1 / beta` and
/// `conj(g(z)) = conj(g)(1/z)` on the circle, then re-split.
pub fn transport_symbol(
    alpha: &BlaschkeProduct,
    beta: &BlaschkeProduct,
    a: DiskPoint,
    b: DiskPoint,
    s: &Symbol,
) -> Result<Symbol> {
    let (a, b) = (a.value(), b.value());
    let k = ONE / ((1.0 - a.norm_sqr()).sqrt() * (1.0 - b.norm_sqr()).sqrt());
    let d_alpha = alpha.denominator();
    let n_beta = beta.numerator();
    let u_a = &d_alpha - &alpha.numerator().scale(a.conj());
    let v_b = &n_beta - &beta.denominator().scale(b);

    let (p_plus, q_plus) = (s.g_plus().num(), s.g_plus().den());
    let (p_minus, q_minus) = (s.g_minus().num(), s.g_minus().den());
    let d = p_minus.degree().max(q_minus.degree());
    let p_tilde = p_minus.reflect(d);
    let q_tilde = q_minus.reflect(d);

    let bracket = &(p_plus * &q_tilde) + &(&p_tilde * q_plus);
    let num = (&(&u_a * &v_b) * &bracket).scale(k);
    let d_in = &n_beta * &q_tilde;
    let d_out = &d_alpha * q_plus;
    let radius = alpha_pole_radius(alpha).min(s.g_plus().pole_radius());
    split_on_circle(&num, &d_in, &d_out, radius)
}

/// `conj(c) z / (1 - conj(w) z)`, the analytic function whose conjugate is
/// `c conj(z) / (1 - w conj(z))` on the circle.
fn shifted_szego(c: Complex64, w: Complex64) -> RationalAnalytic {
    let radius = if w.norm() == 0.0 { f64::INFINITY } else { 1.0 / w.norm() };
    RationalAnalytic::from_trusted(Poly::linear(ZERO, c.conj()), Poly::linear(ONE, -w.conj()), radius)
}

/// Symbol `beta(z) / (z - w)` with matrix `conj_kernel_w^beta ⊗ kernel_w^alpha`.
///
/// On the circle `beta(z)/(z - w) = (beta(z) - beta(w))/(z - w) + conj(conj(beta(w)) z / (1 - conj(w) z))`,
/// valid for every `w` in the disk including the origin.
pub fn rank_one_interior_a(
    alpha: &Arc<ModelSpaceBasis>,
    beta: &Arc<ModelSpaceBasis>,
    w: DiskPoint,
) -> Result<(Symbol, AttoMatrix)> {
    let wv = w.value();
    let bw = beta.alpha().eval(wv);
    let symbol = make_symbol(conjugate_kernel_rational(beta.alpha(), wv), shifted_szego(bw, wv));
    let m = atto_matrix(alpha, beta, &symbol)?;
    Ok((symbol, m))
}

/// Symbol `conj(alpha(z)) / (conj(z) - conj(w))` with matrix `kernel_w^beta ⊗ conj_kernel_w^alpha`.
pub fn rank_one_interior_b(
    alpha: &Arc<ModelSpaceBasis>,
    beta: &Arc<ModelSpaceBasis>,
    w: DiskPoint,
) -> Result<(Symbol, AttoMatrix)> {
    let wv = w.value();
    let aw = alpha.alpha().eval(wv);
    let symbol = make_symbol(shifted_szego(aw, wv), conjugate_kernel_rational(alpha.alpha(), wv));
    let m = atto_matrix(alpha, beta, &symbol)?;
    Ok((symbol, m))
}

/// Symbol `k_eta^beta + conj(k_eta^alpha) - 1` with matrix `kernel_eta^beta ⊗ kernel_eta^alpha`.
pub fn rank_one_boundary(
    alpha: &Arc<ModelSpaceBasis>,
    beta: &Arc<ModelSpaceBasis>,
    eta: BoundaryPoint,
) -> Result<(Symbol, AttoMatrix)> {
    let e = eta.value();
    let symbol = make_symbol(kernel_rational(beta.alpha(), e).add_constant(-ONE), kernel_rational(alpha.alpha(), e));
    let m = atto_matrix(alpha, beta, &symbol)?;
    Ok((symbol, m))
}
