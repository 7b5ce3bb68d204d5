//! Truncated Fourier arithmetic on the circle, an independent route to model
//! space projections and operator matrices that uses no quadrature.
//!
//! Rational functions are expanded by power-series division, products are
//! direct convolutions, the Szegő projection drops negative indices, and
//! `P_alpha g = g - alpha P(conj(alpha) g)` for `g` in `H^2`.

use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::blaschke::BlaschkeProduct;
use crate::error::{Error, Result};
use crate::modelspace::ModelSpaceBasis;
use crate::rational::RationalAnalytic;
use crate::symbols::{blaschke_rational, Symbol};
use crate::tto::AttoMatrix;

pub const DEFAULT_ORDER: usize = 256;
pub const MAX_ORDER: usize = 4096;
const TAIL_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Fourier coefficients `c_n` for `n` in `[-M, M]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierSlice {
    order: usize,
    coeffs: Vec<Complex64>,
}

impl FourierSlice {
    pub fn zeros(order: usize) -> Self {
        FourierSlice { order, coeffs: vec![ZERO; 2 * order + 1] }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `z^n`; zero outside the window.
    pub fn get(&self, n: i64) -> Complex64 {
        let m = self.order as i64;
        if n < -m || n > m {
            ZERO
        } else {
            self.coeffs[(n + m) as usize]
        }
    }

    pub fn set(&mut self, n: i64, v: Complex64) {
        let m = self.order as i64;
        self.coeffs[(n + m) as usize] = v;
    }

    pub fn monomial(order: usize, n: i64) -> Self {
        let mut s = FourierSlice::zeros(order);
        s.set(n, Complex64::new(1.0, 0.0));
        s
    }

    /// `max(|c_{±M}|, |c_{±(M-1)}|)`.
    pub fn tail(&self) -> f64 {
        let m = self.order as i64;
        [m, m - 1, -m, -(m - 1)].iter().map(|&n| self.get(n).norm()).fold(0.0, f64::max)
    }

    fn check_tail(self) -> Result<Self> {
        let tail = self.tail();
        if tail < TAIL_TOL {
            Ok(self)
        } else {
            Err(Error::TruncationInsufficient { order: self.order, tail })
        }
    }

    pub fn add(&self, other: &FourierSlice) -> FourierSlice {
        debug_assert_eq!(self.order, other.order);
        FourierSlice { order: self.order, coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &FourierSlice) -> FourierSlice {
        debug_assert_eq!(self.order, other.order);
        FourierSlice { order: self.order, coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() }
    }

    /// The slice of the boundary function `conj(f)`: `c'_n = conj(c_{-n})`.
    pub fn conj(&self) -> FourierSlice {
        FourierSlice { order: self.order, coeffs: self.coeffs.iter().rev().map(|c| c.conj()).collect() }
    }

    /// Product of boundary functions, truncated back to `[-M, M]`.
    pub fn convolve(&self, other: &FourierSlice) -> FourierSlice {
        debug_assert_eq!(self.order, other.order);
        let m = self.order as i64;
        let mut out = FourierSlice::zeros(self.order);
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == ZERO {
                continue;
            }
            let ni = i as i64 - m;
            let lo = (-m - ni).max(-m);
            let hi = (m - ni).min(m);
            for nj in lo..=hi {
                let b = other.coeffs[(nj + m) as usize];
                if b != ZERO {
                    out.coeffs[(ni + nj + m) as usize] += a * b;
                }
            }
        }
        out
    }

    /// `sum c_n conj(d_n)`, the `L^2` inner product.
    pub fn inner(&self, other: &FourierSlice) -> Complex64 {
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b.conj()).sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let m = self.order as i64;
        self.coeffs.iter().enumerate().map(|(i, c)| c * z.powi((i as i64 - m) as i32)).sum()
    }
}

/// Maclaurin coefficients of an analytic rational function.
pub fn fourier_of_analytic(g: &RationalAnalytic, order: usize) -> Result<FourierSlice> {
    let mut s = FourierSlice::zeros(order);
    for (n, c) in g.taylor(order + 1).into_iter().enumerate() {
        s.set(n as i64, c);
    }
    s.check_tail()
}

/// Slice of the boundary function `conj(g)`.
pub fn fourier_of_coanalytic(g: &RationalAnalytic, order: usize) -> Result<FourierSlice> {
    Ok(fourier_of_analytic(g, order)?.conj())
}

pub fn fourier_of_symbol(s: &Symbol, order: usize) -> Result<FourierSlice> {
    Ok(fourier_of_analytic(s.g_plus(), order)?.add(&fourier_of_coanalytic(s.g_minus(), order)?))
}

/// Drops the negative-index coefficients.
pub fn szego_project(s: &FourierSlice) -> FourierSlice {
    let mut out = s.clone();
    for n in 1..=s.order as i64 {
        out.set(-n, ZERO);
    }
    out
}

/// `P_alpha s = g - alpha P(conj(alpha) g)` with `g = P s`.
pub fn model_project(alpha: &BlaschkeProduct, s: &FourierSlice) -> Result<FourierSlice> {
    let a = fourier_of_analytic(&blaschke_rational(alpha), s.order)?;
    Ok(model_project_with(&a, s))
}

fn model_project_with(alpha_slice: &FourierSlice, s: &FourierSlice) -> FourierSlice {
    let g = szego_project(s);
    let t = szego_project(&alpha_slice.conj().convolve(&g));
    g.sub(&alpha_slice.convolve(&t))
}

fn basis_slices(basis: &ModelSpaceBasis, order: usize) -> Result<Vec<FourierSlice>> {
    (0..basis.dim()).map(|k| fourier_of_analytic(&basis.basis_rational(k), order)).collect()
}

/// Operator matrix `<P_beta(phi e_k), e_j>` in Fourier coordinates at a fixed order.
pub fn atto_matrix_oracle_at(
    alpha: &Arc<ModelSpaceBasis>,
    beta: &Arc<ModelSpaceBasis>,
    s: &Symbol,
    order: usize,
) -> Result<AttoMatrix> {
    let phi = fourier_of_symbol(s, order)?;
    let beta_slice = fourier_of_analytic(&blaschke_rational(beta.alpha()), order)?;
    let ea = basis_slices(alpha, order)?;
    let eb = basis_slices(beta, order)?;
    let mut entries = DMatrix::<Complex64>::zeros(eb.len(), ea.len());
    for (k, e) in ea.iter().enumerate() {
        let image = model_project_with(&beta_slice, &phi.convolve(e));
        for (j, f) in eb.iter().enumerate() {
            entries[(j, k)] = image.inner(f);
        }
    }
    AttoMatrix::new(alpha.alpha().clone(), beta.alpha().clone(), entries)
}

/// [`atto_matrix_oracle_at`] starting from `order`, doubling on
/// [`Error::TruncationInsufficient`] up to [`MAX_ORDER`].
pub fn atto_matrix_oracle(
    alpha: &Arc<ModelSpaceBasis>,
    beta: &Arc<ModelSpaceBasis>,
    s: &Symbol,
    order: usize,
) -> Result<AttoMatrix> {
    let mut m = order.max(2);
    loop {
        match atto_matrix_oracle_at(alpha, beta, s, m) {
            Err(Error::TruncationInsufficient { .. }) if m * 2 <= MAX_ORDER => m *= 2,
            other => return other,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use crate::symbols::{make_symbol, zero_class_symbol};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn geometric_slice() {
        let g = RationalAnalytic::new(Poly::one(), Poly::linear(c(1.0, 0.0), c(-0.5, 0.0))).unwrap();
        // at M = 40 the tail |c_39| = 2^-39 sits just above the admission threshold
        match fourier_of_analytic(&g, 40) {
            Err(Error::TruncationInsufficient { order: 40, tail }) => assert!((tail - 0.5f64.powi(39)).abs() < 1e-20),
            other => panic!("unexpected {other:?}"),
        }
        let s = fourier_of_analytic(&g, 48).unwrap();
        for n in -48..=48i64 {
            let expected = if n >= 0 { 0.5f64.powi(n as i32) } else { 0.0 };
            assert!((s.get(n) - c(expected, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn conj_z_slice() {
        let s = fourier_of_coanalytic(&RationalAnalytic::polynomial(Poly::monomial(1)), 8).unwrap();
        for n in -8..=8i64 {
            let expected = if n == -1 { 1.0 } else { 0.0 };
            assert_eq!(s.get(n), c(expected, 0.0));
        }
    }

    #[test]
    fn shifted_geometric_is_a_convolution() {
        let g = RationalAnalytic::new(Poly::one(), Poly::linear(c(1.0, 0.0), c(-1.0 / 3.0, 0.0))).unwrap();
        let gs = fourier_of_analytic(&g, 64).unwrap();
        let prod = FourierSlice::monomial(64, 2).convolve(&gs);
        let direct = fourier_of_analytic(&g.mul(&RationalAnalytic::polynomial(Poly::monomial(2))), 64).unwrap();
        for n in -64..=64i64 {
            let expected = if n >= 2 { (1.0f64 / 3.0).powi(n as i32 - 2) } else { 0.0 };
            assert!((prod.get(n) - c(expected, 0.0)).norm() < 1e-15);
            assert!((direct.get(n) - prod.get(n)).norm() < 1e-15);
        }
    }

    #[test]
    fn truncation_is_reported() {
        let g = RationalAnalytic::new(Poly::one(), Poly::linear(c(1.0, 0.0), c(-0.99, 0.0))).unwrap();
        assert!(matches!(fourier_of_analytic(&g, 64), Err(Error::TruncationInsufficient { order: 64, .. })));
    }

    #[test]
    fn szego_examples() {
        let neg = FourierSlice::monomial(4, -1);
        assert_eq!(szego_project(&neg), FourierSlice::zeros(4));
        let mut mixed = FourierSlice::monomial(4, 2);
        mixed.set(-3, c(1.0, 1.0));
        assert_eq!(szego_project(&mixed), FourierSlice::monomial(4, 2));
        assert_eq!(szego_project(&FourierSlice::monomial(4, 2)), FourierSlice::monomial(4, 2));
    }

    #[test]
    fn model_projection_examples() {
        let sq = BlaschkeProduct::monomial(2);
        assert_eq!(model_project(&sq, &FourierSlice::monomial(16, 3)).unwrap(), FourierSlice::zeros(16));
        assert_eq!(model_project(&sq, &FourierSlice::monomial(16, 0)).unwrap(), FourierSlice::monomial(16, 0));

        // P_alpha 1 = k_0 = 1 - conj(alpha(0)) alpha
        let alpha = BlaschkeProduct::new(c(0.0, 1.0), vec![c(0.5, 0.0)]).unwrap();
        let order = 128;
        let p = model_project(&alpha, &FourierSlice::monomial(order, 0)).unwrap();
        let a = fourier_of_analytic(&blaschke_rational(&alpha), order).unwrap();
        let a0 = alpha.eval(c(0.0, 0.0));
        assert!((a0 - c(0.0, -0.5)).norm() < 1e-15);
        for n in -(order as i64)..=order as i64 {
            let expected = if n == 0 { c(1.0, 0.0) } else { ZERO } - a0.conj() * a.get(n);
            assert!((p.get(n) - expected).norm() < 1e-14);
        }
    }

    #[test]
    fn oracle_matrix_examples() {
        let sq = ModelSpaceBasis::new(BlaschkeProduct::monomial(2));
        let s = make_symbol(RationalAnalytic::polynomial(Poly::monomial(1)), RationalAnalytic::zero());
        let m = atto_matrix_oracle(&sq, &sq, &s, 16).unwrap();
        let expected = [[ZERO, ZERO], [c(1.0, 0.0), ZERO]];
        for (j, row) in expected.iter().enumerate() {
            for (k, e) in row.iter().enumerate() {
                assert!((m.entries()[(j, k)] - e).norm() < 1e-15);
            }
        }

        let alpha = BlaschkeProduct::new(c(0.6, -0.8), vec![c(0.4, 0.1), c(-0.3, 0.5)]).unwrap();
        let beta = BlaschkeProduct::new(c(1.0, 0.0), vec![c(-0.6, 0.2), c(0.1, 0.0), c(0.0, 0.3)]).unwrap();
        let h1 = RationalAnalytic::polynomial(Poly::new(vec![c(0.3, -0.4), c(0.5, 0.5)]));
        let h2 = RationalAnalytic::polynomial(Poly::new(vec![c(-1.0, 0.2), c(0.0, 0.0), c(0.7, 0.1)]));
        let s = zero_class_symbol(&alpha, &beta, &h1, &h2);
        let m =
            atto_matrix_oracle(&ModelSpaceBasis::new(alpha), &ModelSpaceBasis::new(beta), &s, DEFAULT_ORDER).unwrap();
        assert!(m.norm() < 1e-9);
    }

    #[test]
    fn doubling_from_small_order() {
        let alpha = BlaschkeProduct::new(c(1.0, 0.0), vec![c(0.7, 0.0), c(-0.5, 0.3)]).unwrap();
        let basis = ModelSpaceBasis::new(alpha);
        let s = make_symbol(RationalAnalytic::polynomial(Poly::monomial(1)), RationalAnalytic::zero());
        let m = atto_matrix_oracle(&basis, &basis, &s, 8).unwrap();
        let direct = crate::tto::atto_matrix(&basis, &basis, &s).unwrap();
        assert!(m.max_entry_distance(&direct) < 1e-8);
    }
}
