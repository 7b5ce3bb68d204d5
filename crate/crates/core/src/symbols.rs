//! Boundary symbols `phi = g_plus + conj(g_minus)`, canonical pairs and the
//! zero test for asymmetric truncated Toeplitz operators.

use std::sync::Arc;

use num_complex::Complex64;

use crate::blaschke::BlaschkeProduct;
use crate::error::{Error, Result};
use crate::modelspace::{alpha_pole_radius, ModelSpaceBasis, ModelSpaceElement};
use crate::rational::RationalAnalytic;

/// Default zero-test tolerance.
pub const DEFAULT_ZERO_TOL: f64 = 1e-9;

/// A rational boundary function split into analytic and coanalytic parts.
/// The split is unique under the normalization `g_minus(0) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Symbol {
    g_plus: RationalAnalytic,
    g_minus: RationalAnalytic,
}

/// Builds a symbol, folding `conj(g_minus(0))` into the analytic part.
pub fn make_symbol(g_plus: RationalAnalytic, g_minus: RationalAnalytic) -> Symbol {
    let c = g_minus.value_at_zero();
    Symbol { g_plus: g_plus.add_constant(c.conj()), g_minus: g_minus.add_constant(-c) }
}

impl Symbol {
    pub fn zero() -> Self {
        make_symbol(RationalAnalytic::zero(), RationalAnalytic::zero())
    }

    pub fn analytic(g: RationalAnalytic) -> Self {
        make_symbol(g, RationalAnalytic::zero())
    }

    /// The boundary function `conj(g)`.
    pub fn coanalytic(g: RationalAnalytic) -> Self {
        make_symbol(RationalAnalytic::zero(), g)
    }

    pub fn g_plus(&self) -> &RationalAnalytic {
        &self.g_plus
    }

    pub fn g_minus(&self) -> &RationalAnalytic {
        &self.g_minus
    }

    /// Boundary value at `|z| = 1`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.g_plus.eval(z) + self.g_minus.eval(z).conj()
    }

    pub fn add(&self, other: &Symbol) -> Symbol {
        make_symbol(self.g_plus.add(&other.g_plus), self.g_minus.add(&other.g_minus))
    }

    pub fn scale(&self, s: Complex64) -> Symbol {
        make_symbol(self.g_plus.scale(s), self.g_minus.scale(s.conj()))
    }

    /// The boundary function `conj(phi)`.
    pub fn conj(&self) -> Symbol {
        make_symbol(self.g_minus.clone(), self.g_plus.clone())
    }

    /// Distance from the analytic/coanalytic poles to the circle, as a ratio below one.
    pub fn pole_ratio(&self) -> f64 {
        1.0 / self.g_plus.pole_radius().min(self.g_minus.pole_radius())
    }
}

/// `alpha` as a rational function `c N / D`.
pub fn blaschke_rational(alpha: &BlaschkeProduct) -> RationalAnalytic {
    RationalAnalytic::from_trusted(alpha.numerator(), alpha.denominator(), alpha_pole_radius(alpha))
}

/// The symbol `conj(alpha h1) + beta h2`, whose operator vanishes.
pub fn zero_class_symbol(
    alpha: &BlaschkeProduct,
    beta: &BlaschkeProduct,
    h1: &RationalAnalytic,
    h2: &RationalAnalytic,
) -> Symbol {
    make_symbol(blaschke_rational(beta).mul(h2), blaschke_rational(alpha).mul(h1))
}

/// Representatives `chi` in `K_alpha`, `psi` in `K_beta` with `A_phi = A_{conj(chi) + psi}`.
#[derive(Debug, Clone)]
pub struct CanonicalPair {
    pub chi: ModelSpaceElement,
    pub psi: ModelSpaceElement,
}

impl CanonicalPair {
    /// The symbol `conj(chi) + psi`.
    pub fn symbol(&self) -> Symbol {
        make_symbol(self.psi.to_rational(), self.chi.to_rational())
    }

    /// Largest coefficient distance to another pair over the same spaces.
    pub fn distance(&self, other: &CanonicalPair) -> Result<f64> {
        Ok(self.chi.distance(&other.chi)?.max(self.psi.distance(&other.psi)?))
    }
}

/// `chi = P_alpha(g_minus)`, `psi = P_beta(g_plus)`.
pub fn canonical_pair(alpha: &Arc<ModelSpaceBasis>, beta: &Arc<ModelSpaceBasis>, s: &Symbol) -> Result<CanonicalPair> {
    let chi = alpha.project(|z| s.g_minus.eval(z))?;
    let psi = beta.project(|z| s.g_plus.eval(z))?;
    Ok(CanonicalPair { chi, psi })
}

/// `(chi - conj(c) k_0^alpha, psi + c k_0^beta)`; every pair inducing the same
/// operator has this form.
pub fn pair_ambiguity_shift(p: &CanonicalPair, c: Complex64) -> CanonicalPair {
    let k0a = p.chi.basis().kernel(Complex64::new(0.0, 0.0));
    let k0b = p.psi.basis().kernel(Complex64::new(0.0, 0.0));
    CanonicalPair {
        chi: p.chi.sub(&k0a.scale(c.conj())).expect("same basis"),
        psi: p.psi.add(&k0b.scale(c)).expect("same basis"),
    }
}

/// Outcome of [`is_zero_symbol`].
#[derive(Debug, Clone)]
pub struct ZeroVerdict {
    pub is_zero: bool,
    /// Least-squares scalar with `(chi, psi) ≈ (-conj(c) k_0^alpha, c k_0^beta)`.
    pub c: Complex64,
    pub residual: f64,
    /// `tol * (1 + ||chi|| + ||psi||)`.
    pub threshold: f64,
    pub pair: CanonicalPair,
}

/// Decides whether `A_phi` vanishes by testing whether the canonical pair is
/// of the form `(-conj(c) k_0^alpha, c k_0^beta)`.
///
/// With `u = k_0^alpha`, `v = k_0^beta` the fit minimizes
/// `||conj(chi) + c conj(u)||^2 + ||psi - c v||^2`, a linear least-squares
/// problem in `c`.
pub fn is_zero_symbol(
    alpha: &Arc<ModelSpaceBasis>,
    beta: &Arc<ModelSpaceBasis>,
    s: &Symbol,
    tol: f64,
) -> Result<ZeroVerdict> {
    if !(tol > 0.0) {
        return Err(Error::InvalidInput(format!("tolerance must be positive, got {tol}")));
    }
    let pair = canonical_pair(alpha, beta, s)?;
    Ok(fit_zero_class(pair, tol))
}

/// The scalar fit behind [`is_zero_symbol`], applied to a given pair.
pub fn fit_zero_class(pair: CanonicalPair, tol: f64) -> ZeroVerdict {
    let zero = Complex64::new(0.0, 0.0);
    let u = pair.chi.basis().kernel(zero);
    let v = pair.psi.basis().kernel(zero);
    let (u, v, chi, psi) = (u.coeffs(), v.coeffs(), pair.chi.coeffs(), pair.psi.coeffs());

    let numer: Complex64 = u.iter().zip(chi).map(|(uk, xk)| -uk * xk.conj()).sum::<Complex64>()
        + v.iter().zip(psi).map(|(vk, pk)| vk.conj() * pk).sum::<Complex64>();
    let denom: f64 = u.iter().chain(v).map(|x| x.norm_sqr()).sum();
    let c = numer / denom;

    let r_chi: f64 = chi.iter().zip(u).map(|(xk, uk)| (xk + c.conj() * uk).norm_sqr()).sum();
    let r_psi: f64 = psi.iter().zip(v).map(|(pk, vk)| (pk - c * vk).norm_sqr()).sum();
    let residual = (r_chi + r_psi).sqrt();
    let threshold = tol * (1.0 + pair.chi.norm() + pair.psi.norm());
    ZeroVerdict { is_zero: residual <= threshold, c, residual, threshold, pair }
}
