//! Separation of a rational boundary function into analytic and coanalytic parts.
//!
//! A function `N / (D_in D_out)` on the circle, where `D_in` has every root in
//! the open disk and `D_out` every root outside the closed disk, decomposes
//! uniquely as `A / D_out + B / D_in` with `deg B < deg D_in`. The first term
//! is analytic; the second vanishes at infinity and, on the circle, equals
//! `conj(G)` with `G = B* / D_in*` (reflected polynomials), so `G(0) = 0`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::RationalAnalytic;
use crate::symbols::{make_symbol, Symbol};

const SPLIT_TOL: f64 = 1e-10;
const CHECK_POINTS: usize = 128;

/// Splits `num / (d_in * d_out)` into a [`Symbol`]. `out_radius` is the
/// smallest root modulus of `d_out`.
pub fn split_on_circle(num: &Poly, d_in: &Poly, d_out: &Poly, out_radius: f64) -> Result<Symbol> {
    let zero = Complex64::new(0.0, 0.0);
    if num.is_zero() {
        return Ok(Symbol::zero());
    }
    let deg_n = num.degree();
    let deg_in = d_in.degree();
    let deg_out = d_out.degree();
    let n_a = (deg_n + 1).saturating_sub(deg_in).max(deg_out).max(1);
    let size = n_a + deg_in;

    // Columns: z^i D_in for the A coefficients, z^i D_out for the B coefficients.
    let mut m = DMatrix::<Complex64>::zeros(size, size);
    for i in 0..n_a {
        for (t, &v) in d_in.coeffs().iter().enumerate() {
            m[(i + t, i)] = v;
        }
    }
    for i in 0..deg_in {
        for (t, &v) in d_out.coeffs().iter().enumerate() {
            m[(i + t, n_a + i)] = v;
        }
    }
    let rhs = DVector::from_iterator(size, (0..size).map(|k| num.coeff(k)));
    let sol = m.full_piv_lu().solve(&rhs).ok_or(Error::SplitFailure { residual: f64::INFINITY })?;

    let a = Poly::new(sol.iter().take(n_a).copied().collect());
    let b = Poly::new(sol.iter().skip(n_a).copied().collect());
    let g_plus = RationalAnalytic::from_trusted(a, d_out.clone(), out_radius);
    let g_minus = if deg_in == 0 || b.is_zero() {
        RationalAnalytic::zero()
    } else {
        RationalAnalytic::new(b.reflect(deg_in), d_in.reflect(deg_in))?
    };
    let symbol = make_symbol(g_plus, g_minus);

    let mut residual: f64 = 0.0;
    let mut scale: f64 = 1.0;
    for k in 0..CHECK_POINTS {
        let z = Complex64::from_polar(1.0, std::f64::consts::TAU * (k as f64 + 0.5) / CHECK_POINTS as f64);
        let den = d_in.eval(z) * d_out.eval(z);
        if den == zero {
            continue;
        }
        let original = num.eval(z) / den;
        scale = scale.max(original.norm());
        residual = residual.max((original - symbol.eval(z)).norm());
    }
    if !(residual <= SPLIT_TOL * scale) {
        return Err(Error::SplitFailure { residual });
    }
    Ok(symbol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn splits_mixed_function() {
        // 1/(z - 1/2) + 1/(1 - z/3) on the circle
        let d_in = Poly::linear(c(-0.5, 0.0), c(1.0, 0.0));
        let d_out = Poly::linear(c(1.0, 0.0), c(-1.0 / 3.0, 0.0));
        let num = &d_out + &d_in;
        let s = split_on_circle(&num, &d_in, &d_out, 3.0).unwrap();
        // analytic part keeps the constant of 1/(1 - z/3) plus the folded
        // value of conj(G) at 0 (zero here), coanalytic part has G(0) = 0
        assert!(s.g_minus().value_at_zero().norm() < 1e-15);
        for k in 0..16 {
            let z = Complex64::from_polar(1.0, k as f64 * 0.4);
            let expected = 1.0 / (z - 0.5) + 1.0 / (1.0 - z / 3.0);
            assert!((s.eval(z) - expected).norm() < 1e-13);
        }
        // 1/(z - 1/2) = conj(z/(1 - z/2)) on the circle
        let zz = c(0.3, 0.2);
        assert!((s.g_minus().eval(zz) - zz / (1.0 - zz / 2.0)).norm() < 1e-13);
    }

    #[test]
    fn pure_analytic_and_coanalytic_inputs() {
        let one = Poly::one();
        let num = Poly::new(vec![c(1.0, 0.0), c(2.0, 1.0), c(0.0, 3.0)]);
        let s = split_on_circle(&num, &one, &one, f64::INFINITY).unwrap();
        assert!(s.g_minus().is_zero());
        // conj(z^2) = 1/z^2
        let s = split_on_circle(&one, &Poly::monomial(2), &one, f64::INFINITY).unwrap();
        let z = Complex64::from_polar(1.0, 1.3);
        assert!((s.eval(z) - (z * z).conj()).norm() < 1e-14);
        assert!(s.g_plus().num().max_abs_coeff() < 1e-14);
    }
}
