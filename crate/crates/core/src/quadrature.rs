//! Adaptive trapezoidal quadrature on the unit circle.
//!
//! For integrands analytic in an annulus around the circle the equispaced
//! rule converges geometrically, so doubling the node count until two
//! successive estimates agree gives near machine-precision integrals.
//! Node sets are nested: each doubling only evaluates the new odd nodes.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleQuadrature {
    /// Stop once successive estimates differ by at most `tol * (1 + max |I|)`.
    pub tol: f64,
    pub min_nodes: usize,
    pub max_nodes: usize,
}

impl Default for CircleQuadrature {
    fn default() -> Self {
        CircleQuadrature { tol: 1e-13, min_nodes: 128, max_nodes: 1 << 18 }
    }
}

impl CircleQuadrature {
    pub fn with_tol(tol: f64) -> Self {
        CircleQuadrature { tol, ..Default::default() }
    }

    /// Integrates a vector-valued function against normalized arc length
    /// `dm = dt / 2pi`. The closure writes the integrand at `z` into its buffer.
    pub fn integrate<F>(&self, len: usize, mut f: F) -> Result<Vec<Complex64>>
    where
        F: FnMut(Complex64, &mut [Complex64]),
    {
        let zero = Complex64::new(0.0, 0.0);
        let mut buf = vec![zero; len];
        let mut sum = vec![zero; len];
        let mut nodes = self.min_nodes.max(1);

        let mut accumulate = |sum: &mut [Complex64], count: usize, stride: usize, offset: usize| {
            for k in 0..count {
                let z = Complex64::from_polar(1.0, TAU * (stride * k + offset) as f64 / (stride * count) as f64);
                buf.iter_mut().for_each(|b| *b = zero);
                f(z, &mut buf);
                for (s, b) in sum.iter_mut().zip(buf.iter()) {
                    *s += b;
                }
            }
        };

        accumulate(&mut sum, nodes, 1, 0);
        let mut estimate: Vec<Complex64> = sum.iter().map(|s| s / nodes as f64).collect();
        let mut change = f64::INFINITY;
        while nodes * 2 <= self.max_nodes {
            // the new nodes sit at odd multiples of pi / nodes
            accumulate(&mut sum, nodes, 2, 1);
            nodes *= 2;
            let refined: Vec<Complex64> = sum.iter().map(|s| s / nodes as f64).collect();
            change = refined.iter().zip(estimate.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            let scale = refined.iter().map(|v| v.norm()).fold(0.0, f64::max);
            estimate = refined;
            if change <= self.tol * (1.0 + scale) {
                return Ok(estimate);
            }
        }
        Err(Error::QuadratureNotConverged { nodes, change })
    }

    pub fn integrate_scalar<F>(&self, mut f: F) -> Result<Complex64>
    where
        F: FnMut(Complex64) -> Complex64,
    {
        Ok(self.integrate(1, |z, out| out[0] = f(z))?[0])
    }
}
