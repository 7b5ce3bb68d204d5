//! Seeded random instances for checks and property suites.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::blaschke::{BlaschkeProduct, DiskPoint};
use crate::poly::Poly;
use crate::rational::RationalAnalytic;

pub type SuiteRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Points of the closed disk; every fourth one lies on the circle.
pub fn closed_disk_points(n: usize, seed: u64) -> Vec<Complex64> {
    let mut r = rng(seed);
    (0..n)
        .map(|k| {
            let radius = if k % 4 == 3 { 1.0 } else { r.gen::<f64>().sqrt() };
            Complex64::from_polar(radius, r.gen::<f64>() * TAU)
        })
        .collect()
}

pub fn open_disk_points(n: usize, seed: u64, max_radius: f64) -> Vec<Complex64> {
    let mut r = rng(seed);
    (0..n).map(|_| disk_value(&mut r, max_radius)).collect()
}

pub fn disk_value<R: Rng>(rng: &mut R, max_radius: f64) -> Complex64 {
    Complex64::from_polar(max_radius * rng.gen::<f64>().sqrt(), rng.gen::<f64>() * TAU)
}

pub fn disk_point<R: Rng>(rng: &mut R, max_radius: f64) -> DiskPoint {
    DiskPoint::new(disk_value(rng, max_radius)).expect("radius below one")
}

/// Complex number with real and imaginary parts uniform in `[-1, 1]`.
pub fn unit_box<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0))
}

pub fn unit_box_vec<R: Rng>(rng: &mut R, n: usize) -> Vec<Complex64> {
    (0..n).map(|_| unit_box(rng)).collect()
}

/// Random product of degree `1..=max_degree` with zeros of modulus at most `max_radius`.
pub fn blaschke<R: Rng>(rng: &mut R, max_degree: usize, max_radius: f64) -> BlaschkeProduct {
    let degree = rng.gen_range(1..=max_degree);
    let zeros = (0..degree).map(|_| disk_value(rng, max_radius)).collect();
    let constant = Complex64::from_polar(1.0, rng.gen::<f64>() * TAU);
    BlaschkeProduct::new(constant, zeros).expect("valid random product")
}

/// Polynomial of degree `0..=max_degree` with unit-box coefficients.
pub fn polynomial<R: Rng>(rng: &mut R, max_degree: usize) -> RationalAnalytic {
    let degree = rng.gen_range(0..=max_degree);
    RationalAnalytic::polynomial(Poly::new(unit_box_vec(rng, degree + 1)))
}

/// Rational function with unit-box numerator and poles of modulus at least `min_pole`.
pub fn rational<R: Rng>(rng: &mut R, max_degree: usize, min_pole: f64) -> RationalAnalytic {
    let num_degree = rng.gen_range(0..=max_degree);
    let pole_count = rng.gen_range(0..=2usize);
    let num = Poly::new(unit_box_vec(rng, num_degree + 1));
    let den = (0..pole_count).fold(Poly::one(), |acc, _| {
        let pole = Complex64::from_polar(rng.gen_range(min_pole..min_pole + 1.5), rng.gen::<f64>() * TAU);
        acc * Poly::linear(Complex64::new(1.0, 0.0), -pole.inv())
    });
    RationalAnalytic::new(num, den).expect("poles outside the disk")
}
