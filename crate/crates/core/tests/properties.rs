use std::f64::consts::TAU;

use atto::blaschke::{BlaschkeProduct, DiskPoint};
use atto::modelspace::ModelSpaceBasis;
use atto::oracle::{self, FourierSlice};
use atto::poly::Poly;
use atto::rational::RationalAnalytic;
use atto::sampling;
use atto::symbols::{make_symbol, Symbol};
use atto::tto::{adjoint_matrix, atto_matrix, outer_product};
use num_complex::Complex64;
use proptest::prelude::*;

fn disk(max_radius: f64) -> impl Strategy<Value = Complex64> {
    (0.0..max_radius, 0.0..TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

fn product(max_degree: usize) -> impl Strategy<Value = BlaschkeProduct> {
    (prop::collection::vec(disk(0.8), 1..=max_degree), 0.0..TAU)
        .prop_map(|(zeros, t)| BlaschkeProduct::new(Complex64::from_polar(1.0, t), zeros).unwrap())
}

fn coeff() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0, -1.0..1.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn polynomial(max_degree: usize) -> impl Strategy<Value = RationalAnalytic> {
    prop::collection::vec(coeff(), 1..=max_degree + 1).prop_map(|c| RationalAnalytic::polynomial(Poly::new(c)))
}

fn symbol() -> impl Strategy<Value = Symbol> {
    (any::<u64>()).prop_map(|seed| {
        let mut rng = sampling::rng(seed);
        make_symbol(sampling::rational(&mut rng, 3, 1.5), sampling::rational(&mut rng, 3, 1.5))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn crofoot_target_is_an_involution(b in product(6), w in disk(0.8)) {
        let w = DiskPoint::new(w).unwrap();
        prop_assert!(b.involution_check(w).unwrap());
        prop_assert_eq!(b.crofoot_target(w).unwrap().degree(), b.degree());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn unimodular_on_circle(b in product(6), t in 0.0..TAU) {
        prop_assert!((b.eval(Complex64::from_polar(1.0, t)).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn derivative_matches_central_differences(b in product(6), z in disk(0.9)) {
        let h = 1e-6;
        let fd = (b.eval(z + h) - b.eval(z - h)) / (2.0 * h);
        let exact = b.derivative(z);
        prop_assert!((fd - exact).norm() <= 1e-6 * exact.norm().max(1.0));
    }

    #[test]
    fn matrix_is_linear_in_the_symbol(a in product(4), b in product(4), s in symbol(), t in symbol(), c in coeff()) {
        let (ab, bb) = (ModelSpaceBasis::new(a), ModelSpaceBasis::new(b));
        let combined = atto_matrix(&ab, &bb, &s.add(&t.scale(c))).unwrap();
        let ms = atto_matrix(&ab, &bb, &s).unwrap();
        let mt = atto_matrix(&ab, &bb, &t).unwrap();
        let expected = ms.entries() + mt.entries() * c;
        let diff = (combined.entries() - expected).iter().map(|v| v.norm()).fold(0.0, f64::max);
        prop_assert!(diff < 1e-10);
    }

    #[test]
    fn conjugate_symbol_gives_adjoint(a in product(4), b in product(4), s in symbol()) {
        let (ab, bb) = (ModelSpaceBasis::new(a), ModelSpaceBasis::new(b));
        let m = atto_matrix(&ab, &bb, &s).unwrap();
        let swapped = atto_matrix(&bb, &ab, &s.conj()).unwrap();
        prop_assert!(adjoint_matrix(&m).distance(&swapped) < 1e-10);
    }

    #[test]
    fn projection_fixes_elements_and_kills_complements(
        a in product(5),
        seed in any::<u64>(),
        p in polynomial(3),
        q in polynomial(3),
    ) {
        let basis = ModelSpaceBasis::new(a);
        let mut rng = sampling::rng(seed);
        let f = basis.element(sampling::unit_box_vec(&mut rng, basis.dim())).unwrap();
        let g = basis.project(|z| f.eval(z)).unwrap();
        prop_assert!(g.distance(&f).unwrap() < 1e-10);
        let alpha = basis.alpha().clone();
        let outside = basis.project(|z| alpha.eval(z) * p.eval(z) + z.conj() * q.eval(z).conj()).unwrap();
        prop_assert!(outside.norm() < 1e-10);
    }

    #[test]
    fn outer_product_matrix_acts_as_rank_one(a in product(4), b in product(4), seed in any::<u64>()) {
        let (ab, bb) = (ModelSpaceBasis::new(a), ModelSpaceBasis::new(b));
        let mut rng = sampling::rng(seed);
        let u = bb.element(sampling::unit_box_vec(&mut rng, bb.dim())).unwrap();
        let v = ab.element(sampling::unit_box_vec(&mut rng, ab.dim())).unwrap();
        let f = ab.element(sampling::unit_box_vec(&mut rng, ab.dim())).unwrap();
        let image = outer_product(&u, &v).apply(&f, &bb).unwrap();
        let expected = u.scale(f.inner_product(&v).unwrap());
        prop_assert!(image.distance(&expected).unwrap() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn szego_projection_is_idempotent_and_contractive(s in symbol()) {
        let slice = oracle::fourier_of_symbol(&s, 128).unwrap();
        let p = oracle::szego_project(&slice);
        let pp = oracle::szego_project(&p);
        prop_assert!(p.norm_sqr() <= slice.norm_sqr() + 1e-15);
        prop_assert!(p.sub(&pp).norm_sqr() == 0.0);
    }

    #[test]
    fn model_projection_is_idempotent(a in product(4), s in symbol()) {
        let slice: FourierSlice = oracle::fourier_of_symbol(&s, 256).unwrap();
        let p = oracle::model_project(&a, &slice).unwrap();
        let pp = oracle::model_project(&a, &p).unwrap();
        prop_assert!(p.sub(&pp).norm_sqr().sqrt() < 1e-10);
    }

    #[test]
    fn oracle_is_stable_under_doubling(a in product(3), b in product(3), s in symbol()) {
        let (ab, bb) = (ModelSpaceBasis::new(a), ModelSpaceBasis::new(b));
        let m1 = oracle::atto_matrix_oracle_at(&ab, &bb, &s, 256).unwrap();
        let m2 = oracle::atto_matrix_oracle_at(&ab, &bb, &s, 512).unwrap();
        prop_assert!(m1.max_entry_distance(&m2) < 1e-10);
        let q = atto_matrix(&ab, &bb, &s).unwrap();
        prop_assert!(q.max_entry_distance(&m1) < 1e-8);
    }
}
