mod common;

use common::*;
use proptest::prelude::*;
use triplekit::factors::spin4::verify_spin4_model;
use triplekit::factors::{
    audit_axioms, conjugate, jb_norm, l_operator_matrix, random_element_with, reference_inner,
    rng_from_seed, triple_product,
};
use triplekit::linalg::{c64, hermitian_eigen};
use triplekit::{Element, FactorDescriptor, FactorKind};

fn dist(a: &Element, b: &Element) -> f64 {
    jb_norm(&a.checked_sub(b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn triple_product_is_sesquilinear_and_symmetric(f in any_factor(5), seed: u64, re in -2.0..2.0f64, im in -2.0..2.0f64) {
        let mut rng = rng_from_seed(seed);
        let (x, y, z, w) = (unit_element(&f, &mut rng), unit_element(&f, &mut rng), unit_element(&f, &mut rng), unit_element(&f, &mut rng));
        let a = c64(re, im);
        let t = |x: &Element, y: &Element, z: &Element| triple_product(x, y, z).unwrap();
        let tol = 1e-9;
        prop_assert!(dist(&t(&x.checked_add(&w).unwrap(), &y, &z), &t(&x, &y, &z).checked_add(&t(&w, &y, &z)).unwrap()) < tol);
        prop_assert!(dist(&t(&x, &y.checked_add(&w).unwrap(), &z), &t(&x, &y, &z).checked_add(&t(&x, &w, &z)).unwrap()) < tol);
        prop_assert!(dist(&t(&x.scale(a), &y, &z), &t(&x, &y, &z).scale(a)) < tol);
        prop_assert!(dist(&t(&x, &y.scale(a), &z), &t(&x, &y, &z).scale(a.conj())) < tol);
        prop_assert!(dist(&t(&x, &y, &z), &t(&z, &y, &x)) < tol);
    }

    #[test]
    fn cube_norm(f in any_factor(6), seed: u64, scale in 0.01..10.0f64) {
        let mut rng = rng_from_seed(seed);
        let x = unit_element(&f, &mut rng).scale_real(scale);
        let n = jb_norm(&x);
        let cube = jb_norm(&triple_product(&x, &x, &x).unwrap());
        prop_assert!((cube - n.powi(3)).abs() < 1e-9 * (1.0 + n.powi(3)));
    }

    #[test]
    fn l_operator_is_positive(f in any_factor(5), seed: u64) {
        let mut rng = rng_from_seed(seed);
        let a = unit_element(&f, &mut rng);
        let l = l_operator_matrix(&a, &a).unwrap();
        prop_assert!((&l - l.adjoint()).norm() < 1e-9);
        let (values, _) = hermitian_eigen(&l);
        prop_assert!(values[0] > -1e-9);
    }

    #[test]
    fn subtriples_are_closed(n in 2usize..6, seed: u64) {
        let mut rng = rng_from_seed(seed);
        for f in [FactorDescriptor::type2(n).unwrap(), FactorDescriptor::type3(n).unwrap()] {
            let (x, y, z) = (random_element_with(&f, &mut rng), random_element_with(&f, &mut rng), random_element_with(&f, &mut rng));
            let p = triple_product(&x, &y, &z).unwrap();
            let sign = if matches!(f.kind, FactorKind::Type2 { .. }) { 1.0 } else { -1.0 };
            let defect = (p.data() + p.data().transpose().scale(sign)).norm();
            prop_assert!(defect < 1e-12);
            // the raw matrix product is closed before any symmetrization
            let raw = (x.data() * y.data().adjoint() * z.data() + z.data() * y.data().adjoint() * x.data()).scale(0.5);
            prop_assert!((&raw - p.data()).norm() < 1e-12);
        }
    }

    #[test]
    fn spin_conjugation(n in 3usize..8, seed: u64) {
        let f = FactorDescriptor::spin(n).unwrap();
        let x = random_element_with(&f, &mut rng_from_seed(seed));
        let xbar = conjugate(&x).unwrap();
        prop_assert_eq!(conjugate(&xbar).unwrap(), x.clone());
        let i = c64(0.0, 1.0);
        prop_assert!(dist(&conjugate(&x.scale(i)).unwrap(), &xbar.scale(-i)) < 1e-15);
        prop_assert!(reference_inner(&x, &x).unwrap().re > 0.0);
    }
}

fn jordan_suite(kinds: &[FactorDescriptor]) {
    for (k, f) in kinds.iter().enumerate() {
        let r = audit_axioms(f, 1000 / kinds.len() + 1, k as u64);
        assert!(r.jordan_residual_max < 1e-9, "{}: {r:?}", f.kind);
        assert!(r.l_min_eigenvalue > -1e-9, "{}: {r:?}", f.kind);
        assert!(r.cube_norm_residual_max < 1e-9, "{}: {r:?}", f.kind);
        assert!(r.l_selfadjoint_residual_max < 1e-9, "{}: {r:?}", f.kind);
    }
}

#[test]
fn jordan_identity_type1() {
    let kinds: Vec<_> = (1..=6)
        .flat_map(|m| (1..=6).map(move |n| (m, n)))
        .filter(|(m, n)| (m + n) % 3 == 0)
        .map(|(m, n)| FactorDescriptor::type1(m, n).unwrap())
        .collect();
    jordan_suite(&kinds);
}

#[test]
fn jordan_identity_type2() {
    jordan_suite(
        &(2..=6)
            .map(|n| FactorDescriptor::type2(n).unwrap())
            .collect::<Vec<_>>(),
    );
}

#[test]
fn jordan_identity_type3() {
    jordan_suite(
        &(1..=6)
            .map(|n| FactorDescriptor::type3(n).unwrap())
            .collect::<Vec<_>>(),
    );
}

#[test]
fn jordan_identity_spin() {
    jordan_suite(
        &(3..=6)
            .map(|n| FactorDescriptor::spin(n).unwrap())
            .collect::<Vec<_>>(),
    );
}

#[test]
fn spin4_cross_oracle() {
    let r = verify_spin4_model(1000, 42);
    assert!(r.product_residual_max < 1e-9, "{r:?}");
    assert!(r.norm_residual_max < 1e-9, "{r:?}");
    assert!(r.min_singular_value > 0.0);
}
