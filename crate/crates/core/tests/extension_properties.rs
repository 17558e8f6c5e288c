mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use triplekit::extension::{
    certify_triple_isomorphism, check_minimal_preservation, check_orthogonality_preserving,
    check_ttp_preserving, check_welldefined, conjugate_line_distance, extend_to_socle,
    peirce1_distance,
};
use triplekit::factors::{complex_gaussian, conjugate, random_real_orthogonal_with, rng_from_seed};
use triplekit::linalg::{c64, CMatrix};
use triplekit::preservers::random_automorphism;
use triplekit::transition::ttp;
use triplekit::tripotents::random_minimal_tripotent_with;
use triplekit::{FactorDescriptor, LinearOperator, Linearity, MapOnMinimals, Tripotent};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn socle_extension_recovers_automorphisms(f in any_factor(4), seed: u64) {
        let t = random_automorphism(&f, seed).unwrap();
        let phi = MapOnMinimals::from_operator(&t);
        let t0 = extend_to_socle(&phi).unwrap();
        prop_assert!(t0.distance(&t).unwrap() < 1e-8);
        prop_assert!(check_welldefined(&phi, &t0, 20, seed).unwrap().max_residual < 1e-8);
    }

    #[test]
    fn preservation_hypotheses_imply_isomorphism(f in any_factor(4), seed: u64) {
        let t = random_automorphism(&f, seed).unwrap();
        let phi = MapOnMinimals::from_operator(&t);
        let ttp_ok = check_ttp_preserving(&phi, 20, seed).unwrap().max_deviation < 1e-8;
        let orth_ok = check_orthogonality_preserving(&phi, 20, seed).unwrap().preserved;
        if ttp_ok && orth_ok {
            let t0 = extend_to_socle(&phi).unwrap();
            prop_assert!(certify_triple_isomorphism(&t0, 20, seed).unwrap().passes(1e-8));
        }
        prop_assert!(ttp_ok && orth_ok);
    }

    #[test]
    fn kaup_biconditional(f in any_factor(4), seed: u64, mode in 0usize..4) {
        let mut rng = rng_from_seed(seed);
        let t = random_automorphism(&f, seed).unwrap();
        let d = f.dim();
        let op = match mode {
            0 => t,
            1 => {
                let c = rng.random_range(1.1..3.0);
                LinearOperator::new(f, f, t.matrix() * c64(c, 0.0), Linearity::ComplexLinear).unwrap()
            }
            2 => LinearOperator::new(f, f, complex_gaussian(&mut rng, d, d), Linearity::ComplexLinear).unwrap(),
            _ => {
                let mut shear = CMatrix::identity(d, d);
                if d > 1 {
                    shear[(0, d - 1)] = c64(0.5, 0.0);
                } else {
                    shear[(0, 0)] = c64(2.0, 0.0);
                }
                LinearOperator::new(f, f, t.matrix() * shear, Linearity::ComplexLinear).unwrap()
            }
        };
        let r = certify_triple_isomorphism(&op, 20, seed).unwrap();
        let small = |x: f64| x < 1e-7;
        let large = |x: f64| x > 1e-3;
        prop_assert!(
            (small(r.morphism_residual) && small(r.isometry_residual))
                || (large(r.morphism_residual) && large(r.isometry_residual)),
            "{r:?}"
        );
        prop_assert_eq!(small(r.morphism_residual), mode == 0);
    }

    #[test]
    fn minimal_preservation_implies_isomorphism(f in any_factor(4), seed: u64, mutate: bool) {
        let t = random_automorphism(&f, seed).unwrap();
        let t = if mutate {
            let mut m = t.matrix().clone();
            m[(0, 0)] += c64(0.25, 0.1);
            LinearOperator::new(f, f, m, Linearity::ComplexLinear).unwrap()
        } else {
            t
        };
        let hyp = check_minimal_preservation(&t, 20, seed).unwrap();
        prop_assert_eq!(hyp.holds, !mutate);
        if hyp.holds {
            prop_assert!(certify_triple_isomorphism(&t, 20, seed).unwrap().passes(1e-8));
        }
    }

    #[test]
    fn spin_shared_peirce_one(n in 3usize..8, seed: u64) {
        let f = FactorDescriptor::spin(n).unwrap();
        let mut rng = rng_from_seed(seed);
        let v = random_minimal_tripotent_with(&f, &mut rng);
        let vbar = conjugate(v.element()).unwrap();
        // w = (c + id)/2 with (c, d) an orthonormal pair in span{a, b}
        let a = v.element().checked_add(&vbar).unwrap();
        let b = v.element().checked_sub(&vbar).unwrap().scale(c64(0.0, -1.0));
        let q = random_real_orthogonal_with(2, &mut rng);
        let c = a.scale_real(q[(0, 0)]).checked_add(&b.scale_real(q[(1, 0)])).unwrap();
        let d = a.scale_real(q[(0, 1)]).checked_add(&b.scale_real(q[(1, 1)])).unwrap();
        let w = Tripotent::new(c.checked_add(&d.scale(c64(0.0, 1.0))).unwrap().scale_real(0.5)).unwrap();
        prop_assert!(peirce1_distance(&v, &w).unwrap() < 1e-9);
        let t = ttp(&w, &v).unwrap();
        let dist = conjugate_line_distance(&v, w.element()).unwrap();
        // the orientation of (c, d) decides which alternative holds
        if t.norm() < 1e-9 {
            prop_assert!(dist.distance < 1e-9);
        } else {
            prop_assert!((t.norm() - 1.0).abs() < 1e-9);
            prop_assert!(dist.distance > 0.5);
        }
    }
}

#[test]
fn constant_map_is_caught() {
    let f = FactorDescriptor::spin(4).unwrap();
    let e0 = random_minimal_tripotent_with(&f, &mut rng_from_seed(1));
    let phi = triplekit::extension::constant_map(&f, &f, e0);
    assert!(check_ttp_preserving(&phi, 20, 1).unwrap().max_deviation > 1.0 - 1e-9);
}
