use proptest::prelude::*;
use triplekit::extension::check_ttp_preserving;
use triplekit::preservers::{
    check_rank_one_preservation, classify_type1_automorphism, factor_rank_one_preserver,
    make_spin_automorphism, make_type1_preserver,
};
use triplekit::{Case, SpinAutSpec, Type1PreserverSpec};

fn any_case() -> impl Strategy<Value = Case> {
    prop_oneof![Just(Case::A), Just(Case::B)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn generated_preservers_preserve_ttp(case in any_case(), m in 2usize..5, n in 2usize..5, seed: u64) {
        let (phi, _) = make_type1_preserver(&Type1PreserverSpec::random(case, m, n, seed)).unwrap();
        prop_assert!(check_ttp_preserving(&phi, 20, seed).unwrap().max_deviation < 1e-9);
    }

    #[test]
    fn spin_automorphisms_preserve_ttp(n in 3usize..8, seed: u64) {
        let (phi, _) = make_spin_automorphism(&SpinAutSpec::random(n, seed)).unwrap();
        prop_assert!(check_ttp_preserving(&phi, 20, seed).unwrap().max_deviation < 1e-9);
    }

    #[test]
    fn factorization_round_trip(case in any_case(), m in 2usize..5, n in 2usize..5, seed: u64) {
        let spec = Type1PreserverSpec::random(case, m, n, seed);
        let (_, t) = make_type1_preserver(&spec).unwrap();
        let fac = factor_rank_one_preserver(&t).unwrap();
        prop_assert_eq!(fac.case, case);
        prop_assert!(!(fac.tests.left() && fac.tests.right()));
        prop_assert!(fac.residual < 1e-8);
        prop_assert!(fac.reconstruct(t.src(), t.dst()).unwrap().distance(&t).unwrap() < 1e-8);

        let c = classify_type1_automorphism(&t, 20, seed).unwrap();
        // recovered carriers differ from the generating ones by a unimodular scalar
        let lambda = spec.u.dotc(&c.factorization.u) / spec.u.norm_squared();
        prop_assert!((lambda.norm() - 1.0).abs() < 1e-9);
        prop_assert!((&c.factorization.u - spec.u.map(|z| z * lambda)).norm() < 1e-8);
    }

    #[test]
    fn rank_one_both_directions(case in any_case(), m in 2usize..5, n in 2usize..5, seed: u64) {
        let (_, t) = make_type1_preserver(&Type1PreserverSpec::random(case, m, n, seed)).unwrap();
        let r = check_rank_one_preservation(&t, 1000, seed).unwrap();
        prop_assert!(r.forward_ratio < 1e-9 && r.backward_ratio < 1e-9, "{r:?}");
    }
}
