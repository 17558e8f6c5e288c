mod common;

use common::*;
use proptest::prelude::*;
use triplekit::factors::{conjugate, jb_norm, random_element_with, reference_inner, rng_from_seed};
use triplekit::linalg::{c64, singular_values};
use triplekit::transition::pure_atom;
use triplekit::tripotents::{
    are_orthogonal, is_minimal, is_tripotent, minimal_orthogonal_decomposition,
    orthogonality_residual, peirce_project, random_minimal_tripotent_with,
    random_orthogonal_minimal_pair_with, random_tripotent_with,
};
use triplekit::{FactorDescriptor, FactorKind, Tripotent};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn peirce_rules(f in any_factor(5), seed: u64) {
        let mut rng = rng_from_seed(seed);
        let e = random_tripotent_with(&f, &mut rng);
        let res = e.peirce().unwrap().algebra_residuals();
        prop_assert!(res.max() < 1e-9, "{res:?}");
        let x = random_element_with(&f, &mut rng);
        let parts: Vec<_> = (0..3).map(|k| peirce_project(&e, k, &x).unwrap()).collect();
        let sum = parts[0].checked_add(&parts[1]).unwrap().checked_add(&parts[2]).unwrap();
        prop_assert!(jb_norm(&sum.checked_sub(&x).unwrap()) < 1e-9);
        for (k, p) in parts.iter().enumerate() {
            let again = peirce_project(&e, k, p).unwrap();
            prop_assert!(jb_norm(&again.checked_sub(p).unwrap()) < 1e-9);
        }
    }

    #[test]
    fn orthogonality_is_symmetric_and_m_orthogonal(f in rank_two_factor(5), seed: u64) {
        let mut rng = rng_from_seed(seed);
        let (e, u) = random_orthogonal_minimal_pair_with(&f, &mut rng).unwrap();
        prop_assert!(are_orthogonal(&e, &u).unwrap() && are_orthogonal(&u, &e).unwrap());
        let a = e.element().scale_real(2.5);
        let b = u.element().scale(c64(0.0, 1.0));
        let sum = jb_norm(&a.checked_add(&b).unwrap());
        prop_assert!((sum - jb_norm(&a).max(jb_norm(&b))).abs() < 1e-9);

        // the two one-sided residuals agree on whether they vanish
        let v = random_minimal_tripotent_with(&f, &mut rng);
        let tol = f.tol.identity_tol;
        let r1 = orthogonality_residual(e.element(), v.element()).unwrap();
        let r2 = orthogonality_residual(v.element(), e.element()).unwrap();
        prop_assert_eq!(r1 < tol, r2 < tol);
    }

    #[test]
    fn peirce_two_is_the_atom_line(f in any_factor(5), seed: u64) {
        let mut rng = rng_from_seed(seed);
        let e = random_minimal_tripotent_with(&f, &mut rng);
        let x = random_element_with(&f, &mut rng);
        let phi = pure_atom(&e).unwrap();
        let p2 = peirce_project(&e, 2, &x).unwrap();
        let expected = e.element().scale(phi.eval(&x).unwrap());
        prop_assert!(jb_norm(&p2.checked_sub(&expected).unwrap()) < 1e-9);
    }

    #[test]
    fn type1_minimal_iff_rank_one(m in 1usize..5, n in 1usize..5, seed: u64, take in 1usize..4) {
        let f = FactorDescriptor::type1(m, n).unwrap();
        let mut rng = rng_from_seed(seed);
        let x = random_element_with(&f, &mut rng);
        let parts = minimal_orthogonal_decomposition(&x).unwrap();
        let mut sum = f.zero();
        for (_, p) in parts.iter().take(take) {
            sum = sum.checked_add(p.element()).unwrap();
        }
        let e = Tripotent::new(sum).unwrap();
        let rank = singular_values(e.element().data()).iter().filter(|s| **s > 0.5).count();
        prop_assert_eq!(is_minimal(&e).unwrap(), rank == 1);
    }

    #[test]
    fn decomposition_reconstructs(f in any_factor(6), seed: u64, scale in 0.1..10.0f64) {
        let mut rng = rng_from_seed(seed);
        let x = random_element_with(&f, &mut rng).scale_real(scale);
        let parts = minimal_orthogonal_decomposition(&x).unwrap();
        prop_assert!(parts.len() <= f.rank());
        let mut sum = f.zero();
        for (c, p) in &parts {
            prop_assert!(*c >= 0.0);
            prop_assert!(is_minimal(p).unwrap());
            sum = sum.checked_add(&p.element().scale_real(*c)).unwrap();
        }
        prop_assert!(jb_norm(&sum.checked_sub(&x).unwrap()) < 1e-9 * scale.max(1.0));
        prop_assert!((parts[0].0 - jb_norm(&x)).abs() < 1e-9 * scale.max(1.0));
        for i in 0..parts.len() {
            for j in (i + 1)..parts.len() {
                prop_assert!(are_orthogonal(&parts[i].1, &parts[j].1).unwrap());
            }
        }
        if let FactorKind::Type1 { .. } = f.kind {
            let s = singular_values(x.data());
            for (k, (c, _)) in parts.iter().enumerate() {
                prop_assert!((c - s[k]).abs() < 1e-9 * scale.max(1.0));
            }
        }
    }

    #[test]
    fn spin_minimality_three_ways(n in 3usize..8, seed: u64) {
        let f = FactorDescriptor::spin(n).unwrap();
        let mut rng = rng_from_seed(seed);
        let e = random_tripotent_with(&f, &mut rng);
        let tol = f.tol.identity_tol;
        let by_dim = is_minimal(&e).unwrap();
        let ebar = conjugate(e.element()).unwrap();
        let by_conj = reference_inner(e.element(), &ebar).unwrap().norm() < tol;
        let by_norm = (reference_inner(e.element(), e.element()).unwrap().re - 0.5).abs() < tol;
        prop_assert_eq!(by_dim, by_conj);
        prop_assert_eq!(by_dim, by_norm);
        prop_assert!(is_tripotent(e.element()));
    }
}
