mod common;

use common::{nonzero, q, random_matrix, random_max_form};
use evoalg::automorphisms::automorphism_family;
use evoalg::derivations::derivations_closed_form;
use evoalg::local_maps::{
    is_local_automorphism, is_local_derivation, local_automorphism_definitional,
    local_derivation_set_description, pair_feasible, pointwise_local_automorphism,
    pointwise_local_derivation, stated_local_derivation_families_n2, LocalDerivationChecker,
    Verdict, Witness,
};
use evoalg::{EvolutionAlgebra, MatrixQ};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rejections_recheck(seed in any::<u64>(), n in 2usize..6) {
        let mut g = ChaCha8Rng::seed_from_u64(seed);
        let e = random_max_form(&mut g, n);
        let checker = LocalDerivationChecker::new(&e).unwrap().with_samples(50);
        let closed = derivations_closed_form(&e).unwrap();
        let delta = random_matrix(&mut g, n, n, 3);
        let verdict = checker.check(&delta, &mut g).unwrap();
        match verdict.witness {
            Some(Witness::Point(u)) => {
                prop_assert_eq!(verdict.verdict, Verdict::Rejected);
                prop_assert!(!pointwise_local_derivation(&closed, &delta, &u).unwrap());
            }
            Some(Witness::Pair(..)) => prop_assert!(false, "pair witness for a local check"),
            None => prop_assert!(checker.space().contains(&delta).unwrap()),
        }
    }

    #[test]
    fn pairs_from_a_derivation_are_feasible(seed in any::<u64>(), n in 2usize..6) {
        let mut g = ChaCha8Rng::seed_from_u64(seed);
        let e = random_max_form(&mut g, n);
        let der = derivations_closed_form(&e).unwrap();
        let coeffs: Vec<_> = (0..der.dim()).map(|_| q(g.gen_range(-5..=5))).collect();
        let d = der.combine(&coeffs).unwrap();
        let u = common::random_vector(&mut g, n);
        let v = common::random_vector(&mut g, n);
        let (du, dv) = (d.apply(&u).unwrap(), d.apply(&v).unwrap());
        prop_assert!(pair_feasible(&der, (&u, &du), (&v, &dv)).unwrap());
    }

    #[test]
    fn local_automorphism_witnesses_recheck(seed in any::<u64>(), n in 3usize..6) {
        let mut g = ChaCha8Rng::seed_from_u64(seed);
        let e = random_max_form(&mut g, n);
        let family = automorphism_family(&e).unwrap();
        let mut psi = MatrixQ::identity(n);
        let (i, j) = (g.gen_range(0..n), g.gen_range(0..n));
        psi[(i, j)] = psi[(i, j)].clone() + q(nonzero(&mut g, 3));
        prop_assume!(psi.is_invertible());
        let v = local_automorphism_definitional(&e, &psi, 50, &mut g).unwrap();
        if let Some(Witness::Point(u)) = v.witness {
            prop_assert!(!pointwise_local_automorphism(&family, &psi, &u).unwrap());
        }
    }
}

#[test]
fn stated_n2_families_are_local_derivations() {
    let mut g = ChaCha8Rng::seed_from_u64(11);
    for a12 in [1, -3, 7] {
        let e = EvolutionAlgebra::from_i64(&[&[0, a12], &[0, 0]]).unwrap();
        let checker = LocalDerivationChecker::new(&e).unwrap();
        for family in stated_local_derivation_families_n2() {
            for _ in 0..10 {
                let coeffs = [q(g.gen_range(-9..=9)), q(g.gen_range(-9..=9))];
                let m = family.combine(&coeffs).unwrap();
                assert!(checker.check(&m, &mut g).unwrap().is_accepted());
            }
        }
        let report = local_derivation_set_description(&e).unwrap();
        assert_eq!(report.stated_contained, Some(true));
        assert_eq!(report.definitional.dim(), 3);
    }
}

#[test]
fn stated_n2_automorphism_family_is_accepted() {
    let mut g = ChaCha8Rng::seed_from_u64(5);
    let e = EvolutionAlgebra::from_i64(&[&[0, 2], &[0, 0]]).unwrap();
    for _ in 0..20 {
        let alpha = q(nonzero(&mut g, 9));
        let gamma = evoalg::Rational::frac(nonzero(&mut g, 9), g.gen_range(1..=5));
        let psi = MatrixQ::from_rows(vec![
            vec![alpha, q(g.gen_range(-9..=9))],
            vec![q(0), &gamma * &gamma],
        ])
        .unwrap();
        assert!(local_automorphism_definitional(&e, &psi, 200, &mut g).unwrap().is_accepted());
        assert!(is_local_automorphism(&e, &psi, &mut g).unwrap().is_accepted());
    }
}

#[test]
fn chain_rejects_lower_entries() {
    let e = EvolutionAlgebra::chain(3).unwrap();
    let mut g = ChaCha8Rng::seed_from_u64(1);
    let v = is_local_derivation(&e, &MatrixQ::unit(3, 1, 0), &mut g).unwrap();
    assert_eq!(v.verdict, Verdict::Rejected);
}
