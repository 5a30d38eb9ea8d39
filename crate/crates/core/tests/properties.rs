//! Randomized checks on permutation groups of small degree.

use num_bigint::BigInt;
use proptest::prelude::*;

use normlat::chartable::{character_table, has_faithful_irrep_structural, vertical_cut_number};
use normlat::generation::{
    abelian_pgroup_tuple_count, class_generating_number_bruteforce, class_generating_number_structural,
    f_k_bruteforce, f_k_inversion, DEFAULT_BUDGET,
};
use normlat::group::DEFAULT_CAP;
use normlat::lattice::{enumerate_normal_subgroups, socle_decomposition};
use normlat::moebius::{gaussian_binomial, moebius_closed_table, moebius_recursive};
use normlat::perm::{group_from_permutations, Permutation};

fn permutation(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(images).unwrap())
}

fn generators() -> impl Strategy<Value = Vec<Permutation>> {
    (2usize..=6).prop_flat_map(|n| prop::collection::vec(permutation(n), 1..=2))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn random_groups_satisfy_every_cross_check(gens in generators()) {
        let g = group_from_permutations(&gens, DEFAULT_CAP).unwrap();
        prop_assert!(g.check_axioms());
        let lat = enumerate_normal_subgroups(&g);
        prop_assert_eq!(moebius_closed_table(&g, &lat).unwrap(), moebius_recursive(&lat));
        let ct = character_table(&g, DEFAULT_CAP).unwrap();
        prop_assert!(ct.orthogonality_defect() < 1e-8);
        if g.order() == 1 {
            return Ok(());
        }
        let d = class_generating_number_structural(&g, &lat).unwrap();
        prop_assert_eq!(d, class_generating_number_bruteforce(&g, &lat).unwrap());
        prop_assert_eq!(d, vertical_cut_number(&ct).unwrap());
        let whole = lat.node(lat.top()).clone();
        for k in 0..=g.conjugacy_classes().len() {
            let inv = f_k_inversion(&g, &lat, k).unwrap();
            prop_assert_eq!(&inv, &f_k_bruteforce(&g, &lat, &whole, k, DEFAULT_BUDGET).unwrap());
            prop_assert_eq!(k < d, inv == BigInt::from(0));
        }
        let dec = socle_decomposition(&g, &lat).unwrap();
        prop_assert_eq!(has_faithful_irrep_structural(&dec), ct.characters.iter().any(|c| c.is_faithful()));
    }

    #[test]
    fn gaussian_binomials_are_symmetric(d in 0u32..7, k in 0u32..7, q in 2u64..6) {
        prop_assume!(k <= d);
        prop_assert_eq!(gaussian_binomial(d, k, q).unwrap(), gaussian_binomial(d, d - k, q).unwrap());
    }

    #[test]
    fn abelian_sums_vanish_below_the_rank(p in prop::sample::select(vec![2u64, 3, 5]), n in 1u32..5, d in 1u32..5, k in 0usize..5) {
        prop_assume!(d <= n);
        let v = abelian_pgroup_tuple_count(p, n, d, k).unwrap();
        // Positive exactly when a basis fits and there are k distinct elements.
        let elements = p.pow(n) as usize;
        prop_assert_eq!(v > BigInt::from(0), d as usize <= k && k <= elements);
    }
}
