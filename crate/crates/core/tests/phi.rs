mod common;

use std::collections::HashMap;

use common::{brute_phi, operator_expansion, q, random_pair};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thompson_core::haagerup::{phi_alpha, phi_alpha_eval, vacuum_coefficient, vacuum_vector};
use thompson_core::oracles::all_pairs;
use thompson_core::tree::enumerate_trees;
use thompson_core::{families, Forest, Limits, TreePair, VElement};

#[test]
fn double_sum_matches_brute_force_exhaustively() {
    for g in all_pairs(4, &Limits::default()).unwrap() {
        assert_eq!(phi_alpha(&g), brute_phi(&g), "{g}");
    }
}

#[test]
fn expansion_matches_operator_application() {
    for n in 1..=6 {
        for t in enumerate_trees(n, 12).unwrap() {
            let ours: HashMap<Vec<String>, _> = vacuum_vector(&t)
                .into_iter()
                .map(|(w, c)| {
                    (
                        w.words().iter().map(|x| x.as_str().to_string()).collect(),
                        c,
                    )
                })
                .collect();
            assert_eq!(ours, operator_expansion(&t), "{t}");
        }
    }
}

#[test]
fn named_values() {
    let swap13 = families::swap13_element();
    assert_eq!(brute_phi(&swap13), phi_alpha(&swap13));
    assert_eq!(phi_alpha_eval(&swap13, &q(1, 2)).unwrap(), q(10, 64));
    for n in 2..=6 {
        let g = families::non_vanishing_element(n).unwrap();
        assert!(phi_alpha_eval(&g, &q(1, 2)).unwrap() >= q(9, 64), "n = {n}");
    }
}

fn element() -> impl Strategy<Value = VElement> {
    (any::<u64>(), 1usize..=6).prop_map(|(seed, len)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        families::random_word(&mut rng, len, &families::generators())
    })
}

fn alpha() -> impl Strategy<Value = BigRational> {
    (0i64..=16).prop_map(|k| q(k, 16))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn beta_free_and_bounded(g in element(), a in alpha()) {
        prop_assert!(phi_alpha(&g).is_beta_free());
        let v = phi_alpha_eval(&g, &a).unwrap();
        prop_assert!(v >= BigRational::zero() && v <= BigRational::one());
    }

    #[test]
    fn symmetric_under_inverse(g in element()) {
        prop_assert_eq!(phi_alpha(&g.inverse()), phi_alpha(&g));
    }

    #[test]
    fn independent_of_representative(g in element(), seed in any::<u64>(), steps in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pair: TreePair = g.pair().clone();
        for _ in 0..steps {
            let n = pair.leaf_count();
            let i = rand::Rng::gen_range(&mut rng, 1..=n);
            pair = pair.expand_domain(&Forest::elementary(i, n).unwrap()).unwrap();
        }
        prop_assert_eq!(phi_alpha(&pair), phi_alpha(&g));
    }

    #[test]
    fn vacuum_route_agrees(g in element()) {
        prop_assert_eq!(vacuum_coefficient(&g), phi_alpha(&g));
    }

    #[test]
    fn brute_force_on_random_pairs(seed in any::<u64>(), n in 1usize..=7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_pair(&mut rng, n);
        prop_assert_eq!(phi_alpha(&g), brute_phi(&g));
    }

    #[test]
    fn vanishes_at_zero_only_off_identity(g in element()) {
        let at0 = phi_alpha_eval(&g, &BigRational::zero()).unwrap();
        let expected = if g.is_identity() { BigRational::one() } else { BigRational::zero() };
        prop_assert_eq!(at0, expected);
    }
}
