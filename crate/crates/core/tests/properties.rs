use proptest::prelude::*;

use simplegames::canonical::{build_from_canonical, canonical_decompose, CanonicalForm, Head};
use simplegames::composition::{compose, compose_by_definition, CompositionSpec};
use simplegames::desirability::{desirability, incompleteness_certificate, is_complete};
use simplegames::isomorphism::isomorphic;
use simplegames::trade::{is_certificate_of_incompleteness, is_certificate_of_nonweightedness};
use simplegames::weights::{farkas_certificate, synthesize_weights, verify_representation, WeightedRepresentation};
use simplegames::{Coalition, SimpleGame};

/// Random game on 1..=max_n players built from random coalitions.
fn game(max_n: usize) -> impl Strategy<Value = SimpleGame> {
    (1..=max_n).prop_flat_map(|n| {
        let full = (1u64 << n) - 1;
        prop::collection::vec(1..=full, 1..6).prop_map(move |masks| {
            SimpleGame::from_winning_sets(n, masks.into_iter().map(Coalition::from_bits)).unwrap()
        })
    })
}

fn weighted_game(max_n: usize) -> impl Strategy<Value = SimpleGame> {
    (1..=max_n).prop_flat_map(|n| {
        (prop::collection::vec(0i64..6, n), 1i64..15).prop_filter_map("quota above total", |(w, q)| {
            let total: i64 = w.iter().sum();
            (q <= total).then(|| WeightedRepresentation::from_integers(q, &w).to_game().unwrap())
        })
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn weights_or_certificate(g in game(5)) {
        match synthesize_weights(&g) {
            Some(rep) => {
                prop_assert!(verify_representation(&g, &rep).unwrap());
                prop_assert!(farkas_certificate(&g).is_err());
            }
            None => {
                let cert = farkas_certificate(&g).unwrap();
                prop_assert!(is_certificate_of_nonweightedness(&g, &cert).unwrap());
            }
        }
    }

    #[test]
    fn weighted_games_are_complete(g in weighted_game(6)) {
        prop_assert!(synthesize_weights(&g).is_some());
        prop_assert!(is_complete(&g));
    }

    #[test]
    fn incompleteness_certificates_validate(g in game(5)) {
        match incompleteness_certificate(&g) {
            Some(c) => prop_assert!(is_certificate_of_incompleteness(&g, &c).unwrap()),
            None => prop_assert!(is_complete(&g)),
        }
    }

    #[test]
    fn relabeling_preserves_properties((g, perm) in game(5).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), permutation(n))
    })) {
        let h = g.permuted(&perm).unwrap();
        prop_assert!(isomorphic(&g, &h).is_some());
        prop_assert_eq!(is_complete(&g), is_complete(&h));
        prop_assert_eq!(synthesize_weights(&g).is_some(), synthesize_weights(&h).is_some());
        prop_assert_eq!(g.dummies().len(), h.dummies().len());
    }

    #[test]
    fn composition_formula_matches_definition(a in game(3), b in game(3), pivot in 0usize..3) {
        prop_assume!(!a.is_trivially_full() && !b.is_trivially_full());
        let spec = CompositionSpec::new(a.clone(), pivot % a.n(), b).unwrap();
        prop_assert_eq!(compose(&spec).unwrap(), compose_by_definition(&spec).unwrap());
    }

    #[test]
    fn desirability_is_a_preorder(g in game(5)) {
        let r = desirability(&g);
        for i in 0..g.n() {
            prop_assert!(r.geq(i, i));
            for j in 0..g.n() {
                for k in 0..g.n() {
                    prop_assert!(!(r.geq(i, j) && r.geq(j, k)) || r.geq(i, k));
                }
            }
        }
    }

    #[test]
    fn canonical_round_trip(heads in prop::collection::vec(prop_oneof![
        Just(Head::A2), Just(Head::U2), Just(Head { n: 3, k: 2 }), Just(Head { n: 4, k: 2 })
    ], 0..4), perm_seed in permutation(8)) {
        let form = CanonicalForm { heads, ..Default::default() };
        let g = build_from_canonical(&form).unwrap();
        let shuffle: Vec<usize> = perm_seed.into_iter().filter(|&p| p < g.n()).collect();
        let shuffled = if shuffle.len() == g.n() { g.permuted(&shuffle).unwrap() } else { g };
        prop_assert_eq!(canonical_decompose(&shuffled).unwrap(), Some(form));
    }
}
