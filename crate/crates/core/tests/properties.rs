use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wiener_core::canon::canonical_code;
use wiener_core::edgelist::{parse_edge_list, to_edge_list};
use wiener_core::transform::{apply_move, is_eligible, stabilize, LeafProfile, ToppleWindow};
use wiener_core::tree::Tree;
use wiener_core::wiener::{wiener, wiener_reference};

fn random_tree(n: usize, seed: u64) -> Tree {
    Tree::random(n, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
}

/// Caterpillar with interior path `0..counts.len()` and `counts[i]` leaves on
/// path vertex `i`. End counts are bumped to at least one.
fn caterpillar(counts: &[usize]) -> Tree {
    let len = counts.len();
    let mut edges: Vec<(usize, usize)> = (1..len).map(|i| (i - 1, i)).collect();
    let mut next = len;
    for (i, &c) in counts.iter().enumerate() {
        let c = if i == 0 || i == len - 1 { c.max(1) } else { c };
        for _ in 0..c {
            edges.push((i, next));
            next += 1;
        }
    }
    Tree::new(next, edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 200,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn algorithms_agree(n in 1usize..120, seed in any::<u64>()) {
        let t = random_tree(n, seed);
        prop_assert_eq!(wiener(&t).unwrap(), wiener_reference(&t).unwrap());
    }

    #[test]
    fn odd_order_gives_even_index(half in 1usize..60, seed in any::<u64>()) {
        let t = random_tree(2 * half + 1, seed);
        prop_assert_eq!(wiener(&t).unwrap() % 2, 0);
    }

    #[test]
    fn canonical_code_ignores_labels(n in 1usize..60, seed in any::<u64>()) {
        let t = random_tree(n, seed);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed ^ 0xabcd));
        let r = t.relabel(&perm).unwrap();
        prop_assert_eq!(canonical_code(&t), canonical_code(&r));
        prop_assert_eq!(wiener(&t).unwrap(), wiener(&r).unwrap());
    }

    #[test]
    fn edge_list_round_trip(n in 1usize..80, seed in any::<u64>()) {
        let t = random_tree(n, seed);
        prop_assert_eq!(parse_edge_list(&to_edge_list(&t)).unwrap(), t);
    }

    #[test]
    fn move_adds_four_and_conserves_leaves(counts in prop::collection::vec(0usize..5, 3..12)) {
        let t = caterpillar(&counts);
        let before = LeafProfile::of(&t).unwrap();
        let total: usize = before.counts.iter().sum();
        for u in 0..counts.len() {
            if !is_eligible(&t, u) {
                prop_assert!(apply_move(&t, u).is_err());
                continue;
            }
            let moved = apply_move(&t, u).unwrap();
            prop_assert_eq!(moved.n(), t.n());
            prop_assert!(moved.is_caterpillar());
            let c = before.counts[u] as u64;
            prop_assert_eq!(wiener(&moved).unwrap(), wiener(&t).unwrap() + 2 * c);
            let after = LeafProfile::of(&moved).unwrap();
            prop_assert_eq!(after.counts.iter().sum::<usize>(), total);
            prop_assert_eq!(after.counts[u] + 2, before.counts[u]);
        }
    }

    #[test]
    fn two_leaf_moves_add_four(counts in prop::collection::vec(1usize..3, 3..12)) {
        let t = caterpillar(&counts);
        for u in (1..counts.len() - 1).filter(|&u| counts[u] == 2) {
            let moved = apply_move(&t, u).unwrap();
            prop_assert_eq!(wiener(&moved).unwrap(), wiener(&t).unwrap() + 4);
        }
    }

    #[test]
    fn stabilization_is_order_independent(
        counts in prop::collection::vec(0usize..6, 5..14),
        seed in any::<u64>(),
    ) {
        let t = caterpillar(&counts);
        let len = counts.len();
        let center = len / 2;
        // keep the window off the interior path ends
        let halfwidth = center.min(len - 1 - center);
        let window = ToppleWindow { center, halfwidth };
        let (m0, t0) = stabilize(&t, window, |_| 0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (m1, t1) = stabilize(&t, window, |ready| rng.gen_range(0..ready.len())).unwrap();
        prop_assert_eq!(m0, m1);
        prop_assert_eq!(canonical_code(&t0), canonical_code(&t1));
        prop_assert_eq!(wiener(&t0).unwrap(), wiener(&t1).unwrap());
    }
}
