mod common;

use std::collections::HashSet;

use common::*;
use ktree_excellent::construct::{self, ExploreConfig, GenMode, GenSpec};
use ktree_excellent::oracle::{self, Oracle};
use ktree_excellent::{cover, iso, ktree, Error, Graph};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn generated_ktrees_are_recognized() {
    for k in 1..=5 {
        for n in k..=30 {
            for seed in 0..3 {
                let spec = GenSpec { n, k, seed, mode: GenMode::Random };
                let g = construct::generate(&spec).unwrap().remove(0);
                assert_eq!(g.order(), n);
                assert!(ktree::is_ktree(&g, k), "k={k} n={n} seed={seed}");
            }
        }
    }
}

#[test]
fn enumeration_matches_canonical_forms() {
    let expected = [1, 1, 2, 5, 12, 39];
    for (n, &count) in (3..=8).zip(&expected) {
        let list = construct::enumerate_2trees(n).unwrap();
        assert_eq!(list.len(), count, "n={n}");
        let forms: HashSet<_> = list.iter().map(brute_canonical).collect();
        assert_eq!(forms.len(), count);
        assert!(list.iter().all(|g| ktree::is_ktree(g, 2)));
    }
    // every random 2-tree of order 7 lands in one of the listed classes
    let forms: HashSet<_> = construct::enumerate_2trees(7).unwrap().iter().map(brute_canonical).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..200 {
        let g = construct::random_ktree_with(7, 2, &mut rng).unwrap();
        assert!(forms.contains(&brute_canonical(&g)));
    }
}

#[test]
fn enumeration_of_other_k() {
    // trees up to isomorphism
    let trees: Vec<usize> = (1..=8).map(|n| construct::enumerate_ktrees(n, 1).unwrap().len()).collect();
    assert_eq!(trees, vec![1, 1, 1, 2, 3, 6, 11, 23]);
    let three: Vec<usize> = (3..=8).map(|n| construct::enumerate_ktrees(n, 3).unwrap().len()).collect();
    assert_eq!(three, vec![1, 1, 1, 2, 5, 15]);
    let spec = GenSpec { n: 6, k: 2, seed: 0, mode: GenMode::Exhaustive };
    assert_eq!(construct::generate(&spec).unwrap().len(), 5);
}

#[test]
fn coronas_are_excellent() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for n in 1..=7 {
        for _ in 0..10 {
            let h = random_graph(n, 0.4, &mut rng);
            let c = construct::corona(&h);
            assert_eq!(c.order(), 2 * n);
            let r = oracle::classify(&c).unwrap();
            assert!(r.excellent);
            assert_eq!(r.alpha, n);
        }
    }
}

#[test]
fn embedding_contract() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for round in 0..150 {
        let n = 3 + round % 28;
        let g = construct::shuffle_labels(&construct::random_ktree_with(n, 2, &mut rng).unwrap(), &mut rng);
        let (h, map) = construct::embed_excellent(&g).unwrap();
        assert!(ktree::is_ktree(&h, 2));
        assert!(h.order() <= 3 * n && h.order() % 3 == 0);
        let kept: Vec<usize> = map.clone();
        assert_eq!(h.induced(&kept).unwrap().0, g);
        assert!(cover::find_perfect_cover(&h, 2).unwrap().is_some());
        if h.order() <= 24 {
            assert!(Oracle::default().is_excellent(&h).unwrap());
        }
    }
    assert_eq!(construct::embed_excellent(&Graph::path(4)), Err(Error::NotAKTree { k: 2 }));
}

#[test]
fn fingerprints_separate_small_classes() {
    for n in 3..=8 {
        let list = construct::enumerate_2trees(n).unwrap();
        let prints: HashSet<String> = list.iter().map(construct::fingerprint).collect();
        // a collision is tolerated, but should be rare at these orders
        assert!(prints.len() + 1 >= list.len(), "n={n}");
        assert!(prints.iter().all(|p| p.len() == 16));
    }
}

#[test]
fn explorer_on_trees_and_2trees() {
    for k in 1..=2 {
        let cfg = ExploreConfig::new(k, 9, 300, 3);
        let summary = construct::explore_converse(&cfg).unwrap();
        assert_eq!(summary.findings().count(), 0, "k={k}");
        assert!(summary.records.iter().any(|r| r.excellent));
        assert!(summary.records.iter().all(|r| r.k == k && r.n > k && r.n <= 9));
        let negatives = summary.records.iter().filter(|r| r.n % (k + 1) != 0).count();
        assert!(negatives > 0);
        assert!(summary.records.iter().filter(|r| r.n % (k + 1) != 0).all(|r| !r.excellent));
    }
}

#[test]
fn explorer_is_reproducible() {
    let cfg = ExploreConfig::new(3, 12, 100, 77);
    let a = construct::explore_converse(&cfg).unwrap();
    let b = construct::explore_converse(&cfg).unwrap();
    assert_eq!(a.records, b.records);
    let json = serde_json::to_string(&a.records[0]).unwrap();
    let back: construct::ExplorationRecord = serde_json::from_str(&json).unwrap();
    assert_eq!(back, a.records[0]);
}

#[test]
fn explorer_counts_budget_refusals() {
    let mut cfg = ExploreConfig::new(2, 20, 40, 1);
    cfg.exhaustive = false;
    cfg.oracle = Oracle::new(10);
    let s = construct::explore_converse(&cfg).unwrap();
    assert!(s.skipped_budget > 0);
    assert_eq!(s.records.len() + s.skipped_budget, 40);
    assert!(iso::are_isomorphic(&Graph::complete(3), &Graph::cycle(3)).unwrap());
}
