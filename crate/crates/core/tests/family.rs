mod common;

use common::*;
use ktree_excellent::construct::{enumerate_2trees, random_ktree_with, random_ktree_with_cover, shuffle_labels};
use ktree_excellent::family::{self, Certificate, LabeledTwoTree, Step};
use ktree_excellent::oracle::{self, Oracle};
use ktree_excellent::{cover, io, ktree, Error, Graph, Triangle};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn red_triangles_partition_every_grown_tree() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for round in 0..300 {
        let t = random_family_member(round % 8, &mut rng);
        let g = t.graph().unwrap();
        assert!(ktree::is_ktree(&g, 2));
        assert_eq!(cover::validate_cover(&g, &t.red_cover()), Ok(()));
        assert_eq!(t.red().len(), g.order() / 3);
        // every triangle of the 2-tree built so far carries exactly one label
        let labelled = t.red().len() + t.blue().len();
        assert_eq!(labelled, g.triangles().len());
        assert!(t.red().is_disjoint(t.blue()));
    }
}

#[test]
fn grown_trees_are_excellent() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for round in 0..200 {
        let g = random_family_member(round % 6, &mut rng).graph().unwrap();
        let r = oracle::classify(&g).unwrap();
        assert!(r.excellent, "{g:?}");
        assert_eq!(r.alpha, g.order() / 3);
    }
}

#[test]
fn decompose_then_replay_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for round in 0..300 {
        let g = random_family_member(round % 10, &mut rng).graph().unwrap();
        let g = shuffle_labels(&g, &mut rng);
        let cert = family::decompose(&g).unwrap().expect("grown tree decomposes");
        assert_eq!(cert.steps.len(), g.order() / 3 - 1);
        let t = family::replay_certificate(&cert).unwrap();
        assert_eq!(t.graph().unwrap(), g);
        assert_eq!(cover::validate_cover(&g, &t.red_cover()), Ok(()));
        let text = io::write_certificate(&cert);
        assert_eq!(io::parse_certificate(&text).unwrap(), cert);
    }
}

#[test]
fn each_step_raises_alpha_by_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for round in 0..120 {
        let g = random_family_member(1 + round % 4, &mut rng).graph().unwrap();
        let g = shuffle_labels(&g, &mut rng);
        let cert = family::decompose(&g).unwrap().unwrap();
        let mut t = LabeledTwoTree::base(cert.base);
        let mut alpha = oracle::alpha_bruteforce(&compact(&t)).unwrap().0;
        assert_eq!(alpha, 1);
        for step in &cert.steps {
            t = step.apply(&t).unwrap();
            let h = compact(&t);
            let next = oracle::alpha_bruteforce(&h).unwrap().0;
            assert_eq!(next, alpha + 1);
            assert!(Oracle::default().is_excellent(&h).unwrap());
            alpha = next;
        }
    }
}

#[test]
fn three_way_agreement_on_all_small_2trees() {
    let mut positives = 0;
    for n in 3..=9 {
        for g in enumerate_2trees(n).unwrap() {
            let excellent = Oracle::default().is_excellent(&g).unwrap();
            let has_cover = cover::find_perfect_cover(&g, 2).unwrap().is_some();
            let decomposed = family::decompose(&g).unwrap();
            assert_eq!(excellent, has_cover, "{g:?}");
            assert_eq!(excellent, decomposed.is_some(), "{g:?}");
            assert_eq!(excellent, oracle::fast_excellent_2tree(&g).unwrap());
            positives += excellent as usize;
        }
    }
    assert!(positives >= 4);
}

#[test]
fn three_way_agreement_on_random_2trees() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for round in 0..400 {
        let n = 10 + round % 6;
        let g = if round % 3 == 0 && n % 3 == 0 {
            random_ktree_with_cover(n, 2, &mut rng).unwrap()
        } else {
            random_ktree_with(n, 2, &mut rng).unwrap()
        };
        let g = shuffle_labels(&g, &mut rng);
        let excellent = Oracle::default().is_excellent(&g).unwrap();
        assert_eq!(excellent, cover::find_perfect_cover(&g, 2).unwrap().is_some());
        assert_eq!(excellent, family::is_in_family_e(&g).unwrap());
    }
}

#[test]
fn replay_reports_the_failing_step() {
    let cert = Certificate {
        base: Triangle::new(0, 1, 2),
        steps: vec![
            Step::O1 { v1: 0, v2: 1, u1: 3, u2: 4, u3: 5 },
            Step::O2 { v1: 0, v2: 1, v3: 2, v4: 0, u0: 6, u1: 7, u2: 8 },
        ],
    };
    // 012 stays red after O1, so the O2 is legal
    assert!(family::replay_certificate(&cert).is_ok());
    let mut bad = cert.clone();
    bad.steps.push(Step::O1 { v1: 0, v2: 5, u1: 9, u2: 10, u3: 11 });
    assert!(matches!(family::replay_certificate(&bad), Err(Error::StepFailed { index: 2, .. })));
    let mut reused = cert;
    reused.steps.push(Step::O1 { v1: 0, v2: 1, u1: 8, u2: 9, u3: 10 });
    assert!(matches!(family::replay_certificate(&reused), Err(Error::StepFailed { index: 2, .. })));
}

#[test]
fn decompose_rejects_non_2trees() {
    assert_eq!(family::decompose(&Graph::complete(2)), Err(Error::OrderTooSmall { n: 2, min: 3 }));
    assert_eq!(family::decompose(&Graph::cycle(6)), Err(Error::NotAKTree { k: 2 }));
    assert_eq!(family::decompose(&diamond()), Ok(None));
}
