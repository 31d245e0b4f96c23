mod common;

use common::*;
use heegaard::generators::multiplicity_matrix;
use heegaard::*;
use num_bigint::BigUint;
use proptest::prelude::*;

#[test]
fn fixture_counts() {
    assert_eq!(enumerate_generators(&fixture("l31.hd"), None).unwrap().count, BigUint::from(3u32));
    let (w, _) = wind(&fixture("s1s2.hd")).unwrap();
    assert_eq!(enumerate_generators(&w, None).unwrap().count, BigUint::from(4u32));
    let g = enumerate_generators(&fixture("l31-l31.hd"), None).unwrap();
    assert_eq!(multiplicity_matrix(&fixture("l31-l31.hd")), vec![vec![3, 0], vec![0, 3]]);
    assert_eq!(g.count, BigUint::from(9u32));
    assert_eq!(g.product_bound, BigUint::from(9u32));
    assert!(g.list.is_none());
}

#[test]
fn permanent_small_cases() {
    assert_eq!(permanent(&[]), BigUint::from(1u32));
    assert_eq!(permanent(&[vec![1, 1], vec![1, 1]]), BigUint::from(2u32));
    assert_eq!(permanent(&[vec![1, 2], vec![3, 4]]), BigUint::from(10u32));
    assert_eq!(permanent(&[vec![0, 0], vec![1, 1]]), BigUint::from(0u32));
}

fn check(d: &Diagram) {
    let g = enumerate_generators(d, Some(usize::MAX)).unwrap();
    let n = multiplicity_matrix(d);
    assert_eq!(g.count, BigUint::from(brute_permanent(&n)));
    assert!(g.count <= g.product_bound);
    let list = g.list.unwrap();
    assert_eq!(BigUint::from(list.len()), g.count);
    // every listed tuple uses each beta curve once
    let beta_of: std::collections::HashMap<&str, usize> = d
        .vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (d.names.vertices[i].as_str(), v.beta.0))
        .collect();
    for t in &list {
        let mut bs: Vec<usize> = t.iter().map(|v| beta_of[v.as_str()]).collect();
        bs.sort();
        bs.dedup();
        assert_eq!(bs.len(), t.len());
    }
    let mut sorted = list.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), list.len());
}

#[test]
fn wound_corpus_matches_brute_force() {
    for d in betti_corpus(30) {
        let (w, _) = wind(&d).unwrap();
        if w.alphas().len() <= 10 {
            check(&w);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn count_is_permanent(d in diagram_strategy(3, 3, 6)) {
        prop_assume!(d.alphas().len() <= 10);
        check(&d);
    }

    #[test]
    fn permanent_matches_expansion(m in (1usize..=6).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(0u64..=4, n), n))) {
        prop_assert_eq!(permanent(&m), BigUint::from(brute_permanent(&m)));
    }

    #[test]
    fn list_limit_is_respected(d in diagram_strategy(2, 1, 6), limit in 0usize..4) {
        let g = enumerate_generators(&d, Some(limit)).unwrap();
        let n = g.list.unwrap().len();
        prop_assert_eq!(BigUint::from(n), g.count.clone().min(BigUint::from(limit)));
    }
}
