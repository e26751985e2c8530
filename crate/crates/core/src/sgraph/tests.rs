use std::collections::HashSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::oracle;

fn cycle(n: usize, negatives: &[usize]) -> SignifiedGraph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, if negatives.contains(&i) { Sign::Neg } else { Sign::Pos })).collect();
    SignifiedGraph::from_edges(n, &edges).unwrap()
}

#[test]
fn construction_rejects_loops_duplicates_and_range() {
    let mut g = SignifiedGraph::empty(3);
    assert!(g.add_edge(0, 0, Sign::Pos).is_err());
    assert!(g.add_edge(0, 3, Sign::Pos).is_err());
    g.add_edge(0, 1, Sign::Pos).unwrap();
    assert!(g.add_edge(1, 0, Sign::Neg).is_err());
    assert_eq!(g.sign(1, 0), Some(Sign::Pos));
}

#[test]
fn resign_examples() {
    let g = cycle(5, &[1, 3]);
    assert_eq!(g.resign(&[]).unwrap(), g);
    assert_eq!(g.resign(&[0, 1, 2, 3, 4]).unwrap(), g);
    let e = SignifiedGraph::from_edges(2, &[(0, 1, Sign::Pos)]).unwrap();
    assert_eq!(e.resign(&[0]).unwrap().sign(0, 1), Some(Sign::Neg));
    assert!(g.resign(&[7]).is_err());
}

#[test]
fn cycle_sign_examples() {
    let tri = cycle(3, &[]);
    assert_eq!(tri.cycle_sign(&[0, 1, 2]).unwrap(), Sign::Pos);
    let c4 = cycle(4, &[2]);
    assert_eq!(c4.cycle_sign(&[0, 1, 2, 3]).unwrap(), Sign::Neg);
    assert!(c4.cycle_sign(&[0, 2, 1]).is_err());
}

#[test]
fn cycle_sign_invariant_under_resigning() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        let g = oracle::random_graph(&mut rng, 6, 0.6);
        let x: Vec<usize> = (0..6).filter(|_| rand::Rng::gen_bool(&mut rng, 0.5)).collect();
        let gx = g.resign(&x).unwrap();
        for c in oracle::simple_cycles(&g, 6) {
            assert_eq!(g.cycle_sign(&c).unwrap(), gx.cycle_sign(&c).unwrap());
        }
    }
}

#[test]
fn canonical_signature_examples() {
    let tree = SignifiedGraph::from_edges(4, &[(0, 1, Sign::Neg), (1, 2, Sign::Neg), (1, 3, Sign::Pos)]).unwrap();
    assert_eq!(tree.canonical_signature(), tree.all_positive());

    // a 5-vertex graph and one of its resignings (two drawings of one signed graph)
    let a = SignifiedGraph::from_edges(
        5,
        &[(0, 1, Sign::Pos), (1, 2, Sign::Neg), (2, 3, Sign::Pos), (3, 0, Sign::Neg), (0, 4, Sign::Neg), (2, 4, Sign::Pos)],
    )
    .unwrap();
    let b = a.resign(&[1, 4]).unwrap();
    assert_ne!(a, b);
    assert_eq!(a.canonical_signature(), b.canonical_signature());

    // C4 with one vs three negative edges: confirm with all 16 resignings first
    let one = cycle(4, &[0]);
    let three = cycle(4, &[0, 1, 2]);
    assert!(oracle::all_resignings(&one).contains(&three));
    assert_eq!(one.canonical_signature(), three.canonical_signature());
}

#[test]
fn canonical_form_constant_on_classes() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 2..=6 {
        for _ in 0..10 {
            let g = oracle::random_graph(&mut rng, n, 0.5);
            let c = g.canonical_signature();
            assert_eq!(c.canonical_signature(), c);
            for gx in oracle::all_resignings(&g) {
                assert_eq!(gx.canonical_signature(), c);
            }
        }
    }
}

#[test]
fn equivalence_witness_and_class_size() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 1..=6 {
        for _ in 0..10 {
            let g = oracle::random_connected(&mut rng, n, 0.4);
            let x: Vec<usize> = (0..n).filter(|_| rand::Rng::gen_bool(&mut rng, 0.5)).collect();
            let gx = g.resign(&x).unwrap();
            let w = g.equivalent(&gx).unwrap().expect("equivalent by construction");
            assert_eq!(g.resign(&w).unwrap(), gx);
            let distinct: HashSet<SignifiedGraph> = oracle::all_resignings(&g).into_iter().collect();
            assert_eq!(distinct.len(), 1 << (n - 1));
        }
    }
    assert_eq!(cycle(4, &[0]).equivalent(&cycle(4, &[])).unwrap(), None);
    assert!(cycle(4, &[]).equivalent(&cycle(5, &[])).is_err());
}

#[test]
fn disconnected_graphs_normalize_per_component() {
    let g = cycle(4, &[0]).disjoint_union(&cycle(3, &[1]));
    let c = g.canonical_signature();
    assert_eq!(c.negative_edge_count(), 2);
    assert!(g.equivalent(&g.resign(&[5, 1]).unwrap()).unwrap().is_some());
}

#[test]
fn anti_twins() {
    let k3 = cycle(3, &[]);
    assert!(k3.anti_twin_pairing().is_none());
    // two isolated vertices pair with each other
    let iso = SignifiedGraph::empty(2);
    assert_eq!(iso.anti_twin_pairing(), Some(Mapping(vec![1, 0])));
    assert!(SignifiedGraph::empty(3).anti_twin_pairing().is_none());
    // the 4-cycle + − + − is AT of a positive edge
    let c = SignifiedGraph::from_edges(4, &[(0, 1, Sign::Pos), (1, 2, Sign::Neg), (2, 3, Sign::Pos), (3, 0, Sign::Neg)]).unwrap();
    let atw = c.anti_twin_pairing().unwrap();
    assert_eq!(atw.0, vec![2, 3, 0, 1]);
}

#[test]
fn girth_examples() {
    let k4 = SignifiedGraph::from_edges(
        4,
        &[(0, 1, Sign::Pos), (0, 2, Sign::Pos), (0, 3, Sign::Pos), (1, 2, Sign::Neg), (1, 3, Sign::Pos), (2, 3, Sign::Pos)],
    )
    .unwrap();
    assert_eq!(k4.girth(), Some(3));
    assert_eq!(cycle(5, &[]).girth(), Some(5));
    let tree = SignifiedGraph::from_edges(4, &[(0, 1, Sign::Pos), (1, 2, Sign::Pos), (1, 3, Sign::Neg)]).unwrap();
    assert_eq!(tree.girth(), None);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..30 {
        let g = oracle::random_graph(&mut rng, 7, 0.35);
        let expect = oracle::simple_cycles(&g, 7).iter().map(Vec::len).min();
        assert_eq!(g.girth(), expect);
    }
}

#[test]
fn hom_validity() {
    let g = cycle(5, &[0, 2]);
    assert!(is_valid_hom(&g, &g, &Mapping::identity(5)));
    let pos = SignifiedGraph::from_edges(2, &[(0, 1, Sign::Pos)]).unwrap();
    let neg = SignifiedGraph::from_edges(2, &[(0, 1, Sign::Neg)]).unwrap();
    assert!(!is_valid_hom(&pos, &neg, &Mapping::identity(2)));
    assert!(!is_valid_hom(&pos, &pos, &Mapping(vec![0, 0])));
    // isolated vertices may go anywhere
    let iso = SignifiedGraph::empty(3);
    assert!(is_valid_hom(&iso, &pos, &Mapping(vec![1, 1, 0])));
}

#[test]
fn hom_composition() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut checked = 0;
    for _ in 0..300 {
        let g = oracle::random_graph(&mut rng, 4, 0.5);
        let h = oracle::random_graph(&mut rng, 4, 0.8);
        let k = oracle::random_graph(&mut rng, 5, 0.8);
        if let (Some(a), Some(b)) = (oracle::brute_force_hom(&g, &h), oracle::brute_force_hom(&h, &k)) {
            assert!(is_valid_hom(&g, &k, &a.then(&b)));
            checked += 1;
        }
    }
    assert!(checked > 10);
}

#[test]
fn json_and_dot() {
    let g = cycle(3, &[1]);
    let text = g.to_json();
    assert_eq!(SignifiedGraph::from_json(&text).unwrap(), g);
    assert!(SignifiedGraph::from_json(r#"{"n":2,"edges":[[0,1,1]],"extra":1}"#).is_err());
    assert!(SignifiedGraph::from_json(r#"{"n":2,"edges":[[0,1,2]]}"#).is_err());
    assert!(SignifiedGraph::from_json(r#"{"n":2,"edges":[[0,2,1]]}"#).is_err());
    let dot = g.to_dot(None);
    assert_eq!(dot.matches("dashed").count(), 1);
    assert_eq!(dot.matches("--").count(), 3);
}

proptest! {
    #[test]
    fn resign_is_an_involution(seed in any::<u64>(), mask in 0u32..256) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = oracle::random_graph(&mut rng, 8, 0.5);
        let x: Vec<usize> = (0..8).filter(|&v| mask >> v & 1 == 1).collect();
        let gx = g.resign(&x).unwrap();
        prop_assert!(gx.same_underlying(&g));
        prop_assert_eq!(gx.resign(&x).unwrap(), g.clone());
        prop_assert_eq!(gx.canonical_signature(), g.canonical_signature());
    }

    #[test]
    fn json_round_trip(seed in any::<u64>(), n in 0usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = oracle::random_graph(&mut rng, n, 0.4);
        prop_assert_eq!(SignifiedGraph::from_json(&g.to_json()).unwrap(), g);
    }
}
