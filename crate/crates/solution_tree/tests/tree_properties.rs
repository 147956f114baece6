use std::collections::{BTreeSet, HashSet};

use exact_algebra::Integer;
use proptest::prelude::*;
use solution_tree::*;

const KINDS: [EquationKind; 2] = [EquationKind::Twelve, EquationKind::Markov];

/// Exhaustive scan of `1 <= x <= y <= z <= bound` in machine integers.
fn brute_force(kind: EquationKind, bound: u64) -> BTreeSet<[u64; 3]> {
    let mut out = BTreeSet::new();
    for x in 1..=bound {
        for y in x..=bound {
            for z in y..=bound {
                let (xu, yu, zu) = (x as u128, y as u128, z as u128);
                let ok = match kind {
                    EquationKind::Twelve => {
                        (xu + yu).pow(2) + (yu + zu).pow(2) + (zu + xu).pow(2) == 12 * xu * yu * zu
                    }
                    EquationKind::Markov => xu * xu + yu * yu + zu * zu == 3 * xu * yu * zu,
                };
                if ok {
                    out.insert([x, y, z]);
                }
            }
        }
    }
    out
}

fn to_u64(s: &[Integer; 3]) -> [u64; 3] {
    s.clone().map(|x| u64::try_from(x).unwrap())
}

#[test]
fn every_node_is_a_solution_with_involutive_mutations() {
    for kind in KINDS {
        for node in enumerate(kind, 10, None) {
            assert!(verify(&node.triple, kind), "{}", node.triple);
            assert_eq!(TreeNode::replay(&node.path, kind).unwrap(), node.triple);
            assert_eq!(node.depth, node.path.len());
            for k in 1..=3 {
                let once = mutate(&node.triple, k, kind).unwrap();
                assert_eq!(mutate(&once, k, kind).unwrap(), node.triple);
                assert_eq!(mutate_by_division(&node.triple, k, kind).unwrap(), once);
            }
        }
    }
}

#[test]
fn sorted_forms_are_unique_and_coprime() {
    for kind in KINDS {
        let mut seen = HashSet::new();
        for node in enumerate(kind, 12, None) {
            assert!(seen.insert(node.triple.sorted()), "repeat {}", node.triple);
            assert!(pairwise_coprime(&node.triple));
        }
    }
}

#[test]
fn children_grow_below_the_root_chain() {
    for kind in KINDS {
        for node in enumerate(kind, 9, None).filter(|n| n.depth >= 2) {
            for child in children(&node, kind).unwrap() {
                assert!(child.triple.max() > node.triple.max());
            }
        }
    }
}

#[test]
fn descent_retraces_the_tree() {
    for kind in KINDS {
        let [_, singular, first] = kind.root_chain();
        for node in enumerate(kind, 10, None).filter(|n| n.depth >= 2) {
            let d = descend(&node.triple, kind).unwrap();
            assert!(d.positions.len() <= node.depth);
            // The walk stops at the singular (1,1,x), one step short of the root.
            let mut rev = node.path[1..].to_vec();
            rev.reverse();
            assert_eq!(d.positions, rev);
            for w in d.triples.windows(2) {
                assert!(w[1].max() < w[0].max());
            }
            assert_eq!(d.terminal().sorted(), singular.sorted());
            assert_eq!(d.triples[d.triples.len() - 2].sorted(), first.sorted());
        }
    }
}

#[test]
fn brute_force_oracle_agrees_to_300() {
    for kind in KINDS {
        let tree: BTreeSet<[u64; 3]> = enumerate(kind, usize::MAX, Some(Integer::from(300)))
            .map(|n| to_u64(&n.triple.sorted()))
            .collect();
        assert_eq!(tree, brute_force(kind, 300));
    }
}

#[test]
fn census_matches_brute_force() {
    let scan = brute_force(EquationKind::Twelve, 61);
    let census = max_multiplicity_census(EquationKind::Twelve, &Integer::from(61));
    let maxima: Vec<u64> = scan.iter().map(|t| t[2]).collect();
    assert_eq!(census.len(), maxima.len());
    for m in maxima {
        assert_eq!(census[&Integer::from(m)], 1);
    }
    let census = max_multiplicity_census(EquationKind::Markov, &Integer::from(5));
    let scan = brute_force(EquationKind::Markov, 5);
    assert_eq!(census.len(), scan.len());
}

#[test]
fn one_containing_solutions_satisfy_divisibility() {
    let mut seq: Vec<Integer> = Vec::new();
    for node in enumerate(EquationKind::Twelve, 12, None) {
        if node.triple.a() == &Integer::from(1) {
            assert!(divisibility_check(&node.triple).unwrap(), "{}", node.triple);
            seq.push(node.triple.max().clone());
        }
    }
    seq.sort();
    seq.dedup();
    let ext = a101368_extend(&[Integer::from(1), Integer::from(1)], seq.len() - 1).unwrap();
    assert_eq!(&ext[1..], &seq[..]);
}

fn random_path() -> impl Strategy<Value = Vec<Position>> {
    prop::collection::vec(0u8..2, 0..20).prop_map(|choices| {
        let mut path = vec![3, 2];
        let mut last = 2u8;
        for c in choices {
            let options: Vec<u8> = (1..=3u8).rev().filter(|&k| k != last).collect();
            last = options[c as usize];
            path.push(last);
        }
        path
    })
}

proptest! {
    #[test]
    fn random_deep_nodes_behave(path in random_path()) {
        for kind in KINDS {
            let t = TreeNode::replay(&path, kind).unwrap();
            prop_assert!(verify(&t, kind));
            prop_assert!(pairwise_coprime(&t));
            let d = descend(&t, kind).unwrap();
            prop_assert_eq!(d.positions.len(), path.len() - 1);
        }
    }
}
