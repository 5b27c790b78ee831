use std::collections::BTreeSet;

use atomdec::partition::{all_partitions, atom_to_partition, join_atoms};
use atomdec::SetPartition;
use proptest::prelude::*;

fn arb_partition(max_n: usize) -> impl Strategy<Value = SetPartition> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(0..n, n)
            .prop_map(move |labels| SetPartition::from_labels(&labels).unwrap())
    })
}

fn arb_triple(max_n: usize) -> impl Strategy<Value = (SetPartition, SetPartition, SetPartition)> {
    (1..=max_n).prop_flat_map(|n| {
        let one = move || {
            proptest::collection::vec(0..n, n).prop_map(|l| SetPartition::from_labels(&l).unwrap())
        };
        (one(), one(), one())
    })
}

fn is_canonical(p: &SetPartition) -> bool {
    p.blocks().iter().all(|b| b.windows(2).all(|w| w[0] < w[1]))
        && p.blocks().windows(2).all(|w| w[0][0] < w[1][0])
}

proptest! {
    #[test]
    fn meet_join_axioms((a, b, c) in arb_triple(9)) {
        prop_assert_eq!(a.meet(&b).unwrap(), b.meet(&a).unwrap());
        prop_assert_eq!(a.join(&b).unwrap(), b.join(&a).unwrap());
        prop_assert_eq!(a.meet(&b).unwrap().meet(&c).unwrap(), a.meet(&b.meet(&c).unwrap()).unwrap());
        prop_assert_eq!(a.join(&b).unwrap().join(&c).unwrap(), a.join(&b.join(&c).unwrap()).unwrap());
        prop_assert_eq!(a.meet(&a.join(&b).unwrap()).unwrap(), a.clone());
        prop_assert_eq!(a.join(&a.meet(&b).unwrap()).unwrap(), a.clone());
        prop_assert!(is_canonical(&a.meet(&b).unwrap()));
        prop_assert!(is_canonical(&a.join(&b).unwrap()));
    }

    #[test]
    fn order_consistency((a, b, _c) in arb_triple(9)) {
        let r = a.refines(&b).unwrap();
        prop_assert_eq!(r, a.meet(&b).unwrap() == a);
        prop_assert_eq!(r, a.join(&b).unwrap() == b);
    }

    #[test]
    fn text_round_trip(p in arb_partition(12)) {
        let text = p.to_string();
        prop_assert_eq!(text.parse::<SetPartition>().unwrap(), p);
    }

    #[test]
    fn join_of_atoms_below(p in arb_partition(10)) {
        prop_assert_eq!(join_atoms(p.n(), &p.atoms_below()).unwrap(), p);
    }

    #[test]
    fn covers_raise_rank_by_one((a, b, _c) in arb_triple(7)) {
        if a.covers(&b).unwrap() {
            prop_assert_eq!(b.rank(), a.rank() + 1);
        }
    }
}

#[test]
fn semimodular_up_to_five() {
    for n in 1..=5 {
        let all: Vec<SetPartition> = all_partitions(n).unwrap().collect();
        for a in &all {
            for b in &all {
                let m = a.meet(b).unwrap();
                if m.covers(a).unwrap() {
                    assert!(b.covers(&a.join(b).unwrap()).unwrap(), "{a} {b}");
                }
            }
        }
    }
}

#[test]
fn lattice_axioms_exhaustive_to_four() {
    for n in 1..=4 {
        let all: Vec<SetPartition> = all_partitions(n).unwrap().collect();
        for a in &all {
            for b in &all {
                assert_eq!(a.meet(b).unwrap(), b.meet(a).unwrap());
                assert_eq!(a.join(b).unwrap(), b.join(a).unwrap());
                assert_eq!(a.meet(&a.join(b).unwrap()).unwrap(), *a);
                assert_eq!(a.join(&a.meet(b).unwrap()).unwrap(), *a);
                for c in &all {
                    assert_eq!(
                        a.meet(b).unwrap().meet(c).unwrap(),
                        a.meet(&b.meet(c).unwrap()).unwrap()
                    );
                    assert_eq!(
                        a.join(b).unwrap().join(c).unwrap(),
                        a.join(&b.join(c).unwrap()).unwrap()
                    );
                }
            }
        }
    }
}

/// Every maximal chain from `m_X` to `g_X` has `n - 1` covers.
#[test]
fn maximal_chains_have_length_n_minus_one() {
    for n in 1..=5 {
        let all: Vec<SetPartition> = all_partitions(n).unwrap().collect();
        let mut lengths = BTreeSet::new();
        let mut stack = vec![(SetPartition::finest(n).unwrap(), 0usize)];
        while let Some((p, len)) = stack.pop() {
            let up: Vec<&SetPartition> = all.iter().filter(|q| p.covers(q).unwrap()).collect();
            if up.is_empty() {
                assert!(p.is_coarsest());
                lengths.insert(len);
            }
            for q in up {
                stack.push((q.clone(), len + 1));
            }
        }
        assert_eq!(lengths.into_iter().collect::<Vec<_>>(), vec![n - 1]);
    }
}

#[test]
fn atom_partitions() {
    for n in 2..=6 {
        for p in all_partitions(n).unwrap().filter(|p| p.rank() == 1) {
            let atoms = p.atoms_below();
            assert_eq!(atoms.len(), 1);
            assert_eq!(atom_to_partition(*atoms.first().unwrap(), n).unwrap(), p);
        }
    }
}
