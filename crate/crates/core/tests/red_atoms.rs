use std::collections::{BTreeMap, BTreeSet, HashSet};

use atomdec::graph::cycle_edge_classes;
use atomdec::partition::{join_atoms, SetPartition};
use atomdec::red::{
    count_rank_size_literal, count_rank_size_oracle, literal_divergences, oracle_table,
    quotient_count_structured, reachable_count, reachable_partitions, split_by_atom, CountEngine,
    LiteralCase, OracleEngine, RecursiveEngine,
};
use atomdec::{Atom, BigCount, CountQuery, Engine, Limits, RedAtomSet};
use proptest::prelude::*;

fn all_atoms(n: usize) -> Vec<Atom> {
    (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| Atom::new(a, b).unwrap()))
        .collect()
}

fn red_set(n: usize, mask: u64) -> RedAtomSet {
    let atoms = all_atoms(n);
    RedAtomSet::new(
        n,
        (0..atoms.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| atoms[i]),
    )
    .unwrap()
}

fn arb_reds(lo: usize, hi: usize) -> impl Strategy<Value = RedAtomSet> {
    (lo..=hi).prop_flat_map(|n| {
        let atoms = all_atoms(n);
        let len = atoms.len();
        proptest::sample::subsequence(atoms, 0..=len)
            .prop_map(move |v| RedAtomSet::new(n, v).unwrap())
    })
}

/// Every subset of the red atoms with its join, computed here from scratch.
fn joins_by_size(reds: &RedAtomSet) -> Vec<HashSet<SetPartition>> {
    let atoms: Vec<Atom> = reds.atoms().iter().copied().collect();
    let mut out = vec![HashSet::new(); atoms.len() + 1];
    for mask in 0u64..(1 << atoms.len()) {
        let chosen: Vec<Atom> = (0..atoms.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| atoms[i])
            .collect();
        out[chosen.len()].insert(join_atoms(reds.n(), &chosen).unwrap());
    }
    out
}

/// Test-side table `t[j][s]`.
fn local_table(reds: &RedAtomSet) -> Vec<Vec<usize>> {
    let mut t = vec![vec![0; reds.len() + 1]; reds.n()];
    for (s, joins) in joins_by_size(reds).iter().enumerate() {
        for p in joins {
            t[p.rank()][s] += 1;
        }
    }
    t
}

#[test]
fn library_oracle_matches_the_local_one_to_four() {
    for n in 1..=4 {
        for mask in 0..1u64 << all_atoms(n).len() {
            let reds = red_set(n, mask);
            let local = local_table(&reds);
            let lib = oracle_table(&reds).unwrap();
            for j in 0..n {
                for s in 0..=reds.len() {
                    assert_eq!(lib[j][s], local[j][s] as u64, "{reds} j={j} s={s}");
                    let q = CountQuery::new(reds.clone(), j, s).unwrap();
                    assert_eq!(count_rank_size_oracle(&q).unwrap(), local[j][s] as u64);
                }
            }
        }
    }
}

#[test]
fn recursion_matches_oracle_exhaustively_to_four() {
    let mut engine = RecursiveEngine::default();
    for n in 1..=4 {
        for mask in 0..1u64 << all_atoms(n).len() {
            let reds = red_set(n, mask);
            let local = local_table(&reds);
            for (j, row) in local.iter().enumerate() {
                for (s, &want) in row.iter().enumerate() {
                    let q = CountQuery::new(reds.clone(), j, s).unwrap();
                    let got = engine.count(&q).unwrap();
                    assert_eq!(got.engine, Engine::Recursive);
                    assert_eq!(got.value, want as u64, "{reds} j={j} s={s}");
                }
            }
        }
    }
}

#[test]
fn recursion_matches_oracle_on_every_red_set_of_k5() {
    let mut engine = RecursiveEngine::default();
    for mask in 0..1u64 << 10 {
        let reds = red_set(5, mask);
        let table = oracle_table(&reds).unwrap();
        for (j, row) in table.iter().enumerate() {
            for (s, expected) in row.iter().enumerate() {
                let got = engine
                    .count(&CountQuery::new(reds.clone(), j, s).unwrap())
                    .unwrap();
                assert_eq!(&got.value, expected, "{reds} j={j} s={s}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn recursion_matches_oracle_on_random_six(reds in arb_reds(6, 6)) {
        let table = oracle_table(&reds).unwrap();
        let mut engine = RecursiveEngine::default();
        for (j, row) in table.iter().enumerate() {
            for (s, expected) in row.iter().enumerate() {
                let got = engine.count(&CountQuery::new(reds.clone(), j, s).unwrap()).unwrap();
                prop_assert_eq!(&got.value, expected);
            }
        }
    }

    #[test]
    fn sizes_of_one_rank_sum_to_the_distinct_joins(reds in arb_reds(2, 6)) {
        let table = oracle_table(&reds).unwrap();
        let joins = joins_by_size(&reds);
        for (s, set) in joins.iter().enumerate() {
            let total: BigCount = table.iter().map(|row| row[s].clone()).sum();
            prop_assert_eq!(total, set.len() as u64);
        }
        // a join of s atoms never has rank above s
        for (j, row) in table.iter().enumerate() {
            for (s, v) in row.iter().enumerate() {
                if j > s {
                    prop_assert!(v.is_zero());
                }
            }
        }
    }

    #[test]
    fn reachable_partitions_are_the_connected_block_partitions(reds in arb_reds(2, 6)) {
        let listed = reachable_partitions(&reds).unwrap();
        let union: BTreeSet<SetPartition> = joins_by_size(&reds).into_iter().flatten().collect();
        prop_assert_eq!(&listed, &union);
        prop_assert_eq!(quotient_count_structured(&reds).unwrap(), listed.len() as u64);
        let dropped = if reds.is_empty() { 0 } else { 1 };
        prop_assert_eq!(reachable_count(&reds, true).unwrap(), (listed.len() - dropped) as u64);
    }

    #[test]
    fn split_sums_to_the_count(reds in arb_reds(2, 5), pick in any::<prop::sample::Index>(), j in 0usize..5, s in 0usize..11) {
        prop_assume!(!reds.is_empty() && j < reds.n() && s <= reds.len());
        let pivot = *reds.atoms().iter().nth(pick.index(reds.len())).unwrap();
        let q = CountQuery::new(reds.clone(), j, s).unwrap();
        let (with, without) = split_by_atom(&q, pivot).unwrap();
        let joins = &joins_by_size(&reds)[s];
        let local_with = joins.iter().filter(|p| p.rank() == j && p.same_block(pivot.a(), pivot.b())).count();
        let local_all = joins.iter().filter(|p| p.rank() == j).count();
        prop_assert_eq!(with, local_with as u64);
        prop_assert_eq!(without, (local_all - local_with) as u64);
    }
}

#[test]
fn forests_reach_two_to_the_edges() {
    // a path, a star and two disjoint paths
    for (n, edge_list) in [
        (5, "0-1,1-2,2-3,3-4"),
        (5, "0-1,0-2,0-3,0-4"),
        (6, "0-1,1-2,3-4,4-5"),
    ] {
        let reds = RedAtomSet::parse(n, edge_list).unwrap();
        let e = reds.len() as u32;
        assert_eq!(reachable_partitions(&reds).unwrap().len() as u64, 1 << e);
        assert_eq!(quotient_count_structured(&reds).unwrap(), 1u64 << e);
    }
}

#[test]
fn a_cycle_reaches_two_to_the_m_minus_m() {
    for m in 3..=8usize {
        let edge_list: Vec<String> = (0..m)
            .map(|i| format!("{}-{}", i.min((i + 1) % m), i.max((i + 1) % m)))
            .collect();
        let reds = RedAtomSet::parse(m, &edge_list.join(",")).unwrap();
        let expected = (1u64 << m) - m as u64;
        assert_eq!(reachable_partitions(&reds).unwrap().len() as u64, expected);
        assert_eq!(quotient_count_structured(&reds).unwrap(), expected);
    }
}

#[test]
fn product_over_cycle_classes() {
    // two 4-cycles sharing a vertex, then a pendant path of two bridges
    let reds = RedAtomSet::parse(9, "0-1,1-2,2-3,0-3,3-4,4-5,5-6,3-6,6-7,7-8").unwrap();
    let (bridges, classes) = cycle_edge_classes(&reds.graph());
    assert_eq!(bridges.len(), 2);
    assert_eq!(classes.len(), 2);
    let expected = 4 * 12 * 12;
    assert_eq!(reachable_partitions(&reds).unwrap().len(), expected);
    assert_eq!(quotient_count_structured(&reds).unwrap(), expected as u64);
}

#[test]
fn literal_recursion_disagrees_at_the_triangle_boundary() {
    let q = CountQuery::new(RedAtomSet::parse(3, "0-1,0-2,1-2").unwrap(), 2, 2).unwrap();
    let lit = count_rank_size_literal(&q, Atom::new(0, 1).unwrap(), &Limits::default()).unwrap();
    assert_eq!(lit.case, LiteralCase::ShortPaths);
    assert_eq!(lit.value.unwrap(), 3.into());
    assert_eq!(count_rank_size_oracle(&q).unwrap(), 1u64);
}

#[test]
fn literal_recursion_agrees_on_cut_edges_and_reports_the_rest() {
    let (divergences, cases) = literal_divergences(4, &Limits::default()).unwrap();
    assert!(divergences
        .iter()
        .all(|d| d.case != LiteralCase::CutEdge && d.case != LiteralCase::Base));
    let by_case: BTreeMap<LiteralCase, usize> =
        divergences.iter().fold(BTreeMap::new(), |mut m, d| {
            *m.entry(d.case).or_default() += 1;
            m
        });
    assert!(by_case.get(&LiteralCase::ShortPaths).copied().unwrap_or(0) > 0);
    assert!(cases[&LiteralCase::CutEdge] > 0);
    assert!(cases.contains_key(&LiteralCase::Unspecified));
}

#[test]
fn engines_share_one_interface() {
    let q = CountQuery::new(
        RedAtomSet::parse(5, "0-1,1-2,2-3,3-4,0-4,0-2").unwrap(),
        3,
        4,
    )
    .unwrap();
    let engines: Vec<Box<dyn CountEngine>> = vec![
        Box::new(OracleEngine::default()),
        Box::new(RecursiveEngine::default()),
    ];
    let values: Vec<BigCount> = engines
        .into_iter()
        .map(|mut e| e.count(&q).unwrap().value)
        .collect();
    assert_eq!(values[0], values[1]);
}
