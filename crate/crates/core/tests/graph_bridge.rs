use std::collections::BTreeSet;

use atomdec::decomposition::{minimal_decompositions, FinestPolicy};
use atomdec::graph::{
    component_preserving_subgraphs, contract, count_spanning_forests, cycle_edge_classes,
    graph_of_partition, partition_of_graph, spanning_forests,
};
use atomdec::partition::all_partitions;
use atomdec::{Atom, LabeledGraph};
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = LabeledGraph> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect();
        proptest::sample::subsequence(pairs.clone(), 0..=pairs.len()).prop_map(move |es| {
            LabeledGraph::new(n, es.into_iter().map(|(a, b)| Atom::new(a, b).unwrap())).unwrap()
        })
    })
}

/// A random forest: each vertex after the first attaches to an earlier one
/// or starts a new tree.
fn arb_forest(max_n: usize) -> impl Strategy<Value = LabeledGraph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(proptest::option::of(any::<prop::sample::Index>()), n - 1)
            .prop_map(move |parents| {
                let edges = parents
                    .iter()
                    .enumerate()
                    .filter_map(|(i, p)| p.map(|ix| Atom::new(i + 1, ix.index(i + 1)).unwrap()));
                LabeledGraph::new(n, edges).unwrap()
            })
    })
}

#[test]
fn forests_biject_with_minimal_decompositions() {
    for n in 1..=6 {
        for pi in all_partitions(n).unwrap() {
            let forests = spanning_forests(&graph_of_partition(&pi)).unwrap();
            let decomps = minimal_decompositions(&pi, FinestPolicy::EmitEmpty).unwrap();
            assert_eq!(forests.len(), decomps.len(), "{pi}");
            for (f, d) in forests.iter().zip(&decomps) {
                assert_eq!(f.iter().copied().collect::<BTreeSet<_>>(), *d.atoms());
            }
        }
    }
}

#[test]
fn partition_graph_round_trip() {
    for n in 1..=6 {
        for pi in all_partitions(n).unwrap() {
            assert_eq!(partition_of_graph(&graph_of_partition(&pi)), pi);
        }
    }
}

proptest! {
    #[test]
    fn forests_have_one_spanning_forest(f in arb_forest(9)) {
        prop_assert_eq!(spanning_forests(&f).unwrap().len(), 1);
        prop_assert_eq!(component_preserving_subgraphs(&f).unwrap(), 1u64);
        prop_assert_eq!(count_spanning_forests(&f), 1u64);
        let (tree, classes) = cycle_edge_classes(&f);
        prop_assert_eq!(tree.len(), f.num_edges());
        prop_assert!(classes.is_empty());
    }

    #[test]
    fn cycle_classes_partition_the_edges(g in arb_graph(7)) {
        let (tree, classes) = cycle_edge_classes(&g);
        let mut seen: BTreeSet<Atom> = tree.clone();
        let mut total = tree.len();
        for c in &classes {
            prop_assert!(c.len() >= 3);
            total += c.len();
            seen.extend(c.iter().copied());
        }
        prop_assert_eq!(total, g.num_edges());
        prop_assert_eq!(&seen, g.edges());
        // a tree edge is exactly one whose removal splits its component
        for e in g.edges() {
            let split = g.without_edge(*e).num_components() > g.num_components();
            prop_assert_eq!(split, tree.contains(e));
        }
    }

    #[test]
    fn contraction_merges_only_the_touched_components(g in arb_graph(7), pick in any::<prop::sample::Index>(), pick2 in any::<prop::sample::Index>()) {
        let n = g.n();
        let a = pick.index(n);
        let b = pick2.index(n);
        let set: BTreeSet<usize> = [a, b].into_iter().collect();
        let c = contract(&g, &set).unwrap();
        let comps = g.components();
        let touched: BTreeSet<usize> = set.iter().map(|&v| comps.labels()[v]).collect();
        prop_assert_eq!(c.graph.num_components(), g.num_components() + 1 - touched.len());
        prop_assert_eq!(c.graph.n(), n + 1 - set.len());
        prop_assert_eq!(c.vertex_map[a], c.merged_label);
        prop_assert_eq!(c.vertex_map[b], c.merged_label);
    }
}
