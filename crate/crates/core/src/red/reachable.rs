//! `Π(X,ℛ)`: the partitions reachable as joins of red atoms, including the
//! empty join `m_X`.

use std::collections::{BTreeSet, HashSet};

use super::RedAtomSet;
use crate::count::BigCount;
use crate::error::{Error, Result};
use crate::graph::{cycle_edge_classes, LabeledGraph};
use crate::limits::Limits;
use crate::partition::{all_partitions_with, Atom, SetPartition};
use crate::unionfind::UnionFind;

/// `Π(X,ℛ)`, by subset scan when `2^|ℛ|` is within
/// `Limits::max_red_subsets`, otherwise by testing every partition of `X`
/// for blocks connected in `G_ℛ`.
pub fn reachable_partitions(reds: &RedAtomSet) -> Result<BTreeSet<SetPartition>> {
    reachable_partitions_with(reds, Limits::global())
}

pub fn reachable_partitions_with(
    reds: &RedAtomSet,
    limits: &Limits,
) -> Result<BTreeSet<SetPartition>> {
    match reachable_partitions_by_subsets(reds, limits) {
        Err(e) if e.is_resource_limit() && reds.n() <= limits.max_enum_n => {
            reachable_partitions_by_blocks(reds, limits)
        }
        other => other,
    }
}

/// Joins of all `2^|ℛ|` subsets.
pub fn reachable_partitions_by_subsets(
    reds: &RedAtomSet,
    limits: &Limits,
) -> Result<BTreeSet<SetPartition>> {
    let atoms: Vec<Atom> = reds.atoms().iter().copied().collect();
    let m = atoms.len();
    let subsets = 1u128.checked_shl(m as u32).unwrap_or(u128::MAX);
    if m >= 64 || subsets > limits.max_red_subsets {
        return Err(Error::limit(
            "red subsets 2^|R|",
            limits.max_red_subsets,
            subsets,
        ));
    }
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    for mask in 0u64..(1u64 << m) {
        let mut uf = UnionFind::new(reds.n());
        for (i, a) in atoms.iter().enumerate() {
            if mask >> i & 1 == 1 {
                uf.union(a.a(), a.b());
            }
        }
        seen.insert(uf.min_labels());
    }
    Ok(seen
        .into_iter()
        .map(|l| SetPartition::from_labels(&l).expect("union-find labels"))
        .collect())
}

/// Partitions of `X` whose every block induces a connected subgraph of
/// `G_ℛ`. Each is the join of a spanning forest of its blocks, and every
/// join has this shape.
pub fn reachable_partitions_by_blocks(
    reds: &RedAtomSet,
    limits: &Limits,
) -> Result<BTreeSet<SetPartition>> {
    let adj = reds.graph().adjacency();
    Ok(all_partitions_with(reds.n(), limits)?
        .filter(|pi| pi.blocks().iter().all(|b| connected_within(&adj, b)))
        .collect())
}

fn connected_within(adj: &[Vec<usize>], block: &[usize]) -> bool {
    let mut seen = vec![block[0]];
    let mut stack = vec![block[0]];
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if block.contains(&v) && !seen.contains(&v) {
                seen.push(v);
                stack.push(v);
            }
        }
    }
    seen.len() == block.len()
}

/// `|Π(X,ℛ)|`. With `nonempty_joins`, `m_X` is dropped whenever `ℛ` has an
/// atom; an empty `ℛ` still counts `m_X`.
pub fn reachable_count(reds: &RedAtomSet, nonempty_joins: bool) -> Result<BigCount> {
    let total = quotient_count_structured(reds)?;
    Ok(if nonempty_joins && !reds.is_empty() {
        total
            .checked_sub(&BigCount::one())
            .expect("m_X is always reachable")
    } else {
        total
    })
}

/// `|Π(X,ℛ)|` from the block structure of `G_ℛ`: a factor 2 per bridge,
/// `2^m - m` per class that is a single `m`-cycle, and a local brute force
/// for every other cycle class.
pub fn quotient_count_structured(reds: &RedAtomSet) -> Result<BigCount> {
    quotient_count_structured_with(reds, Limits::global())
}

pub fn quotient_count_structured_with(reds: &RedAtomSet, limits: &Limits) -> Result<BigCount> {
    let (bridges, classes) = cycle_edge_classes(&reds.graph());
    let mut total = BigCount::pow(2, bridges.len() as u32);
    for class in &classes {
        total = total * class_count(reds.n(), class, limits)?;
    }
    Ok(total)
}

fn class_count(n: usize, class: &BTreeSet<Atom>, limits: &Limits) -> Result<BigCount> {
    let m = class.len();
    let mut deg = vec![0usize; n];
    for e in class {
        deg[e.a()] += 1;
        deg[e.b()] += 1;
    }
    let vertices = deg.iter().filter(|&&d| d > 0).count();
    if vertices == m && deg.iter().all(|&d| d == 0 || d == 2) {
        // a class with as many vertices as edges, all of degree two, is one cycle
        return Ok(BigCount::pow(2, m as u32)
            .checked_sub(&BigCount::from(m))
            .expect("2^m ≥ m"));
    }
    if m > limits.max_component_edges {
        return Err(Error::limit(
            "cycle class edges",
            limits.max_component_edges as u128,
            m as u128,
        ));
    }
    let g = LabeledGraph::new(n, class.iter().copied())?;
    let reds = RedAtomSet::new(n, g.edges().iter().copied())?;
    Ok(BigCount::from(
        reachable_partitions_by_subsets(
            &reds,
            &Limits {
                max_red_subsets: 1 << m,
                ..*limits
            },
        )?
        .len(),
    ))
}
