//! Cut sets `U_α` and a literal evaluation of the cut-set recursion for
//! `𝝿`, with every sub-term answered by the oracle.
//!
//! The literal recursion is not what [`super::RecursiveEngine`] runs. It is
//! kept so that the places where it departs from brute force can be listed
//! ([`literal_divergences`]).

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde::Serialize;

use super::oracle::count_rank_size_oracle_with;
use super::{CountQuery, RedAtomSet};
use crate::count::BigCount;
use crate::error::{Error, Result};
use crate::graph::{simple_paths_between_with, LabeledGraph, Path};
use crate::limits::Limits;
use crate::partition::Atom;

/// One deduplicated cut: the removed edges, the first multi-index that
/// produced them (1-based positions, one or two per path), and how many
/// multi-indices produced the same edge set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutSet {
    pub edges: BTreeSet<Atom>,
    pub positions: Vec<usize>,
    pub multiplicity: u64,
}

/// Every way of interrupting each `x`–`x'` path of `g` (other than
/// `exclude`) once, or twice when `interruptions == 2`. Paths are taken
/// shortest first; a path already cut the required number of times by the
/// choices for earlier paths is left alone. Cut sets are returned in order
/// of first appearance.
pub fn build_cut_sets(
    g: &LabeledGraph,
    x: usize,
    y: usize,
    exclude: Option<Atom>,
    interruptions: usize,
) -> Result<Vec<CutSet>> {
    build_cut_sets_with(g, x, y, exclude, interruptions, Limits::global())
}

pub fn build_cut_sets_with(
    g: &LabeledGraph,
    x: usize,
    y: usize,
    exclude: Option<Atom>,
    interruptions: usize,
    limits: &Limits,
) -> Result<Vec<CutSet>> {
    if !(1..=2).contains(&interruptions) {
        return Err(Error::InvalidArgument(format!(
            "paths are interrupted once or twice, not {interruptions} times"
        )));
    }
    let paths = simple_paths_between_with(g, x, y, exclude, limits)?;
    if paths.is_empty() {
        return Ok(Vec::new());
    }
    let choices: Vec<Vec<Vec<usize>>> = paths
        .iter()
        .map(|p| position_choices(p, interruptions))
        .collect();
    let space = choices
        .iter()
        .try_fold(1u128, |acc, c| acc.checked_mul(c.len() as u128))
        .unwrap_or(u128::MAX);
    if space > limits.max_oracle_subsets {
        return Err(Error::limit(
            "cut-set multi-indices",
            limits.max_oracle_subsets,
            space,
        ));
    }
    let edges: Vec<Vec<Atom>> = paths.iter().map(Path::edges).collect();
    let mut found: Vec<CutSet> = Vec::new();
    let mut index: BTreeMap<BTreeSet<Atom>, usize> = BTreeMap::new();
    let mut pick = vec![0usize; paths.len()];
    loop {
        let mut cut = BTreeSet::new();
        let mut positions = Vec::new();
        for (v, path_edges) in edges.iter().enumerate() {
            let chosen = &choices[v][pick[v]];
            positions.extend(chosen.iter().map(|&p| p + 1));
            let already = path_edges.iter().filter(|e| cut.contains(*e)).count();
            if already < interruptions {
                cut.extend(chosen.iter().map(|&p| path_edges[p]));
            }
        }
        match index.get(&cut) {
            Some(&i) => found[i].multiplicity += 1,
            None => {
                index.insert(cut.clone(), found.len());
                found.push(CutSet {
                    edges: cut,
                    positions,
                    multiplicity: 1,
                });
            }
        }
        // odometer over the per-path choices
        let Some(v) = (0..pick.len())
            .rev()
            .find(|&v| pick[v] + 1 < choices[v].len())
        else {
            break;
        };
        pick[v] += 1;
        for w in pick.iter_mut().skip(v + 1) {
            *w = 0;
        }
    }
    Ok(found)
}

fn position_choices(p: &Path, k: usize) -> Vec<Vec<usize>> {
    let l = p.len();
    if k == 1 {
        (0..l).map(|i| vec![i]).collect()
    } else {
        (0..l)
            .flat_map(|i| (i + 1..l).map(move |j| vec![i, j]))
            .collect()
    }
}

/// Which branch of the literal recursion applies to a query and pivot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LiteralCase {
    /// `j > s`, or `j = s = 0`.
    Base,
    /// The pivot is the only `x`–`x'` path: plain deletion/contraction.
    CutEdge,
    /// Other paths exist but `j = s` is at most the shortest of them.
    ShortPaths,
    /// `j = s` exceeds the shortest alternative path: inclusion–exclusion
    /// over the cut sets.
    CutSetUnion,
    /// `j < s` with alternative paths. The contraction terms for this regime
    /// are not specified precisely enough to evaluate.
    Unspecified,
    /// Too many cut sets to expand the inclusion–exclusion.
    TooLarge,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiteralEvaluation {
    pub case: LiteralCase,
    /// Signed: the literal right-hand side is not guaranteed nonnegative.
    pub value: Option<BigInt>,
}

/// Most distinct cut sets whose inclusion–exclusion is expanded.
const MAX_LITERAL_CUTS: usize = 16;

fn oracle_term(reds: &RedAtomSet, j: i64, s: i64, limits: &Limits) -> Result<BigInt> {
    if j < 0 || s < 0 || j as usize >= reds.n() || s as usize > reds.len() {
        return Ok(BigInt::from(0));
    }
    let q = CountQuery::new(reds.clone(), j as usize, s as usize)?;
    Ok(BigInt::from(count_rank_size_oracle_with(&q, limits)?.0))
}

/// Evaluates the literal recursion for `q` at `pivot`, answering each
/// right-hand term with the oracle.
pub fn count_rank_size_literal(
    q: &CountQuery,
    pivot: Atom,
    limits: &Limits,
) -> Result<LiteralEvaluation> {
    if !q.reds.contains(pivot) {
        return Err(Error::InvalidPivot {
            a: pivot.a(),
            b: pivot.b(),
        });
    }
    let (j, s) = (q.j as i64, q.s as i64);
    let done = |case, v: BigInt| {
        Ok(LiteralEvaluation {
            case,
            value: Some(v),
        })
    };
    if j > s {
        return done(LiteralCase::Base, BigInt::from(0));
    }
    if j == 0 && s == 0 {
        return done(LiteralCase::Base, BigInt::from(1));
    }
    let rest = q.reds.without(pivot);
    let g = q.reds.graph();
    let paths = simple_paths_between_with(&g, pivot.a(), pivot.b(), Some(pivot), limits)?;
    let split = |r: &RedAtomSet, jj: i64, ss: i64| -> Result<BigInt> {
        Ok(oracle_term(r, jj - 1, ss - 1, limits)? + oracle_term(r, jj, ss, limits)?)
    };
    if paths.is_empty() {
        return done(LiteralCase::CutEdge, split(&rest, j, s)?);
    }
    let l1 = paths[0].len() as i64;
    if j < s {
        return Ok(LiteralEvaluation {
            case: LiteralCase::Unspecified,
            value: None,
        });
    }
    if s <= l1 {
        return done(LiteralCase::ShortPaths, split(&rest, j, j)?);
    }
    let cuts = build_cut_sets_with(&g, pivot.a(), pivot.b(), Some(pivot), 1, limits)?;
    if cuts.len() > MAX_LITERAL_CUTS {
        return Ok(LiteralEvaluation {
            case: LiteralCase::TooLarge,
            value: None,
        });
    }
    let mut total = BigInt::from(0);
    for family in 1u32..(1 << cuts.len()) {
        let removed: BTreeSet<Atom> = (0..cuts.len())
            .filter(|i| family >> i & 1 == 1)
            .flat_map(|i| cuts[i].edges.iter().copied())
            .collect();
        let term = split(&rest.without_all(&removed), j, j)?;
        if family.count_ones() % 2 == 1 {
            total += term;
        } else {
            total -= term;
        }
    }
    done(LiteralCase::CutSetUnion, total)
}

/// A query and pivot where the literal recursion disagrees with brute force.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Divergence {
    pub reds: String,
    pub pivot: Atom,
    pub j: usize,
    pub s: usize,
    pub case: LiteralCase,
    pub literal: BigInt,
    pub oracle: BigCount,
}

/// Runs the literal recursion on every red set of `K_n`, every pivot and
/// every `(j, s)`; returns the disagreements and how often each case was
/// evaluated.
pub fn literal_divergences(
    n: usize,
    limits: &Limits,
) -> Result<(Vec<Divergence>, BTreeMap<LiteralCase, usize>)> {
    let all: Vec<Atom> = LabeledGraph::complete(n)?.edges().iter().copied().collect();
    if all.len() >= 32 {
        return Err(Error::limit(
            "red sets of K_n",
            1u128 << 31,
            1u128 << all.len().min(127),
        ));
    }
    let mut out = Vec::new();
    let mut tally = BTreeMap::new();
    for mask in 0u32..(1 << all.len()) {
        let reds = RedAtomSet::new(
            n,
            (0..all.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| all[i]),
        )?;
        for &pivot in reds.atoms() {
            for j in 0..n {
                for s in 0..=reds.len() {
                    let q = CountQuery::new(reds.clone(), j, s)?;
                    let ev = count_rank_size_literal(&q, pivot, limits)?;
                    *tally.entry(ev.case).or_insert(0) += 1;
                    let Some(literal) = ev.value else { continue };
                    let oracle = count_rank_size_oracle_with(&q, limits)?;
                    if literal != BigInt::from(oracle.0.clone()) {
                        out.push(Divergence {
                            reds: reds.to_string(),
                            pivot,
                            j,
                            s,
                            case: ev.case,
                            literal,
                            oracle,
                        });
                    }
                }
            }
        }
    }
    Ok((out, tally))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(a: usize, b: usize) -> Atom {
        Atom::new(a, b).unwrap()
    }

    #[test]
    fn cut_sets_of_small_graphs() {
        let tri = LabeledGraph::parse_edge_list(3, "0-1;1-2;0-2").unwrap();
        let cuts = build_cut_sets(&tri, 0, 1, Some(atom(0, 1)), 1).unwrap();
        let sets: Vec<Vec<Atom>> = cuts
            .iter()
            .map(|c| c.edges.iter().copied().collect())
            .collect();
        assert_eq!(sets, vec![vec![atom(0, 2)], vec![atom(1, 2)]]);

        // alternative paths 0-2-1 and 0-3-4-1
        let g = LabeledGraph::parse_edge_list(5, "0-1;0-2;1-2;0-3;3-4;1-4").unwrap();
        let cuts = build_cut_sets(&g, 0, 1, Some(atom(0, 1)), 1).unwrap();
        assert_eq!(cuts.len(), 6);
        assert!(cuts
            .iter()
            .all(|c| c.edges.len() == 2 && c.multiplicity == 1));

        let path = LabeledGraph::parse_edge_list(3, "0-1;1-2").unwrap();
        assert!(build_cut_sets(&path, 0, 1, Some(atom(0, 1)), 1)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn shared_edges_are_cut_once() {
        // K4 minus nothing: paths 0-2-1, 0-3-1, 0-2-3-1, 0-3-2-1
        let k4 = LabeledGraph::complete(4).unwrap();
        let cuts = build_cut_sets(&k4, 0, 1, Some(atom(0, 1)), 1).unwrap();
        let total: u64 = cuts.iter().map(|c| c.multiplicity).sum();
        assert_eq!(total, 2 * 2 * 3 * 3);
        for c in &cuts {
            let rest = k4.without_edge(atom(0, 1));
            let rest = LabeledGraph::new(
                4,
                rest.edges()
                    .iter()
                    .copied()
                    .filter(|e| !c.edges.contains(e)),
            )
            .unwrap();
            assert!(
                !rest.components().same_block(0, 1),
                "{:?} leaves 0 and 1 joined",
                c.edges
            );
        }
    }

    #[test]
    fn twice_interrupted() {
        let tri = LabeledGraph::parse_edge_list(3, "0-1;1-2;0-2").unwrap();
        let cuts = build_cut_sets(&tri, 0, 1, Some(atom(0, 1)), 2).unwrap();
        assert_eq!(cuts.len(), 1);
        assert_eq!(cuts[0].edges.len(), 2);
        assert!(build_cut_sets(&tri, 0, 1, None, 3).is_err());
    }

    #[test]
    fn literal_boundary_on_the_triangle() {
        // j = s equal to the alternative path length: the deletion/contraction
        // split counts 0-2 ∨ 1-2 twice over
        let reds = RedAtomSet::parse(3, "0-1,0-2,1-2").unwrap();
        let q = CountQuery::new(reds, 2, 2).unwrap();
        let ev = count_rank_size_literal(&q, atom(0, 1), &Limits::default()).unwrap();
        assert_eq!(ev.case, LiteralCase::ShortPaths);
        assert_eq!(ev.value, Some(BigInt::from(3)));
        assert_eq!(
            count_rank_size_oracle_with(&q, &Limits::default()).unwrap(),
            1
        );
    }

    #[test]
    fn literal_agrees_on_forests() {
        let reds = RedAtomSet::parse(4, "0-1,1-2,1-3").unwrap();
        for j in 0..4 {
            for s in 0..=3 {
                let q = CountQuery::new(reds.clone(), j, s).unwrap();
                let ev = count_rank_size_literal(&q, atom(1, 2), &Limits::default()).unwrap();
                let oracle = count_rank_size_oracle_with(&q, &Limits::default()).unwrap();
                assert_eq!(ev.value.unwrap(), BigInt::from(oracle.0));
            }
        }
    }
}
