//! Brute force over subsets of `ℛ`: the ground truth for every other
//! counting route.

use std::collections::HashSet;

use super::{CountEngine, CountQuery, Counted, Engine, RedAtomSet};
use crate::count::BigCount;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::partition::Atom;
use crate::unionfind::UnionFind;

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Block labels of the join of `atoms`, each element labeled by the smallest
/// member of its block.
fn join_labels(n: usize, atoms: impl IntoIterator<Item = Atom>) -> Vec<usize> {
    let mut uf = UnionFind::new(n);
    for a in atoms {
        uf.union(a.a(), a.b());
    }
    uf.min_labels()
}

fn rank_of(labels: &[usize]) -> usize {
    labels.iter().enumerate().filter(|&(i, &l)| i != l).count()
}

/// The distinct joins of `s`-subsets of `ℛ` having rank `j`.
fn rank_size_joins(q: &CountQuery, limits: &Limits) -> Result<HashSet<Vec<usize>>> {
    let atoms: Vec<Atom> = q.reds.atoms().iter().copied().collect();
    let subsets = binomial(atoms.len(), q.s);
    if subsets > limits.max_oracle_subsets {
        return Err(Error::limit(
            "oracle subsets C(|R|, s)",
            limits.max_oracle_subsets,
            subsets,
        ));
    }
    let mut found = HashSet::new();
    if q.j > q.s {
        return Ok(found);
    }
    let k = q.s;
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let labels = join_labels(q.n(), idx.iter().map(|&i| atoms[i]));
        if rank_of(&labels) == q.j {
            found.insert(labels);
        }
        // next k-combination in lexicographic order
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + atoms.len() - k) else {
            break;
        };
        idx[i] += 1;
        for t in i + 1..k {
            idx[t] = idx[t - 1] + 1;
        }
    }
    Ok(found)
}

/// `𝝿(X,j,s,ℛ)` by joining every `s`-subset of `ℛ`. Refuses when
/// `C(|ℛ|, s)` exceeds `Limits::max_oracle_subsets`.
pub fn count_rank_size_oracle(q: &CountQuery) -> Result<BigCount> {
    count_rank_size_oracle_with(q, Limits::global())
}

pub fn count_rank_size_oracle_with(q: &CountQuery, limits: &Limits) -> Result<BigCount> {
    Ok(BigCount::from(rank_size_joins(q, limits)?.len()))
}

/// Splits the oracle count by whether the pivot's ends share a block:
/// `(with, without)`.
pub fn split_by_atom(q: &CountQuery, pivot: Atom) -> Result<(BigCount, BigCount)> {
    split_by_atom_with(q, pivot, Limits::global())
}

pub fn split_by_atom_with(
    q: &CountQuery,
    pivot: Atom,
    limits: &Limits,
) -> Result<(BigCount, BigCount)> {
    if !q.reds.contains(pivot) {
        return Err(Error::InvalidPivot {
            a: pivot.a(),
            b: pivot.b(),
        });
    }
    let joins = rank_size_joins(q, limits)?;
    let with = joins
        .iter()
        .filter(|l| l[pivot.a()] == l[pivot.b()])
        .count();
    Ok((BigCount::from(with), BigCount::from(joins.len() - with)))
}

/// The whole table `t[j][s] = 𝝿(X,j,s,ℛ)` from one pass over all `2^|ℛ|`
/// subsets, for `0 ≤ j ≤ n-1` and `0 ≤ s ≤ |ℛ|`.
pub fn oracle_table(reds: &RedAtomSet) -> Result<Vec<Vec<BigCount>>> {
    oracle_table_with(reds, Limits::global())
}

pub fn oracle_table_with(reds: &RedAtomSet, limits: &Limits) -> Result<Vec<Vec<BigCount>>> {
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
    let mut by_size: Vec<HashSet<Vec<usize>>> = vec![HashSet::new(); m + 1];
    for mask in 0u64..(1u64 << m) {
        let labels = join_labels(
            reds.n(),
            (0..m).filter(|i| mask >> i & 1 == 1).map(|i| atoms[i]),
        );
        by_size[mask.count_ones() as usize].insert(labels);
    }
    let mut table = vec![vec![BigCount::zero(); m + 1]; reds.n()];
    for (s, joins) in by_size.iter().enumerate() {
        for labels in joins {
            let j = rank_of(labels);
            table[j][s] += BigCount::one();
        }
    }
    Ok(table)
}

/// The oracle as a [`CountEngine`].
#[derive(Debug, Clone, Default)]
pub struct OracleEngine {
    pub limits: Limits,
}

impl CountEngine for OracleEngine {
    fn count(&mut self, q: &CountQuery) -> Result<Counted> {
        Ok(Counted {
            value: count_rank_size_oracle_with(q, &self.limits)?,
            engine: Engine::Oracle,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: usize, reds: &str, j: usize, s: usize) -> CountQuery {
        CountQuery::new(RedAtomSet::parse(n, reds).unwrap(), j, s).unwrap()
    }

    #[test]
    fn base_values() {
        assert_eq!(count_rank_size_oracle(&q(4, "0-1,1-2", 0, 0)).unwrap(), 1);
        assert_eq!(count_rank_size_oracle(&q(4, "", 0, 0)).unwrap(), 1);
        assert_eq!(
            count_rank_size_oracle(&q(4, "0-1,1-2,2-3", 3, 2)).unwrap(),
            0
        );
    }

    #[test]
    fn triangle_pairs_all_join_to_the_top() {
        assert_eq!(
            count_rank_size_oracle(&q(3, "0-1,0-2,1-2", 2, 2)).unwrap(),
            1
        );
        assert_eq!(
            count_rank_size_oracle(&q(3, "0-1,0-2,1-2", 1, 1)).unwrap(),
            3
        );
    }

    #[test]
    fn path_pairs_are_distinct() {
        assert_eq!(
            count_rank_size_oracle(&q(4, "0-1,1-2,2-3", 2, 2)).unwrap(),
            3
        );
    }

    #[test]
    fn split_sums_to_total() {
        let query = q(4, "0-1,0-2,1-2,2-3", 2, 2);
        let (with, without) = split_by_atom(&query, Atom::new(0, 1).unwrap()).unwrap();
        assert_eq!(with + without, count_rank_size_oracle(&query).unwrap());
        assert!(matches!(
            split_by_atom(&query, Atom::new(0, 3).unwrap()),
            Err(Error::InvalidPivot { a: 0, b: 3 })
        ));
    }

    #[test]
    fn table_matches_cellwise() {
        let reds = RedAtomSet::parse(4, "0-1,0-2,1-2,2-3").unwrap();
        let t = oracle_table(&reds).unwrap();
        for (j, row) in t.iter().enumerate() {
            for (s, v) in row.iter().enumerate() {
                let query = CountQuery::new(reds.clone(), j, s).unwrap();
                assert_eq!(*v, count_rank_size_oracle(&query).unwrap());
            }
        }
    }

    #[test]
    fn ceiling() {
        let limits = Limits {
            max_oracle_subsets: 2,
            ..Limits::default()
        };
        let query = q(4, "0-1,0-2,1-2", 1, 1);
        assert!(count_rank_size_oracle_with(&query, &limits)
            .unwrap_err()
            .is_resource_limit());
    }
}
