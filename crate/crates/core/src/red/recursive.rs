//! Deletion/contraction recursion for `𝝿(X,j,s,ℛ)`.
//!
//! A partition is a join of exactly `s` red atoms iff each of its blocks is
//! connected in `G_ℛ`, its rank `j` is at most `s`, and at least `s` red
//! atoms lie inside its blocks (start from a spanning forest of the blocks
//! and add inner red atoms until there are `s`). So for `j ≤ s`
//!
//! ```text
//! 𝝿(X,j,s,ℛ) = count(G_ℛ, j, s)
//! count(G, j, t) = #{π : blocks connected in G, rank π = j, w_G(π) ≥ t}
//! ```
//!
//! where `w_G(π)` is the weight of the edges inside blocks. `G` is a
//! weighted multigraph because contraction creates parallel edges. For a
//! pivot edge `e = {x,x'}` of weight `μ`:
//!
//! - `x`, `x'` in one block: `count(G/e, j-1, t-μ)`.
//! - apart: `count(G-e, j, t)` minus the partitions of `G-e` that still put
//!   `x` and `x'` together. Those have a block containing some `x`–`x'` path
//!   of `G-e`; inclusion–exclusion over the paths groups by the vertex set
//!   `S` of their union and contracts it:
//!   `Σ_S c(S)·count((G-e)/S, j-|S|+1, t-w(S))`, with
//!   `c(S) = Σ (-1)^(|Q|+1)` over path families `Q` covering exactly `S`.
//!   Only paths of length at most `j` survive the rank bound.
//!
//! A bridge pivot has no such paths and the second term is the plain
//! deletion.

use std::collections::HashMap;

use num_bigint::{BigInt, Sign};
use num_traits::Zero;

use super::multigraph::{Multigraph, MAX_VERTICES};
use super::oracle::count_rank_size_oracle_with;
use super::{CountEngine, CountQuery, Counted, Engine};
use crate::count::BigCount;
use crate::error::Result;
use crate::limits::Limits;

/// Memoized recursive counter. The memo is keyed on a canonical relabeling
/// of the reduced graph plus `(j, t)` and lives as long as the engine.
#[derive(Debug)]
pub struct RecursiveEngine {
    limits: Limits,
    memo: HashMap<(Multigraph, i64, i64), BigInt>,
    /// Fall back to the oracle when a ceiling is hit.
    pub allow_fallback: bool,
}

/// Signals that the path ceiling was exceeded somewhere below.
struct TooManyPaths;

impl Default for RecursiveEngine {
    fn default() -> Self {
        RecursiveEngine::new(*Limits::global())
    }
}

impl RecursiveEngine {
    pub fn new(limits: Limits) -> Self {
        RecursiveEngine {
            limits,
            memo: HashMap::new(),
            allow_fallback: true,
        }
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn count(&mut self, q: &CountQuery) -> Result<Counted> {
        if q.j > q.s {
            return Ok(Counted {
                value: BigCount::zero(),
                engine: Engine::Recursive,
            });
        }
        let g = Multigraph::from_graph(&q.reds.graph());
        if g.n <= MAX_VERTICES {
            if let Ok(v) = self.count_graph(&g, q.j as i64, q.s as i64) {
                let value = v.to_biguint().expect("counts are nonnegative");
                return Ok(Counted {
                    value: BigCount(value),
                    engine: Engine::Recursive,
                });
            }
        }
        if !self.allow_fallback {
            return Err(crate::error::Error::limit(
                "simple paths",
                self.limits.max_paths as u128,
                self.limits.max_paths as u128 + 1,
            ));
        }
        Ok(Counted {
            value: count_rank_size_oracle_with(q, &self.limits)?,
            engine: Engine::Fallback,
        })
    }

    fn count_graph(
        &mut self,
        g: &Multigraph,
        j: i64,
        t: i64,
    ) -> std::result::Result<BigInt, TooManyPaths> {
        if j < 0 {
            return Ok(BigInt::zero());
        }
        let t = t.max(0);
        let g = g.without_isolated();
        if j == 0 {
            return Ok(BigInt::from((t == 0) as u8));
        }
        if j as usize >= g.n.max(1) || t as u64 > g.total_weight() {
            return Ok(BigInt::zero());
        }
        let key = (g.canonical(), j, t);
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let g = key.0.clone();
        let adj = g.adjacency();
        let (idx, bridge) = pivot(&g, &adj);
        let (x, y, mu) = g.edges[idx];

        let with = self.count_graph(&g.contract(1 << x | 1 << y), j - 1, t - mu as i64)?;
        let rest = g.without_edge(idx);
        let mut without = self.count_graph(&rest, j, t)?;
        if !bridge {
            let sets = rest
                .path_vertex_sets(x, y, j as usize, self.limits.max_paths)
                .ok_or(TooManyPaths)?;
            for (set, coeff) in union_coefficients(&sets) {
                let size = set.count_ones() as i64;
                let sub = self.count_graph(
                    &rest.contract(set),
                    j - (size - 1),
                    t - rest.inner_weight(set) as i64,
                )?;
                without -= coeff * sub;
            }
        }
        let total = with + without;
        debug_assert!(total.sign() != Sign::Minus);
        self.memo.insert(key, total.clone());
        Ok(total)
    }
}

impl CountEngine for RecursiveEngine {
    fn count(&mut self, q: &CountQuery) -> Result<Counted> {
        RecursiveEngine::count(self, q)
    }
}

/// The bridge separating the most vertex pairs, else the first edge.
fn pivot(g: &Multigraph, adj: &[Vec<(usize, u64)>]) -> (usize, bool) {
    let mut best: Option<(u64, usize)> = None;
    for (i, &(u, v, _)) in g.edges.iter().enumerate() {
        let side = g.reach(adj, u, (u, v));
        if side >> v & 1 == 1 {
            continue;
        }
        let other = g.reach(adj, v, (u, v));
        let pairs = side.count_ones() as u64 * other.count_ones() as u64;
        if best.is_none_or(|(p, _)| pairs > p) {
            best = Some((pairs, i));
        }
    }
    match best {
        Some((_, i)) => (i, true),
        None => (0, false),
    }
}

/// `c(S)` for every vertex set `S` that is the union of some nonempty
/// family of the given path vertex sets; zero coefficients are dropped.
fn union_coefficients(paths: &[u64]) -> Vec<(u64, i64)> {
    let mut acc: HashMap<u64, i64> = HashMap::new();
    for &p in paths {
        let mut next = acc.clone();
        for (&s, &c) in &acc {
            *next.entry(s | p).or_default() -= c;
        }
        *next.entry(p).or_default() += 1;
        next.retain(|_, c| *c != 0);
        acc = next;
    }
    let mut out: Vec<(u64, i64)> = acc.into_iter().collect();
    out.sort_unstable();
    out
}

/// `𝝿(X,j,s,ℛ)` with a fresh engine and the global limits.
pub fn count_rank_size_recursive(q: &CountQuery) -> Result<Counted> {
    RecursiveEngine::default().count(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::red::{count_rank_size_oracle, RedAtomSet};

    fn q(n: usize, reds: &str, j: usize, s: usize) -> CountQuery {
        CountQuery::new(RedAtomSet::parse(n, reds).unwrap(), j, s).unwrap()
    }

    #[test]
    fn spot_values() {
        let mut e = RecursiveEngine::new(Limits::default());
        assert_eq!(e.count(&q(4, "0-1,1-2,2-3", 2, 2)).unwrap().value, 3);
        assert_eq!(e.count(&q(3, "0-1,1-2,0-2", 2, 2)).unwrap().value, 1);
        assert_eq!(e.count(&q(3, "0-1,1-2,0-2", 2, 3)).unwrap().value, 1);
        assert_eq!(e.count(&q(3, "0-1,1-2,0-2", 1, 2)).unwrap().value, 0);
        assert_eq!(e.count(&q(5, "", 0, 0)).unwrap().value, 1);
        assert_eq!(e.count(&q(4, "0-1,2-3", 2, 1)).unwrap().value, 0);
    }

    #[test]
    fn coefficients_of_overlapping_paths() {
        // two paths whose union is a third: the families {a,b}, {a,b,c},
        // {c}, {a,c}, {b,c} all cover the same set
        let a = 0b0111;
        let b = 0b1011;
        let c = a | b;
        let co = union_coefficients(&[a, b, c]);
        assert_eq!(co, vec![(a, 1), (b, 1), (c, -1)]);
    }

    #[test]
    fn agrees_with_oracle_on_k5() {
        let mut e = RecursiveEngine::new(Limits::default());
        let reds = RedAtomSet::new(
            5,
            crate::graph::LabeledGraph::complete(5)
                .unwrap()
                .edges()
                .iter()
                .copied(),
        )
        .unwrap();
        for j in 0..5 {
            for s in 0..=10 {
                let query = CountQuery::new(reds.clone(), j, s).unwrap();
                let got = e.count(&query).unwrap();
                assert_eq!(got.engine, Engine::Recursive);
                assert_eq!(
                    got.value,
                    count_rank_size_oracle(&query).unwrap(),
                    "j = {j}, s = {s}"
                );
            }
        }
    }

    #[test]
    fn falls_back_when_paths_run_out() {
        let limits = Limits {
            max_paths: 1,
            ..Limits::default()
        };
        let mut e = RecursiveEngine::new(limits);
        let got = e.count(&q(4, "0-1,0-2,0-3,1-2,1-3,2-3", 3, 4)).unwrap();
        assert_eq!(got.engine, Engine::Fallback);
        assert_eq!(
            got.value,
            count_rank_size_oracle(&q(4, "0-1,0-2,0-3,1-2,1-3,2-3", 3, 4)).unwrap()
        );
        e.allow_fallback = false;
        assert!(e.count(&q(4, "0-1,0-2,0-3,1-2,1-3,2-3", 3, 5)).is_err());
    }
}
