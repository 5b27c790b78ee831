//! Decompositions restricted to a set `ℛ` of red atoms.
//!
//! `𝝿(X,j,s,ℛ)` counts the distinct rank-`j` partitions that are joins of
//! exactly `s` red atoms. Three ways to get it live here: a brute-force
//! subset scan ([`count_rank_size_oracle`]), a memoized deletion/contraction
//! recursion ([`RecursiveEngine`]) and a literal evaluation of the
//! cut-set recursion ([`count_rank_size_literal`]) kept for comparison.

mod cuts;
mod multigraph;
mod oracle;
mod reachable;
mod recursive;

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::count::BigCount;
use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::partition::{format_atom_list, parse_atom_list, Atom};

pub use cuts::{
    build_cut_sets, build_cut_sets_with, count_rank_size_literal, literal_divergences, CutSet,
    Divergence, LiteralCase, LiteralEvaluation,
};
pub use oracle::{
    count_rank_size_oracle, count_rank_size_oracle_with, oracle_table, oracle_table_with,
    split_by_atom, split_by_atom_with, OracleEngine,
};
pub use reachable::{
    quotient_count_structured, quotient_count_structured_with, reachable_count,
    reachable_partitions, reachable_partitions_by_blocks, reachable_partitions_by_subsets,
    reachable_partitions_with,
};
pub use recursive::{count_rank_size_recursive, RecursiveEngine};

/// The red atoms, viewed as the edges of `G_ℛ` on `{0..n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RedAtomSet {
    n: usize,
    atoms: BTreeSet<Atom>,
}

impl RedAtomSet {
    pub fn new(n: usize, atoms: impl IntoIterator<Item = Atom>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroundSet);
        }
        let atoms = atoms
            .into_iter()
            .map(|a| a.check(n))
            .collect::<Result<BTreeSet<_>>>()?;
        Ok(RedAtomSet { n, atoms })
    }

    /// `"0-1,1-2"` style list; an empty string is the empty set.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        RedAtomSet::new(n, parse_atom_list(s)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn atoms(&self) -> &BTreeSet<Atom> {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn contains(&self, a: Atom) -> bool {
        self.atoms.contains(&a)
    }

    pub fn without(&self, a: Atom) -> RedAtomSet {
        let mut atoms = self.atoms.clone();
        atoms.remove(&a);
        RedAtomSet { n: self.n, atoms }
    }

    pub fn without_all<'a>(&self, drop: impl IntoIterator<Item = &'a Atom>) -> RedAtomSet {
        let mut atoms = self.atoms.clone();
        for a in drop {
            atoms.remove(a);
        }
        RedAtomSet { n: self.n, atoms }
    }

    /// `G_ℛ`.
    pub fn graph(&self) -> LabeledGraph {
        LabeledGraph::new(self.n, self.atoms.iter().copied()).expect("atoms validated")
    }
}

impl fmt::Display for RedAtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_atom_list(&self.atoms))
    }
}

/// One cell `(j, s)` of the count table for a red set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CountQuery {
    pub j: usize,
    pub s: usize,
    pub reds: RedAtomSet,
}

impl CountQuery {
    /// Requires `j ≤ n-1` and `s ≤ |ℛ|`.
    pub fn new(reds: RedAtomSet, j: usize, s: usize) -> Result<Self> {
        if j >= reds.n() {
            return Err(Error::InvalidArgument(format!(
                "rank {j} exceeds n - 1 = {}",
                reds.n() - 1
            )));
        }
        if s > reds.len() {
            return Err(Error::InvalidArgument(format!(
                "size {s} exceeds the {} red atoms",
                reds.len()
            )));
        }
        Ok(CountQuery { j, s, reds })
    }

    pub fn n(&self) -> usize {
        self.reds.n()
    }
}

/// Which computation produced a number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    ClosedForm,
    Oracle,
    Recursive,
    /// The recursion hit a ceiling and the oracle answered instead.
    Fallback,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::ClosedForm => "closed-form",
            Engine::Oracle => "oracle",
            Engine::Recursive => "recursive",
            Engine::Fallback => "fallback",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A count tagged with its engine.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counted {
    pub value: BigCount,
    pub engine: Engine,
}

/// Anything that can answer a [`CountQuery`]. Lets callers swap engines,
/// including deliberately wrong ones in tests.
pub trait CountEngine {
    fn count(&mut self, q: &CountQuery) -> Result<Counted>;
}
