//! Atomic decompositions of a partition and the count `𝔑(π)` of minimal ones.
//!
//! A set of atoms decomposes `π` when its join is `π`. Through the graph
//! correspondence the atoms are edges of `G_π`; the set is a decomposition
//! exactly when it spans every block, and a minimal one exactly when it is
//! a spanning forest. Hence `𝔑(π) = ∏ nᵢ^(nᵢ-2)` over the non-singleton
//! blocks (Cayley per block).

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::Serialize;

use crate::count::BigCount;
use crate::error::{Error, Result};
use crate::graph::{
    component_preserving_subgraphs_with, count_spanning_forests, graph_of_partition,
    spanning_forests_with, LabeledGraph,
};
use crate::limits::Limits;
use crate::partition::{format_atom_list, join_atoms, Atom, SetPartition};
use crate::unionfind::UnionFind;

/// A set of atoms together with the partition it joins to.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomicDecomposition {
    target: SetPartition,
    atoms: BTreeSet<Atom>,
}

impl AtomicDecomposition {
    /// Checks that the join of `atoms` is `target`.
    pub fn new(atoms: impl IntoIterator<Item = Atom>, target: SetPartition) -> Result<Self> {
        let atoms: BTreeSet<Atom> = atoms.into_iter().collect();
        let joined = join_atoms(target.n(), &atoms)?;
        if joined != target {
            return Err(Error::NotADecomposition(format!(
                "atoms {} join to {joined}, not {target}",
                format_atom_list(&atoms)
            )));
        }
        Ok(AtomicDecomposition { target, atoms })
    }

    /// Decomposition of whatever `atoms` join to.
    pub fn of_atoms(n: usize, atoms: impl IntoIterator<Item = Atom>) -> Result<Self> {
        let atoms: BTreeSet<Atom> = atoms.into_iter().collect();
        let target = join_atoms(n, &atoms)?;
        Ok(AtomicDecomposition { target, atoms })
    }

    pub fn n(&self) -> usize {
        self.target.n()
    }

    pub fn atoms(&self) -> &BTreeSet<Atom> {
        &self.atoms
    }

    pub fn target(&self) -> &SetPartition {
        &self.target
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// No atom can be dropped: the atom graph is a forest.
    pub fn is_minimal(&self) -> bool {
        let mut uf = UnionFind::new(self.n());
        self.atoms.iter().all(|e| uf.union(e.a(), e.b()))
    }

    pub fn record(&self) -> DecompositionRecord {
        DecompositionRecord {
            n: self.n(),
            target: self.target.to_string(),
            atoms: self.atoms.iter().copied().collect(),
            minimal: self.is_minimal(),
        }
    }

    /// Text form: atom list, then the target.
    pub fn to_text(&self) -> String {
        format!("{} => {}", format_atom_list(&self.atoms), self.target)
    }
}

/// Serialized form `{n, target, atoms, minimal}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionRecord {
    pub n: usize,
    pub target: String,
    pub atoms: Vec<Atom>,
    pub minimal: bool,
}

/// Whether the join of `atoms` equals `pi`.
pub fn is_atomic_decomposition<'a>(
    atoms: impl IntoIterator<Item = &'a Atom>,
    pi: &SetPartition,
) -> Result<bool> {
    Ok(join_atoms(pi.n(), atoms)? == *pi)
}

/// What the minimal-decomposition enumerator yields for `m_X`, whose only
/// "decomposition" is the empty set of atoms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FinestPolicy {
    /// Yield the empty decomposition (the lone empty forest).
    #[default]
    EmitEmpty,
    /// Yield nothing, matching `𝔑(m_X) = 0`.
    Skip,
}

/// `M(π)` as spanning forests of `G_π`, in lexicographic order of their
/// sorted atom lists.
pub fn minimal_decompositions(
    pi: &SetPartition,
    policy: FinestPolicy,
) -> Result<Vec<AtomicDecomposition>> {
    minimal_decompositions_with(pi, policy, Limits::global())
}

pub fn minimal_decompositions_with(
    pi: &SetPartition,
    policy: FinestPolicy,
    limits: &Limits,
) -> Result<Vec<AtomicDecomposition>> {
    if pi.is_finest() && policy == FinestPolicy::Skip {
        return Ok(Vec::new());
    }
    let forests = spanning_forests_with(&graph_of_partition(pi), limits)?;
    Ok(forests
        .into_iter()
        .map(|f| AtomicDecomposition {
            target: pi.clone(),
            atoms: f.into_iter().collect(),
        })
        .collect())
}

/// Every atomic decomposition of `pi` (minimal or not), ordered by size and
/// then lexicographically. `m_X` has none.
pub fn all_decompositions(pi: &SetPartition) -> Result<Vec<AtomicDecomposition>> {
    all_decompositions_with(pi, Limits::global())
}

pub fn all_decompositions_with(
    pi: &SetPartition,
    limits: &Limits,
) -> Result<Vec<AtomicDecomposition>> {
    if pi.is_finest() {
        return Ok(Vec::new());
    }
    let total = component_preserving_subgraphs_with(&graph_of_partition(pi), limits)?;
    if total.to_u128().is_none_or(|t| t > limits.max_forests) {
        return Err(Error::limit(
            "atomic decompositions",
            limits.max_forests,
            total.to_u128().unwrap_or(u128::MAX),
        ));
    }
    // per block: every connected spanning edge subset of the block clique
    let mut acc: Vec<Vec<Atom>> = vec![Vec::new()];
    for block in pi.blocks().iter().filter(|b| b.len() > 1) {
        let edges: Vec<Atom> = (0..block.len())
            .flat_map(|i| (i + 1..block.len()).map(move |j| (i, j)))
            .map(|(i, j)| Atom::new(block[i], block[j]).expect("distinct"))
            .collect();
        let mut local = Vec::new();
        for mask in 0u64..(1u64 << edges.len()) {
            let mut uf = UnionFind::new(pi.n());
            let picked: Vec<Atom> = (0..edges.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| edges[i])
                .collect();
            let merged = picked.iter().filter(|e| uf.union(e.a(), e.b())).count();
            if merged == block.len() - 1 {
                local.push(picked);
            }
        }
        acc = acc
            .iter()
            .flat_map(|f| {
                local.iter().map(move |l| {
                    let mut x = f.clone();
                    x.extend_from_slice(l);
                    x
                })
            })
            .collect();
    }
    let mut out: Vec<AtomicDecomposition> = acc
        .into_iter()
        .map(|a| AtomicDecomposition {
            target: pi.clone(),
            atoms: a.into_iter().collect(),
        })
        .collect();
    out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.atoms.cmp(&y.atoms)));
    Ok(out)
}

/// Streams `M(π)` one spanning forest at a time without materializing the
/// list. Each block of size `b ≥ 3` runs through its Prüfer sequences in
/// lexicographic order; the last block varies fastest.
#[derive(Debug, Clone)]
pub struct MinimalDecompositionIter {
    target: SetPartition,
    blocks: Vec<Vec<usize>>,
    /// One Prüfer sequence per block, as indices into the block.
    codes: Vec<Vec<usize>>,
    done: bool,
}

/// Lazy counterpart of [`minimal_decompositions`], in Prüfer order rather
/// than sorted order.
pub fn minimal_decompositions_lazy(
    pi: &SetPartition,
    policy: FinestPolicy,
) -> MinimalDecompositionIter {
    let blocks: Vec<Vec<usize>> = pi
        .blocks()
        .iter()
        .filter(|b| b.len() > 1)
        .cloned()
        .collect();
    let codes = blocks
        .iter()
        .map(|b| vec![0; b.len().saturating_sub(2)])
        .collect();
    MinimalDecompositionIter {
        target: pi.clone(),
        blocks,
        codes,
        done: pi.is_finest() && policy == FinestPolicy::Skip,
    }
}

/// Decodes a Prüfer sequence over `block` into the tree's edges.
fn prufer_edges(block: &[usize], code: &[usize]) -> Vec<Atom> {
    let b = block.len();
    let mut degree = vec![1usize; b];
    for &c in code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(b - 1);
    for &c in code {
        let leaf = (0..b).find(|&v| degree[v] == 1).expect("a leaf remains");
        edges.push(Atom::new(block[leaf], block[c]).expect("distinct"));
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (0..b).filter(|&v| degree[v] == 1).collect();
    edges.push(Atom::new(block[rest[0]], block[rest[1]]).expect("distinct"));
    edges
}

impl Iterator for MinimalDecompositionIter {
    type Item = AtomicDecomposition;

    fn next(&mut self) -> Option<AtomicDecomposition> {
        if self.done {
            return None;
        }
        let atoms = self
            .blocks
            .iter()
            .zip(&self.codes)
            .flat_map(|(b, c)| prufer_edges(b, c))
            .collect();
        let out = AtomicDecomposition {
            target: self.target.clone(),
            atoms,
        };
        // odometer over the flattened Prüfer digits
        self.done = true;
        'advance: for (block, code) in self.blocks.iter().zip(self.codes.iter_mut()).rev() {
            for digit in code.iter_mut().rev() {
                *digit += 1;
                if *digit < block.len() {
                    self.done = false;
                    break 'advance;
                }
                *digit = 0;
            }
        }
        Some(out)
    }
}

/// Streams every atomic decomposition of `pi`, starting from the full set
/// of atoms below `pi` and ordered by the omitted atoms read as a binary
/// number. Refuses when `pi` has 64 or more atoms below it.
pub fn all_decompositions_lazy(
    pi: &SetPartition,
) -> Result<impl Iterator<Item = AtomicDecomposition>> {
    let below: Vec<Atom> = pi.atoms_below().into_iter().collect();
    let m = below.len();
    if m >= 64 {
        return Err(Error::limit("atoms below the partition", 63u64, m as u64));
    }
    let target = pi.clone();
    let finest = pi.is_finest();
    let full = if m == 0 { 0 } else { u64::MAX >> (64 - m) };
    Ok((0..=full)
        .filter(move |_| !finest)
        .map(move |omit| {
            (0..m)
                .filter(|i| omit >> i & 1 == 0)
                .map(|i| below[i])
                .collect::<BTreeSet<Atom>>()
        })
        .filter_map(move |atoms| {
            (join_atoms(target.n(), &atoms).ok()? == target).then(|| AtomicDecomposition {
                target: target.clone(),
                atoms,
            })
        }))
}

/// How `𝔑(m_X)` is valued.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NminConvention {
    /// `𝔑(m_X) = 0`: the finest partition has no decomposition.
    #[default]
    FinestIsZero,
    /// `𝔑(m_X) = 1`: the empty product.
    EmptyProduct,
}

/// `𝔑(π) = ∏ nᵢ^(nᵢ-2)` over non-singleton blocks, with `𝔑(m_X) = 0`.
pub fn nmin_closed_form(pi: &SetPartition) -> BigCount {
    nmin_closed_form_with(pi, NminConvention::FinestIsZero)
}

pub fn nmin_closed_form_with(pi: &SetPartition, convention: NminConvention) -> BigCount {
    if pi.is_finest() && convention == NminConvention::FinestIsZero {
        return BigCount::zero();
    }
    pi.blocks()
        .iter()
        .map(Vec::len)
        .filter(|&s| s > 1)
        .map(|s| BigCount::pow(s as u64, s as u32 - 2))
        .product()
}

/// `𝔑(π)` by enumerating spanning forests of `G_π`; `m_X` maps to 0.
///
/// Refuses blocks whose edge-subset search space `C(C(b,2), b-1)` exceeds
/// `Limits::max_forests`.
pub fn nmin_oracle(pi: &SetPartition) -> Result<BigCount> {
    nmin_oracle_with(pi, Limits::global())
}

pub fn nmin_oracle_with(pi: &SetPartition, limits: &Limits) -> Result<BigCount> {
    if pi.is_finest() {
        return Ok(BigCount::zero());
    }
    for &b in pi.block_sizes().iter().filter(|&&b| b > 1) {
        let space = binomial((b * (b - 1) / 2) as u64, (b - 1) as u64);
        if space > limits.max_forests {
            return Err(Error::limit(
                "spanning tree search space",
                limits.max_forests,
                space,
            ));
        }
    }
    Ok(count_spanning_forests(&graph_of_partition(pi)))
}

fn binomial(n: u64, k: u64) -> u128 {
    let k = k.min(n - k.min(n));
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Sizes of the smallest and largest decompositions: `n - |π|` and `Σ C(nᵢ,2)`.
pub fn decomposition_size_bounds(pi: &SetPartition) -> (usize, usize) {
    (pi.rank(), pi.num_atoms_below())
}

/// Adds an atom bridging two blocks of a minimal decomposition. The result
/// is a minimal decomposition of `target ∨ bridge`, one atom larger.
pub fn extend_minimal(d: &AtomicDecomposition, bridge: Atom) -> Result<AtomicDecomposition> {
    bridge.check(d.n())?;
    if !d.is_minimal() {
        return Err(Error::NotMinimal);
    }
    if d.target.same_block(bridge.a(), bridge.b()) {
        return Err(Error::InvalidBridge {
            a: bridge.a(),
            b: bridge.b(),
        });
    }
    let mut atoms = d.atoms.clone();
    atoms.insert(bridge);
    let target = join_atoms(d.n(), &atoms)?;
    Ok(AtomicDecomposition { target, atoms })
}

/// A bijection on `{0..n-1}`, `x ↦ self.apply(x)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &y in &images {
            if y >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {y} out of range 0..{n}"
                )));
            }
            if std::mem::replace(&mut seen[y], true) {
                return Err(Error::InvalidPermutation(format!("image {y} repeated")));
            }
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (x, &y) in self.0.iter().enumerate() {
            inv[y] = x;
        }
        Permutation(inv)
    }
}

/// Renames every element by `sigma`; minimality is preserved.
pub fn relabel(d: &AtomicDecomposition, sigma: &Permutation) -> Result<AtomicDecomposition> {
    if sigma.len() != d.n() {
        return Err(Error::InvalidPermutation(format!(
            "permutation of {} elements applied to n = {}",
            sigma.len(),
            d.n()
        )));
    }
    let atoms = d
        .atoms
        .iter()
        .map(|e| Atom::new(sigma.apply(e.a()), sigma.apply(e.b())))
        .collect::<Result<BTreeSet<_>>>()?;
    Ok(AtomicDecomposition {
        target: d.target.map_elements(sigma.images())?,
        atoms,
    })
}

/// `d(π,π') = 𝔑(π) + 𝔑(π') - 2𝔑(π ∧ π')`.
pub fn metric_d(pi: &SetPartition, other: &SetPartition) -> Result<BigCount> {
    let m = pi.meet(other)?;
    let sum = nmin_closed_form(pi) + nmin_closed_form(other);
    let twice = BigCount::from(2u64) * nmin_closed_form(&m);
    // 𝔑 is isotone and the meet refines both arguments
    Ok(sum
        .checked_sub(&twice)
        .expect("isotone 𝔑 keeps d nonnegative"))
}

/// `𝔑(π∧π') + 𝔑(π∨π') - 𝔑(π) - 𝔑(π')`, under the default convention.
pub fn supermodularity_gap(pi: &SetPartition, other: &SetPartition) -> Result<BigInt> {
    supermodularity_gap_with(pi, other, NminConvention::FinestIsZero)
}

pub fn supermodularity_gap_with(
    pi: &SetPartition,
    other: &SetPartition,
    convention: NminConvention,
) -> Result<BigInt> {
    let big = |p: &SetPartition| BigInt::from(nmin_closed_form_with(p, convention).0);
    let m = pi.meet(other)?;
    let j = pi.join(other)?;
    Ok(big(&m) + big(&j) - big(pi) - big(other))
}

/// Drops the lexicographically smallest redundant atom outside `protected`.
/// `None` when every redundant atom is protected (or none is redundant).
pub fn remove_redundant_atom(
    d: &AtomicDecomposition,
    protected: &BTreeSet<Atom>,
) -> Option<AtomicDecomposition> {
    d.atoms
        .iter()
        .filter(|a| !protected.contains(a))
        .find_map(|&a| {
            let mut rest = d.atoms.clone();
            rest.remove(&a);
            let still = join_atoms(d.n(), &rest).ok()? == d.target;
            still.then(|| AtomicDecomposition {
                target: d.target.clone(),
                atoms: rest,
            })
        })
}

/// Whether `d`'s atom graph contains exactly one path between the ends of
/// every atom below the target.
pub fn has_unique_paths(d: &AtomicDecomposition) -> bool {
    let g = LabeledGraph::new(d.n(), d.atoms.iter().copied()).expect("valid atoms");
    d.target.atoms_below().iter().all(|e| {
        crate::graph::simple_paths_between_with(&g, e.a(), e.b(), None, &Limits::default())
            .map(|p| p.len() == 1)
            .unwrap_or(false)
    })
}
