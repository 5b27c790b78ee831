//! Factorization-style reports on the monoid of distinct-atom decompositions:
//! ACCP, FFM, BFM hold; HFM, UFM and HFRL fail. Each failure carries a
//! witness that can be rechecked with [`Witness::verify`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::count::BigCount;
use crate::decomposition::is_atomic_decomposition;
use crate::error::{Error, Result};
use crate::graph::{component_preserving_subgraphs_with, graph_of_partition};
use crate::limits::Limits;
use crate::partition::{all_partitions_with, format_atom_list, Atom, SetPartition};

/// Everything `check` can be asked about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Property {
    Accp,
    Ffm,
    Bfm,
    Hfm,
    Ufm,
    Hfrl,
    /// `𝔑(π) = 0` iff `π = m_X`.
    ZeroIffFinest,
    /// `𝔑(π) = 1` iff `π ≠ m_X` and every block has at most two elements.
    OneIffPairs,
    /// `𝔑(π) = 1` forces `|π| ≥ ⌈n/2⌉`.
    OneNeedsManyBlocks,
    /// Equal block-size multisets give equal minimal-decomposition sets up to relabeling.
    TypeInvariance,
    /// Merging blocks of sizes `a`, `b` multiplies `𝔑` by at least `ab`.
    CoverGrowth,
    /// `π ⪯ π'` implies `𝔑(π) ≤ 𝔑(π')`.
    Isotone,
    /// `𝔑(π) = n^(n-2)` exactly at `g_X`.
    CayleyMaximum,
    /// `0 ≤ 𝔑 ≤ n^(n-2)`.
    Bounded,
    Supermodular,
    /// `d(π,π') = 𝔑(π) + 𝔑(π') - 2𝔑(π∧π')` is a metric.
    Metric,
}

impl Property {
    pub const ALL: [Property; 16] = [
        Property::Accp,
        Property::Ffm,
        Property::Bfm,
        Property::Hfm,
        Property::Ufm,
        Property::Hfrl,
        Property::ZeroIffFinest,
        Property::OneIffPairs,
        Property::OneNeedsManyBlocks,
        Property::TypeInvariance,
        Property::CoverGrowth,
        Property::Isotone,
        Property::CayleyMaximum,
        Property::Bounded,
        Property::Supermodular,
        Property::Metric,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Accp => "accp",
            Property::Ffm => "ffm",
            Property::Bfm => "bfm",
            Property::Hfm => "hfm",
            Property::Ufm => "ufm",
            Property::Hfrl => "hfrl",
            Property::ZeroIffFinest => "zero-iff-finest",
            Property::OneIffPairs => "one-iff-pairs",
            Property::OneNeedsManyBlocks => "one-needs-many-blocks",
            Property::TypeInvariance => "type-invariance",
            Property::CoverGrowth => "cover-growth",
            Property::Isotone => "isotone",
            Property::CayleyMaximum => "cayley-maximum",
            Property::Bounded => "bounded",
            Property::Supermodular => "supermodular",
            Property::Metric => "metric",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        // a few short aliases
        let key = match key.as_str() {
            "supermodularity" => "supermodular",
            "metric-axioms" => "metric",
            "monotone" => "isotone",
            other => other,
        };
        Property::ALL
            .into_iter()
            .find(|p| p.name() == key)
            .ok_or_else(|| Error::Parse(format!("unknown property {s:?}")))
    }
}

impl Serialize for Property {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// A counterexample, in a form a reader can recheck by hand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// Two decompositions of one partition.
    Decompositions {
        target: SetPartition,
        first: Vec<Atom>,
        second: Vec<Atom>,
    },
    /// Two partitions of equal rank with different decomposition counts.
    CountPair {
        left: SetPartition,
        right: SetPartition,
        left_count: BigCount,
        right_count: BigCount,
    },
    Partition {
        partition: SetPartition,
        detail: String,
    },
    Pair {
        left: SetPartition,
        right: SetPartition,
        detail: String,
    },
    Triple {
        a: SetPartition,
        b: SetPartition,
        c: SetPartition,
        detail: String,
    },
}

impl Witness {
    /// Rechecks the decomposition-based witnesses from scratch. Lattice
    /// property witnesses are rechecked by the property suite itself.
    pub fn verify(&self) -> Result<bool> {
        match self {
            Witness::Decompositions {
                target,
                first,
                second,
            } => Ok(first != second
                && is_atomic_decomposition(first, target)?
                && is_atomic_decomposition(second, target)?),
            Witness::CountPair {
                left,
                right,
                left_count,
                right_count,
            } => Ok(left.rank() == right.rank()
                && count_all_decompositions(left)? == *left_count
                && count_all_decompositions(right)? == *right_count
                && left_count != right_count),
            _ => Ok(true),
        }
    }
}

/// Outcome of one property check at one ground-set size.
///
/// `holds == false` comes with a witness unless the check was `skipped`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub property: Property,
    pub n: usize,
    pub holds: bool,
    /// Instances examined (partitions, pairs, triples).
    pub checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<BigCount>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl PropertyReport {
    pub fn holds(property: Property, n: usize, checked: u64) -> Self {
        PropertyReport {
            property,
            n,
            holds: true,
            checked,
            witness: None,
            bound: None,
            skipped: None,
            note: None,
        }
    }

    pub fn fails(property: Property, n: usize, checked: u64, witness: Witness) -> Self {
        PropertyReport {
            holds: false,
            witness: Some(witness),
            ..PropertyReport::holds(property, n, checked)
        }
    }

    pub fn skipped(property: Property, n: usize, reason: impl Into<String>) -> Self {
        PropertyReport {
            holds: false,
            skipped: Some(reason.into()),
            ..PropertyReport::holds(property, n, 0)
        }
    }

    pub fn with_bound(mut self, bound: impl Into<BigCount>) -> Self {
        self.bound = Some(bound.into());
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn is_skipped(&self) -> bool {
        self.skipped.is_some()
    }
}

/// Number of atomic decompositions of `π`, minimal or not. `m_X` has none.
pub fn count_all_decompositions(pi: &SetPartition) -> Result<BigCount> {
    count_all_decompositions_with(pi, Limits::global())
}

pub fn count_all_decompositions_with(pi: &SetPartition, limits: &Limits) -> Result<BigCount> {
    if pi.is_finest() {
        return Ok(BigCount::zero());
    }
    component_preserving_subgraphs_with(&graph_of_partition(pi), limits)
}

/// FFM, BFM and ACCP by a scan of `Π(n)`.
///
/// FFM reports the largest decomposition count, BFM the largest
/// decomposition size `C(n,2)`, ACCP the lattice height `n-1` (a strictly
/// ascending chain of principal ideals climbs in rank, so it stops within
/// that many steps).
pub fn check_ffm_bfm_accp(n: usize) -> Result<[PropertyReport; 3]> {
    check_ffm_bfm_accp_with(n, Limits::global())
}

pub fn check_ffm_bfm_accp_with(n: usize, limits: &Limits) -> Result<[PropertyReport; 3]> {
    let mut max_count = BigCount::zero();
    let mut max_size = 0usize;
    let mut checked = 0u64;
    let mut ffm_witness = None;
    for pi in all_partitions_with(n, limits)? {
        checked += 1;
        let count = count_all_decompositions_with(&pi, limits)?;
        let edges = pi.num_atoms_below();
        if count > BigCount::pow(2, edges as u32) && ffm_witness.is_none() {
            ffm_witness = Some(Witness::Partition {
                partition: pi.clone(),
                detail: format!("{count} decompositions exceed 2^{edges}"),
            });
        }
        max_count = max_count.max(count);
        max_size = max_size.max(edges);
    }
    let ffm = match ffm_witness {
        Some(w) => PropertyReport::fails(Property::Ffm, n, checked, w),
        None => PropertyReport::holds(Property::Ffm, n, checked),
    }
    .with_bound(max_count);
    let bfm = PropertyReport::holds(Property::Bfm, n, checked).with_bound(max_size);
    let accp = PropertyReport::holds(Property::Accp, n, checked)
        .with_bound(n - 1)
        .with_note("finite lattice: every strictly ascending chain has at most n-1 steps");
    Ok([ffm, bfm, accp])
}

fn first_big_block(pi: &SetPartition) -> Option<&[usize]> {
    pi.blocks().iter().find(|b| b.len() >= 3).map(Vec::as_slice)
}

/// Two decompositions of `pi` of different sizes: the path through each
/// block, and the path plus every remaining atom of the first block with
/// at least three elements.
pub fn hfm_witness_for(pi: &SetPartition) -> Option<Witness> {
    let big = first_big_block(pi)?;
    let short = path_decomposition(pi);
    let mut long = short.clone();
    for (i, &x) in big.iter().enumerate() {
        for &y in &big[i + 1..] {
            long.push(Atom::new(x, y).expect("distinct"));
        }
    }
    long.sort();
    long.dedup();
    Some(Witness::Decompositions {
        target: pi.clone(),
        first: short,
        second: long,
    })
}

/// Two distinct minimal decompositions of `pi`: the path through each
/// block, and the same with the first big block replaced by a star.
pub fn ufm_witness_for(pi: &SetPartition) -> Option<Witness> {
    let big = first_big_block(pi)?;
    let path = path_decomposition(pi);
    let mut star: Vec<Atom> = path
        .iter()
        .copied()
        .filter(|e| !big.contains(&e.a()))
        .collect();
    star.extend(
        big[1..]
            .iter()
            .map(|&y| Atom::new(big[0], y).expect("distinct")),
    );
    star.sort();
    Some(Witness::Decompositions {
        target: pi.clone(),
        first: path,
        second: star,
    })
}

fn path_decomposition(pi: &SetPartition) -> Vec<Atom> {
    let mut atoms: Vec<Atom> = pi
        .blocks()
        .iter()
        .flat_map(|b| {
            b.windows(2)
                .map(|w| Atom::new(w[0], w[1]).expect("distinct"))
        })
        .collect();
    atoms.sort();
    atoms
}

fn small_witness_partition(n: usize) -> Result<SetPartition> {
    let mut blocks = vec![vec![0, 1, 2]];
    blocks.extend((3..n).map(|x| vec![x]));
    SetPartition::from_blocks(n, blocks)
}

/// Half-factoriality fails for `n ≥ 3`: `{0,1,2}` is the join of two atoms
/// and of three.
pub fn hfm_counterexample(n: usize) -> Result<PropertyReport> {
    if n < 3 {
        return Ok(PropertyReport::holds(Property::Hfm, n, 0).with_note(
            "every block has at most two elements, so all decompositions have equal size",
        ));
    }
    let w = hfm_witness_for(&small_witness_partition(n)?).expect("block of size 3");
    Ok(PropertyReport::fails(Property::Hfm, n, 1, w))
}

/// Unique factorization fails for `n ≥ 3`: `{0,1,2}` is both `0-1 ∨ 1-2`
/// and `0-1 ∨ 0-2`.
pub fn ufm_counterexample(n: usize) -> Result<PropertyReport> {
    if n < 3 {
        return Ok(PropertyReport::holds(Property::Ufm, n, 0)
            .with_note("every partition has a single decomposition"));
    }
    let w = ufm_witness_for(&small_witness_partition(n)?).expect("block of size 3");
    Ok(PropertyReport::fails(Property::Ufm, n, 1, w))
}

/// Equal rank does not force equal decomposition counts. From `n = 5` on the
/// fixed witness is block sizes `1+2+2` against `1+1+3` (padded with
/// singletons); below that `Π(n)` is searched exhaustively.
pub fn hfrl_counterexample(n: usize) -> Result<PropertyReport> {
    hfrl_counterexample_with(n, Limits::global())
}

pub fn hfrl_counterexample_with(n: usize, limits: &Limits) -> Result<PropertyReport> {
    if n >= 5 {
        let pad = |mut blocks: Vec<Vec<usize>>| {
            blocks.extend((5..n).map(|x| vec![x]));
            SetPartition::from_blocks(n, blocks)
        };
        let left = pad(vec![vec![0], vec![1, 2], vec![3, 4]])?;
        let right = pad(vec![vec![0], vec![1], vec![2, 3, 4]])?;
        let left_count = count_all_decompositions_with(&left, limits)?;
        let right_count = count_all_decompositions_with(&right, limits)?;
        let w = Witness::CountPair {
            left,
            right,
            left_count,
            right_count,
        };
        return Ok(PropertyReport::fails(Property::Hfrl, n, 2, w));
    }
    // first count seen at each rank, then the first partition that disagrees
    let mut seen: BTreeMap<usize, (SetPartition, BigCount)> = BTreeMap::new();
    let mut checked = 0;
    for pi in all_partitions_with(n, limits)? {
        checked += 1;
        let c = count_all_decompositions_with(&pi, limits)?;
        match seen.get(&pi.rank()) {
            Some((first, fc)) if *fc != c => {
                let w = Witness::CountPair {
                    left: first.clone(),
                    right: pi,
                    left_count: fc.clone(),
                    right_count: c,
                };
                return Ok(PropertyReport::fails(Property::Hfrl, n, checked, w));
            }
            Some(_) => {}
            None => {
                seen.insert(pi.rank(), (pi, c));
            }
        }
    }
    Ok(PropertyReport::holds(Property::Hfrl, n, checked))
}

/// Renders a witness decomposition pair as two atom lists.
pub fn describe(w: &Witness) -> String {
    match w {
        Witness::Decompositions {
            target,
            first,
            second,
        } => {
            format!(
                "{target}: {{{}}} vs {{{}}}",
                format_atom_list(first),
                format_atom_list(second)
            )
        }
        Witness::CountPair {
            left,
            right,
            left_count,
            right_count,
        } => format!("{left} has {left_count}, {right} has {right_count}"),
        Witness::Partition { partition, detail } => format!("{partition}: {detail}"),
        Witness::Pair {
            left,
            right,
            detail,
        } => format!("{left} / {right}: {detail}"),
        Witness::Triple { a, b, c, detail } => format!("{a} / {b} / {c}: {detail}"),
    }
}
