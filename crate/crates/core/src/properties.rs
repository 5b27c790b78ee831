//! Exhaustive checks of the order-theoretic properties of `𝔑` over `Π(n)`.
//!
//! Every checker scans the whole lattice (pairs or triples where needed) and
//! returns a [`PropertyReport`] whose witness is the first violation met in
//! enumeration order. Violation totals go into the report's note.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;

use crate::count::BigCount;
use crate::decomposition::{
    minimal_decompositions_with, nmin_closed_form_with, relabel, FinestPolicy, NminConvention,
    Permutation,
};
use crate::error::Result;
use crate::factorization::{
    check_ffm_bfm_accp_with, hfm_counterexample, hfrl_counterexample_with, ufm_counterexample,
    Property, PropertyReport, Witness,
};
use crate::limits::Limits;
use crate::partition::{all_partitions_with, SetPartition};

/// Largest `n` each kind of scan accepts.
pub const MAX_SINGLE_N: usize = 10;
pub const MAX_PAIR_N: usize = 6;
pub const MAX_TRIPLE_N: usize = 5;
pub const MAX_MONOID_N: usize = 6;

#[derive(Debug, Clone, Copy, Default)]
pub struct CheckOptions {
    pub convention: NminConvention,
}

pub fn check(property: Property, n: usize) -> Result<PropertyReport> {
    check_with(property, n, CheckOptions::default(), Limits::global())
}

pub fn check_with(
    property: Property,
    n: usize,
    opts: CheckOptions,
    limits: &Limits,
) -> Result<PropertyReport> {
    let capped = |c: usize| c.min(limits.max_enum_n);
    let ceiling = match property {
        Property::Hfm | Property::Ufm => usize::MAX,
        Property::Hfrl if n >= 5 => usize::MAX,
        Property::Accp
        | Property::Ffm
        | Property::Bfm
        | Property::TypeInvariance
        | Property::Hfrl => capped(MAX_MONOID_N),
        Property::CoverGrowth | Property::Isotone | Property::Supermodular => capped(MAX_PAIR_N),
        Property::Metric => capped(MAX_TRIPLE_N),
        _ => capped(MAX_SINGLE_N),
    };
    if n == 0 {
        return Ok(PropertyReport::skipped(
            property,
            n,
            "the ground set must be nonempty",
        ));
    }
    if n > ceiling {
        return Ok(PropertyReport::skipped(
            property,
            n,
            format!("exhaustive scan limited to n <= {ceiling}"),
        ));
    }
    let nv = |pi: &SetPartition| BigInt::from(nmin_closed_form_with(pi, opts.convention).0);
    match property {
        Property::Accp | Property::Ffm | Property::Bfm => {
            let [ffm, bfm, accp] = check_ffm_bfm_accp_with(n, limits)?;
            Ok(match property {
                Property::Ffm => ffm,
                Property::Bfm => bfm,
                _ => accp,
            })
        }
        Property::Hfm => hfm_counterexample(n),
        Property::Ufm => ufm_counterexample(n),
        Property::Hfrl => hfrl_counterexample_with(n, limits),
        Property::ZeroIffFinest => single(property, n, limits, |pi| {
            let zero = nv(pi) == BigInt::from(0);
            (zero != pi.is_finest()).then(|| format!("N = {}", nv(pi)))
        }),
        Property::OneIffPairs => single(property, n, limits, |pi| {
            let one = nv(pi) == BigInt::from(1);
            let pairs = !pi.is_finest() && pi.block_sizes().iter().all(|&s| s <= 2);
            (one != pairs).then(|| format!("N = {}", nv(pi)))
        }),
        Property::OneNeedsManyBlocks => single(property, n, limits, |pi| {
            let bad = nv(pi) == BigInt::from(1) && pi.num_blocks() < n.div_ceil(2);
            bad.then(|| format!("N = 1 with {} blocks", pi.num_blocks()))
        }),
        Property::CayleyMaximum | Property::Bounded if n < 2 => Ok(PropertyReport::skipped(
            property,
            n,
            "n^(n-2) is not an integer below n = 2",
        )),
        Property::CayleyMaximum => {
            let top = BigInt::from(BigCount::pow(n as u64, n as u32 - 2).0);
            single(property, n, limits, |pi| {
                ((nv(pi) == top) != pi.is_coarsest()).then(|| format!("N = {}", nv(pi)))
            })
        }
        Property::Bounded => {
            let top = BigInt::from(BigCount::pow(n as u64, n as u32 - 2).0);
            single(property, n, limits, |pi| {
                let v = nv(pi);
                (v < BigInt::from(0) || v > top).then(|| format!("N = {v}"))
            })
        }
        Property::TypeInvariance => type_invariance(n, limits),
        Property::CoverGrowth => cover_growth(n, opts, limits),
        Property::Isotone => pairs(property, n, limits, |a, b| {
            let bad = a.refines(b).expect("same n") && nv(a) > nv(b);
            bad.then(|| format!("N = {} above N = {}", nv(a), nv(b)))
        }),
        Property::Supermodular => pairs(property, n, limits, |a, b| {
            let gap =
                nv(&a.meet(b).expect("same n")) + nv(&a.join(b).expect("same n")) - nv(a) - nv(b);
            (gap < BigInt::from(0)).then(|| format!("gap {gap}"))
        }),
        Property::Metric => {
            let parts: Vec<SetPartition> = all_partitions_with(n, limits)?.collect();
            let m = parts.len();
            let triples =
                (0..m).flat_map(|i| (0..m).flat_map(move |j| (0..m).map(move |k| (i, j, k))));
            Ok(metric_triples(n, &parts, triples, opts.convention))
        }
    }
}

fn single(
    property: Property,
    n: usize,
    limits: &Limits,
    mut violation: impl FnMut(&SetPartition) -> Option<String>,
) -> Result<PropertyReport> {
    let mut checked = 0;
    let mut bad = 0u64;
    let mut witness = None;
    for pi in all_partitions_with(n, limits)? {
        checked += 1;
        if let Some(detail) = violation(&pi) {
            bad += 1;
            witness.get_or_insert(Witness::Partition {
                partition: pi,
                detail,
            });
        }
    }
    Ok(finish(property, n, checked, witness, bad, "partitions"))
}

fn pairs(
    property: Property,
    n: usize,
    limits: &Limits,
    mut violation: impl FnMut(&SetPartition, &SetPartition) -> Option<String>,
) -> Result<PropertyReport> {
    let parts: Vec<SetPartition> = all_partitions_with(n, limits)?.collect();
    let mut checked = 0;
    let mut bad = 0u64;
    let mut witness = None;
    for a in &parts {
        for b in &parts {
            checked += 1;
            if let Some(detail) = violation(a, b) {
                bad += 1;
                witness.get_or_insert_with(|| Witness::Pair {
                    left: a.clone(),
                    right: b.clone(),
                    detail,
                });
            }
        }
    }
    Ok(finish(property, n, checked, witness, bad, "ordered pairs"))
}

fn finish(
    property: Property,
    n: usize,
    checked: u64,
    witness: Option<Witness>,
    bad: u64,
    unit: &str,
) -> PropertyReport {
    match witness {
        None => PropertyReport::holds(property, n, checked),
        Some(w) => PropertyReport::fails(property, n, checked, w)
            .with_note(format!("{bad} violating {unit}")),
    }
}

/// Relabeling carries `M(π)` onto `M(π')` whenever the block-size multisets
/// agree. Each partition is compared with the first of its type.
fn type_invariance(n: usize, limits: &Limits) -> Result<PropertyReport> {
    let mut reps: BTreeMap<Vec<usize>, (SetPartition, BTreeSet<Vec<crate::partition::Atom>>)> =
        BTreeMap::new();
    let mut checked = 0;
    let mut bad = 0;
    let mut witness = None;
    for pi in all_partitions_with(n, limits)? {
        checked += 1;
        let mut ty = pi.block_sizes();
        ty.sort_unstable();
        let mine = minimal_decompositions_with(&pi, FinestPolicy::EmitEmpty, limits)?;
        let Some((rep, rep_set)) = reps.get(&ty) else {
            let set = mine
                .iter()
                .map(|d| d.atoms().iter().copied().collect())
                .collect();
            reps.insert(ty, (pi, set));
            continue;
        };
        let sigma = carry(&pi, rep);
        let image: BTreeSet<Vec<_>> = mine
            .iter()
            .map(|d| relabel(d, &sigma).map(|r| r.atoms().iter().copied().collect()))
            .collect::<Result<_>>()?;
        if image != *rep_set || mine.len() != rep_set.len() {
            bad += 1;
            witness.get_or_insert_with(|| Witness::Pair {
                left: pi.clone(),
                right: rep.clone(),
                detail: format!("{} vs {} minimal decompositions", mine.len(), rep_set.len()),
            });
        }
    }
    Ok(finish(
        Property::TypeInvariance,
        n,
        checked,
        witness,
        bad,
        "partitions",
    ))
}

/// A permutation taking the blocks of `from` onto equally sized blocks of `to`.
fn carry(from: &SetPartition, to: &SetPartition) -> Permutation {
    let by_size = |p: &SetPartition| {
        let mut bs: Vec<Vec<usize>> = p.blocks().to_vec();
        bs.sort_by_key(|b| std::cmp::Reverse(b.len()));
        bs
    };
    let (src, dst) = (by_size(from), by_size(to));
    let mut images = vec![0; from.n()];
    for (a, b) in src.iter().zip(&dst) {
        for (&x, &y) in a.iter().zip(b) {
            images[x] = y;
        }
    }
    Permutation::new(images).expect("blocks match in size")
}

/// For every cover `π ⋖ π'` merging blocks of sizes `a` and `b`:
/// `𝔑(π') ≥ ab·𝔑(π)`, with equality iff `a = b = 1`. The equality clause is
/// not asserted at `π = m_X`, where `𝔑(π) = 0` makes the right side vanish
/// for every merge.
fn cover_growth(n: usize, opts: CheckOptions, limits: &Limits) -> Result<PropertyReport> {
    let parts: Vec<SetPartition> = all_partitions_with(n, limits)?.collect();
    let nv: HashMap<&SetPartition, BigInt> = parts
        .iter()
        .map(|p| (p, BigInt::from(nmin_closed_form_with(p, opts.convention).0)))
        .collect();
    let mut checked = 0;
    let mut bad = 0;
    let mut witness = None;
    for lo in &parts {
        for (i, bi) in lo.blocks().iter().enumerate() {
            for bj in &lo.blocks()[i + 1..] {
                checked += 1;
                let mut blocks: Vec<Vec<usize>> = lo.blocks().to_vec();
                blocks[i].extend_from_slice(bj);
                blocks.retain(|b| b != bj);
                let hi = SetPartition::from_blocks(n, blocks)?;
                let (a, b) = (bi.len(), bj.len());
                let lhs = &nv[&hi];
                let rhs = BigInt::from(a * b) * &nv[lo];
                let grows = *lhs >= rhs;
                let equal_ok = lo.is_finest() || ((*lhs == rhs) == (a == 1 && b == 1));
                if !(grows && equal_ok) {
                    bad += 1;
                    witness.get_or_insert_with(|| Witness::Pair {
                        left: lo.clone(),
                        right: hi.clone(),
                        detail: format!("N(upper) = {lhs}, {a}*{b}*N(lower) = {rhs}"),
                    });
                }
            }
        }
    }
    Ok(finish(
        Property::CoverGrowth,
        n,
        checked,
        witness,
        bad,
        "covering pairs",
    ))
}

/// Metric axioms for `d` over the given index triples of `parts`: identity
/// of indiscernibles and symmetry on `(a,b)`, the triangle inequality on
/// `(a,b,c)`. Each triple is one check.
pub fn metric_triples(
    n: usize,
    parts: &[SetPartition],
    triples: impl IntoIterator<Item = (usize, usize, usize)>,
    convention: NminConvention,
) -> PropertyReport {
    let nv: Vec<BigInt> = parts
        .iter()
        .map(|p| BigInt::from(nmin_closed_form_with(p, convention).0))
        .collect();
    let mut dist: HashMap<(usize, usize), BigInt> = HashMap::new();
    let mut d = |i: usize, j: usize| -> BigInt {
        dist.entry((i, j))
            .or_insert_with(|| {
                let m = parts[i].meet(&parts[j]).expect("same n");
                &nv[i] + &nv[j] - 2 * BigInt::from(nmin_closed_form_with(&m, convention).0)
            })
            .clone()
    };
    let (mut checked, mut identity, mut symmetry, mut triangle) = (0u64, 0u64, 0u64, 0u64);
    let mut witness = None;
    let mut seen_pairs = BTreeSet::new();
    for (i, j, k) in triples {
        checked += 1;
        if seen_pairs.insert((i, j)) {
            let dij = d(i, j);
            if (dij == BigInt::from(0)) != (parts[i] == parts[j]) || dij < BigInt::from(0) {
                identity += 1;
                witness.get_or_insert_with(|| Witness::Pair {
                    left: parts[i].clone(),
                    right: parts[j].clone(),
                    detail: format!("d = {dij} for distinct partitions"),
                });
            }
            if dij != d(j, i) {
                symmetry += 1;
                witness.get_or_insert_with(|| Witness::Pair {
                    left: parts[i].clone(),
                    right: parts[j].clone(),
                    detail: "d is not symmetric".into(),
                });
            }
        }
        let (ik, ij, jk) = (d(i, k), d(i, j), d(j, k));
        if ik > &ij + &jk {
            triangle += 1;
            witness.get_or_insert_with(|| Witness::Triple {
                a: parts[i].clone(),
                b: parts[j].clone(),
                c: parts[k].clone(),
                detail: format!("d(a,c) = {ik} > d(a,b) + d(b,c) = {ij} + {jk}"),
            });
        }
    }
    match witness {
        None => PropertyReport::holds(Property::Metric, n, checked),
        Some(w) => PropertyReport::fails(Property::Metric, n, checked, w).with_note(format!(
            "identity: {identity} violating ordered pairs, symmetry: {symmetry}, triangle: {triangle} violating triples"
        )),
    }
}
