//! Set partitions of `{0, .., n-1}` and the lattice operations on them.
//!
//! Partitions are kept in canonical form: elements ascending inside each
//! block, blocks ordered by their minimum. Equality and hashing use that
//! form, so two partitions compare equal exactly when they group the same
//! elements together.
//!
//! The text form joins blocks with `|` and elements with `,`, e.g.
//! `"0,1|2,3|4"`. [`SetPartition::from_str`](std::str::FromStr) accepts any
//! block or element order and canonicalizes.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::unionfind::UnionFind;

/// Size of the ground set `X = {0, .., n-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundSet(usize);

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroundSet);
        }
        Ok(GroundSet(n))
    }

    pub fn len(self) -> usize {
        self.0
    }

    pub fn is_empty(self) -> bool {
        false
    }
}

/// An unordered pair `{a, b}`, stored with `a < b`.
///
/// As a lattice element it stands for the rank-one partition whose only
/// non-singleton block is `{a, b}`. The same type doubles as an undirected
/// graph edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    a: usize,
    b: usize,
}

impl Atom {
    /// Builds the pair in either order. Fails on `a == b`.
    pub fn new(a: usize, b: usize) -> Result<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(Atom { a, b }),
            std::cmp::Ordering::Greater => Ok(Atom { a: b, b: a }),
            std::cmp::Ordering::Equal => Err(Error::InvalidAtom { a, b, n: 0 }),
        }
    }

    pub fn a(self) -> usize {
        self.a
    }

    pub fn b(self) -> usize {
        self.b
    }

    pub fn ends(self) -> (usize, usize) {
        (self.a, self.b)
    }

    pub fn contains(self, x: usize) -> bool {
        self.a == x || self.b == x
    }

    /// The endpoint that is not `x`. `x` must be an endpoint.
    pub fn other(self, x: usize) -> usize {
        if self.a == x {
            self.b
        } else {
            self.a
        }
    }

    pub fn check(self, n: usize) -> Result<Self> {
        if self.b >= n {
            return Err(Error::InvalidAtom {
                a: self.a,
                b: self.b,
                n,
            });
        }
        Ok(self)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}

impl FromStr for Atom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .trim()
            .split_once('-')
            .ok_or_else(|| Error::Parse(format!("atom `{s}` is not of the form a-b")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad label `{t}` in atom `{s}`")))
        };
        Atom::new(parse(a)?, parse(b)?).map_err(|_| Error::Parse(format!("atom `{s}` is a loop")))
    }
}

impl Serialize for Atom {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Atom {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Parses an atom list such as `"0-1,1-2"` or `"0-1;1-2"`. Empty input is
/// the empty list.
pub fn parse_atom_list(s: &str) -> Result<Vec<Atom>> {
    s.split([',', ';'])
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect()
}

/// Renders atoms as `"0-1,1-2"`.
pub fn format_atom_list<'a>(atoms: impl IntoIterator<Item = &'a Atom>) -> String {
    atoms
        .into_iter()
        .map(Atom::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// A partition of `{0, .., n-1}` in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Validates and canonicalizes `blocks`.
    pub fn from_blocks(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        GroundSet::new(n)?;
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(blocks.len());
        for mut block in blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &x in &block {
                if x >= n {
                    return Err(Error::InvalidPartition(format!(
                        "element {x} outside 0..{n}"
                    )));
                }
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidPartition(format!(
                        "element {x} appears twice"
                    )));
                }
            }
            block.sort_unstable();
            out.push(block);
        }
        if let Some(x) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!("element {x} is missing")));
        }
        out.sort_unstable_by_key(|b| b[0]);
        Ok(SetPartition { n, blocks: out })
    }

    /// Builds the partition whose blocks are the classes of equal labels.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        let n = GroundSet::new(labels.len())?.len();
        Ok(Self::from_labels_unchecked(n, labels))
    }

    fn from_labels_unchecked(n: usize, labels: &[usize]) -> Self {
        // first-seen order of labels is exactly order by block minimum
        let mut slot: Vec<(usize, usize)> = Vec::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (x, &l) in labels.iter().enumerate() {
            match slot.iter().find(|(lab, _)| *lab == l) {
                Some(&(_, i)) => blocks[i].push(x),
                None => {
                    slot.push((l, blocks.len()));
                    blocks.push(vec![x]);
                }
            }
        }
        SetPartition { n, blocks }
    }

    /// `m_X`: all singletons.
    pub fn finest(n: usize) -> Result<Self> {
        GroundSet::new(n)?;
        Ok(SetPartition {
            n,
            blocks: (0..n).map(|x| vec![x]).collect(),
        })
    }

    /// `g_X`: one block.
    pub fn coarsest(n: usize) -> Result<Self> {
        GroundSet::new(n)?;
        Ok(SetPartition {
            n,
            blocks: vec![(0..n).collect()],
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// `n - |π|`.
    pub fn rank(&self) -> usize {
        self.n - self.blocks.len()
    }

    pub fn is_finest(&self) -> bool {
        self.blocks.len() == self.n
    }

    pub fn is_coarsest(&self) -> bool {
        self.blocks.len() == 1
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// Block index of every element.
    pub fn labels(&self) -> Vec<usize> {
        let mut out = vec![0; self.n];
        for (i, b) in self.blocks.iter().enumerate() {
            for &x in b {
                out[x] = i;
            }
        }
        out
    }

    /// Whether `x` and `y` share a block.
    pub fn same_block(&self, x: usize, y: usize) -> bool {
        self.blocks.iter().any(|b| b.contains(&x) && b.contains(&y))
    }

    fn same_n(&self, other: &SetPartition) -> Result<()> {
        if self.n != other.n {
            return Err(Error::GroundSetMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// `self ⪯ other`: every block of `self` sits inside a block of `other`.
    pub fn refines(&self, other: &SetPartition) -> Result<bool> {
        self.same_n(other)?;
        let lab = other.labels();
        Ok(self
            .blocks
            .iter()
            .all(|b| b.iter().all(|&x| lab[x] == lab[b[0]])))
    }

    /// Coarsest common refinement: all nonempty pairwise block intersections.
    pub fn meet(&self, other: &SetPartition) -> Result<SetPartition> {
        self.same_n(other)?;
        let (l1, l2) = (self.labels(), other.labels());
        let k = other.blocks.len();
        let pair: Vec<usize> = (0..self.n).map(|x| l1[x] * k + l2[x]).collect();
        Ok(Self::from_labels_unchecked(self.n, &pair))
    }

    /// Finest common coarsening: transitive closure of "same block in either".
    pub fn join(&self, other: &SetPartition) -> Result<SetPartition> {
        self.same_n(other)?;
        let mut uf = UnionFind::new(self.n);
        for b in self.blocks.iter().chain(&other.blocks) {
            for &x in &b[1..] {
                uf.union(b[0], x);
            }
        }
        Ok(Self::from_labels_unchecked(self.n, &uf.min_labels()))
    }

    /// Whether `other` covers `self`: `other` arises from `self` by merging
    /// exactly two blocks.
    pub fn covers(&self, other: &SetPartition) -> Result<bool> {
        self.same_n(other)?;
        Ok(other.num_blocks() + 1 == self.num_blocks() && self.refines(other)?)
    }

    /// `𝒜(π)`: atoms `{a, b}` with `a`, `b` in a common block.
    pub fn atoms_below(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        for b in &self.blocks {
            for (i, &x) in b.iter().enumerate() {
                for &y in &b[i + 1..] {
                    out.insert(Atom { a: x, b: y });
                }
            }
        }
        out
    }

    /// `|𝒜(π)| = Σ C(nᵢ, 2)`.
    pub fn num_atoms_below(&self) -> usize {
        self.blocks
            .iter()
            .map(|b| b.len() * (b.len() - 1) / 2)
            .sum()
    }

    /// Applies the element map `sigma` (`x ↦ sigma[x]`).
    pub fn map_elements(&self, sigma: &[usize]) -> Result<SetPartition> {
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&x| sigma[x]).collect())
            .collect();
        SetPartition::from_blocks(self.n, blocks)
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            for (j, x) in b.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for SetPartition {
    type Err = Error;

    /// `n` is inferred as one past the largest label; every label below it
    /// must appear.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty partition string".into()));
        }
        let mut blocks = Vec::new();
        for raw in s.split('|') {
            let block = raw
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad element `{}`", t.trim())))
                })
                .collect::<Result<Vec<_>>>()?;
            blocks.push(block);
        }
        let n = blocks.iter().flatten().max().map_or(0, |m| m + 1);
        SetPartition::from_blocks(n, blocks).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl Serialize for SetPartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SetPartition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// The rank-one partition `π_{ab}` on `n` elements.
pub fn atom_to_partition(atom: Atom, n: usize) -> Result<SetPartition> {
    GroundSet::new(n)?;
    atom.check(n)?;
    let mut blocks: Vec<Vec<usize>> = (0..n).filter(|&x| x != atom.b).map(|x| vec![x]).collect();
    blocks[atom.a].push(atom.b);
    Ok(SetPartition { n, blocks })
}

/// Join of the atoms in `atoms` over `n` elements (`m_X` for an empty list).
pub fn join_atoms<'a>(n: usize, atoms: impl IntoIterator<Item = &'a Atom>) -> Result<SetPartition> {
    GroundSet::new(n)?;
    let mut uf = UnionFind::new(n);
    for at in atoms {
        at.check(n)?;
        uf.union(at.a, at.b);
    }
    Ok(SetPartition::from_labels_unchecked(n, &uf.min_labels()))
}

/// Every partition of `{0..n-1}` once, in lexicographic order of restricted
/// growth strings: `g_X` (all zeros) first, `m_X` (`0,1,..,n-1`) last.
///
/// Refuses `n` above `Limits::max_enum_n`.
pub fn all_partitions(n: usize) -> Result<Partitions> {
    all_partitions_with(n, Limits::global())
}

pub fn all_partitions_with(n: usize, limits: &Limits) -> Result<Partitions> {
    GroundSet::new(n)?;
    if n > limits.max_enum_n {
        return Err(Error::limit(
            "partition enumeration size n",
            limits.max_enum_n as u128,
            n as u128,
        ));
    }
    Ok(Partitions {
        rgs: vec![0; n],
        done: false,
    })
}

/// Iterator over restricted growth strings `a` with `a[0] = 0` and
/// `a[i] <= 1 + max(a[..i])`.
#[derive(Debug, Clone)]
pub struct Partitions {
    rgs: Vec<usize>,
    done: bool,
}

impl Iterator for Partitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        let n = self.rgs.len();
        let out = SetPartition::from_labels_unchecked(n, &self.rgs);
        // advance: rightmost position that can still grow
        let mut prefix_max = vec![0; n];
        for i in 1..n {
            prefix_max[i] = prefix_max[i - 1].max(self.rgs[i - 1]);
        }
        let mut i = n;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.rgs[i] <= prefix_max[i] {
                self.rgs[i] += 1;
                for v in &mut self.rgs[i + 1..] {
                    *v = 0;
                }
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> SetPartition {
        s.parse().unwrap()
    }

    #[test]
    fn finest_and_coarsest() {
        assert_eq!(SetPartition::finest(3).unwrap().to_string(), "0|1|2");
        assert_eq!(SetPartition::finest(7).unwrap().rank(), 0);
        assert_eq!(SetPartition::finest(1).unwrap().to_string(), "0");
        assert_eq!(SetPartition::coarsest(3).unwrap().to_string(), "0,1,2");
        assert_eq!(SetPartition::coarsest(7).unwrap().rank(), 6);
        assert_eq!(
            SetPartition::coarsest(1).unwrap(),
            SetPartition::finest(1).unwrap()
        );
        assert_eq!(SetPartition::finest(0), Err(Error::InvalidGroundSet));
        assert_eq!(SetPartition::coarsest(0), Err(Error::InvalidGroundSet));
    }

    #[test]
    fn rank_of_seven_element_example() {
        assert_eq!(p("0,1,2,3|4,5,6").rank(), 5);
        let at = atom_to_partition(Atom::new(2, 5).unwrap(), 7).unwrap();
        assert_eq!(at.rank(), 1);
    }

    #[test]
    fn parser_canonicalizes() {
        assert_eq!(p("4|3,2|1,0").to_string(), "0,1|2,3|4");
        assert_eq!(p(" 2 , 0 | 1 ").to_string(), "0,2|1");
        assert!(matches!(
            "0,2".parse::<SetPartition>(),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            "0,1|1".parse::<SetPartition>(),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            "0,x".parse::<SetPartition>(),
            Err(Error::Parse(_))
        ));
        assert!("".parse::<SetPartition>().is_err());
    }

    #[test]
    fn refinement() {
        let n4 = SetPartition::finest(4).unwrap();
        assert!(n4.refines(&p("0,2|1,3")).unwrap());
        assert!(p("0,1|2|3").refines(&p("0,1,2|3")).unwrap());
        assert!(!p("0,1|2,3").refines(&p("0,2|1,3")).unwrap());
        assert!(matches!(
            p("0|1").refines(&p("0|1|2")),
            Err(Error::GroundSetMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn meet_and_join_of_crossed_pairs() {
        let a = p("0,1|2,3");
        let b = p("0,2|1,3");
        assert_eq!(a.meet(&b).unwrap(), SetPartition::finest(4).unwrap());
        assert_eq!(a.join(&b).unwrap(), SetPartition::coarsest(4).unwrap());
        assert_eq!(a.meet(&a).unwrap(), a);
        assert_eq!(a.join(&a).unwrap(), a);
        assert_eq!(a.meet(&SetPartition::coarsest(4).unwrap()).unwrap(), a);
        assert_eq!(a.join(&SetPartition::finest(4).unwrap()).unwrap(), a);
        assert!(a.meet(&p("0|1|2")).is_err());
        assert!(a.join(&p("0|1|2")).is_err());
    }

    #[test]
    fn covering() {
        assert!(SetPartition::finest(2)
            .unwrap()
            .covers(&SetPartition::coarsest(2).unwrap())
            .unwrap());
        assert!(p("0,1|2|3").covers(&p("0,1|2,3")).unwrap());
        assert!(!SetPartition::finest(4)
            .unwrap()
            .covers(&SetPartition::coarsest(4).unwrap())
            .unwrap());
        // same rank gap but not a refinement
        assert!(!p("0,1|2|3").covers(&p("0,2,3|1")).unwrap());
        assert!(p("0|1").covers(&p("0|1|2")).is_err());
    }

    #[test]
    fn atoms_below_counts() {
        assert!(SetPartition::finest(5).unwrap().atoms_below().is_empty());
        let a = p("0,1,2,3|4,5,6").atoms_below();
        assert_eq!(a.len(), 9);
        assert!(a.contains(&Atom::new(4, 6).unwrap()));
        assert!(!a.contains(&Atom::new(3, 4).unwrap()));
        assert_eq!(SetPartition::coarsest(4).unwrap().atoms_below().len(), 6);
        let at = atom_to_partition(Atom::new(0, 1).unwrap(), 3).unwrap();
        assert_eq!(at.to_string(), "0,1|2");
        assert_eq!(
            at.atoms_below().into_iter().collect::<Vec<_>>(),
            vec![Atom::new(0, 1).unwrap()]
        );
    }

    #[test]
    fn atom_validation() {
        assert!(Atom::new(3, 3).is_err());
        assert_eq!(Atom::new(5, 2).unwrap().ends(), (2, 5));
        assert!(matches!(
            atom_to_partition(Atom::new(0, 3).unwrap(), 3),
            Err(Error::InvalidAtom { a: 0, b: 3, n: 3 })
        ));
        assert_eq!(parse_atom_list("0-1, 2-1;3-4").unwrap().len(), 3);
        assert!(parse_atom_list("0-0").is_err());
        assert!(parse_atom_list("").unwrap().is_empty());
    }

    /// Bell numbers by the recurrence B(m+1) = Σ C(m,k) B(k).
    fn bell(n: usize) -> u64 {
        let mut b = vec![1u64];
        for m in 0..n {
            let mut c = 1u64;
            let mut s = 0u64;
            for (k, bk) in b.iter().enumerate().take(m + 1) {
                s += c * bk;
                c = c * (m - k) as u64 / (k as u64 + 1);
            }
            b.push(s);
        }
        b[n]
    }

    #[test]
    fn bell_counts() {
        assert_eq!(bell(4), 15);
        assert_eq!(bell(7), 877);
        for n in 1..=8 {
            let all: Vec<_> = all_partitions(n).unwrap().collect();
            assert_eq!(all.len() as u64, bell(n), "n = {n}");
            let uniq: BTreeSet<_> = all.iter().cloned().collect();
            assert_eq!(uniq.len(), all.len());
        }
        assert_eq!(all_partitions(1).unwrap().count(), 1);
    }

    #[test]
    fn enumeration_order_is_rgs_lexicographic() {
        let got: Vec<String> = all_partitions(3).unwrap().map(|p| p.to_string()).collect();
        assert_eq!(got, ["0,1,2", "0,1|2", "0,2|1", "0|1,2", "0|1|2"]);
    }

    #[test]
    fn enumeration_ceiling() {
        assert!(matches!(
            all_partitions(13),
            Err(Error::ResourceLimit { .. })
        ));
        assert!(all_partitions(0).is_err());
    }

    #[test]
    fn join_of_atoms() {
        let atoms = parse_atom_list("0-1,1-2,4-5").unwrap();
        assert_eq!(join_atoms(6, &atoms).unwrap().to_string(), "0,1,2|3|4,5");
        assert_eq!(
            join_atoms(3, &[]).unwrap(),
            SetPartition::finest(3).unwrap()
        );
        assert!(join_atoms(3, &parse_atom_list("0-3").unwrap()).is_err());
    }
}
