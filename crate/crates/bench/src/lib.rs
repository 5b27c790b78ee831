//! Fixed inputs shared by the benchmarks.

use atomdec::{Atom, RedAtomSet, SetPartition};

/// `{0..k-1}` as one block, the rest singletons.
pub fn one_block(n: usize, k: usize) -> SetPartition {
    let mut blocks = vec![(0..k).collect::<Vec<_>>()];
    blocks.extend((k..n).map(|x| vec![x]));
    SetPartition::from_blocks(n, blocks).expect("valid blocks")
}

/// The wheel on `n` vertices: hub 0 joined to a cycle through `1..n-1`.
pub fn wheel(n: usize) -> RedAtomSet {
    let mut atoms: Vec<Atom> = (1..n).map(|v| Atom::new(0, v).expect("distinct")).collect();
    atoms.extend(
        (1..n).map(|v| Atom::new(v, if v + 1 == n { 1 } else { v + 1 }).expect("distinct")),
    );
    RedAtomSet::new(n, atoms).expect("valid atoms")
}

/// A ladder with `rungs` rungs on `2 * rungs` vertices.
pub fn ladder(rungs: usize) -> RedAtomSet {
    let n = 2 * rungs;
    let mut atoms = Vec::new();
    for r in 0..rungs {
        atoms.push(Atom::new(2 * r, 2 * r + 1).expect("distinct"));
        if r + 1 < rungs {
            atoms.push(Atom::new(2 * r, 2 * r + 2).expect("distinct"));
            atoms.push(Atom::new(2 * r + 1, 2 * r + 3).expect("distinct"));
        }
    }
    RedAtomSet::new(n, atoms).expect("valid atoms")
}
