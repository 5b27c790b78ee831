//! Exact combinatorics of atomic decompositions in the finite partition
//! lattice.
//!
//! A partition of `{0, .., n-1}` is a [`SetPartition`]. An [`Atom`] is the
//! rank-one partition whose only non-singleton block is a pair `{a, b}`.
//! Every partition is the join of the atoms below it, and a set of atoms
//! whose join is `π` is an *atomic decomposition* of `π`. The library
//! covers four layers:
//!
//! - [`partition`]: the lattice itself (meet, join, refinement, covers,
//!   restricted-growth-string enumeration).
//! - [`graph`]: the graph side of the theory. Decompositions of `π` are
//!   spanning subgraphs of a disjoint union of cliques, minimal ones are
//!   spanning forests.
//! - [`decomposition`] and [`factorization`]: counting minimal and
//!   arbitrary decompositions, the closed form `∏ nᵢ^(nᵢ-2)`, the
//!   injections used to prove its order properties and the monoid-style
//!   factorization reports.
//! - [`red`]: decompositions restricted to a designated set of "red"
//!   atoms, with a recursive counter checked against brute force.
//!
//! All counts are exact ([`BigCount`]).

pub mod count;
pub mod decomposition;
pub mod error;
pub mod factorization;
pub mod graph;
pub mod limits;
pub mod partition;
pub mod properties;
pub mod red;
mod unionfind;

pub use count::BigCount;
pub use decomposition::{
    AtomicDecomposition, FinestPolicy, MinimalDecompositionIter, NminConvention, Permutation,
};
pub use error::{Error, Result};
pub use factorization::{Property, PropertyReport, Witness};
pub use graph::{ContractionResult, LabeledGraph, Path};
pub use limits::Limits;
pub use partition::{Atom, GroundSet, SetPartition};
pub use red::{CountQuery, Counted, CutSet, Engine, RedAtomSet};
