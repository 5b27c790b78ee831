//! Labeled simple graphs and the partition ↔ graph correspondence.
//!
//! A partition `π` maps to `G_π`, the disjoint union of complete graphs on
//! its blocks. A graph maps back to the partition of its connected
//! components. Under this correspondence the atomic decompositions of `π`
//! are the component-preserving spanning subgraphs of `G_π`, and the
//! minimal ones are its spanning forests.

use std::collections::BTreeSet;
use std::fmt;
use std::fmt::Write as _;

use crate::count::BigCount;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::partition::{parse_atom_list, Atom, GroundSet, SetPartition};
use crate::unionfind::UnionFind;

/// Undirected simple graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    n: usize,
    edges: BTreeSet<Atom>,
}

impl LabeledGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = Atom>) -> Result<Self> {
        GroundSet::new(n)?;
        let edges = edges
            .into_iter()
            .map(|e| e.check(n))
            .collect::<Result<BTreeSet<_>>>()?;
        Ok(LabeledGraph { n, edges })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, [])
    }

    /// `K_n`.
    pub fn complete(n: usize) -> Result<Self> {
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| Atom::new(a, b).unwrap()));
        Self::new(n, edges)
    }

    /// Parses the edge-list text form `"0-1;1-2"` (commas also accepted).
    pub fn parse_edge_list(n: usize, s: &str) -> Result<Self> {
        Self::new(n, parse_atom_list(s)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &BTreeSet<Atom> {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, e: Atom) -> bool {
        self.edges.contains(&e)
    }

    pub fn without_edge(&self, e: Atom) -> LabeledGraph {
        let mut g = self.clone();
        g.edges.remove(&e);
        g
    }

    /// Sorted neighbour lists.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.a()].push(e.b());
            adj[e.b()].push(e.a());
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        adj
    }

    /// The partition into connected components, `π_G`.
    pub fn components(&self) -> SetPartition {
        let mut uf = UnionFind::new(self.n);
        for e in &self.edges {
            uf.union(e.a(), e.b());
        }
        SetPartition::from_labels(&uf.min_labels()).expect("n >= 1")
    }

    pub fn num_components(&self) -> usize {
        self.components().num_blocks()
    }

    /// Graphviz rendering with vertices and edges in ascending order.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.n {
            let _ = writeln!(out, "  {v};");
        }
        for e in &self.edges {
            let _ = writeln!(out, "  {} -- {};", e.a(), e.b());
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for LabeledGraph {
    /// Edge-list text form, `"0-1;1-2"`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// `G_π`: one complete graph per block.
pub fn graph_of_partition(pi: &SetPartition) -> LabeledGraph {
    LabeledGraph {
        n: pi.n(),
        edges: pi.atoms_below(),
    }
}

/// `π_G`: blocks are the connected components of `g`.
pub fn partition_of_graph(g: &LabeledGraph) -> SetPartition {
    g.components()
}

/// Sorted edge lists of each non-trivial component.
fn component_edges(g: &LabeledGraph) -> Vec<(Vec<usize>, Vec<Atom>)> {
    let comps = g.components();
    let lab = comps.labels();
    let mut out: Vec<(Vec<usize>, Vec<Atom>)> = comps
        .blocks()
        .iter()
        .map(|b| (b.clone(), Vec::new()))
        .collect();
    for e in &g.edges {
        out[lab[e.a()]].1.push(*e);
    }
    out.retain(|(vs, _)| vs.len() > 1);
    out
}

/// Spanning trees of one connected component, each as a sorted edge list,
/// in lexicographic order.
fn spanning_trees_of(n: usize, vertices: &[usize], edges: &[Atom]) -> Vec<Vec<Atom>> {
    fn go(
        i: usize,
        need: usize,
        edges: &[Atom],
        uf: &UnionFind,
        chosen: &mut Vec<Atom>,
        out: &mut Vec<Vec<Atom>>,
    ) {
        if need == 0 {
            out.push(chosen.clone());
            return;
        }
        if edges.len() - i < need {
            return;
        }
        let e = edges[i];
        let mut with = uf.clone();
        if with.union(e.a(), e.b()) {
            chosen.push(e);
            go(i + 1, need - 1, edges, &with, chosen, out);
            chosen.pop();
        }
        go(i + 1, need, edges, uf, chosen, out);
    }
    let mut out = Vec::new();
    go(
        0,
        vertices.len() - 1,
        edges,
        &UnionFind::new(n),
        &mut Vec::new(),
        &mut out,
    );
    out
}

/// Every edge subset that is acyclic and has the same components as `g`
/// (one spanning tree per component), as sorted edge lists in
/// lexicographic order. An edgeless graph yields the single empty forest.
///
/// Fails when the number of forests exceeds `Limits::max_forests`.
pub fn spanning_forests(g: &LabeledGraph) -> Result<Vec<Vec<Atom>>> {
    spanning_forests_with(g, Limits::global())
}

pub fn spanning_forests_with(g: &LabeledGraph, limits: &Limits) -> Result<Vec<Vec<Atom>>> {
    let per_comp: Vec<Vec<Vec<Atom>>> = component_edges(g)
        .iter()
        .map(|(vs, es)| spanning_trees_of(g.n, vs, es))
        .collect();
    let total: BigCount = per_comp.iter().map(|t| BigCount::from(t.len())).product();
    if total.to_u128().is_none_or(|t| t > limits.max_forests) {
        return Err(Error::limit(
            "spanning forests",
            limits.max_forests,
            total.to_u128().unwrap_or(u128::MAX),
        ));
    }
    let mut forests: Vec<Vec<Atom>> = vec![Vec::new()];
    for trees in &per_comp {
        forests = forests
            .iter()
            .flat_map(|f| {
                trees.iter().map(move |t| {
                    let mut x = f.clone();
                    x.extend_from_slice(t);
                    x
                })
            })
            .collect();
    }
    for f in &mut forests {
        f.sort_unstable();
    }
    forests.sort();
    Ok(forests)
}

/// Number of spanning forests, counted by enumerating the spanning trees of
/// every component. No closed form is involved.
pub fn count_spanning_forests(g: &LabeledGraph) -> BigCount {
    component_edges(g)
        .iter()
        .map(|(vs, es)| BigCount::from(spanning_trees_of(g.n, vs, es).len()))
        .product()
}

/// Number of edge subsets `E' ⊆ E(g)` with `π_(V,E') = π_g`, by exhaustive
/// subset scan of each component. Components with more than
/// `Limits::max_component_edges` edges are refused.
pub fn component_preserving_subgraphs(g: &LabeledGraph) -> Result<BigCount> {
    component_preserving_subgraphs_with(g, Limits::global())
}

pub fn component_preserving_subgraphs_with(g: &LabeledGraph, limits: &Limits) -> Result<BigCount> {
    let comps = component_edges(g);
    if let Some((_, es)) = comps
        .iter()
        .find(|(_, es)| es.len() > limits.max_component_edges)
    {
        return Err(Error::limit(
            "edges per component in subgraph scan",
            limits.max_component_edges as u128,
            es.len() as u128,
        ));
    }
    let mut total = BigCount::one();
    for (vs, es) in &comps {
        let need = vs.len() - 1;
        let mut count = 0u64;
        for mask in 0u64..(1u64 << es.len()) {
            if (mask.count_ones() as usize) < need {
                continue;
            }
            let mut uf = UnionFind::new(g.n);
            let mut merged = 0;
            for (i, e) in es.iter().enumerate() {
                if mask >> i & 1 == 1 && uf.union(e.a(), e.b()) {
                    merged += 1;
                }
            }
            if merged == need {
                count += 1;
            }
        }
        total = total * BigCount::from(count);
    }
    Ok(total)
}

/// Result of collapsing a vertex set into one vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionResult {
    pub graph: LabeledGraph,
    /// `vertex_map[old] = new`; surjective onto `0..graph.n()`.
    pub vertex_map: Vec<usize>,
    /// Label of the collapsed vertex.
    pub merged_label: usize,
}

/// Collapses `vertices` into a single vertex. Edges with one end inside are
/// redirected to it, edges inside become loops and are dropped, parallel
/// edges are merged. Surviving vertices are relabeled densely in their
/// original order; the merged vertex takes the position of its smallest
/// member.
pub fn contract(g: &LabeledGraph, vertices: &BTreeSet<usize>) -> Result<ContractionResult> {
    let Some(&first) = vertices.first() else {
        return Err(Error::InvalidArgument("contraction set is empty".into()));
    };
    if let Some(&v) = vertices.iter().find(|&&v| v >= g.n) {
        return Err(Error::InvalidArgument(format!(
            "vertex {v} out of range 0..{}",
            g.n
        )));
    }
    let mut vertex_map = vec![0; g.n];
    let mut next = 0;
    let mut merged_label = 0;
    for (v, slot) in vertex_map.iter_mut().enumerate() {
        if vertices.contains(&v) {
            if v == first {
                merged_label = next;
                next += 1;
            }
        } else {
            *slot = next;
            next += 1;
        }
    }
    for &v in vertices {
        vertex_map[v] = merged_label;
    }
    let edges = g
        .edges
        .iter()
        .filter_map(|e| Atom::new(vertex_map[e.a()], vertex_map[e.b()]).ok())
        .collect::<BTreeSet<_>>();
    Ok(ContractionResult {
        graph: LabeledGraph { n: next, edges },
        vertex_map,
        merged_label,
    })
}

/// A simple path, stored as its vertex sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    pub vertices: Vec<usize>,
}

impl Path {
    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Edges in traversal order.
    pub fn edges(&self) -> Vec<Atom> {
        self.vertices
            .windows(2)
            .map(|w| Atom::new(w[0], w[1]).expect("simple path"))
            .collect()
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.vertices.iter().map(usize::to_string).collect();
        f.write_str(&s.join("-"))
    }
}

/// All simple paths from `x` to `y` avoiding `exclude`, ordered by length
/// then by edge sequence.
pub fn simple_paths_between(
    g: &LabeledGraph,
    x: usize,
    y: usize,
    exclude: Option<Atom>,
) -> Result<Vec<Path>> {
    simple_paths_between_with(g, x, y, exclude, Limits::global())
}

pub fn simple_paths_between_with(
    g: &LabeledGraph,
    x: usize,
    y: usize,
    exclude: Option<Atom>,
    limits: &Limits,
) -> Result<Vec<Path>> {
    if x == y {
        return Err(Error::InvalidArgument("path endpoints coincide".into()));
    }
    if x >= g.n || y >= g.n {
        return Err(Error::InvalidArgument("path endpoint out of range".into()));
    }
    let adj = g.adjacency();
    let mut out = Vec::new();
    let mut on_path = vec![false; g.n];
    let mut stack = vec![x];
    on_path[x] = true;
    dfs_paths(
        &adj,
        y,
        exclude,
        &mut on_path,
        &mut stack,
        &mut out,
        limits.max_paths,
    )?;
    out.sort_by_cached_key(|p| (p.len(), p.edges()));
    Ok(out)
}

fn dfs_paths(
    adj: &[Vec<usize>],
    target: usize,
    exclude: Option<Atom>,
    on_path: &mut [bool],
    stack: &mut Vec<usize>,
    out: &mut Vec<Path>,
    max: usize,
) -> Result<()> {
    let u = *stack.last().expect("nonempty");
    for &v in &adj[u] {
        if on_path[v] || exclude == Atom::new(u, v).ok() {
            continue;
        }
        stack.push(v);
        if v == target {
            if out.len() == max {
                return Err(Error::limit("simple paths", max as u128, max as u128 + 1));
            }
            out.push(Path {
                vertices: stack.clone(),
            });
        } else {
            on_path[v] = true;
            dfs_paths(adj, target, exclude, on_path, stack, out, max)?;
            on_path[v] = false;
        }
        stack.pop();
    }
    Ok(())
}

/// Splits the edges into those on no cycle and the classes of cycles that
/// are chained together by shared edges.
///
/// For a simple graph the classes are exactly the edge sets of the
/// biconnected components with at least two edges; single-edge components
/// are the bridges. Classes are ordered by their smallest edge.
pub fn cycle_edge_classes(g: &LabeledGraph) -> (BTreeSet<Atom>, Vec<BTreeSet<Atom>>) {
    let edges: Vec<Atom> = g.edges.iter().copied().collect();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.n];
    for (i, e) in edges.iter().enumerate() {
        adj[e.a()].push((e.b(), i));
        adj[e.b()].push((e.a(), i));
    }
    let mut st = Tarjan {
        adj: &adj,
        disc: vec![usize::MAX; g.n],
        low: vec![0; g.n],
        time: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
    };
    for v in 0..g.n {
        if st.disc[v] == usize::MAX {
            st.visit(v, usize::MAX);
        }
    }
    let mut tree = BTreeSet::new();
    let mut classes = Vec::new();
    for block in st.blocks {
        if block.len() == 1 {
            tree.insert(edges[block[0]]);
        } else {
            classes.push(block.iter().map(|&i| edges[i]).collect::<BTreeSet<_>>());
        }
    }
    classes.sort_by_key(|c| *c.first().expect("nonempty class"));
    (tree, classes)
}

struct Tarjan<'a> {
    adj: &'a [Vec<(usize, usize)>],
    disc: Vec<usize>,
    low: Vec<usize>,
    time: usize,
    stack: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl Tarjan<'_> {
    fn visit(&mut self, u: usize, parent_edge: usize) {
        self.disc[u] = self.time;
        self.low[u] = self.time;
        self.time += 1;
        for &(v, eid) in &self.adj[u] {
            if eid == parent_edge {
                continue;
            }
            if self.disc[v] == usize::MAX {
                self.stack.push(eid);
                self.visit(v, eid);
                self.low[u] = self.low[u].min(self.low[v]);
                if self.low[v] >= self.disc[u] {
                    let mut block = Vec::new();
                    while let Some(top) = self.stack.pop() {
                        block.push(top);
                        if top == eid {
                            break;
                        }
                    }
                    self.blocks.push(block);
                }
            } else if self.disc[v] < self.disc[u] {
                self.stack.push(eid);
                self.low[u] = self.low[u].min(self.disc[v]);
            }
        }
    }
}

/// Whether removing `e` disconnects its endpoints.
pub fn is_bridge(g: &LabeledGraph, e: Atom) -> bool {
    g.has_edge(e) && !g.without_edge(e).components().same_block(e.a(), e.b())
}
