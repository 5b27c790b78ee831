//! Small edge-weighted multigraphs for the recursion. Parallel edges are
//! stored once with their multiplicity as weight; loops never survive.

use std::collections::BTreeMap;

use crate::graph::LabeledGraph;

/// At most 64 vertices so vertex sets fit in a `u64`.
pub(crate) const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Multigraph {
    pub n: usize,
    /// Sorted `(u, v, w)` with `u < v`, `w ≥ 1`, no repeated pair.
    pub edges: Vec<(usize, usize, u64)>,
}

impl Multigraph {
    pub fn from_graph(g: &LabeledGraph) -> Self {
        Multigraph {
            n: g.n(),
            edges: g.edges().iter().map(|e| (e.a(), e.b(), 1)).collect(),
        }
    }

    fn build(n: usize, raw: impl IntoIterator<Item = (usize, usize, u64)>) -> Self {
        let mut merged: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        for (u, v, w) in raw {
            if u != v {
                *merged.entry((u.min(v), u.max(v))).or_default() += w;
            }
        }
        Multigraph {
            n,
            edges: merged.into_iter().map(|((u, v), w)| (u, v, w)).collect(),
        }
    }

    pub fn total_weight(&self) -> u64 {
        self.edges.iter().map(|e| e.2).sum()
    }

    pub fn adjacency(&self) -> Vec<Vec<(usize, u64)>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v, w) in &self.edges {
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
        adj
    }

    /// Drops vertices without edges, keeping the others in order.
    pub fn without_isolated(&self) -> Multigraph {
        let mut used = vec![false; self.n];
        for &(u, v, _) in &self.edges {
            used[u] = true;
            used[v] = true;
        }
        if used.iter().all(|&b| b) {
            return self.clone();
        }
        let mut map = vec![usize::MAX; self.n];
        let mut next = 0;
        for v in 0..self.n {
            if used[v] {
                map[v] = next;
                next += 1;
            }
        }
        Multigraph {
            n: next,
            edges: self
                .edges
                .iter()
                .map(|&(u, v, w)| (map[u], map[v], w))
                .collect(),
        }
    }

    pub fn without_edge(&self, idx: usize) -> Multigraph {
        let mut edges = self.edges.clone();
        edges.remove(idx);
        Multigraph { n: self.n, edges }
    }

    /// Total weight of edges with both ends in `set`.
    pub fn inner_weight(&self, set: u64) -> u64 {
        self.edges
            .iter()
            .filter(|&&(u, v, _)| set >> u & 1 == 1 && set >> v & 1 == 1)
            .map(|e| e.2)
            .sum()
    }

    /// Collapses `set` to a single vertex (placed at its smallest member's
    /// position); inner edges vanish, parallel edges merge.
    pub fn contract(&self, set: u64) -> Multigraph {
        let first = set.trailing_zeros() as usize;
        let mut map = vec![0; self.n];
        let mut next = 0;
        for (v, slot) in map.iter_mut().enumerate() {
            if set >> v & 1 == 1 && v != first {
                continue;
            }
            *slot = next;
            next += 1;
        }
        let merged = map[first];
        for (v, slot) in map.iter_mut().enumerate() {
            if set >> v & 1 == 1 {
                *slot = merged;
            }
        }
        Multigraph::build(
            next,
            self.edges.iter().map(|&(u, v, w)| (map[u], map[v], w)),
        )
    }

    /// Vertices reachable from `x` without using edge `skip`.
    pub fn reach(&self, adj: &[Vec<(usize, u64)>], x: usize, skip: (usize, usize)) -> u64 {
        let mut seen = 1u64 << x;
        let mut stack = vec![x];
        while let Some(u) = stack.pop() {
            for &(v, _) in &adj[u] {
                if (u.min(v), u.max(v)) == skip || seen >> v & 1 == 1 {
                    continue;
                }
                seen |= 1 << v;
                stack.push(v);
            }
        }
        seen
    }

    /// Vertex sets of the simple `x`–`y` paths with at most `max_len` edges.
    /// `None` once more than `cap` paths have been found.
    pub fn path_vertex_sets(
        &self,
        x: usize,
        y: usize,
        max_len: usize,
        cap: usize,
    ) -> Option<Vec<u64>> {
        let adj = self.adjacency();
        let mut out = Vec::new();
        let mut stack = vec![(x, 1u64 << x, 0usize, 0usize)];
        // explicit DFS over (vertex, visited set, depth, next neighbour index)
        while let Some(top) = stack.last_mut() {
            let (u, seen, depth, i) = *top;
            if i == adj[u].len() || depth == max_len {
                stack.pop();
                continue;
            }
            top.3 += 1;
            let v = adj[u][i].0;
            if seen >> v & 1 == 1 {
                continue;
            }
            if v == y {
                if out.len() == cap {
                    return None;
                }
                out.push(seen | 1 << v);
            } else if depth + 1 < max_len {
                stack.push((v, seen | 1 << v, depth + 1, 0));
            }
        }
        Some(out)
    }

    /// A relabeling that sends isomorphic graphs to the same edge list as
    /// often as cheaply possible. Colour refinement on weighted degrees,
    /// then an exhaustive search over ties when they are few.
    pub fn canonical(&self) -> Multigraph {
        let adj = self.adjacency();
        let mut color: Vec<usize> = {
            let sig: Vec<(u64, usize)> = adj
                .iter()
                .map(|nb| (nb.iter().map(|e| e.1).sum(), nb.len()))
                .collect();
            ranks(&sig)
        };
        loop {
            let sig: Vec<(usize, Vec<(usize, u64)>)> = (0..self.n)
                .map(|v| {
                    let mut nb: Vec<(usize, u64)> =
                        adj[v].iter().map(|&(u, w)| (color[u], w)).collect();
                    nb.sort_unstable();
                    (color[v], nb)
                })
                .collect();
            let next = ranks(&sig);
            let distinct = |c: &[usize]| c.iter().max().map_or(0, |m| m + 1);
            if distinct(&next) == distinct(&color) {
                break;
            }
            color = next;
        }
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&v| (color[v], v));
        for &v in &order {
            match classes.last_mut() {
                Some(c) if color[c[0]] == color[v] => c.push(v),
                _ => classes.push(vec![v]),
            }
        }
        let orderings: u64 = classes
            .iter()
            .flat_map(|c| 1..=c.len() as u64)
            .try_fold(1u64, |acc, f| acc.checked_mul(f))
            .unwrap_or(u64::MAX);
        let relabel = |order: &[usize]| {
            let mut pos = vec![0; self.n];
            for (i, &v) in order.iter().enumerate() {
                pos[v] = i;
            }
            Multigraph::build(
                self.n,
                self.edges.iter().map(|&(u, v, w)| (pos[u], pos[v], w)),
            )
        };
        if orderings > 120 {
            return relabel(&order);
        }
        let mut best: Option<Multigraph> = None;
        let mut current = Vec::with_capacity(self.n);
        each_ordering(&classes, 0, &mut current, &mut |ord| {
            let g = relabel(ord);
            if best.as_ref().is_none_or(|b| g.edges < b.edges) {
                best = Some(g);
            }
        });
        best.expect("at least one ordering")
    }
}

fn ranks<T: Ord + Clone>(sig: &[T]) -> Vec<usize> {
    let mut sorted: Vec<T> = sig.to_vec();
    sorted.sort();
    sorted.dedup();
    sig.iter()
        .map(|s| sorted.binary_search(s).expect("present"))
        .collect()
}

fn each_ordering(
    classes: &[Vec<usize>],
    k: usize,
    current: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if k == classes.len() {
        f(current);
        return;
    }
    let mut class = classes[k].clone();
    permute(&mut class, 0, &mut |perm| {
        let len = current.len();
        current.extend_from_slice(perm);
        each_ordering(classes, k + 1, current, f);
        current.truncate(len);
    });
}

fn permute(items: &mut [usize], i: usize, f: &mut impl FnMut(&[usize])) {
    if i == items.len() {
        f(items);
        return;
    }
    for k in i..items.len() {
        items.swap(i, k);
        permute(items, i + 1, f);
        items.swap(i, k);
    }
}
