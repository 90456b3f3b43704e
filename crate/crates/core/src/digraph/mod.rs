//! Loop-free digraphs with digons and the structural queries the colourers use.
//!
//! Vertices are dense integers `0..n`. Every derived graph (induced
//! subdigraphs, contractions) is re-packed to dense ids and comes with the
//! mapping back to the parent's ids.

mod structure;

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use structure::{CutStructure, EdgeCut, UndirectedEdge};

pub type Vertex = usize;

/// A loop-free digraph without parallel arcs. Digons (`u -> v` and `v -> u`)
/// are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "RawDigraph", try_from = "RawDigraph")]
pub struct Digraph {
    n: usize,
    out_adj: Vec<Vec<Vertex>>,
    in_adj: Vec<Vec<Vertex>>,
    arc_set: HashSet<(Vertex, Vertex)>,
}

/// Serialized form: vertex count and the sorted arc list.
#[derive(Serialize, Deserialize)]
struct RawDigraph {
    n: usize,
    arcs: Vec<(Vertex, Vertex)>,
}

impl From<Digraph> for RawDigraph {
    fn from(g: Digraph) -> Self {
        RawDigraph { n: g.n, arcs: g.arcs().collect() }
    }
}

impl TryFrom<RawDigraph> for Digraph {
    type Error = Error;

    fn try_from(raw: RawDigraph) -> Result<Self> {
        Digraph::from_arcs(raw.n, raw.arcs)
    }
}

/// Per-vertex degree counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DegreeProfile {
    pub out_deg: usize,
    pub in_deg: usize,
    pub max_deg: usize,
    pub min_deg: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphMetrics {
    pub delta_max: usize,
    pub delta_min: usize,
    /// `Some(k)` when every vertex has out- and in-degree exactly `k`.
    pub regular: Option<usize>,
}

impl Digraph {
    /// The digraph on `n` vertices with no arcs.
    pub fn empty(n: usize) -> Self {
        Digraph {
            n,
            out_adj: vec![Vec::new(); n],
            in_adj: vec![Vec::new(); n],
            arc_set: HashSet::new(),
        }
    }

    /// Builds a digraph, rejecting loops, repeated arcs and out-of-range ids.
    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Digraph::empty(n);
        for (u, v) in arcs {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            if !g.arc_set.insert((u, v)) {
                return Err(Error::ParallelArc(u, v));
            }
            g.out_adj[u].push(v);
            g.in_adj[v].push(u);
        }
        g.sort_adjacency();
        Ok(g)
    }

    /// Like [`Digraph::from_arcs`] but silently drops loops and duplicates.
    pub(crate) fn from_arcs_lossy<I>(n: usize, arcs: I) -> Self
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Digraph::empty(n);
        for (u, v) in arcs {
            debug_assert!(u < n && v < n);
            if u != v && g.arc_set.insert((u, v)) {
                g.out_adj[u].push(v);
                g.in_adj[v].push(u);
            }
        }
        g.sort_adjacency();
        g
    }

    fn sort_adjacency(&mut self) {
        for list in self.out_adj.iter_mut().chain(self.in_adj.iter_mut()) {
            list.sort_unstable();
        }
    }

    /// The symmetric digraph of an undirected graph: every edge becomes a digon.
    pub fn symmetric<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut arcs = Vec::new();
        for (u, v) in edges {
            arcs.push((u, v));
            arcs.push((v, u));
        }
        Digraph::from_arcs(n, arcs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arc_set.len()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n
    }

    /// All arcs in ascending lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, outs)| outs.iter().map(move |&v| (u, v)))
    }

    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        self.arc_set.contains(&(u, v))
    }

    pub fn is_digon(&self, u: Vertex, v: Vertex) -> bool {
        self.has_arc(u, v) && self.has_arc(v, u)
    }

    /// True when `u` and `v` are joined by at least one arc.
    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.has_arc(u, v) || self.has_arc(v, u)
    }

    pub fn out_neighbours(&self, v: Vertex) -> &[Vertex] {
        &self.out_adj[v]
    }

    pub fn in_neighbours(&self, v: Vertex) -> &[Vertex] {
        &self.in_adj[v]
    }

    /// Neighbours in the underlying graph, ascending and without repeats.
    pub fn neighbours(&self, v: Vertex) -> Vec<Vertex> {
        let (a, b) = (&self.out_adj[v], &self.in_adj[v]);
        let mut merged = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let next = match (a.get(i), b.get(j)) {
                (Some(&x), Some(&y)) if x == y => {
                    i += 1;
                    j += 1;
                    x
                }
                (Some(&x), Some(&y)) if x < y => {
                    i += 1;
                    x
                }
                (Some(_), Some(&y)) => {
                    j += 1;
                    y
                }
                (Some(&x), None) => {
                    i += 1;
                    x
                }
                (None, Some(&y)) => {
                    j += 1;
                    y
                }
                (None, None) => unreachable!(),
            };
            merged.push(next);
        }
        merged
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.in_adj[v].len()
    }

    pub fn max_degree(&self, v: Vertex) -> usize {
        self.out_degree(v).max(self.in_degree(v))
    }

    pub fn min_degree(&self, v: Vertex) -> usize {
        self.out_degree(v).min(self.in_degree(v))
    }

    pub fn degree_profile(&self, v: Vertex) -> Result<DegreeProfile> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        let (out_deg, in_deg) = (self.out_degree(v), self.in_degree(v));
        Ok(DegreeProfile {
            out_deg,
            in_deg,
            max_deg: out_deg.max(in_deg),
            min_deg: out_deg.min(in_deg),
        })
    }

    pub fn metrics(&self) -> GraphMetrics {
        let delta_max = self.vertices().map(|v| self.max_degree(v)).max().unwrap_or(0);
        let delta_min = self.vertices().map(|v| self.min_degree(v)).max().unwrap_or(0);
        let regular = match self.n {
            0 => None,
            _ => {
                let k = self.out_degree(0);
                self.vertices()
                    .all(|v| self.out_degree(v) == k && self.in_degree(v) == k)
                    .then_some(k)
            }
        };
        GraphMetrics {
            delta_max,
            delta_min,
            regular,
        }
    }

    pub fn delta_max(&self) -> usize {
        self.metrics().delta_max
    }

    pub fn delta_min(&self) -> usize {
        self.metrics().delta_min
    }

    pub fn is_regular(&self, k: usize) -> bool {
        self.vertices()
            .all(|v| self.out_degree(v) == k && self.in_degree(v) == k)
    }

    /// Every arc lies in a digon.
    pub fn is_symmetric(&self) -> bool {
        self.arcs().all(|(u, v)| self.has_arc(v, u))
    }

    /// True iff the digraph has no directed cycle (a digon is a 2-cycle).
    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Kahn's algorithm; `None` when a directed cycle exists.
    pub fn topological_order(&self) -> Option<Vec<Vertex>> {
        let mut indeg: Vec<usize> = self.vertices().map(|v| self.in_degree(v)).collect();
        let mut queue: VecDeque<Vertex> = self.vertices().filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &v in &self.out_adj[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    queue.push_back(v);
                }
            }
        }
        (order.len() == self.n).then_some(order)
    }

    /// Connected components of the underlying graph, each sorted, ordered by
    /// their smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        self.components_avoiding(&vec![false; self.n])
    }

    /// Components of the underlying graph after deleting the vertices flagged
    /// in `removed`.
    pub fn components_avoiding(&self, removed: &[bool]) -> Vec<Vec<Vertex>> {
        let mut seen = removed.to_vec();
        let mut comps = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in self.out_adj[u].iter().chain(self.in_adj[u].iter()) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().len() == 1
    }

    /// Connectivity of the underlying graph after deleting `removed`.
    /// An empty remainder counts as connected.
    pub fn is_connected_without(&self, removed: &[Vertex]) -> bool {
        let mut flags = vec![false; self.n];
        for &v in removed {
            flags[v] = true;
        }
        self.components_avoiding(&flags).len() <= 1
    }

    /// The subdigraph induced by `vertices`, with vertex `i` of the result
    /// standing for `vertices[i]`.
    pub fn induced(&self, vertices: &[Vertex]) -> Digraph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let arcs = vertices.iter().enumerate().flat_map(|(i, &u)| {
            let index = &index;
            self.out_adj[u]
                .iter()
                .filter(move |&&v| index[v] != usize::MAX)
                .map(move |&v| (i, index[v]))
        });
        Digraph::from_arcs_lossy(vertices.len(), arcs)
    }

    /// Induced subdigraph on the complement of `removed`, together with the
    /// list of surviving original ids.
    pub fn without(&self, removed: &[Vertex]) -> (Digraph, Vec<Vertex>) {
        let mut flags = vec![false; self.n];
        for &v in removed {
            flags[v] = true;
        }
        let keep: Vec<Vertex> = self.vertices().filter(|&v| !flags[v]).collect();
        (self.induced(&keep), keep)
    }

    /// A copy with the given arcs added; arcs already present are ignored.
    pub fn with_arcs(&self, extra: &[(Vertex, Vertex)]) -> Digraph {
        Digraph::from_arcs_lossy(self.n, self.arcs().chain(extra.iter().copied()))
    }

    /// A copy with every arc between `u` and `v` (either direction) removed.
    pub fn without_links(&self, pairs: &[(Vertex, Vertex)]) -> Digraph {
        let dropped = |a: Vertex, b: Vertex| {
            pairs
                .iter()
                .any(|&(u, v)| (a == u && b == v) || (a == v && b == u))
        };
        Digraph::from_arcs_lossy(self.n, self.arcs().filter(|&(a, b)| !dropped(a, b)))
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Digraph) -> Digraph {
        let shift = self.n;
        Digraph::from_arcs_lossy(
            self.n + other.n,
            self.arcs()
                .chain(other.arcs().map(|(u, v)| (u + shift, v + shift))),
        )
    }
}
