//! Queries on the underlying undirected graph: BFS orderings, blocks and
//! cutvertices, small edge cuts, and pair contraction.

use serde::{Deserialize, Serialize};

use super::{Digraph, Vertex};
use crate::error::{Error, Result};

/// An edge of the underlying graph, stored with `0 <= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct UndirectedEdge(pub Vertex, pub Vertex);

impl UndirectedEdge {
    pub fn new(a: Vertex, b: Vertex) -> Self {
        if a <= b {
            UndirectedEdge(a, b)
        } else {
            UndirectedEdge(b, a)
        }
    }
}

/// Articulation points and blocks of the underlying graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutStructure {
    pub cut_vertices: Vec<Vertex>,
    /// Vertex sets of the blocks, each sorted; the list is sorted too.
    pub blocks: Vec<Vec<Vertex>>,
    /// `(block index, cutvertex)` incidences of the block-cut tree.
    pub block_tree_adjacency: Vec<(usize, Vertex)>,
}

/// A small edge cut of the underlying graph. A bridge is reported on its own
/// rather than padded into a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeCut {
    Bridge(UndirectedEdge),
    Pair(UndirectedEdge, UndirectedEdge),
}

const UNSEEN: usize = usize::MAX;

impl Digraph {
    fn underlying_adjacency(&self) -> Vec<Vec<Vertex>> {
        self.vertices().map(|v| self.neighbours(v)).collect()
    }

    /// Breadth-first order of the underlying graph from `start`, each layer
    /// listed in ascending vertex id.
    pub fn bfs_order(&self, start: Vertex) -> Result<Vec<Vertex>> {
        if start >= self.n() {
            return Err(Error::VertexOutOfRange { vertex: start, n: self.n() });
        }
        let mut seen = vec![false; self.n()];
        seen[start] = true;
        let mut order = vec![start];
        let mut layer = vec![start];
        while !layer.is_empty() {
            let mut next = Vec::new();
            for &u in &layer {
                for w in self.neighbours(u) {
                    if !seen[w] {
                        seen[w] = true;
                        next.push(w);
                    }
                }
            }
            next.sort_unstable();
            order.extend_from_slice(&next);
            layer = next;
        }
        if order.len() != self.n() {
            return Err(Error::Disconnected);
        }
        Ok(order)
    }

    /// Blocks and cutvertices of the underlying graph (Hopcroft-Tarjan).
    pub fn cut_structure(&self) -> Result<CutStructure> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let adj = self.underlying_adjacency();
        let n = self.n();
        let mut disc = vec![UNSEEN; n];
        let mut low = vec![0; n];
        let mut parent = vec![UNSEEN; n];
        let mut is_cut = vec![false; n];
        let mut blocks: Vec<Vec<Vertex>> = Vec::new();
        let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();
        let mut time = 0;

        let root = 0;
        disc[root] = time;
        low[root] = time;
        time += 1;
        if adj[root].is_empty() {
            blocks.push(vec![root]);
        }
        let mut root_children = 0;
        let mut stack: Vec<(Vertex, usize)> = vec![(root, 0)];
        while let Some(top) = stack.last_mut() {
            let v = top.0;
            if top.1 < adj[v].len() {
                let w = adj[v][top.1];
                top.1 += 1;
                if disc[w] == UNSEEN {
                    parent[w] = v;
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    edge_stack.push((v, w));
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, 0));
                } else if w != parent[v] && disc[w] < disc[v] {
                    low[v] = low[v].min(disc[w]);
                    edge_stack.push((v, w));
                }
            } else {
                stack.pop();
                if let Some(&(p, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        if p != root {
                            is_cut[p] = true;
                        }
                        let mut block = Vec::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            block.push(a);
                            block.push(b);
                            if (a, b) == (p, v) {
                                break;
                            }
                        }
                        block.sort_unstable();
                        block.dedup();
                        blocks.push(block);
                    }
                }
            }
        }
        if root_children >= 2 {
            is_cut[root] = true;
        }

        blocks.sort();
        let cut_vertices: Vec<Vertex> = self.vertices().filter(|&v| is_cut[v]).collect();
        let block_tree_adjacency = blocks
            .iter()
            .enumerate()
            .flat_map(|(i, b)| {
                let is_cut = &is_cut;
                b.iter().filter(move |&&v| is_cut[v]).map(move |&v| (i, v))
            })
            .collect();
        Ok(CutStructure {
            cut_vertices,
            blocks,
            block_tree_adjacency,
        })
    }

    /// True iff deleting `u` and `v` leaves at least two components.
    pub fn is_separating_pair(&self, u: Vertex, v: Vertex) -> bool {
        let mut removed = vec![false; self.n()];
        removed[u] = true;
        removed[v] = true;
        self.components_avoiding(&removed).len() >= 2
    }

    /// Bridges of the underlying graph, optionally pretending `skip` is absent.
    pub fn bridges(&self, skip: Option<UndirectedEdge>) -> Vec<UndirectedEdge> {
        let adj = self.underlying_adjacency();
        let n = self.n();
        let mut disc = vec![UNSEEN; n];
        let mut low = vec![0; n];
        let mut parent = vec![UNSEEN; n];
        let mut time = 0;
        let mut found = Vec::new();
        let skipped = |a: Vertex, b: Vertex| skip == Some(UndirectedEdge::new(a, b));

        for root in self.vertices() {
            if disc[root] != UNSEEN {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            let mut stack: Vec<(Vertex, usize)> = vec![(root, 0)];
            while let Some(top) = stack.last_mut() {
                let v = top.0;
                if top.1 < adj[v].len() {
                    let w = adj[v][top.1];
                    top.1 += 1;
                    if skipped(v, w) {
                        continue;
                    }
                    if disc[w] == UNSEEN {
                        parent[w] = v;
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        stack.push((w, 0));
                    } else if w != parent[v] {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _)) = stack.last() {
                        low[p] = low[p].min(low[v]);
                        if low[v] > disc[p] {
                            found.push(UndirectedEdge::new(p, v));
                        }
                    }
                }
            }
        }
        found.sort_unstable();
        found
    }

    /// All edges of the underlying graph, sorted.
    pub fn underlying_edges(&self) -> Vec<UndirectedEdge> {
        let mut edges: Vec<UndirectedEdge> = self
            .arcs()
            .map(|(u, v)| UndirectedEdge::new(u, v))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        edges
    }

    /// A bridge if one exists, otherwise a pair of edges whose joint removal
    /// disconnects the underlying graph, otherwise `None`.
    pub fn find_two_edge_cut(&self) -> Option<EdgeCut> {
        if let Some(&b) = self.bridges(None).first() {
            return Some(EdgeCut::Bridge(b));
        }
        for e in self.underlying_edges() {
            if let Some(&f) = self.bridges(Some(e)).first() {
                return Some(EdgeCut::Pair(e.min(f), e.max(f)));
            }
        }
        None
    }

    /// Identifies `u` and `v`. The merged vertex takes the image of `u`; the
    /// remaining ids are re-packed. Returns the contracted digraph and the
    /// old-to-new id map.
    pub fn contract_pair(&self, u: Vertex, v: Vertex) -> Result<(Digraph, Vec<Vertex>)> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(Error::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(Error::Precondition("cannot contract a vertex with itself".into()));
        }
        let mut map: Vec<Vertex> = (0..n).map(|w| if w > v { w - 1 } else { w }).collect();
        map[v] = map[u];
        let g = Digraph::from_arcs_lossy(n - 1, self.arcs().map(|(a, b)| (map[a], map[b])));
        Ok((g, map))
    }
}
