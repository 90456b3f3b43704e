//! Reduction from k-dicolourability to k-dicolourability of digraphs with
//! `delta_min <= k`.
//!
//! Each vertex `u` becomes a gadget `u-, u+, u_1, ..., u_{k-1}` where both
//! `{u-, u_1..}` and `{u+, u_1..}` are symmetric complete, plus the arc
//! `u- -> u+`. An arc `uv` becomes `u+ -> v-`. Gadget vertices of `u` are
//! numbered `u(k+1) + 0` for `u-`, `+ 1` for `u+` and `+ 2..=k` for the
//! `u_i`.

use serde::{Deserialize, Serialize};

use crate::colouring::{is_valid, Colour, Colouring};
use crate::digraph::{Digraph, Vertex};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reduction {
    pub graph: Digraph,
    pub k: usize,
    /// `vertex_map[u] = [u-, u+, u_1, ..., u_{k-1}]`.
    pub vertex_map: Vec<Vec<Vertex>>,
}

impl Reduction {
    pub fn minus(&self, u: Vertex) -> Vertex {
        self.vertex_map[u][0]
    }

    pub fn plus(&self, u: Vertex) -> Vertex {
        self.vertex_map[u][1]
    }
}

pub fn reduce(g: &Digraph, k: usize) -> Result<Reduction> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("reduction needs k >= 2, got {k}")));
    }
    let block = k + 1;
    let vertex_map: Vec<Vec<Vertex>> = g.vertices().map(|u| (u * block..(u + 1) * block).collect()).collect();
    let mut arcs = Vec::new();
    for ids in &vertex_map {
        let (minus, plus, inner) = (ids[0], ids[1], &ids[2..]);
        for end in [minus, plus] {
            let clique: Vec<Vertex> = std::iter::once(end).chain(inner.iter().copied()).collect();
            for &a in &clique {
                for &b in &clique {
                    // The inner vertices are shared by both cliques.
                    if a != b && !(end == plus && inner.contains(&a) && inner.contains(&b)) {
                        arcs.push((a, b));
                    }
                }
            }
        }
        arcs.push((minus, plus));
    }
    for (u, v) in g.arcs() {
        arcs.push((vertex_map[u][1], vertex_map[v][0]));
    }
    let graph = Digraph::from_arcs(g.n() * block, arcs)?;
    debug_assert!(graph.delta_min() <= k);
    Ok(Reduction { graph, k, vertex_map })
}

fn check_k_colouring(g: &Digraph, col: &Colouring, k: usize) -> Result<()> {
    if !is_valid(g, col)? {
        return Err(Error::InvalidColouring("colouring has a monochromatic cycle".into()));
    }
    if col.num_colours() > k {
        return Err(Error::InvalidColouring(format!("{} colours exceed k = {k}", col.num_colours())));
    }
    Ok(())
}

/// Gives `u-` and `u+` the colour of `u` and the inner vertices the other
/// `k - 1` colours.
pub fn push_forward(g: &Digraph, r: &Reduction, col: &Colouring) -> Result<Colouring> {
    check_k_colouring(g, col, r.k)?;
    let mut colours: Vec<Colour> = vec![0; r.graph.n()];
    for u in g.vertices() {
        let c = col.colour(u);
        let ids = &r.vertex_map[u];
        colours[ids[0]] = c;
        colours[ids[1]] = c;
        let others = (1..=r.k as Colour).filter(|&x| x != c);
        for (&w, x) in ids[2..].iter().zip(others) {
            colours[w] = x;
        }
    }
    let out = Colouring::compact(colours);
    check_k_colouring(&r.graph, &out, r.k).map_err(|_| {
        Error::InternalUnreachable("pushed-forward colouring is invalid".into())
    })?;
    Ok(out)
}

/// `u` takes the colour of `u+`.
pub fn pull_back(g: &Digraph, r: &Reduction, colp: &Colouring) -> Result<Colouring> {
    check_k_colouring(&r.graph, colp, r.k)?;
    let mut colours = Vec::with_capacity(g.n());
    for u in g.vertices() {
        let (m, p) = (colp.colour(r.minus(u)), colp.colour(r.plus(u)));
        if m != p {
            return Err(Error::InternalUnreachable(format!(
                "gadget of vertex {u} has u- coloured {m} and u+ coloured {p}"
            )));
        }
        colours.push(p);
    }
    let out = Colouring::compact(colours);
    check_k_colouring(g, &out, r.k).map_err(|_| Error::InternalUnreachable("pulled-back colouring is invalid".into()))?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex_gadget() {
        let r = reduce(&Digraph::empty(1), 2).unwrap();
        let g = &r.graph;
        assert_eq!(g.n(), 3);
        assert!(g.is_digon(0, 2) && g.is_digon(1, 2));
        assert!(g.has_arc(0, 1) && !g.has_arc(1, 0));
        assert_eq!(g.arc_count(), 5);
        assert_eq!((g.out_degree(2), g.in_degree(2)), (2, 2));
        assert_eq!(g.delta_min(), 2);
    }

    #[test]
    fn single_arc() {
        let base = Digraph::from_arcs(2, [(0, 1)]).unwrap();
        let r = reduce(&base, 2).unwrap();
        assert_eq!(r.graph.n(), 6);
        assert_eq!(r.graph.arc_count(), 2 * 5 + 1);
        assert!(r.graph.has_arc(1, 3));
    }

    #[test]
    fn inner_vertices_form_one_clique() {
        let r = reduce(&Digraph::empty(1), 3).unwrap();
        // Two triangles sharing the digon {2, 3}, plus 0 -> 1.
        assert_eq!(r.graph.arc_count(), 2 + 4 + 4 + 1);
        assert!(r.graph.delta_min() <= 3);
    }

    #[test]
    fn translations() {
        let r = reduce(&Digraph::empty(1), 2).unwrap();
        let col = Colouring::new(vec![1]).unwrap();
        let fwd = push_forward(&Digraph::empty(1), &r, &col).unwrap();
        assert_eq!(fwd.colours(), &[1, 1, 2]);

        let digon = Digraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap();
        let r = reduce(&digon, 2).unwrap();
        let col = Colouring::new(vec![1, 2]).unwrap();
        let fwd = push_forward(&digon, &r, &col).unwrap();
        assert!(is_valid(&r.graph, &fwd).unwrap());
        assert!(pull_back(&digon, &r, &fwd).unwrap().same_classes(&col));
    }
}
