//! Greedy colouring along reverse breadth-first orders, with the
//! decomposition steps at cutvertices and 2-edge-cuts.

use serde::{Deserialize, Serialize};

use crate::colouring::{greedy_dicolour, is_valid, Colour, Colouring};
use crate::digraph::{Digraph, EdgeCut, Vertex};
use crate::error::{Error, Result};
use crate::exceptions::classify;
use crate::{require_connected, BrooksResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Out,
    In,
}

/// `u` and `v` are both out- (or both in-) neighbours of `x`, they do not
/// form a digon, and deleting them leaves the digraph connected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LovaszTriple {
    pub x: Vertex,
    pub u: Vertex,
    pub v: Vertex,
    pub side: Side,
}

/// Colours a connected digraph that is not `delta_max`-regular with at most
/// `delta_max` colours: greedy along the reverse of a BFS order rooted at a
/// vertex of small mindegree.
pub fn colour_nonregular(g: &Digraph) -> Result<Colouring> {
    require_connected(g)?;
    let k = g.delta_max();
    let root = g
        .vertices()
        .find(|&v| g.min_degree(v) < k)
        .ok_or_else(|| Error::Precondition(format!("digraph is {k}-regular")))?;
    let mut order = g.bfs_order(root)?;
    order.reverse();
    greedy_dicolour(g, &order)
}

/// Scans `x` ascending, out-pairs before in-pairs, pairs `(u, v)` ascending.
pub fn find_lovasz_triple(g: &Digraph) -> Option<LovaszTriple> {
    for x in g.vertices() {
        for side in [Side::Out, Side::In] {
            let nbrs = match side {
                Side::Out => g.out_neighbours(x),
                Side::In => g.in_neighbours(x),
            };
            for (i, &u) in nbrs.iter().enumerate() {
                for &v in &nbrs[i + 1..] {
                    if !g.is_digon(u, v) && g.is_connected_without(&[u, v]) {
                        return Some(LovaszTriple { x, u, v, side });
                    }
                }
            }
        }
    }
    None
}

/// Greedy colouring in the order `u, v`, then the reverse of a BFS of
/// `G - {u, v}` from `x`.
pub fn colour_with_triple(g: &Digraph, t: LovaszTriple) -> Result<Colouring> {
    let LovaszTriple { x, u, v, side } = t;
    let n = g.n();
    for w in [x, u, v] {
        if w >= n {
            return Err(Error::VertexOutOfRange { vertex: w, n });
        }
    }
    let linked = match side {
        Side::Out => g.has_arc(x, u) && g.has_arc(x, v),
        Side::In => g.has_arc(u, x) && g.has_arc(v, x),
    };
    if u == v || !linked || g.is_digon(u, v) {
        return Err(Error::Precondition(format!("{t:?} is not a Lovász triple")));
    }
    let (rest, keep) = g.without(&[u, v]);
    let root = keep.iter().position(|&w| w == x).expect("x survives");
    let bfs = rest.bfs_order(root)?;
    let mut order = vec![u, v];
    order.extend(bfs.iter().rev().map(|&i| keep[i]));
    greedy_dicolour(g, &order)
}

/// The full cascade. Returns a certificate exactly for members of
/// `B_{delta_max}` and otherwise a colouring with at most `delta_max` colours.
pub fn lovasz_colour(g: &Digraph) -> Result<BrooksResult> {
    require_connected(g)?;
    let k = g.delta_max();
    if k <= 1 {
        return Ok(match classify(g) {
            Some(cert) => BrooksResult::Exception(cert),
            None => BrooksResult::Coloured(Colouring::new(vec![1; g.n()])?),
        });
    }
    if let Some(cert) = classify(g) {
        return Ok(BrooksResult::Exception(cert));
    }
    if !g.is_regular(k) {
        return Ok(BrooksResult::Coloured(colour_nonregular(g)?));
    }
    let cuts = g.cut_structure()?;
    if let Some(&w) = cuts.cut_vertices.first() {
        return split_at_cutvertex(g, w, k).map(BrooksResult::Coloured);
    }
    if let Some(cut) = g.find_two_edge_cut() {
        if let Some(col) = split_at_edge_cut(g, cut, k)? {
            return Ok(BrooksResult::Coloured(col));
        }
        log::debug!("no relabelling across {cut:?} works; trying a triple");
    }
    if let Some(t) = find_lovasz_triple(g) {
        let col = colour_with_triple(g, t)?;
        return checked(g, col, k, "triple colouring").map(BrooksResult::Coloured);
    }
    Err(Error::InternalUnreachable(format!(
        "{k}-regular 2-connected digraph on {} vertices with no 2-edge-cut and no triple",
        g.n()
    )))
}

fn checked(g: &Digraph, col: Colouring, k: usize, step: &str) -> Result<Colouring> {
    if col.num_colours() > k || !is_valid(g, &col)? {
        return Err(Error::InternalUnreachable(format!(
            "{step} produced an invalid colouring or more than {k} colours"
        )));
    }
    Ok(col)
}

/// Colours an induced piece with at most `k` colours; pieces that are
/// exceptions of a lower level get their optimal colouring.
fn colour_piece(g: &Digraph, piece: &[Vertex], k: usize) -> Result<Vec<Colour>> {
    let sub = g.induced(piece);
    let col = lovasz_colour(&sub)?.into_colouring(sub.n());
    if col.num_colours() > k {
        return Err(Error::InternalUnreachable(format!(
            "piece of a {k}-regular digraph needs {} colours",
            col.num_colours()
        )));
    }
    Ok(col.into_colours())
}

fn split_at_cutvertex(g: &Digraph, w: Vertex, k: usize) -> Result<Colouring> {
    let mut removed = vec![false; g.n()];
    removed[w] = true;
    let mut colours: Vec<Colour> = vec![0; g.n()];
    for comp in g.components_avoiding(&removed) {
        let mut side = comp;
        side.push(w);
        side.sort_unstable();
        let mut local = colour_piece(g, &side, k)?;
        let at_w = local[side.binary_search(&w).unwrap()];
        if colours[w] != 0 {
            swap_colours(&mut local, at_w, colours[w]);
        }
        for (i, &v) in side.iter().enumerate() {
            colours[v] = local[i];
        }
    }
    checked(g, Colouring::compact(colours), k, "cutvertex merge")
}

/// Colours both sides of the cut and relabels side B so that no cycle
/// through the cut edges is monochromatic. When a cut edge is a digon this
/// may be impossible with `k = 2`; then `None` is returned and the caller
/// moves on.
fn split_at_edge_cut(g: &Digraph, cut: EdgeCut, k: usize) -> Result<Option<Colouring>> {
    let edges = match cut {
        EdgeCut::Bridge(e) => vec![e],
        EdgeCut::Pair(e, f) => vec![e, f],
    };
    let pairs: Vec<(Vertex, Vertex)> = edges.iter().map(|e| (e.0, e.1)).collect();
    let parts = g.without_links(&pairs).components();
    if parts.len() != 2 {
        return Err(Error::InternalUnreachable("edge cut does not split in two".into()));
    }
    let mut colours: Vec<Colour> = vec![0; g.n()];
    for part in &parts {
        let local = colour_piece(g, part, k)?;
        for (i, &v) in part.iter().enumerate() {
            colours[v] = local[i];
        }
    }
    let mut in_b = vec![false; g.n()];
    for &v in &parts[1] {
        in_b[v] = true;
    }
    // Only the colours of the B-side endpoints matter; try every choice of
    // their images and complete the permutation in increasing order.
    let ends_b: Vec<Colour> = pairs
        .iter()
        .flat_map(|&(a, b)| [a, b])
        .filter(|&v| in_b[v])
        .map(|v| colours[v])
        .collect();
    let kc = k as Colour;
    let mut images = vec![Vec::new()];
    for _ in &ends_b {
        images = images
            .into_iter()
            .flat_map(|prefix: Vec<Colour>| {
                (1..=kc).map(move |c| {
                    let mut p = prefix.clone();
                    p.push(c);
                    p
                })
            })
            .collect();
    }
    for image in images {
        let Some(perm) = permutation_with(kc, &ends_b, &image) else {
            continue;
        };
        let trial: Vec<Colour> = g
            .vertices()
            .map(|v| if in_b[v] { perm[colours[v] as usize] } else { colours[v] })
            .collect();
        let col = Colouring::compact(trial);
        if col.num_colours() <= k && is_valid(g, &col)? {
            return Ok(Some(col));
        }
    }
    Ok(None)
}

/// A permutation of `1..=k` (indexed by colour) sending `from[i]` to
/// `to[i]`, if these constraints are consistent.
fn permutation_with(k: Colour, from: &[Colour], to: &[Colour]) -> Option<Vec<Colour>> {
    let mut perm = vec![0; k as usize + 1];
    let mut used = vec![false; k as usize + 1];
    for (&a, &b) in from.iter().zip(to) {
        match perm[a as usize] {
            0 if !used[b as usize] => {
                perm[a as usize] = b;
                used[b as usize] = true;
            }
            x if x == b => {}
            _ => return None,
        }
    }
    let mut free = (1..=k).filter(|&c| !used[c as usize]);
    for image in perm.iter_mut().skip(1).filter(|p| **p == 0) {
        *image = free.next().expect("as many free images as free colours");
    }
    Some(perm)
}

fn swap_colours(colours: &mut [Colour], a: Colour, b: Colour) {
    for c in colours.iter_mut() {
        if *c == a {
            *c = b;
        } else if *c == b {
            *c = a;
        }
    }
}
