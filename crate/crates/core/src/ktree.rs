//! k-trees: digraphs of maximum maxdegree at most `k` assembled from
//! exceptions of level `k - 1` by direct compositions (one extra arc) and
//! cyclic compositions (a directed cycle through one connector per part).
//!
//! Recognition works on the blocks of the underlying graph. In a k-tree the
//! pieces and the composition gadgets never share two vertices, so every
//! block is either a piece or a gadget: a single arc, a digon, or a directed
//! cycle.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::colouring::{is_valid, Colour, Colouring};
use crate::digraph::{Digraph, Vertex};
use crate::error::{Error, Result};
use crate::exceptions::{classify, exception_assignment, member_certificate, ExceptionCertificate, ExceptionKind};
use crate::{require_connected, BrooksResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ArcDirection {
    /// From the vertex of the first digraph to the vertex of the second.
    Forward,
    Backward,
}

/// One composition step, in the ids of the composed digraph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Composition {
    Direct { from: Vertex, to: Vertex },
    /// Arcs `connectors[i] -> connectors[i + 1]` and last to first.
    Cyclic { connectors: Vec<Vertex> },
}

impl Composition {
    pub fn arcs(&self) -> Vec<(Vertex, Vertex)> {
        match self {
            Composition::Direct { from, to } => vec![(*from, *to)],
            Composition::Cyclic { connectors } => {
                let l = connectors.len();
                (0..l).map(|i| (connectors[i], connectors[(i + 1) % l])).collect()
            }
        }
    }

    fn endpoints(&self) -> Vec<Vertex> {
        match self {
            Composition::Direct { from, to } => vec![*from, *to],
            Composition::Cyclic { connectors } => connectors.clone(),
        }
    }
}

/// Pieces (as exception certificates in the digraph's ids) and the
/// compositions joining them, leaves first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KTreeDecomposition {
    pub k: usize,
    pub n: usize,
    pub pieces: Vec<ExceptionCertificate>,
    pub ops: Vec<Composition>,
}

struct PieceForest {
    piece_of: Vec<usize>,
    parent: Vec<usize>,
    members: Vec<Vec<Vertex>>,
}

impl PieceForest {
    fn new(n: usize, pieces: &[ExceptionCertificate]) -> Result<Self> {
        let mut piece_of = vec![usize::MAX; n];
        for (i, p) in pieces.iter().enumerate() {
            for &v in &p.witness {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if piece_of[v] != usize::MAX {
                    return Err(Error::Precondition(format!("vertex {v} lies in two pieces")));
                }
                piece_of[v] = i;
            }
        }
        if let Some(v) = piece_of.iter().position(|&p| p == usize::MAX) {
            return Err(Error::Precondition(format!("vertex {v} lies in no piece")));
        }
        Ok(PieceForest {
            piece_of,
            parent: (0..pieces.len()).collect(),
            members: pieces.iter().map(|p| p.witness.clone()).collect(),
        })
    }

    fn root(&mut self, mut p: usize) -> usize {
        while self.parent[p] != p {
            self.parent[p] = self.parent[self.parent[p]];
            p = self.parent[p];
        }
        p
    }

    fn tree_of(&mut self, v: Vertex) -> usize {
        let p = self.piece_of[v];
        self.root(p)
    }

    /// Roots of the trees holding `vs`, or an error if two coincide.
    fn distinct_roots(&mut self, vs: &[Vertex]) -> Result<Vec<usize>> {
        let roots: Vec<usize> = vs.iter().map(|&v| self.tree_of(v)).collect();
        let mut sorted = roots.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != roots.len() {
            return Err(Error::Precondition(format!(
                "composition on {vs:?} joins a subtree to itself"
            )));
        }
        Ok(roots)
    }

    fn join(&mut self, roots: &[usize]) {
        let keep = roots[0];
        for &r in &roots[1..] {
            self.parent[r] = keep;
            let moved = std::mem::take(&mut self.members[r]);
            self.members[keep].extend(moved);
        }
    }
}

impl KTreeDecomposition {
    /// Replays the compositions and returns the digraph they build.
    pub fn reconstruct(&self) -> Result<Digraph> {
        if self.k < 2 {
            return Err(Error::InvalidParameter("k-trees need k >= 2".into()));
        }
        let kind = ExceptionKind::for_level(self.k - 1);
        for p in &self.pieces {
            if p.kind != kind || p.k != self.k - 1 {
                return Err(Error::Precondition(format!(
                    "piece {:?} is not an exception at level {}",
                    p.witness,
                    self.k - 1
                )));
            }
        }
        let mut forest = PieceForest::new(self.n, &self.pieces)?;
        let mut arcs: Vec<(Vertex, Vertex)> = self.pieces.iter().flat_map(|p| p.expected_arcs()).collect();
        for op in &self.ops {
            if let Composition::Cyclic { connectors } = op {
                if connectors.len() < 2 {
                    return Err(Error::Precondition("cyclic composition of fewer than 2 parts".into()));
                }
            }
            let roots = forest.distinct_roots(&op.endpoints())?;
            forest.join(&roots);
            arcs.extend(op.arcs());
        }
        let trees = (0..self.pieces.len()).filter(|&p| forest.parent[p] == p).count();
        if trees != 1 {
            return Err(Error::Precondition(format!("compositions leave {trees} separate parts")));
        }
        let g = Digraph::from_arcs(self.n, arcs)?;
        if g.delta_max() > self.k {
            return Err(Error::Precondition(format!(
                "reconstruction has maximum maxdegree {} > {}",
                g.delta_max(),
                self.k
            )));
        }
        Ok(g)
    }
}

/// Disjoint union with `g2` shifted by `g1.n()`, plus one arc between `v1`
/// and `v2 + g1.n()`.
pub fn direct_compose(g1: &Digraph, v1: Vertex, g2: &Digraph, v2: Vertex, dir: ArcDirection) -> Result<Digraph> {
    for (g, v) in [(g1, v1), (g2, v2)] {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
        }
    }
    let w2 = v2 + g1.n();
    let arc = match dir {
        ArcDirection::Forward => (v1, w2),
        ArcDirection::Backward => (w2, v1),
    };
    Ok(g1.disjoint_union(g2).with_arcs(&[arc]))
}

/// Disjoint union of the parts in order, plus the directed cycle through
/// their connectors.
pub fn cyclic_compose(parts: &[(Digraph, Vertex)]) -> Result<Digraph> {
    if parts.len() < 2 {
        return Err(Error::InvalidParameter(format!(
            "cyclic composition needs at least 2 parts, got {}",
            parts.len()
        )));
    }
    let mut union = Digraph::empty(0);
    let mut connectors = Vec::with_capacity(parts.len());
    for (g, v) in parts {
        if *v >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: *v, n: g.n() });
        }
        connectors.push(union.n() + v);
        union = union.disjoint_union(g);
    }
    Ok(union.with_arcs(&Composition::Cyclic { connectors }.arcs()))
}

enum BlockRole {
    Piece(ExceptionCertificate),
    Gadget(Composition),
}

/// Returns a decomposition iff `g` is a k-tree.
pub fn is_ktree(g: &Digraph, k: usize) -> Option<KTreeDecomposition> {
    if k < 2 || g.n() < 2 || !g.is_connected() || g.delta_max() > k {
        return None;
    }
    let blocks = g.cut_structure().ok()?.blocks;
    let mut piece_certs: Vec<Option<ExceptionCertificate>> = Vec::with_capacity(blocks.len());
    let mut gadgets: Vec<Option<Composition>> = Vec::with_capacity(blocks.len());
    for b in &blocks {
        let sub = g.induced(b);
        piece_certs.push(member_certificate(&sub, k - 1).map(|c| c.relabel(b)));
        gadgets.push(gadget(&sub, b));
    }

    let chosen = if k == 2 {
        exact_cover(g.n(), &blocks, &piece_certs)?
    } else {
        piece_certs.iter().map(|c| c.is_some()).collect()
    };
    let mut covered = vec![false; g.n()];
    let mut roles = Vec::with_capacity(blocks.len());
    for (i, b) in blocks.iter().enumerate() {
        if chosen[i] {
            for &v in b {
                if std::mem::replace(&mut covered[v], true) {
                    return None;
                }
            }
            roles.push(BlockRole::Piece(piece_certs[i].clone()?));
        } else {
            roles.push(BlockRole::Gadget(gadgets[i].clone()?));
        }
    }
    if covered.iter().any(|&c| !c) {
        return None;
    }

    let decomp = KTreeDecomposition {
        k,
        n: g.n(),
        pieces: roles
            .iter()
            .filter_map(|r| match r {
                BlockRole::Piece(c) => Some(c.clone()),
                BlockRole::Gadget(_) => None,
            })
            .collect(),
        ops: leaves_first(g.n(), &roles),
    };
    match decomp.reconstruct() {
        Ok(h) if h == *g => Some(decomp),
        _ => None,
    }
}

/// Reads a block as a composition gadget: one arc, a digon, or a directed
/// cycle through vertices of distinct parts.
fn gadget(sub: &Digraph, block: &[Vertex]) -> Option<Composition> {
    match (block.len(), sub.arc_count()) {
        (2, 1) => {
            let (a, b) = sub.arcs().next()?;
            Some(Composition::Direct { from: block[a], to: block[b] })
        }
        (2, 2) => Some(Composition::Cyclic { connectors: block.to_vec() }),
        (l, _) if l >= 3 && sub.is_regular(1) => {
            let cert = member_certificate(sub, 1)?;
            Some(Composition::Cyclic {
                connectors: cert.witness.iter().map(|&i| block[i]).collect(),
            })
        }
        _ => None,
    }
}

/// For k = 2 both pieces and cyclic gadgets are directed cycles. The blocks
/// form a tree, so the pieces are forced: a vertex lying in a single
/// available cycle block must take it, and such a vertex always exists while
/// anything is uncovered.
fn exact_cover(n: usize, blocks: &[Vec<Vertex>], certs: &[Option<ExceptionCertificate>]) -> Option<Vec<bool>> {
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, b) in blocks.iter().enumerate() {
        if certs[i].is_some() {
            for &v in b {
                containing[v].push(i);
            }
        }
    }
    let mut chosen = vec![false; blocks.len()];
    let mut excluded = vec![false; blocks.len()];
    let mut covered = vec![false; n];
    loop {
        let mut forced = None;
        for v in 0..n {
            if covered[v] {
                continue;
            }
            let mut avail = containing[v].iter().filter(|&&b| !excluded[b]);
            match (avail.next(), avail.next()) {
                (None, _) => return None,
                (Some(&b), None) => {
                    forced = Some(b);
                    break;
                }
                _ => {}
            }
        }
        let Some(b) = forced else {
            return covered.iter().all(|&c| c).then_some(chosen);
        };
        chosen[b] = true;
        for &v in &blocks[b] {
            if covered[v] {
                return None;
            }
            covered[v] = true;
            for &other in &containing[v] {
                if other != b {
                    excluded[other] = true;
                }
            }
        }
        excluded[b] = true;
    }
}

/// Post-order of the piece/gadget tree rooted at the piece holding vertex 0.
fn leaves_first(n: usize, roles: &[BlockRole]) -> Vec<Composition> {
    let mut piece_of = vec![usize::MAX; n];
    let mut piece_ids = Vec::new();
    let mut gadget_ids = Vec::new();
    for (i, r) in roles.iter().enumerate() {
        match r {
            BlockRole::Piece(c) => {
                for &v in &c.witness {
                    piece_of[v] = i;
                }
                piece_ids.push(i);
            }
            BlockRole::Gadget(_) => gadget_ids.push(i),
        }
    }
    let gadget = |i: usize| match &roles[i] {
        BlockRole::Gadget(op) => op,
        BlockRole::Piece(_) => unreachable!(),
    };
    let mut gadgets_at: Vec<Vec<usize>> = vec![Vec::new(); roles.len()];
    for &gi in &gadget_ids {
        for v in gadget(gi).endpoints() {
            gadgets_at[piece_of[v]].push(gi);
        }
    }

    let mut ops = Vec::with_capacity(gadget_ids.len());
    let mut used = vec![false; roles.len()];
    // Frames: (piece, index into its gadget list, gadget we arrived by).
    let root = piece_of[0];
    let mut stack: Vec<(usize, usize, Option<usize>)> = vec![(root, 0, None)];
    used[root] = true;
    while let Some(frame) = stack.last_mut() {
        let (p, idx, via) = *frame;
        if p == usize::MAX {
            stack.pop();
            ops.push(gadget(via.expect("gadget frame")).clone());
        } else if idx < gadgets_at[p].len() {
            frame.1 += 1;
            let gi = gadgets_at[p][idx];
            if used[gi] {
                continue;
            }
            used[gi] = true;
            // Push the gadget's other pieces; the gadget itself is emitted
            // once all of them are done, via the last pushed frame.
            let others: Vec<usize> = gadget(gi)
                .endpoints()
                .into_iter()
                .map(|v| piece_of[v])
                .filter(|&q| q != p)
                .collect();
            stack.push((usize::MAX, 0, Some(gi)));
            for q in others {
                used[q] = true;
                stack.push((q, 0, None));
            }
        } else {
            stack.pop();
        }
    }
    debug_assert_eq!(ops.len(), gadget_ids.len());
    ops
}

/// Colours each piece with `k` colours and replays the compositions,
/// swapping two colours inside one part whenever a cyclic gadget would close
/// a monochromatic cycle.
pub fn colour_ktree(decomp: &KTreeDecomposition) -> Result<Colouring> {
    let g = decomp.reconstruct()?;
    let k = decomp.k as Colour;
    let mut colours: Vec<Colour> = vec![0; decomp.n];
    for p in &decomp.pieces {
        for (v, c) in exception_assignment(p) {
            colours[v] = c;
        }
    }
    let mut forest = PieceForest::new(decomp.n, &decomp.pieces)?;
    for op in &decomp.ops {
        let roots = forest.distinct_roots(&op.endpoints())?;
        if let Composition::Cyclic { connectors } = op {
            let c = colours[connectors[0]];
            if connectors.iter().all(|&v| colours[v] == c) {
                let other = c % k + 1;
                for &v in &forest.members[roots[0]] {
                    if colours[v] == c {
                        colours[v] = other;
                    } else if colours[v] == other {
                        colours[v] = c;
                    }
                }
            }
        }
        forest.join(&roots);
    }
    let col = Colouring::compact(colours);
    if col.num_colours() > decomp.k || !is_valid(&g, &col)? {
        return Err(Error::InternalUnreachable("k-tree colouring failed".into()));
    }
    Ok(col)
}

/// Smallest `v` with maxdegree `k` such that no component of `G - v` is a
/// k-tree.
pub fn find_peel_vertex(g: &Digraph, k: usize) -> Option<Vertex> {
    g.vertices().find(|&v| {
        if g.max_degree(v) != k {
            return false;
        }
        let (rest, _) = g.without(&[v]);
        rest.components().iter().all(|c| is_ktree(&rest.induced(c), k).is_none())
    })
}

pub fn ktree_colour(g: &Digraph) -> Result<BrooksResult> {
    require_connected(g)?;
    if let Some(cert) = classify(g) {
        return Ok(BrooksResult::Exception(cert));
    }
    let k = g.delta_max();
    if k <= 1 {
        return Ok(BrooksResult::Coloured(Colouring::new(vec![1; g.n()])?));
    }
    if let Some(decomp) = is_ktree(g, k) {
        return colour_ktree(&decomp).map(BrooksResult::Coloured);
    }

    let mut colours: Vec<Colour> = vec![0; g.n()];
    let mut peeled = Vec::new();
    let mut queue: VecDeque<Vec<Vertex>> = VecDeque::from([g.vertices().collect::<Vec<_>>()]);
    while let Some(part) = queue.pop_front() {
        let sub = g.induced(&part);
        if sub.delta_max() == k {
            let i = find_peel_vertex(&sub, k).ok_or_else(|| {
                Error::InternalUnreachable(format!("no peel vertex in a part of {} vertices", part.len()))
            })?;
            peeled.push(part[i]);
            let (rest, keep) = sub.without(&[i]);
            for comp in rest.components() {
                queue.push_back(comp.iter().map(|&j| part[keep[j]]).collect());
            }
        } else {
            let col = ktree_colour(&sub)?.into_colouring(sub.n());
            if col.num_colours() >= k {
                return Err(Error::InternalUnreachable(format!(
                    "leftover part needs {} colours at level {k}",
                    col.num_colours()
                )));
            }
            for (j, &v) in part.iter().enumerate() {
                colours[v] = col.colour(j);
            }
        }
    }
    if !g.induced(&peeled).is_acyclic() {
        return Err(Error::InternalUnreachable("peeled vertices span a cycle".into()));
    }
    for &v in &peeled {
        colours[v] = k as Colour;
    }
    let col = Colouring::compact(colours);
    if !is_valid(g, &col)? {
        return Err(Error::InternalUnreachable("peeling colouring is invalid".into()));
    }
    Ok(BrooksResult::Coloured(col))
}
