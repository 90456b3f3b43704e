//! Colouring by induction on `delta_max`: a maximal acyclic set takes the
//! last colour and the rest is coloured one level down, except when the rest
//! contains an exception component, which is cut out and re-attached.

use serde::{Deserialize, Serialize};

use crate::colouring::{greedy_choice, is_valid, monochromatic_acyclic, Colour, Colouring};
use crate::digraph::{Digraph, Vertex};
use crate::error::{Error, Result};
use crate::exceptions::{classify, ExceptionCertificate};
use crate::lovasz::{colour_nonregular, lovasz_colour};
use crate::{require_connected, BrooksResult};

/// Counters for the extension step.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InductionStats {
    /// Extensions done by adding one helper arc between the outside
    /// neighbours of an exception component.
    pub arc_extensions: u64,
    /// Extensions done with a helper digon and list colouring.
    pub digon_extensions: u64,
    /// Helper configurations tried and discarded.
    pub rejected_candidates: u64,
    /// Times no configuration worked and the Lovász colourer took over.
    pub lovasz_fallbacks: u64,
}

impl InductionStats {
    pub fn add(&mut self, other: &InductionStats) {
        self.arc_extensions += other.arc_extensions;
        self.digon_extensions += other.digon_extensions;
        self.rejected_candidates += other.rejected_candidates;
        self.lovasz_fallbacks += other.lovasz_fallbacks;
    }
}

/// Scans vertices by ascending id, keeping each one that does not close a
/// directed cycle, until nothing more can be added.
pub fn maximal_acyclic_set(g: &Digraph) -> Vec<Vertex> {
    let mut in_set = vec![false; g.n()];
    loop {
        let mut changed = false;
        for v in g.vertices() {
            if !in_set[v] && !closes_cycle(g, &in_set, v) {
                in_set[v] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    g.vertices().filter(|&v| in_set[v]).collect()
}

/// Whether some out-neighbour of `v` in the set reaches an in-neighbour of
/// `v` inside the set.
fn closes_cycle(g: &Digraph, in_set: &[bool], v: Vertex) -> bool {
    let mut seen = vec![false; g.n()];
    let mut stack: Vec<Vertex> = g
        .out_neighbours(v)
        .iter()
        .copied()
        .filter(|&w| in_set[w])
        .collect();
    for &w in &stack {
        seen[w] = true;
    }
    while let Some(w) = stack.pop() {
        if g.has_arc(w, v) {
            return true;
        }
        for &x in g.out_neighbours(w) {
            if in_set[x] && !seen[x] {
                seen[x] = true;
                stack.push(x);
            }
        }
    }
    false
}

pub fn induction_colour(g: &Digraph) -> Result<BrooksResult> {
    induction_colour_with_stats(g, &mut InductionStats::default())
}

pub fn induction_colour_with_stats(g: &Digraph, stats: &mut InductionStats) -> Result<BrooksResult> {
    require_connected(g)?;
    let k = g.delta_max();
    if let Some(cert) = classify(g) {
        return Ok(BrooksResult::Exception(cert));
    }
    if k <= 1 {
        return Ok(BrooksResult::Coloured(Colouring::new(vec![1; g.n()])?));
    }
    if !g.is_regular(k) {
        return Ok(BrooksResult::Coloured(colour_nonregular(g)?));
    }

    let acyclic = maximal_acyclic_set(g);
    let (rest, keep) = g.without(&acyclic);
    if rest.delta_max() >= k {
        return Err(Error::InternalUnreachable(
            "maximal acyclic set did not lower the maximum maxdegree".into(),
        ));
    }
    let mut colours: Vec<Colour> = vec![0; g.n()];
    for &v in &acyclic {
        colours[v] = k as Colour;
    }
    for comp in rest.components() {
        let part: Vec<Vertex> = comp.iter().map(|&i| keep[i]).collect();
        let sub = g.induced(&part);
        let local = match induction_colour_with_stats(&sub, stats)? {
            BrooksResult::Exception(cert) if cert.k + 1 >= k => {
                let cert = cert.relabel(&part);
                return extend_over_exception(g, &part, &cert, k, stats).map(BrooksResult::Coloured);
            }
            r => r.into_colouring(sub.n()),
        };
        for (i, &v) in part.iter().enumerate() {
            colours[v] = local.colour(i);
        }
    }
    let col = Colouring::compact(colours);
    if !is_valid(g, &col)? {
        return Err(Error::InternalUnreachable("acyclic set plus lower level is invalid".into()));
    }
    Ok(BrooksResult::Coloured(col))
}

/// `t` is a component of `G - M` that belongs to the exception family one
/// level down. Every vertex of `t` has exactly one in- and one
/// out-neighbour outside `t`.
fn extend_over_exception(
    g: &Digraph,
    t: &[Vertex],
    cert: &ExceptionCertificate,
    k: usize,
    stats: &mut InductionStats,
) -> Result<Colouring> {
    let mut in_t = vec![false; g.n()];
    for &w in t {
        in_t[w] = true;
    }
    let outside = |nbrs: &[Vertex]| -> Vertex {
        *nbrs.iter().find(|&&x| !in_t[x]).expect("regular digraph leaves one outside neighbour")
    };
    let links: Vec<(Vertex, Vertex, Vertex)> = t
        .iter()
        .map(|&w| (w, outside(g.in_neighbours(w)), outside(g.out_neighbours(w))))
        .collect();

    if links.iter().any(|&(_, x, y)| x != y) {
        for &(u, x, y) in links.iter().filter(|&&(_, x, y)| x != y) {
            let extended = match colour_remainder(g, t, &[(x, y)], k, stats)? {
                Some(base) => extend_through_arc(g, t, cert, &links, u, base, k),
                None => None,
            };
            match extended {
                Some(col) => {
                    stats.arc_extensions += 1;
                    return Ok(col);
                }
                None => stats.rejected_candidates += 1,
            }
        }
    } else {
        let mut anchors: Vec<Vertex> = links.iter().map(|&(_, x, _)| x).collect();
        anchors.sort_unstable();
        anchors.dedup();
        for (i, &x) in anchors.iter().enumerate() {
            for &y in &anchors[i + 1..] {
                let extended = match colour_remainder(g, t, &[(x, y), (y, x)], k, stats)? {
                    Some(base) => extend_through_digon(g, t, &links, base, k),
                    None => None,
                };
                match extended {
                    Some(col) => {
                        stats.digon_extensions += 1;
                        return Ok(col);
                    }
                    None => stats.rejected_candidates += 1,
                }
            }
        }
    }

    stats.lovasz_fallbacks += 1;
    log::warn!(
        "no extension over an exception component of size {}; using the Lovász colourer",
        t.len()
    );
    match lovasz_colour(g)? {
        BrooksResult::Coloured(col) => Ok(col),
        BrooksResult::Exception(_) => Err(Error::InternalUnreachable(
            "regular non-exception digraph classified as exception".into(),
        )),
    }
}

/// Colours `G - t` plus the helper arcs with at most `k` colours, one
/// component at a time. `None` when some component is an exception at level
/// `k`.
fn colour_remainder(
    g: &Digraph,
    t: &[Vertex],
    helpers: &[(Vertex, Vertex)],
    k: usize,
    stats: &mut InductionStats,
) -> Result<Option<Vec<Colour>>> {
    let (rest, keep) = g.without(t);
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in keep.iter().enumerate() {
        index[v] = i;
    }
    let extra: Vec<(Vertex, Vertex)> = helpers.iter().map(|&(a, b)| (index[a], index[b])).collect();
    let h = rest.with_arcs(&extra);
    let mut colours: Vec<Colour> = vec![0; g.n()];
    for comp in h.components() {
        let sub = h.induced(&comp);
        let col = match induction_colour_with_stats(&sub, stats)? {
            BrooksResult::Exception(cert) if cert.k + 1 > k => return Ok(None),
            r => r.into_colouring(sub.n()),
        };
        for (i, &v) in comp.iter().enumerate() {
            colours[keep[v]] = col.colour(i);
        }
    }
    Ok(Some(colours))
}

fn finish(g: &Digraph, colours: Vec<Colour>, k: usize) -> Option<Colouring> {
    if colours.iter().any(|&c| c == 0 || c as usize > k) {
        return None;
    }
    let col = Colouring::compact(colours);
    is_valid(g, &col).ok()?.then_some(col)
}

/// Branch where `u` in `t` has distinct outside in-neighbour `x` and
/// out-neighbour `y`, and `colours` has no monochromatic path from `y` to `x`.
fn extend_through_arc(
    g: &Digraph,
    t: &[Vertex],
    cert: &ExceptionCertificate,
    links: &[(Vertex, Vertex, Vertex)],
    u: Vertex,
    mut colours: Vec<Colour>,
    k: usize,
) -> Option<Colouring> {
    if k >= 3 {
        let sub = g.induced(t);
        let root = t.iter().position(|&w| w == u)?;
        let order = sub.bfs_order(root).ok()?;
        for &i in order.iter().skip(1).rev() {
            colours[t[i]] = greedy_choice(g, t[i], &colours);
        }
        for c in 1..=k as Colour {
            colours[u] = c;
            if monochromatic_acyclic(g, &colours) {
                return finish(g, colours, k);
            }
        }
        return None;
    }

    // k = 2: t is a directed cycle, listed along its arcs by the witness.
    let cycle = &cert.witness;
    let len = cycle.len();
    let link_of = |w: Vertex| *links.iter().find(|l| l.0 == w).expect("vertex of t");
    let mut around: Vec<Colour> = links.iter().flat_map(|&(_, x, y)| [colours[x], colours[y]]).collect();
    around.sort_unstable();
    around.dedup();
    if around.len() == 1 {
        let c = around[0];
        for &w in t {
            colours[w] = 3 - c;
        }
        colours[u] = c;
        return finish(g, colours, k);
    }
    let pos = (0..len).find(|&i| {
        let (_, _, yz) = link_of(cycle[i]);
        let (_, xn, yn) = link_of(cycle[(i + 1) % len]);
        !(colours[xn] == colours[yz] && colours[yn] == colours[yz])
    })?;
    let z = cycle[pos];
    let c = colours[link_of(z).2];
    colours[cycle[(pos + 1) % len]] = c;
    for step in 2..len {
        let w = cycle[(pos + step) % len];
        colours[w] = greedy_choice(g, w, &colours);
    }
    colours[z] = 3 - c;
    finish(g, colours, k)
}

/// Branch where every vertex of `t` is joined to a single outside vertex by
/// a digon and two of those outside vertices received distinct colours.
fn extend_through_digon(
    g: &Digraph,
    t: &[Vertex],
    links: &[(Vertex, Vertex, Vertex)],
    mut colours: Vec<Colour>,
    k: usize,
) -> Option<Colouring> {
    let forbidden = |w: Vertex, colours: &[Colour]| {
        colours[links.iter().find(|l| l.0 == w).expect("vertex of t").1]
    };
    let (b, a) = t.iter().find_map(|&b| {
        g.out_neighbours(b)
            .iter()
            .find(|&&a| t.contains(&a) && forbidden(a, &colours) != forbidden(b, &colours))
            .map(|&a| (b, a))
    })?;
    colours[a] = forbidden(b, &colours);

    let rest: Vec<Vertex> = t.iter().copied().filter(|&w| w != a).collect();
    let sub = g.induced(&rest);
    let root = rest.iter().position(|&w| w == b)?;
    let order = sub.bfs_order(root).ok()?;
    for &i in order.iter().rev() {
        let w = rest[i];
        colours[w] = list_choice(g, w, &colours, forbidden(w, &colours), k)?;
    }
    finish(g, colours, k)
}

/// Greedy rule restricted to the colours `1..=k` other than `forbidden`.
fn list_choice(g: &Digraph, w: Vertex, colours: &[Colour], forbidden: Colour, k: usize) -> Option<Colour> {
    let free_against = |nbrs: &[Vertex]| {
        (1..=k as Colour).find(|&c| c != forbidden && nbrs.iter().all(|&x| colours[x] != c))
    };
    match (free_against(g.out_neighbours(w)), free_against(g.in_neighbours(w))) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    }
}
