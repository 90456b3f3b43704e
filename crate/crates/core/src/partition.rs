//! Colouring through bipartitions `(V1, V2)` that minimise the potential
//! `r2 * |A(G[V1])| + r1 * |A(G[V2])|`.
//!
//! For a `k`-regular digraph and `(r1, r2) = (1, k - 1)`, a minimal partition
//! whose parts contain no member of `B_1` resp. `B_{k-1}` as a component has
//! an acyclic first part, and the second part is `(k - 1)`-dicolourable
//! after a greedy argument on its vertices of maxdegree `k`.
//!
//! Minimal partitions are found by local search. Each search step moves one
//! vertex without raising the potential and then restores specialness; the
//! search is guided by the measure (potential, obstruction count, acceptable
//! path length) and bounded by `4^n` visited states, after which an
//! exhaustive scan takes over on small inputs.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::colouring::{greedy_choice, is_valid, Colour, Colouring};
use crate::digraph::{Digraph, Vertex};
use crate::error::{Error, Result};
use crate::exceptions::{classify, member_certificate, ExceptionCertificate};
use crate::induction::maximal_acyclic_set;
use crate::lovasz::{colour_nonregular, lovasz_colour};
use crate::{require_connected, BrooksResult};

/// Largest order for the exhaustive fallback scan.
pub const EXHAUSTIVE_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NormalPartition {
    /// `1` or `2` per vertex.
    pub part_of: Vec<u8>,
    pub r1: usize,
    pub r2: usize,
    pub potential: u64,
}

impl NormalPartition {
    pub fn new(g: &Digraph, part_of: Vec<u8>, r1: usize, r2: usize) -> Result<Self> {
        if part_of.len() != g.n() {
            return Err(Error::InvalidParameter(format!(
                "partition covers {} vertices, digraph has {}",
                part_of.len(),
                g.n()
            )));
        }
        if let Some(v) = part_of.iter().position(|&p| p != 1 && p != 2) {
            return Err(Error::InvalidParameter(format!("vertex {v} is in part {}", part_of[v])));
        }
        if r1 == 0 || r2 == 0 {
            return Err(Error::InvalidParameter("r1 and r2 must be positive".into()));
        }
        let mut p = NormalPartition { part_of, r1, r2, potential: 0 };
        p.potential = p.recompute_potential(g);
        Ok(p)
    }

    /// `V1 = first`, everything else in `V2`.
    pub fn with_first_part(g: &Digraph, first: &[Vertex], r1: usize, r2: usize) -> Result<Self> {
        let mut part_of = vec![2u8; g.n()];
        for &v in first {
            if v >= g.n() {
                return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
            }
            part_of[v] = 1;
        }
        NormalPartition::new(g, part_of, r1, r2)
    }

    pub fn part(&self, v: Vertex) -> u8 {
        self.part_of[v]
    }

    pub fn members(&self, part: u8) -> Vec<Vertex> {
        (0..self.part_of.len()).filter(|&v| self.part_of[v] == part).collect()
    }

    pub fn r(&self, part: u8) -> usize {
        if part == 1 {
            self.r1
        } else {
            self.r2
        }
    }

    pub fn recompute_potential(&self, g: &Digraph) -> u64 {
        let (mut a1, mut a2) = (0u64, 0u64);
        for (u, v) in g.arcs() {
            match (self.part_of[u], self.part_of[v]) {
                (1, 1) => a1 += 1,
                (2, 2) => a2 += 1,
                _ => {}
            }
        }
        self.r2 as u64 * a1 + self.r1 as u64 * a2
    }

    /// Out- and in-degree of `v` inside `part`.
    fn degrees_into(&self, g: &Digraph, v: Vertex, part: u8) -> (usize, usize) {
        let out = g.out_neighbours(v).iter().filter(|&&w| self.part_of[w] == part).count();
        let inn = g.in_neighbours(v).iter().filter(|&&w| self.part_of[w] == part).count();
        (out, inn)
    }

    /// Potential change if `v` switches sides.
    pub fn move_delta(&self, g: &Digraph, v: Vertex) -> i64 {
        let here = self.part_of[v];
        let there = 3 - here;
        let (o, i) = self.degrees_into(g, v, here);
        let (o2, i2) = self.degrees_into(g, v, there);
        // Weight of an arc inside part p is r of the other part.
        let w_here = self.r(there) as i64;
        let w_there = self.r(here) as i64;
        w_there * (o2 + i2) as i64 - w_here * (o + i) as i64
    }

    pub fn moved(&self, g: &Digraph, v: Vertex) -> NormalPartition {
        let delta = self.move_delta(g, v);
        let mut next = self.clone();
        next.part_of[v] = 3 - next.part_of[v];
        next.potential = (self.potential as i64 + delta) as u64;
        next
    }

    fn violates(&self, g: &Digraph, v: Vertex) -> bool {
        let part = self.part_of[v];
        let r = self.r(part);
        let (o, i) = self.degrees_into(g, v, part);
        o.min(i) >= r && o.max(i) > r
    }
}

/// Every vertex has `d_min < r` or `d_min = d_max = r`.
pub fn is_r_special(h: &Digraph, r: usize) -> bool {
    h.vertices().all(|v| {
        let (lo, hi) = (h.min_degree(v), h.max_degree(v));
        lo < r || (lo == r && hi == r)
    })
}

/// Both parts are special for their parameter.
pub fn parts_are_special(g: &Digraph, p: &NormalPartition) -> bool {
    g.vertices().all(|v| !p.violates(g, v))
}

pub fn improve_to_special(g: &Digraph, p: &NormalPartition) -> Result<NormalPartition> {
    improve_to_special_traced(g, p).map(|(p, _)| p)
}

/// Like [`improve_to_special`], also returning the potential before the
/// first move and after each move.
pub fn improve_to_special_traced(g: &Digraph, p: &NormalPartition) -> Result<(NormalPartition, Vec<u64>)> {
    if p.r1 + p.r2 < g.delta_max() {
        return Err(Error::Precondition(format!(
            "r1 + r2 = {} is below the maximum maxdegree {}",
            p.r1 + p.r2,
            g.delta_max()
        )));
    }
    let mut cur = p.clone();
    let mut trace = vec![cur.potential];
    while let Some(v) = g.vertices().find(|&v| cur.violates(g, v)) {
        let next = cur.moved(g, v);
        if next.potential + (cur.r1 + cur.r2) as u64 > cur.potential {
            return Err(Error::InternalUnreachable(format!(
                "moving vertex {v} lowered the potential by less than r1 + r2"
            )));
        }
        cur = next;
        trace.push(cur.potential);
    }
    Ok((cur, trace))
}

/// A component of a part that belongs to that part's exception family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obstruction {
    pub part: u8,
    pub component: Vec<Vertex>,
    pub certificate: ExceptionCertificate,
}

fn all_obstructions(g: &Digraph, p: &NormalPartition) -> Vec<Obstruction> {
    let mut found = Vec::new();
    for part in [1u8, 2] {
        let members = p.members(part);
        let sub = g.induced(&members);
        for comp in sub.components() {
            let piece = sub.induced(&comp);
            if let Some(cert) = member_certificate(&piece, p.r(part)) {
                let component: Vec<Vertex> = comp.iter().map(|&i| members[i]).collect();
                let certificate = cert.relabel(&component);
                found.push(Obstruction { part, component, certificate });
            }
        }
    }
    found.sort_by_key(|o| o.component[0]);
    found
}

/// The obstruction whose smallest vertex is least, if any.
pub fn find_obstruction(g: &Digraph, p: &NormalPartition) -> Option<Obstruction> {
    all_obstructions(g, p).into_iter().next()
}

/// Component index of every vertex within its own part.
fn part_components(g: &Digraph, p: &NormalPartition) -> Vec<usize> {
    let mut label = vec![usize::MAX; g.n()];
    let mut next = 0;
    for part in [1u8, 2] {
        let members = p.members(part);
        for comp in g.induced(&members).components() {
            for i in comp {
                label[members[i]] = next;
            }
            next += 1;
        }
    }
    label
}

/// Length of the greedy maximal acceptable path from `start`: each step goes
/// to the smallest neighbour whose part component is not yet visited.
fn acceptable_path_length(g: &Digraph, p: &NormalPartition, start: Vertex) -> usize {
    let label = part_components(g, p);
    let mut used = HashSet::from([label[start]]);
    let mut cur = start;
    let mut len = 1;
    loop {
        let next = g.neighbours(cur).into_iter().find(|&w| !used.contains(&label[w]));
        match next {
            Some(w) => {
                used.insert(label[w]);
                cur = w;
                len += 1;
            }
            None => return len,
        }
    }
}

type Measure = (u64, usize, usize);

fn measure(g: &Digraph, p: &NormalPartition) -> Measure {
    let obs = all_obstructions(g, p);
    let len = obs.first().map_or(0, |o| acceptable_path_length(g, p, o.component[0]));
    (p.potential, obs.len(), len)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Elimination {
    Partition(NormalPartition),
    Exception(ExceptionCertificate),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionStats {
    /// Local searches that used up their state budget.
    pub budget_exceeded: u64,
    /// Searches finished by the exhaustive scan.
    pub exhaustive_fallbacks: u64,
    /// Colourings handed to the Lovász colourer.
    pub lovasz_fallbacks: u64,
    /// Local-search steps taken.
    pub moves: u64,
}

impl PartitionStats {
    pub fn add(&mut self, other: &PartitionStats) {
        self.budget_exceeded += other.budget_exceeded;
        self.exhaustive_fallbacks += other.exhaustive_fallbacks;
        self.lovasz_fallbacks += other.lovasz_fallbacks;
        self.moves += other.moves;
    }
}

pub fn eliminate_obstructions(g: &Digraph, p: &NormalPartition) -> Result<Elimination> {
    eliminate_obstructions_with_stats(g, p, &mut PartitionStats::default())
}

pub fn eliminate_obstructions_with_stats(
    g: &Digraph,
    p: &NormalPartition,
    stats: &mut PartitionStats,
) -> Result<Elimination> {
    require_connected(g)?;
    let k = p.r1 + p.r2;
    if k < 2 || !g.is_regular(k) {
        return Err(Error::Precondition(format!(
            "expected a {k}-regular digraph for (r1, r2) = ({}, {})",
            p.r1, p.r2
        )));
    }
    if let Some(cert) = classify(g) {
        return Ok(Elimination::Exception(cert));
    }

    let budget = 4u64.saturating_pow(g.n() as u32);
    let mut visited: u64 = 0;
    let mut best = improve_to_special(g, p)?;
    let mut best_measure = measure(g, &best);
    'restart: loop {
        if best_measure.1 == 0 {
            return Ok(Elimination::Partition(best));
        }
        let mut seen: HashSet<Vec<u8>> = HashSet::from([best.part_of.clone()]);
        let mut queue = VecDeque::from([best.clone()]);
        while let Some(state) = queue.pop_front() {
            for v in g.vertices() {
                if state.move_delta(g, v) > 0 {
                    continue;
                }
                let next = improve_to_special(g, &state.moved(g, v))?;
                if !seen.insert(next.part_of.clone()) {
                    continue;
                }
                visited += 1;
                stats.moves += 1;
                if visited >= budget {
                    stats.budget_exceeded += 1;
                    return exhaustive(g, p, stats, budget);
                }
                let m = measure(g, &next);
                if m < best_measure {
                    best = next;
                    best_measure = m;
                    continue 'restart;
                }
                if m.0 == best_measure.0 {
                    queue.push_back(next);
                }
            }
        }
        log::debug!("plateau search exhausted at measure {best_measure:?}");
        return exhaustive(g, p, stats, budget);
    }
}

/// Scans all bipartitions for a minimum-potential one without obstructions.
fn exhaustive(g: &Digraph, p: &NormalPartition, stats: &mut PartitionStats, budget: u64) -> Result<Elimination> {
    let n = g.n();
    if n > EXHAUSTIVE_LIMIT {
        return Err(Error::IterationBudgetExceeded { budget });
    }
    stats.exhaustive_fallbacks += 1;
    let arcs: Vec<(Vertex, Vertex)> = g.arcs().collect();
    let potential = |mask: u32| -> u64 {
        let (mut a1, mut a2) = (0u64, 0u64);
        for &(u, v) in &arcs {
            match ((mask >> u) & 1, (mask >> v) & 1) {
                (1, 1) => a1 += 1,
                (0, 0) => a2 += 1,
                _ => {}
            }
        }
        p.r2 as u64 * a1 + p.r1 as u64 * a2
    };
    let masks = 0..(1u32 << n);
    let min = masks.clone().map(potential).min().unwrap_or(0);
    for mask in masks.filter(|&m| potential(m) == min) {
        let part_of = (0..n).map(|v| if (mask >> v) & 1 == 1 { 1 } else { 2 }).collect();
        let cand = NormalPartition::new(g, part_of, p.r1, p.r2)?;
        if find_obstruction(g, &cand).is_none() {
            return Ok(Elimination::Partition(cand));
        }
    }
    Err(Error::InternalUnreachable(
        "no minimum-potential partition is free of obstructions".into(),
    ))
}

pub fn partition_colour(g: &Digraph) -> Result<BrooksResult> {
    partition_colour_with_stats(g, &mut PartitionStats::default())
}

pub fn partition_colour_with_stats(g: &Digraph, stats: &mut PartitionStats) -> Result<BrooksResult> {
    require_connected(g)?;
    if let Some(cert) = classify(g) {
        return Ok(BrooksResult::Exception(cert));
    }
    let k = g.delta_max();
    if k <= 1 {
        return Ok(BrooksResult::Coloured(Colouring::new(vec![1; g.n()])?));
    }
    if !g.is_regular(k) {
        return Ok(BrooksResult::Coloured(colour_nonregular(g)?));
    }

    let start = NormalPartition::with_first_part(g, &maximal_acyclic_set(g), 1, k - 1)?;
    let p = match eliminate_obstructions_with_stats(g, &start, stats)? {
        Elimination::Exception(cert) => return Ok(BrooksResult::Exception(cert)),
        Elimination::Partition(p) => p,
    };
    match colour_from_partition(g, &p, k, stats)? {
        Some(col) => Ok(BrooksResult::Coloured(col)),
        None => {
            stats.lovasz_fallbacks += 1;
            log::info!("partition colouring fell back to the Lovász colourer (n = {})", g.n());
            lovasz_colour(g)
        }
    }
}

/// `V1` takes colour `k`; `V2` is coloured with `k - 1` colours. `None` when
/// a step does not go through.
fn colour_from_partition(
    g: &Digraph,
    p: &NormalPartition,
    k: usize,
    stats: &mut PartitionStats,
) -> Result<Option<Colouring>> {
    let v1 = p.members(1);
    if !g.induced(&v1).is_acyclic() {
        return Ok(None);
    }
    let v2 = p.members(2);
    let g2 = g.induced(&v2);
    let s: Vec<Vertex> = g2.vertices().filter(|&i| g2.max_degree(i) == k).collect();
    if s.iter().any(|&i| g2.min_degree(i) + 2 > k) {
        return Ok(None);
    }

    let mut local: Vec<Colour> = vec![0; g2.n()];
    let (rest, keep) = g2.without(&s);
    for comp in rest.components() {
        let ids: Vec<Vertex> = comp.iter().map(|&i| keep[i]).collect();
        let sub = g2.induced(&ids);
        let col = partition_colour_with_stats(&sub, stats)?.into_colouring(sub.n());
        if col.num_colours() + 1 > k {
            return Ok(None);
        }
        for (j, &i) in ids.iter().enumerate() {
            local[i] = col.colour(j);
        }
    }
    for &i in &s {
        let c = greedy_choice(&g2, i, &local);
        if c as usize >= k {
            return Ok(None);
        }
        local[i] = c;
    }

    let mut colours = vec![k as Colour; g.n()];
    for (i, &v) in v2.iter().enumerate() {
        colours[v] = local[i];
    }
    let col = Colouring::compact(colours);
    if col.num_colours() > k || !is_valid(g, &col)? {
        return Ok(None);
    }
    Ok(Some(col))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Digraph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Digraph::symmetric(n, edges).unwrap()
    }

    fn sym_cycle(n: usize) -> Digraph {
        Digraph::symmetric(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn specialness_examples() {
        let c5 = Digraph::from_arcs(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        assert!(is_r_special(&c5, 1));
        let pendant = Digraph::from_arcs(3, [(0, 1), (1, 0), (1, 2)]).unwrap();
        assert!(!is_r_special(&pendant, 1));
        assert!(is_r_special(&complete(3), 2));
    }

    #[test]
    fn potential_bookkeeping() {
        let g = complete(4);
        let p = NormalPartition::with_first_part(&g, &[0, 1], 1, 2).unwrap();
        // One digon in each part: 2 * 2 + 1 * 2.
        assert_eq!(p.potential, 6);
        for v in 0..4 {
            let q = p.moved(&g, v);
            assert_eq!(q.potential, q.recompute_potential(&g));
        }
    }

    #[test]
    fn improve_on_symmetric_triangle() {
        let g = complete(3);
        let p = NormalPartition::new(&g, vec![1, 1, 1], 1, 1).unwrap();
        let (q, trace) = improve_to_special_traced(&g, &p).unwrap();
        assert!(parts_are_special(&g, &q));
        assert!(trace.len() >= 2);
        for w in trace.windows(2) {
            assert!(w[1] + 2 <= w[0]);
        }
        // Already special: fixed point.
        assert_eq!(improve_to_special(&g, &q).unwrap(), q);
    }

    #[test]
    fn obstruction_examples() {
        // Directed triangle in V1, a digon in V2, no arcs between.
        let g = Digraph::from_arcs(5, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 3)]).unwrap();
        let p = NormalPartition::with_first_part(&g, &[0, 1, 2], 1, 2).unwrap();
        let o = find_obstruction(&g, &p).unwrap();
        assert_eq!((o.part, o.component.clone()), (1, vec![0, 1, 2]));
        let k4 = complete(4);
        let p = NormalPartition::new(&k4, vec![2; 4], 1, 3).unwrap();
        let o = find_obstruction(&k4, &p).unwrap();
        assert_eq!(o.part, 2);
        assert_eq!(o.certificate.kind, crate::ExceptionKind::SymmetricComplete);
        let c4 = sym_cycle(4);
        let p = NormalPartition::with_first_part(&c4, &[0, 2], 1, 1).unwrap();
        assert_eq!(find_obstruction(&c4, &p), None);
    }

    #[test]
    fn elimination_certifies_exceptions() {
        let k5 = complete(5);
        let p = NormalPartition::with_first_part(&k5, &[0], 1, 3).unwrap();
        match eliminate_obstructions(&k5, &p).unwrap() {
            Elimination::Exception(c) => assert_eq!(c.kind, crate::ExceptionKind::SymmetricComplete),
            other => panic!("{other:?}"),
        }
        let c5 = sym_cycle(5);
        let p = NormalPartition::with_first_part(&c5, &[0], 1, 1).unwrap();
        match eliminate_obstructions(&c5, &p).unwrap() {
            Elimination::Exception(c) => assert_eq!(c.kind, crate::ExceptionKind::SymmetricOddCycle),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn even_symmetric_cycle_gets_two_colours() {
        let g = sym_cycle(4);
        let mut stats = PartitionStats::default();
        match partition_colour_with_stats(&g, &mut stats).unwrap() {
            BrooksResult::Coloured(col) => {
                assert!(is_valid(&g, &col).unwrap());
                assert_eq!(col.num_colours(), 2);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(stats.lovasz_fallbacks, 0);
    }

    #[test]
    fn regular_non_exception_gets_obstruction_free_partition() {
        // Circulant on 7 vertices with jumps 1 and 2: 2-regular, not symmetric.
        let g = Digraph::from_arcs(7, (0..7).flat_map(|i| [(i, (i + 1) % 7), (i, (i + 2) % 7)])).unwrap();
        let p = NormalPartition::with_first_part(&g, &maximal_acyclic_set(&g), 1, 1).unwrap();
        match eliminate_obstructions(&g, &p).unwrap() {
            Elimination::Partition(q) => {
                assert!(parts_are_special(&g, &q));
                assert_eq!(find_obstruction(&g, &q), None);
                assert!(g.induced(&q.members(1)).is_acyclic());
            }
            other => panic!("{other:?}"),
        }
    }
}
