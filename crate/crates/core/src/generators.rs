//! Seeded instance generators. All randomness comes from `ChaCha8Rng`
//! seeded with `seed_from_u64`, so a seed names the same digraph on every
//! platform.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::digraph::{Digraph, Vertex};
use crate::error::{Error, Result};
use crate::exceptions::member_certificate;
use crate::ktree::{Composition, KTreeDecomposition};

/// Identity of the random source, for output metadata.
pub const RNG_NAME: &str = "ChaCha8Rng/seed_from_u64 (rand_chacha 0.3)";

const RETRIES: usize = 100;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    DirectedCycle,
    SymmetricCycle,
    SymmetricComplete,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::DirectedCycle => "directed_cycle",
            FamilyKind::SymmetricCycle => "symmetric_cycle",
            FamilyKind::SymmetricComplete => "symmetric_complete",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "directed_cycle" => Ok(FamilyKind::DirectedCycle),
            "symmetric_cycle" => Ok(FamilyKind::SymmetricCycle),
            "symmetric_complete" => Ok(FamilyKind::SymmetricComplete),
            other => Err(Error::InvalidParameter(format!("unknown family {other:?}"))),
        }
    }
}

pub fn gen_family(kind: FamilyKind, n: usize) -> Result<Digraph> {
    let min = if kind == FamilyKind::SymmetricComplete { 1 } else { 2 };
    if n < min {
        return Err(Error::InvalidParameter(format!("{kind} needs at least {min} vertices, got {n}")));
    }
    match kind {
        FamilyKind::DirectedCycle => Digraph::from_arcs(n, (0..n).map(|i| (i, (i + 1) % n))),
        // On two vertices the cycle is a single digon.
        FamilyKind::SymmetricCycle if n == 2 => Digraph::symmetric(2, [(0, 1)]),
        FamilyKind::SymmetricCycle => Digraph::symmetric(n, (0..n).map(|i| (i, (i + 1) % n))),
        FamilyKind::SymmetricComplete => Digraph::symmetric(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))),
    }
}

fn check_probability(name: &str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("{name} = {p} is not a probability")));
    }
    Ok(())
}

/// Per unordered pair: a digon with probability `p_digon`, otherwise one arc
/// of random direction with probability `p_arc`.
pub fn gen_random(n: usize, p_arc: f64, p_digon: f64, seed: u64) -> Result<Digraph> {
    check_probability("p_arc", p_arc)?;
    check_probability("p_digon", p_digon)?;
    let mut rng = rng_from_seed(seed);
    Ok(random_with(&mut rng, n, p_arc, p_digon))
}

fn random_with(rng: &mut ChaCha8Rng, n: usize, p_arc: f64, p_digon: f64) -> Digraph {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p_digon) {
                arcs.extend([(u, v), (v, u)]);
            } else if rng.gen_bool(p_arc) {
                arcs.push(if rng.gen_bool(0.5) { (u, v) } else { (v, u) });
            }
        }
    }
    Digraph::from_arcs(n, arcs).expect("pairs are visited once")
}

/// Draws [`gen_random`]-style digraphs from one stream until a connected one
/// appears.
pub fn gen_random_connected(n: usize, p_arc: f64, p_digon: f64, seed: u64) -> Result<Digraph> {
    check_probability("p_arc", p_arc)?;
    check_probability("p_digon", p_digon)?;
    let mut rng = rng_from_seed(seed);
    for _ in 0..RETRIES * 10 {
        let g = random_with(&mut rng, n, p_arc, p_digon);
        if n > 0 && g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::GenerationFailed(format!(
        "no connected digraph on {n} vertices with p_arc = {p_arc}, p_digon = {p_digon}"
    )))
}

/// A `k`-regular digraph built from `k` random perfect matchings between
/// out-copies and in-copies, each avoiding loops and earlier arcs.
pub fn gen_k_regular(n: usize, k: usize, seed: u64) -> Result<Digraph> {
    if k >= n && !(n == 0 || k == 0) {
        return Err(Error::InvalidParameter(format!("need k < n, got k = {k}, n = {n}")));
    }
    let mut rng = rng_from_seed(seed);
    'attempt: for _ in 0..RETRIES {
        let mut taken = vec![vec![false; n]; n];
        let mut arcs = Vec::with_capacity(n * k);
        for _ in 0..k {
            let allowed = |u: Vertex, v: Vertex| u != v && !taken[u][v];
            let Some(matching) = random_matching(&mut rng, n, allowed) else {
                continue 'attempt;
            };
            for (u, v) in matching.into_iter().enumerate() {
                taken[u][v] = true;
                arcs.push((u, v));
            }
        }
        return Digraph::from_arcs(n, arcs);
    }
    Err(Error::GenerationFailed(format!("no {k}-regular digraph found on {n} vertices")))
}

/// Kuhn's augmenting-path matching with shuffled candidate lists; returns
/// the partner of each left vertex.
fn random_matching(rng: &mut ChaCha8Rng, n: usize, allowed: impl Fn(Vertex, Vertex) -> bool) -> Option<Vec<Vertex>> {
    let candidates: Vec<Vec<Vertex>> = (0..n)
        .map(|u| {
            let mut c: Vec<Vertex> = (0..n).filter(|&v| allowed(u, v)).collect();
            c.shuffle(rng);
            c
        })
        .collect();
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(rng);
    let mut right_of: Vec<Option<Vertex>> = vec![None; n];

    fn augment(u: Vertex, cand: &[Vec<Vertex>], right_of: &mut [Option<Vertex>], seen: &mut [bool]) -> bool {
        for &v in &cand[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if right_of[v].is_none_or(|w| augment(w, cand, right_of, seen)) {
                right_of[v] = Some(u);
                return true;
            }
        }
        false
    }

    for &u in &order {
        let mut seen = vec![false; n];
        if !augment(u, &candidates, &mut right_of, &mut seen) {
            return None;
        }
    }
    let mut left = vec![0; n];
    for (v, u) in right_of.into_iter().enumerate() {
        left[u?] = v;
    }
    Some(left)
}

/// A random k-tree with `num_pieces` pieces and its decomposition.
///
/// Pieces are symmetric complete digraphs on `k` vertices for `k >= 3` and
/// directed cycles of length 2 to 5 for `k = 2`. Pieces are joined by random
/// direct or cyclic compositions whose connectors still have room for an
/// extra arc.
pub fn gen_ktree(k: usize, num_pieces: usize, seed: u64) -> Result<(Digraph, KTreeDecomposition)> {
    if k < 2 || num_pieces == 0 {
        return Err(Error::InvalidParameter(format!(
            "need k >= 2 and at least one piece, got k = {k}, {num_pieces} pieces"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut pieces = Vec::with_capacity(num_pieces);
    let mut tree_of = Vec::new();
    let mut n = 0;
    for i in 0..num_pieces {
        let piece = if k == 2 {
            gen_family(FamilyKind::DirectedCycle, rng.gen_range(2..=5))?
        } else {
            gen_family(FamilyKind::SymmetricComplete, k)?
        };
        let ids: Vec<Vertex> = (n..n + piece.n()).collect();
        let cert = member_certificate(&piece, k - 1).expect("generated piece is an exception");
        pieces.push(cert.relabel(&ids));
        tree_of.extend(std::iter::repeat_n(i, piece.n()));
        n += piece.n();
    }

    // Free out- and in-slots; every piece vertex starts with one of each.
    let mut out_free = vec![true; n];
    let mut in_free = vec![true; n];
    let mut ops = Vec::with_capacity(num_pieces - 1);
    let mut trees: Vec<usize> = (0..num_pieces).collect();
    while trees.len() > 1 {
        let mut done = false;
        for _ in 0..RETRIES {
            let l = if rng.gen_bool(0.5) { 1 } else { rng.gen_range(2..=trees.len().min(4)) };
            let chosen: Vec<usize> = trees.choose_multiple(&mut rng, l.max(2)).copied().collect();
            let pick = |rng: &mut ChaCha8Rng, t: usize, ok: &dyn Fn(Vertex) -> bool| {
                let cands: Vec<Vertex> = (0..n).filter(|&v| tree_of[v] == t && ok(v)).collect();
                cands.choose(rng).copied()
            };
            let op = if l == 1 {
                let from = pick(&mut rng, chosen[0], &|v| out_free[v]);
                let to = pick(&mut rng, chosen[1], &|v| in_free[v]);
                match (from, to) {
                    (Some(from), Some(to)) => Composition::Direct { from, to },
                    _ => continue,
                }
            } else {
                let connectors: Option<Vec<Vertex>> = chosen
                    .iter()
                    .map(|&t| pick(&mut rng, t, &|v| out_free[v] && in_free[v]))
                    .collect();
                match connectors {
                    Some(connectors) => Composition::Cyclic { connectors },
                    None => continue,
                }
            };
            for (u, v) in op.arcs() {
                out_free[u] = false;
                in_free[v] = false;
            }
            let keep = chosen[0];
            for t in tree_of.iter_mut() {
                if chosen.contains(t) {
                    *t = keep;
                }
            }
            trees.retain(|t| *t == keep || !chosen.contains(t));
            ops.push(op);
            done = true;
            break;
        }
        if !done {
            return Err(Error::GenerationFailed(format!(
                "no legal connectors left with {} parts to join",
                trees.len()
            )));
        }
    }
    let decomp = KTreeDecomposition { k, n, pieces, ops };
    let g = decomp.reconstruct()?;
    Ok((g, decomp))
}

/// Every digraph on `n` vertices: each pair is absent, one of two arcs, or
/// a digon, so there are `4^(n(n-1)/2)` of them.
pub fn all_digraphs(n: usize) -> impl Iterator<Item = Digraph> {
    let pairs: Vec<(Vertex, Vertex)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let total = 1u64.checked_shl(2 * pairs.len() as u32).expect("too many digraphs to enumerate");
    (0..total).map(move |code| {
        let mut arcs = Vec::new();
        for (i, &(u, v)) in pairs.iter().enumerate() {
            let state = (code >> (2 * i)) & 3;
            if state & 1 == 1 {
                arcs.push((u, v));
            }
            if state & 2 == 2 {
                arcs.push((v, u));
            }
        }
        Digraph::from_arcs(n, arcs).expect("enumerated arcs are distinct")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ktree::is_ktree;

    #[test]
    fn family_examples() {
        let c3 = gen_family(FamilyKind::DirectedCycle, 3).unwrap();
        assert_eq!(c3.arcs().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 0)]);
        assert_eq!(gen_family(FamilyKind::SymmetricComplete, 4).unwrap().arc_count(), 12);
        let c5 = gen_family(FamilyKind::SymmetricCycle, 5).unwrap();
        assert_eq!((c5.arc_count(), c5.delta_max()), (10, 2));
        assert!(gen_family(FamilyKind::DirectedCycle, 1).is_err());
        assert_eq!(gen_family(FamilyKind::SymmetricComplete, 1).unwrap().n(), 1);
    }

    #[test]
    fn random_examples() {
        assert_eq!(gen_random(6, 0.0, 0.0, 1).unwrap().arc_count(), 0);
        assert_eq!(gen_random(6, 0.3, 1.0, 1).unwrap(), gen_family(FamilyKind::SymmetricComplete, 6).unwrap());
        assert_eq!(gen_random(9, 0.4, 0.2, 7).unwrap(), gen_random(9, 0.4, 0.2, 7).unwrap());
        assert!(gen_random(3, 1.5, 0.0, 0).is_err());
    }

    #[test]
    fn regular_examples() {
        assert!(gen_k_regular(3, 1, 5).unwrap().is_regular(1));
        assert!(gen_k_regular(5, 2, 5).unwrap().is_regular(2));
        assert_eq!(gen_k_regular(5, 4, 9).unwrap(), gen_family(FamilyKind::SymmetricComplete, 5).unwrap());
        assert!(gen_k_regular(4, 4, 0).is_err());
    }

    #[test]
    fn ktree_examples() {
        let (g, d) = gen_ktree(4, 1, 3).unwrap();
        assert_eq!(g, gen_family(FamilyKind::SymmetricComplete, 4).unwrap());
        assert!(d.ops.is_empty());
        for seed in 0..20 {
            for k in 2..=4 {
                let (g, _) = gen_ktree(k, 5, seed).unwrap();
                assert!(g.delta_max() <= k);
                assert!(is_ktree(&g, k).is_some(), "k = {k}, seed = {seed}");
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(all_digraphs(1).count(), 1);
        assert_eq!(all_digraphs(2).count(), 4);
        assert_eq!(all_digraphs(3).count(), 64);
    }
}
