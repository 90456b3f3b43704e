//! The exception families: directed cycles at level 1, symmetric odd cycles
//! at level 2 and symmetric complete digraphs on `k + 1` vertices at level
//! `k >= 3`. These are exactly the connected digraphs that need
//! `delta_max + 1` colours, once the single vertex is counted as the
//! complete digraph at level 0.

use serde::{Deserialize, Serialize};

use crate::colouring::{Colour, Colouring};
use crate::digraph::{Digraph, Vertex};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExceptionKind {
    DirectedCycle,
    SymmetricOddCycle,
    SymmetricComplete,
}

impl ExceptionKind {
    /// The family member kind at level `k`. Level 0 holds the single vertex,
    /// the complete digraph on one vertex.
    pub fn for_level(k: usize) -> ExceptionKind {
        match k {
            1 => ExceptionKind::DirectedCycle,
            2 => ExceptionKind::SymmetricOddCycle,
            _ => ExceptionKind::SymmetricComplete,
        }
    }
}

/// Evidence that a connected digraph is a member of the level-`k` family.
///
/// For the cycle kinds `witness` lists the cycle starting at its smallest
/// vertex; for directed cycles it follows the arcs, for symmetric cycles the
/// second entry is the smaller neighbour of the first. For the complete kind
/// it is the sorted vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExceptionCertificate {
    pub kind: ExceptionKind,
    pub k: usize,
    pub witness: Vec<Vertex>,
}

impl ExceptionCertificate {
    /// Arcs of the member described by the witness.
    pub fn expected_arcs(&self) -> Vec<(Vertex, Vertex)> {
        let w = &self.witness;
        let len = w.len();
        match self.kind {
            ExceptionKind::DirectedCycle => (0..len).map(|i| (w[i], w[(i + 1) % len])).collect(),
            ExceptionKind::SymmetricOddCycle => (0..len)
                .flat_map(|i| {
                    let (a, b) = (w[i], w[(i + 1) % len]);
                    [(a, b), (b, a)]
                })
                .collect(),
            ExceptionKind::SymmetricComplete => w
                .iter()
                .flat_map(|&a| w.iter().filter(move |&&b| b != a).map(move |&b| (a, b)))
                .collect(),
        }
    }

    /// Rewrites the witness through `map` (e.g. from subgraph to parent ids).
    pub fn relabel(&self, map: &[Vertex]) -> ExceptionCertificate {
        ExceptionCertificate {
            kind: self.kind,
            k: self.k,
            witness: self.witness.iter().map(|&v| map[v]).collect(),
        }
    }

    fn shape_is_consistent(&self) -> bool {
        let len = self.witness.len();
        match self.kind {
            ExceptionKind::DirectedCycle => self.k == 1 && len >= 2,
            ExceptionKind::SymmetricOddCycle => self.k == 2 && len >= 3 && len % 2 == 1,
            ExceptionKind::SymmetricComplete => (self.k == 0 || self.k >= 3) && len == self.k + 1,
        }
    }
}

/// Returns a certificate iff `g` is a member of the level-`k` family, where
/// `k` must equal the maximum maxdegree of `g`.
pub fn classify_exception(g: &Digraph, k: usize) -> Result<Option<ExceptionCertificate>> {
    let actual = g.delta_max();
    if k != actual {
        return Err(Error::LevelMismatch { requested: k, actual });
    }
    Ok(member_certificate(g, k))
}

/// Shorthand for [`classify_exception`] at the digraph's own level.
pub fn classify(g: &Digraph) -> Option<ExceptionCertificate> {
    member_certificate(g, g.delta_max())
}

/// Certificate for `g` as a member of the level-`k` family, if it is one.
/// Unlike [`classify_exception`], `k` need not be the maximum maxdegree.
pub fn member_certificate(g: &Digraph, k: usize) -> Option<ExceptionCertificate> {
    let kind = ExceptionKind::for_level(k);
    let n = g.n();
    let regular = match kind {
        ExceptionKind::DirectedCycle => n >= 2 && g.is_regular(1),
        ExceptionKind::SymmetricOddCycle => n >= 3 && n % 2 == 1 && g.is_regular(2) && g.is_symmetric(),
        ExceptionKind::SymmetricComplete => n == k + 1 && g.arc_count() == n * (n - 1),
    };
    if !regular || !g.is_connected() {
        return None;
    }
    let witness = match kind {
        ExceptionKind::DirectedCycle => {
            let mut w = vec![0];
            let mut cur = g.out_neighbours(0)[0];
            while cur != 0 {
                w.push(cur);
                cur = g.out_neighbours(cur)[0];
            }
            w
        }
        ExceptionKind::SymmetricOddCycle => {
            let mut w = vec![0];
            let (mut prev, mut cur) = (0, g.out_neighbours(0)[0]);
            while cur != 0 {
                w.push(cur);
                let next = *g
                    .out_neighbours(cur)
                    .iter()
                    .find(|&&x| x != prev)
                    .expect("2-regular symmetric vertex has two neighbours");
                prev = cur;
                cur = next;
            }
            w
        }
        ExceptionKind::SymmetricComplete => (0..n).collect(),
    };
    // A connected 1- or 2-regular digraph is one cycle, so the walk covers it.
    debug_assert_eq!(witness.len(), n);
    Some(ExceptionCertificate { kind, k, witness })
}

/// Re-checks a certificate against `g` from scratch.
pub fn verify_certificate(g: &Digraph, cert: &ExceptionCertificate) -> bool {
    if !cert.shape_is_consistent() || cert.witness.len() != g.n() {
        return false;
    }
    let mut seen = vec![false; g.n()];
    for &v in &cert.witness {
        if v >= g.n() || std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    let expected = cert.expected_arcs();
    expected.len() == g.arc_count() && expected.iter().all(|&(u, v)| g.has_arc(u, v))
}

/// An optimal colouring of a certified member: `k + 1` colours.
pub fn exception_colouring(n: usize, cert: &ExceptionCertificate) -> Colouring {
    let mut colours = vec![0 as Colour; n];
    for (v, c) in exception_assignment(cert) {
        colours[v] = c;
    }
    Colouring::new(colours).expect("exception colouring is contiguous")
}

/// `(vertex, colour)` pairs of the optimal colouring, in witness order.
pub(crate) fn exception_assignment(cert: &ExceptionCertificate) -> Vec<(Vertex, Colour)> {
    let w = &cert.witness;
    w.iter()
        .enumerate()
        .map(|(i, &v)| {
            let c = match cert.kind {
                ExceptionKind::DirectedCycle => 1 + (i == 0) as Colour,
                ExceptionKind::SymmetricOddCycle if i + 1 == w.len() => 3,
                ExceptionKind::SymmetricOddCycle => (i % 2) as Colour + 1,
                ExceptionKind::SymmetricComplete => i as Colour + 1,
            };
            (v, c)
        })
        .collect()
}
