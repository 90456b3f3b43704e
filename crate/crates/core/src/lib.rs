//! Dicolouring of digraphs within the directed Brooks bound.
//!
//! Every connected digraph `G` with maximum maxdegree `k` has a dicolouring
//! with `k` colours unless it is a directed cycle (`k = 1`), a symmetric odd
//! cycle (`k = 2`) or the symmetric complete digraph on `k + 1` vertices.
//! Four independent colourers construct such colourings (or certify the
//! exception): [`lovasz::lovasz_colour`], [`induction::induction_colour`],
//! [`ktree::ktree_colour`] and [`partition::partition_colour`]. The
//! [`oracle`] module computes the dichromatic number exactly for small inputs
//! and [`hardness`] implements the reduction showing that deciding
//! `delta_min`-dicolourability is hard.

pub mod colouring;
pub mod digraph;
pub mod error;
pub mod exceptions;
pub mod generators;
pub mod hardness;
pub mod induction;
pub mod io;
pub mod ktree;
pub mod lovasz;
pub mod oracle;
pub mod partition;
pub mod selftest;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use colouring::{greedy_dicolour, is_valid, Colour, Colouring};
pub use digraph::{Digraph, Vertex};
pub use error::{Error, Result};
pub use exceptions::{classify_exception, verify_certificate, ExceptionCertificate, ExceptionKind};

/// Outcome of a Brooks colourer on a connected digraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum BrooksResult {
    /// A valid colouring with at most `delta_max` colours.
    Coloured(Colouring),
    /// The digraph belongs to the exception family at its own level.
    Exception(ExceptionCertificate),
}

impl BrooksResult {
    /// The colouring, or the optimal `k + 1` colouring of the exception.
    pub fn into_colouring(self, n: usize) -> Colouring {
        match self {
            BrooksResult::Coloured(c) => c,
            BrooksResult::Exception(cert) => exceptions::exception_colouring(n, &cert),
        }
    }

    pub fn is_exception(&self) -> bool {
        matches!(self, BrooksResult::Exception(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Lovasz,
    Induction,
    Ktree,
    Partition,
    /// Lovász first, then the others in turn if one reports an error.
    Auto,
}

impl Strategy {
    pub const CONCRETE: [Strategy; 4] = [
        Strategy::Lovasz,
        Strategy::Induction,
        Strategy::Ktree,
        Strategy::Partition,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Lovasz => "lovasz",
            Strategy::Induction => "induction",
            Strategy::Ktree => "ktree",
            Strategy::Partition => "partition",
            Strategy::Auto => "auto",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lovasz" => Ok(Strategy::Lovasz),
            "induction" => Ok(Strategy::Induction),
            "ktree" => Ok(Strategy::Ktree),
            "partition" => Ok(Strategy::Partition),
            "auto" => Ok(Strategy::Auto),
            other => Err(Error::InvalidParameter(format!("unknown strategy {other:?}"))),
        }
    }
}

pub(crate) fn require_connected(g: &Digraph) -> Result<()> {
    if g.n() == 0 {
        return Err(Error::EmptyDigraph);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// Runs one colourer on a connected digraph.
pub fn brooks_colour(g: &Digraph, strategy: Strategy) -> Result<BrooksResult> {
    match strategy {
        Strategy::Lovasz => lovasz::lovasz_colour(g),
        Strategy::Induction => induction::induction_colour(g),
        Strategy::Ktree => ktree::ktree_colour(g),
        Strategy::Partition => partition::partition_colour(g),
        Strategy::Auto => {
            let mut last = None;
            for s in Strategy::CONCRETE {
                match brooks_colour(g, s) {
                    Ok(r) => return Ok(r),
                    Err(e) => {
                        log::warn!("{s} failed: {e}");
                        last = Some(e);
                    }
                }
            }
            Err(last.expect("at least one strategy ran"))
        }
    }
}

/// Colours any digraph, one component at a time. Components that are
/// exceptions get their optimal colouring, so the result uses at most
/// `delta_max + 1` colours, and at most `delta_max` when no component is an
/// exception at level `delta_max`.
pub fn dicolour(g: &Digraph, strategy: Strategy) -> Result<Colouring> {
    if g.n() == 0 {
        return Err(Error::EmptyDigraph);
    }
    let mut colours = vec![0; g.n()];
    for comp in g.components() {
        let sub = g.induced(&comp);
        let col = brooks_colour(&sub, strategy)?.into_colouring(sub.n());
        for (i, &v) in comp.iter().enumerate() {
            colours[v] = col.colour(i);
        }
    }
    Ok(Colouring::compact(colours))
}
