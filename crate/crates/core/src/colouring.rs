//! Dicolourings: validity checking, normalisation, and greedy colouring.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::digraph::{Digraph, Vertex};
use crate::error::{Error, Result};

pub type Colour = u32;

/// A total vertex colouring using every colour of `1..=num_colours`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawColouring")]
pub struct Colouring {
    colours: Vec<Colour>,
    num_colours: usize,
}

#[derive(Deserialize)]
struct RawColouring {
    colours: Vec<Colour>,
    num_colours: usize,
}

impl TryFrom<RawColouring> for Colouring {
    type Error = Error;

    fn try_from(raw: RawColouring) -> Result<Self> {
        let col = Colouring::new(raw.colours)?;
        if col.num_colours != raw.num_colours {
            return Err(Error::InvalidColouring(format!(
                "num_colours is {} but {} colours are used",
                raw.num_colours, col.num_colours
            )));
        }
        Ok(col)
    }
}

impl Colouring {
    /// Accepts colours that form the contiguous range `1..=c`.
    pub fn new(colours: Vec<Colour>) -> Result<Self> {
        if colours.contains(&0) {
            return Err(Error::InvalidColouring("colour 0 is not allowed".into()));
        }
        let max = colours.iter().copied().max().unwrap_or(0) as usize;
        let mut used = vec![false; max + 1];
        for &c in &colours {
            used[c as usize] = true;
        }
        if let Some(gap) = (1..=max).find(|&c| !used[c]) {
            return Err(Error::InvalidColouring(format!(
                "colour {gap} is unused but {max} is"
            )));
        }
        Ok(Colouring {
            colours,
            num_colours: max,
        })
    }

    /// Renames arbitrary positive colours onto `1..=c`, keeping their
    /// relative order.
    pub fn compact(colours: Vec<Colour>) -> Self {
        let mut distinct: Vec<Colour> = colours.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let rename: HashMap<Colour, Colour> = distinct
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, i as Colour + 1))
            .collect();
        Colouring {
            colours: colours.iter().map(|c| rename[c]).collect(),
            num_colours: distinct.len(),
        }
    }

    pub fn colours(&self) -> &[Colour] {
        &self.colours
    }

    pub fn colour(&self, v: Vertex) -> Colour {
        self.colours[v]
    }

    pub fn num_colours(&self) -> usize {
        self.num_colours
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    pub fn into_colours(self) -> Vec<Colour> {
        self.colours
    }

    /// Colour classes, indexed by `colour - 1`.
    pub fn classes(&self) -> Vec<Vec<Vertex>> {
        let mut classes = vec![Vec::new(); self.num_colours];
        for (v, &c) in self.colours.iter().enumerate() {
            classes[c as usize - 1].push(v);
        }
        classes
    }

    /// Renames colours in order of first occurrence. Idempotent.
    pub fn normalize(&self) -> Colouring {
        let mut rename: HashMap<Colour, Colour> = HashMap::new();
        let colours = self
            .colours
            .iter()
            .map(|&c| {
                let next = rename.len() as Colour + 1;
                *rename.entry(c).or_insert(next)
            })
            .collect();
        Colouring {
            colours,
            num_colours: self.num_colours,
        }
    }

    /// Two colourings induce the same partition of the vertices.
    pub fn same_classes(&self, other: &Colouring) -> bool {
        self.normalize() == other.normalize()
    }
}

/// True iff no colour class contains a directed cycle.
pub fn is_valid(g: &Digraph, col: &Colouring) -> Result<bool> {
    if col.len() != g.n() {
        return Err(Error::PartialColouring {
            expected: g.n(),
            got: col.len(),
        });
    }
    Ok(monochromatic_acyclic(g, col.colours()))
}

/// Topological sort restricted to monochromatic arcs. Entries equal to 0 are
/// treated as uncoloured and never close a cycle.
pub(crate) fn monochromatic_acyclic(g: &Digraph, colours: &[Colour]) -> bool {
    let same = |u: Vertex, v: Vertex| colours[u] != 0 && colours[u] == colours[v];
    let mut indeg: Vec<usize> = g
        .vertices()
        .map(|v| g.in_neighbours(v).iter().filter(|&&u| same(u, v)).count())
        .collect();
    let mut queue: VecDeque<Vertex> = g.vertices().filter(|&v| indeg[v] == 0).collect();
    let mut removed = 0;
    while let Some(u) = queue.pop_front() {
        removed += 1;
        for &v in g.out_neighbours(u) {
            if same(u, v) {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    queue.push_back(v);
                }
            }
        }
    }
    removed == g.n()
}

/// Smallest colour `>= 1` absent from the given colours (0 entries ignored).
pub(crate) fn smallest_absent<I: IntoIterator<Item = Colour>>(used: I) -> Colour {
    let mut seen: Vec<bool> = Vec::new();
    for c in used {
        if c == 0 {
            continue;
        }
        let c = c as usize;
        if seen.len() <= c {
            seen.resize(c + 1, false);
        }
        seen[c] = true;
    }
    (1..).find(|&c| c >= seen.len() || !seen[c]).unwrap() as Colour
}

/// The greedy choice for `v` given a partial colouring (0 = uncoloured):
/// the smaller of the least colour missing from its coloured out-neighbours
/// and the least colour missing from its coloured in-neighbours.
pub(crate) fn greedy_choice(g: &Digraph, v: Vertex, colours: &[Colour]) -> Colour {
    let plus = smallest_absent(g.out_neighbours(v).iter().map(|&w| colours[w]));
    let minus = smallest_absent(g.in_neighbours(v).iter().map(|&w| colours[w]));
    plus.min(minus)
}

/// Colours vertices in `order`, each receiving [`greedy_choice`].
pub fn greedy_dicolour(g: &Digraph, order: &[Vertex]) -> Result<Colouring> {
    let n = g.n();
    let mut seen = vec![false; n];
    if order.len() != n
        || order.iter().any(|&v| v >= n || std::mem::replace(&mut seen[v], true))
    {
        return Err(Error::NotAPermutation { n });
    }
    let mut colours = vec![0; n];
    greedy_extend(g, order, &mut colours);
    Ok(Colouring::new(colours).expect("greedy colours are contiguous"))
}

/// Greedily colours the listed vertices of a partial colouring in order.
pub(crate) fn greedy_extend(g: &Digraph, order: &[Vertex], colours: &mut [Colour]) {
    for &v in order {
        colours[v] = greedy_choice(g, v, colours);
    }
}
