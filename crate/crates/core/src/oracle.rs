//! Exact dichromatic number by backtracking.
//!
//! Colour classes are bitmasks. A vertex may join class `c` unless some
//! out-neighbour in the class reaches one of its in-neighbours in the class.

use crate::colouring::{Colour, Colouring};
use crate::digraph::{Digraph, Vertex};
use crate::error::{Error, Result};

pub const DEFAULT_LIMIT: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Oracle {
    pub limit: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { limit: DEFAULT_LIMIT }
    }
}

impl Oracle {
    pub fn new(limit: usize) -> Self {
        Oracle { limit }
    }

    fn check_size(&self, g: &Digraph) -> Result<()> {
        // Masks are u64, so 64 is a hard ceiling whatever the limit says.
        if g.n() > self.limit || g.n() > 64 {
            return Err(Error::SizeLimitExceeded { n: g.n(), limit: self.limit.min(64) });
        }
        Ok(())
    }

    pub fn is_k_dicolourable(&self, g: &Digraph, k: usize) -> Result<Option<Colouring>> {
        if k == 0 {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        self.check_size(g)?;
        let n = g.n();
        if n == 0 {
            return Ok(Some(Colouring::new(Vec::new())?));
        }
        let mut order: Vec<Vertex> = g.vertices().collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(g.out_degree(v) + g.in_degree(v)), v));
        let mask = |vs: &[Vertex]| vs.iter().fold(0u64, |m, &w| m | 1 << w);
        let search = Search {
            order,
            out_mask: g.vertices().map(|v| mask(g.out_neighbours(v))).collect(),
            in_mask: g.vertices().map(|v| mask(g.in_neighbours(v))).collect(),
            k,
        };
        let mut classes = Vec::with_capacity(k);
        let mut colours = vec![0; n];
        if search.run(0, &mut classes, &mut colours) {
            Ok(Some(Colouring::new(colours)?))
        } else {
            Ok(None)
        }
    }

    /// The dichromatic number; 0 for the empty digraph.
    pub fn chi_exact(&self, g: &Digraph) -> Result<usize> {
        self.check_size(g)?;
        if g.n() == 0 {
            return Ok(0);
        }
        for k in 1..=g.delta_min() + 1 {
            if self.is_k_dicolourable(g, k)?.is_some() {
                return Ok(k);
            }
        }
        Err(Error::InternalUnreachable(
            "no dicolouring within the minimum-degree bound".into(),
        ))
    }
}

struct Search {
    order: Vec<Vertex>,
    out_mask: Vec<u64>,
    in_mask: Vec<u64>,
    k: usize,
}

impl Search {
    fn closes_cycle(&self, v: Vertex, class: u64) -> bool {
        let target = self.in_mask[v] & class;
        if target == 0 {
            return false;
        }
        let mut reach = self.out_mask[v] & class;
        let mut frontier = reach;
        while frontier != 0 {
            if reach & target != 0 {
                return true;
            }
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                let u = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.out_mask[u] & class;
            }
            frontier = next & !reach;
            reach |= next;
        }
        reach & target != 0
    }

    fn run(&self, depth: usize, classes: &mut Vec<u64>, colours: &mut [Colour]) -> bool {
        let Some(&v) = self.order.get(depth) else {
            return true;
        };
        let open = (classes.len() + 1).min(self.k);
        for c in 0..open {
            if c == classes.len() {
                classes.push(0);
            }
            if !self.closes_cycle(v, classes[c]) {
                classes[c] |= 1 << v;
                colours[v] = c as Colour + 1;
                if self.run(depth + 1, classes, colours) {
                    return true;
                }
                classes[c] &= !(1 << v);
                colours[v] = 0;
            }
            if classes[c] == 0 {
                classes.pop();
            }
        }
        false
    }
}

/// [`Oracle::is_k_dicolourable`] with the default size limit.
pub fn is_k_dicolourable(g: &Digraph, k: usize) -> Result<Option<Colouring>> {
    Oracle::default().is_k_dicolourable(g, k)
}

/// [`Oracle::chi_exact`] with the default size limit.
pub fn chi_exact(g: &Digraph) -> Result<usize> {
    Oracle::default().chi_exact(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::is_valid;

    fn complete(n: usize) -> Digraph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Digraph::symmetric(n, edges).unwrap()
    }

    #[test]
    fn decision_examples() {
        let k4 = complete(4);
        assert!(is_k_dicolourable(&k4, 3).unwrap().is_none());
        let col = is_k_dicolourable(&k4, 4).unwrap().unwrap();
        assert!(is_valid(&k4, &col).unwrap());
        let c5 = Digraph::from_arcs(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        assert!(is_k_dicolourable(&c5, 1).unwrap().is_none());
        assert!(is_k_dicolourable(&c5, 2).unwrap().is_some());
        let c4 = Digraph::symmetric(4, (0..4).map(|i| (i, (i + 1) % 4))).unwrap();
        let col = is_k_dicolourable(&c4, 2).unwrap().unwrap();
        assert!(is_valid(&c4, &col).unwrap());
    }

    #[test]
    fn chi_examples() {
        assert_eq!(chi_exact(&Digraph::empty(1)).unwrap(), 1);
        assert_eq!(chi_exact(&Digraph::empty(0)).unwrap(), 0);
        let c7 = Digraph::symmetric(7, (0..7).map(|i| (i, (i + 1) % 7))).unwrap();
        assert_eq!(chi_exact(&c7).unwrap(), 3);
        let tournament = Digraph::from_arcs(5, (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v)))).unwrap();
        assert_eq!(chi_exact(&tournament).unwrap(), 1);
    }

    #[test]
    fn size_limit() {
        let g = Digraph::empty(15);
        assert_eq!(chi_exact(&g), Err(Error::SizeLimitExceeded { n: 15, limit: 14 }));
        assert_eq!(Oracle::new(20).chi_exact(&g).unwrap(), 1);
    }
}
