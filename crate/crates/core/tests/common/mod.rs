//! Reference implementations used as test oracles. They share no code with
//! the library beyond the `Digraph` accessors.

#![allow(dead_code)]

use dibrooks::generators::{all_digraphs, gen_k_regular, gen_random_connected, rng_from_seed};
use dibrooks::Digraph;
use rand::Rng;

/// Depth-first cycle search inside one colour class.
fn class_has_cycle(g: &Digraph, colours: &[u32], c: u32) -> bool {
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; g.n()];
    fn visit(g: &Digraph, colours: &[u32], c: u32, v: usize, state: &mut [u8]) -> bool {
        state[v] = 1;
        for &w in g.out_neighbours(v) {
            if colours[w] != c {
                continue;
            }
            if state[w] == 1 || (state[w] == 0 && visit(g, colours, c, w, state)) {
                return true;
            }
        }
        state[v] = 2;
        false
    }
    (0..g.n()).any(|v| colours[v] == c && state[v] == 0 && visit(g, colours, c, v, &mut state))
}

pub fn brute_is_valid(g: &Digraph, colours: &[u32]) -> bool {
    let max = colours.iter().copied().max().unwrap_or(0);
    (1..=max).all(|c| !class_has_cycle(g, colours, c))
}

/// Whether some assignment of `k` colours is a dicolouring, by enumeration.
pub fn brute_colourable(g: &Digraph, k: u32) -> bool {
    let n = g.n();
    let mut colours = vec![1u32; n];
    loop {
        if brute_is_valid(g, &colours) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            if colours[i] < k {
                colours[i] += 1;
                break;
            }
            colours[i] = 1;
            i += 1;
        }
    }
}

pub fn brute_chi(g: &Digraph) -> usize {
    if g.n() == 0 {
        return 0;
    }
    (1..=g.n() as u32).find(|&k| brute_colourable(g, k)).unwrap() as usize
}

/// Chromatic number of an undirected graph by enumeration.
pub fn undirected_chromatic(n: usize, edges: &[(usize, usize)]) -> usize {
    if n == 0 {
        return 0;
    }
    for k in 1..=n {
        let mut colours = vec![0usize; n];
        loop {
            if edges.iter().all(|&(u, v)| colours[u] != colours[v]) {
                return k;
            }
            let mut i = 0;
            while i < n && colours[i] + 1 == k {
                colours[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
            colours[i] += 1;
        }
    }
    unreachable!("n colours always suffice")
}

/// Every undirected graph on `n` vertices as an edge list.
pub fn all_graphs(n: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0..1u64 << pairs.len())
        .map(|mask| {
            pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect()
        })
        .collect()
}

pub fn all_connected_digraphs(max_n: usize) -> Vec<Digraph> {
    (1..=max_n).flat_map(all_digraphs).filter(|g| g.is_connected()).collect()
}

/// Seeded random connected digraphs with `lo <= n <= hi`; every fifth one
/// is regular when the regular draw happens to be connected.
pub fn random_corpus(count: usize, lo: usize, hi: usize, seed: u64) -> Vec<Digraph> {
    let mut master = rng_from_seed(seed);
    (0..count)
        .map(|i| {
            let n = master.gen_range(lo..=hi);
            let s: u64 = master.gen();
            if i % 5 == 4 {
                let k = master.gen_range(1..n);
                let g = gen_k_regular(n, k, s).unwrap();
                if g.is_connected() {
                    return g;
                }
            }
            let p_arc = master.gen_range(0.15..0.9);
            let p_digon = master.gen_range(0.0..0.6);
            gen_random_connected(n, p_arc, p_digon, s).unwrap()
        })
        .collect()
}
