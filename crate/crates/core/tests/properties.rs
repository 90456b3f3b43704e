mod common;

use dibrooks::colouring::{greedy_dicolour, is_valid, Colouring};
use dibrooks::exceptions::classify;
use dibrooks::hardness::reduce;
use dibrooks::induction::maximal_acyclic_set;
use dibrooks::io::{parse_edge_list, serialize_edge_list};
use dibrooks::ktree::{find_peel_vertex, is_ktree};
use dibrooks::oracle::chi_exact;
use dibrooks::partition::{improve_to_special_traced, is_r_special, NormalPartition};
use dibrooks::{dicolour, Digraph, Strategy as Colourer};
use proptest::prelude::*;

/// A digraph on `1..=max_n` vertices: each pair is absent, one arc either
/// way, or a digon.
fn digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(0u8..4, pairs).prop_map(move |states| {
            let mut arcs = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if states[i] & 1 == 1 {
                        arcs.push((u, v));
                    }
                    if states[i] & 2 == 2 {
                        arcs.push((v, u));
                    }
                    i += 1;
                }
            }
            Digraph::from_arcs(n, arcs).unwrap()
        })
    })
}

fn with_colours(max_n: usize) -> impl Strategy<Value = (Digraph, Vec<u32>)> {
    digraph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), prop::collection::vec(1u32..4, n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn validity_matches_cycle_search((g, colours) in with_colours(8)) {
        let col = Colouring::compact(colours);
        prop_assert_eq!(is_valid(&g, &col).unwrap(), common::brute_is_valid(&g, col.colours()));
    }

    #[test]
    fn greedy_respects_mindegree_bound(g in digraph(12), seed in any::<u64>()) {
        let mut order: Vec<usize> = g.vertices().collect();
        let n = order.len();
        order.rotate_left((seed as usize) % n);
        let col = greedy_dicolour(&g, &order).unwrap();
        prop_assert!(common::brute_is_valid(&g, col.colours()));
        prop_assert!(col.num_colours() <= g.delta_min() + 1);
    }

    #[test]
    fn oracle_matches_enumeration(g in digraph(6)) {
        let chi = chi_exact(&g).unwrap();
        prop_assert_eq!(chi, common::brute_chi(&g));
        prop_assert!(chi <= g.delta_min() + 1);
    }

    #[test]
    fn brooks_bound_for_every_component(g in digraph(8)) {
        let col = dicolour(&g, Colourer::Auto).unwrap();
        prop_assert!(common::brute_is_valid(&g, col.colours()));
        let exceptional = g.components().iter().any(|c| {
            let h = g.induced(c);
            h.delta_max() == g.delta_max() && classify(&h).is_some()
        });
        let bound = g.delta_max() + usize::from(exceptional);
        prop_assert!(col.num_colours() <= bound.max(1));
    }

    #[test]
    fn edge_list_round_trip(g in digraph(10)) {
        let text = serialize_edge_list(&g);
        let back = parse_edge_list(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(serialize_edge_list(&back), text);
    }

    #[test]
    fn json_round_trip(g in digraph(8)) {
        let text = serde_json::to_string(&g).unwrap();
        let back: Digraph = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn maximal_acyclic_sets(g in digraph(10)) {
        let set = maximal_acyclic_set(&g);
        prop_assert!(g.induced(&set).is_acyclic());
        for v in g.vertices().filter(|v| !set.contains(v)) {
            let mut bigger = set.clone();
            bigger.push(v);
            prop_assert!(!g.induced(&bigger).is_acyclic());
        }
    }

    #[test]
    fn improvement_reaches_special_parts(g in digraph(10), mask in any::<u16>(), r1 in 1usize..4) {
        let k = g.delta_max().max(r1 + 1);
        let r2 = k - r1;
        let part_of = (0..g.n()).map(|v| if mask >> v & 1 == 1 { 1 } else { 2 }).collect();
        let p = NormalPartition::new(&g, part_of, r1, r2).unwrap();
        let (q, trace) = improve_to_special_traced(&g, &p).unwrap();
        prop_assert_eq!(q.potential, q.recompute_potential(&g));
        prop_assert!(is_r_special(&g.induced(&q.members(1)), r1));
        prop_assert!(is_r_special(&g.induced(&q.members(2)), r2));
        for w in trace.windows(2) {
            prop_assert!(w[1] + (r1 + r2) as u64 <= w[0]);
        }
    }

    #[test]
    fn reduction_lowers_mindegree(g in digraph(6), k in 2usize..5) {
        let r = reduce(&g, k).unwrap();
        prop_assert_eq!(r.graph.n(), (k + 1) * g.n());
        prop_assert!(r.graph.delta_min() <= k);
        // Per gadget: a clique on k vertices, u+ joined both ways to the
        // k - 1 inner vertices, and u- -> u+.
        let per_vertex = k * (k - 1) + 2 * (k - 1) + 1;
        prop_assert_eq!(r.graph.arc_count(), g.n() * per_vertex + g.arc_count());
    }

    #[test]
    fn peel_vertices_satisfy_their_contract(g in digraph(9)) {
        prop_assume!(g.is_connected());
        let k = g.delta_max();
        prop_assume!(k >= 2 && classify(&g).is_none() && is_ktree(&g, k).is_none());
        let v = find_peel_vertex(&g, k);
        prop_assert!(v.is_some());
        let v = v.unwrap();
        prop_assert_eq!(g.max_degree(v), k);
        let (rest, _) = g.without(&[v]);
        for c in rest.components() {
            prop_assert!(is_ktree(&rest.induced(&c), k).is_none());
        }
    }
}
