//! The 4-tree made of seven symmetric complete digraphs on four vertices:
//! two direct compositions, one digon and one cyclic composition of four
//! parts.

mod common;

use dibrooks::generators::{gen_family, gen_ktree, FamilyKind};
use dibrooks::ktree::{colour_ktree, cyclic_compose, direct_compose, is_ktree, ktree_colour, ArcDirection, Composition, KTreeDecomposition};
use dibrooks::exceptions::member_certificate;
use dibrooks::{BrooksResult, Digraph};

const BLUE: usize = 0;
const A: usize = 4;
const B: usize = 8;
const C: usize = 12;
const R1: usize = 16;
const R2: usize = 20;
const R3: usize = 24;

fn figure() -> KTreeDecomposition {
    let k4 = gen_family(FamilyKind::SymmetricComplete, 4).unwrap();
    let pieces = (0..7)
        .map(|i| {
            let ids: Vec<usize> = (4 * i..4 * i + 4).collect();
            member_certificate(&k4, 3).unwrap().relabel(&ids)
        })
        .collect();
    KTreeDecomposition {
        k: 4,
        n: 28,
        pieces,
        ops: vec![
            Composition::Direct { from: BLUE + 1, to: A },
            Composition::Direct { from: A + 2, to: B },
            Composition::Cyclic { connectors: vec![A + 3, C] },
            Composition::Cyclic { connectors: vec![C + 1, R1, R2, R3] },
        ],
    }
}

#[test]
fn figure_matches_the_composition_operators() {
    let k4 = gen_family(FamilyKind::SymmetricComplete, 4).unwrap();
    let ring = cyclic_compose(&[(k4.clone(), 1), (k4.clone(), 0), (k4.clone(), 0), (k4.clone(), 0)]).unwrap();
    let c_side = cyclic_compose(&[(k4.clone(), 3), (ring, 0)]).unwrap();
    // c_side: A at 0..4, then C, R1, R2, R3; rebuild with B and blue in front.
    let with_b = direct_compose(&c_side, 2, &k4, 0, ArcDirection::Forward).unwrap();
    let g = direct_compose(&k4, 1, &with_b, 0, ArcDirection::Forward).unwrap();
    // Relabel: the operator layout is blue, A, C, R1, R2, R3, B.
    let layout = [BLUE, A, C, R1, R2, R3, B];
    let map: Vec<usize> = (0..28).map(|v| layout[v / 4] + v % 4).collect();
    let relabelled = Digraph::from_arcs(28, g.arcs().map(|(u, v)| (map[u], map[v]))).unwrap();
    assert_eq!(relabelled, figure().reconstruct().unwrap());
}

#[test]
fn figure_is_recognised_and_coloured() {
    let g = figure().reconstruct().unwrap();
    assert_eq!(g.delta_max(), 4);
    assert_eq!(g.arc_count(), 7 * 12 + 1 + 1 + 2 + 4);
    let found = is_ktree(&g, 4).expect("figure is a 4-tree");
    assert_eq!(found.pieces.len(), 7);
    assert_eq!(found.ops.len(), 4);
    assert_eq!(found.reconstruct().unwrap(), g);
    let col = colour_ktree(&found).unwrap();
    assert!(common::brute_is_valid(&g, col.colours()));
    assert!(col.num_colours() <= 4);
    match ktree_colour(&g).unwrap() {
        BrooksResult::Coloured(col) => {
            assert!(common::brute_is_valid(&g, col.colours()));
            assert!(col.num_colours() <= 4);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn breaking_a_piece_is_not_a_ktree() {
    let g = figure().reconstruct().unwrap().without_links(&[(R2, R2 + 1)]);
    assert!(is_ktree(&g, 4).is_none());
}

#[test]
fn generated_seven_piece_trees_are_deterministic() {
    let (g1, d1) = gen_ktree(4, 7, 2024).unwrap();
    let (g2, d2) = gen_ktree(4, 7, 2024).unwrap();
    assert_eq!((g1.clone(), d1), (g2, d2));
    assert_eq!(g1.n(), 28);
    assert!(is_ktree(&g1, 4).is_some());
}
