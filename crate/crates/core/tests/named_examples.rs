//! Textbook instances with well-known invariants.

use vcchrom::constructions::{kneser, zykov_matching, KneserParams};
use vcchrom::graph::{self, is_triangle_free, odd_girth};
use vcchrom::hypergraph::{
    dual_vc_dimension, fractional_transversality, neighborhood_hypergraph, transversality_exact,
    vc_dimension,
};
use vcchrom::named;
use vcchrom::rational::rat;
use vcchrom::search::{has_induced_cube, induced_subgraph_contains};
use vcchrom::solvers::{chromatic_number_exact, fractional_chromatic, independence_number};
use vcchrom::{Graph, Hypergraph};

fn mycielski(g: &Graph) -> Graph {
    let n = g.n();
    let mut edges = g.edges();
    for (u, v) in g.edges() {
        edges.push((u, n + v));
        edges.push((v, n + u));
    }
    edges.extend((0..n).map(|u| (n + u, 2 * n)));
    Graph::from_edges(2 * n + 1, &edges).unwrap()
}

fn fano() -> Hypergraph {
    let lines: Vec<Vec<usize>> = (0..7).map(|i| vec![i, (i + 1) % 7, (i + 3) % 7]).collect();
    Hypergraph::from_lists(7, &lines).unwrap()
}

#[test]
fn petersen() {
    let g = named::petersen();
    assert_eq!(chromatic_number_exact(&g).unwrap().0, 3);
    assert_eq!(independence_number(&g).unwrap().0, 4);
    assert_eq!(fractional_chromatic(&g).unwrap().0, rat(5, 2));
    assert_eq!(odd_girth(&g), Some(5));
    assert!(is_triangle_free(&g));
}

#[test]
fn kneser_five_two_is_petersen() {
    let k = kneser(&KneserParams { n: 2, k: 1 }).unwrap();
    assert_eq!((k.n(), k.edge_count()), (10, 15));
    assert!(induced_subgraph_contains(&k, &named::petersen())
        .unwrap()
        .is_some());
}

#[test]
fn grotzsch_graph() {
    let g = mycielski(&named::cycle(5));
    assert_eq!((g.n(), g.edge_count()), (11, 20));
    assert!(is_triangle_free(&g));
    assert_eq!(chromatic_number_exact(&g).unwrap().0, 4);
    assert_eq!(fractional_chromatic(&g).unwrap().0, rat(29, 10));
}

#[test]
fn zykov_matchings() {
    // endpoints colored by parity, apexes share a third color; a 5-cycle
    // appears once there are two matching edges
    for k in 1..=4 {
        let z = zykov_matching(k).unwrap();
        assert_eq!(z.n(), 2 * k + (1 << k));
        assert!(is_triangle_free(&z));
        assert_eq!(
            chromatic_number_exact(&z).unwrap().0,
            if k == 1 { 2 } else { 3 },
            "k = {k}"
        );
    }
}

#[test]
fn cube() {
    let g = named::cube();
    assert!(has_induced_cube(&g).unwrap());
    assert!(!has_induced_cube(&named::petersen()).unwrap());
    assert_eq!(chromatic_number_exact(&g).unwrap().0, 2);
    let h = neighborhood_hypergraph(&g);
    assert_eq!(dual_vc_dimension(&h).unwrap().dimension, 2);
}

#[test]
fn fano_plane() {
    let h = fano();
    assert_eq!(transversality_exact(&h).unwrap().size, 3);
    assert_eq!(
        fractional_transversality(&h).unwrap().weighting.total,
        rat(7, 3)
    );
    assert_eq!(vc_dimension(&h).unwrap().dimension, 2);
    assert_eq!(dual_vc_dimension(&h).unwrap().dimension, 2);
}

#[test]
fn complete_bipartite_neighborhoods() {
    let g = named::complete_bipartite(3, 3);
    let h = neighborhood_hypergraph(&g);
    assert_eq!(transversality_exact(&h).unwrap().size, 2);
    assert_eq!(
        fractional_transversality(&h).unwrap().weighting.total,
        rat(2, 1)
    );
    assert_eq!(graph::min_degree(&g).unwrap(), 3);
}
