//! Brute-force oracles and proptest strategies shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use vcchrom::{Graph, Hypergraph, PairedHypergraph};

pub fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut i = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[i] {
                edges.push((u, v));
            }
            i += 1;
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

pub fn graphs(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2)
            .prop_map(move |b| graph_from_bits(n, &b))
    })
}

/// Triangle-free graphs: drop every edge that closes a triangle, in order.
pub fn triangle_free_graphs(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    graphs(min_n, max_n).prop_map(|g| {
        let mut kept: Vec<(usize, usize)> = Vec::new();
        for (u, v) in g.edges() {
            let h = Graph::from_edges(g.n(), &kept).unwrap();
            if h.neighbors(u).is_disjoint(h.neighbors(v)) {
                kept.push((u, v));
            }
        }
        Graph::from_edges(g.n(), &kept).unwrap()
    })
}

pub fn hypergraphs(
    max_n: usize,
    max_m: usize,
    nonempty: bool,
) -> impl Strategy<Value = Hypergraph> {
    (1..=max_n, 1..=max_m).prop_flat_map(move |(n, m)| {
        proptest::collection::vec(proptest::collection::vec(any::<bool>(), n), m).prop_map(
            move |rows| {
                let edges: Vec<Vec<usize>> = rows
                    .iter()
                    .enumerate()
                    .map(|(i, r)| {
                        let mut e: Vec<usize> = (0..n).filter(|&v| r[v]).collect();
                        if nonempty && e.is_empty() {
                            e.push(i % n);
                        }
                        e
                    })
                    .collect();
                Hypergraph::from_lists(n, &edges).unwrap()
            },
        )
    })
}

pub fn paired_hypergraphs(max_n: usize, max_m: usize) -> impl Strategy<Value = PairedHypergraph> {
    hypergraphs(max_n, max_m, false).prop_flat_map(|h| {
        let m = h.num_edges();
        proptest::collection::vec(any::<bool>(), m * m.saturating_sub(1) / 2)
            .prop_map(move |b| PairedHypergraph::new(h.clone(), graph_from_bits(m, &b)).unwrap())
    })
}

fn masks(h: &Hypergraph) -> Vec<u32> {
    h.edges()
        .iter()
        .map(|e| e.iter().fold(0u32, |m, v| m | 1 << v))
        .collect()
}

pub fn brute_tau(h: &Hypergraph) -> Option<usize> {
    let es = masks(h);
    (0u32..1 << h.n())
        .filter(|t| es.iter().all(|e| e & t != 0))
        .map(|t| t.count_ones() as usize)
        .min()
}

pub fn brute_vc(h: &Hypergraph) -> usize {
    let es = masks(h);
    if es.is_empty() {
        return 0;
    }
    (0u32..1 << h.n())
        .filter(|s| es.iter().map(|e| e & s).collect::<BTreeSet<_>>().len() == 1 << s.count_ones())
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

pub fn brute_dual_vc(h: &Hypergraph) -> usize {
    let es = masks(h);
    let m = es.len();
    (0u32..1 << m)
        .filter(|sel| {
            let chosen: Vec<u32> = (0..m)
                .filter(|i| sel >> i & 1 == 1)
                .map(|i| es[i])
                .collect();
            let sigs: BTreeSet<u32> = (0..h.n())
                .map(|v| {
                    chosen
                        .iter()
                        .enumerate()
                        .fold(0u32, |s, (j, e)| s | ((e >> v & 1) << j))
                })
                .collect();
            sigs.len() == 1 << sel.count_ones()
        })
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Largest set of pair-graph edges (vertex-disjoint when `matched`) whose
/// `2^k` cells are all nonempty.
pub fn brute_paired_vc(p: &PairedHypergraph, matched: bool) -> usize {
    let es = masks(p.hypergraph());
    let pairs = p.pair_graph().edges();
    let full = if p.n() == 32 {
        u32::MAX
    } else {
        (1u32 << p.n()) - 1
    };
    let mut best = 0;
    for sel in 0u32..1 << pairs.len() {
        let chosen: Vec<(usize, usize)> = (0..pairs.len())
            .filter(|i| sel >> i & 1 == 1)
            .map(|i| pairs[i])
            .collect();
        let k = chosen.len();
        if k <= best {
            continue;
        }
        if matched {
            let ends: BTreeSet<usize> = chosen.iter().flat_map(|&(a, b)| [a, b]).collect();
            if ends.len() != 2 * k {
                continue;
            }
        }
        let all = (0u32..1 << k).all(|cell| {
            chosen.iter().enumerate().fold(full, |acc, (i, &(a, b))| {
                acc & if cell >> i & 1 == 1 { es[a] } else { es[b] }
            }) != 0
        });
        if all {
            best = k;
        }
    }
    best
}

pub fn brute_chi(g: &Graph) -> usize {
    fn color(g: &Graph, v: usize, k: usize, col: &mut Vec<usize>) -> bool {
        if v == g.n() {
            return true;
        }
        for c in 0..k {
            if (0..v).all(|u| !g.has_edge(u, v) || col[u] != c) {
                col[v] = c;
                if color(g, v + 1, k, col) {
                    return true;
                }
            }
        }
        false
    }
    (0..=g.n())
        .find(|&k| color(g, 0, k, &mut vec![0; g.n()]))
        .unwrap()
}

pub fn brute_alpha(g: &Graph) -> usize {
    let n = g.n();
    (0u32..1 << n)
        .filter(|s| {
            g.edges()
                .iter()
                .all(|&(u, v)| s >> u & 1 == 0 || s >> v & 1 == 0)
        })
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap()
}

pub fn brute_max_cut(g: &Graph) -> usize {
    let n = g.n();
    (0u32..1 << n.saturating_sub(1))
        .map(|s| {
            g.edges()
                .iter()
                .filter(|&&(u, v)| (s >> u & 1) != (s >> v & 1))
                .count()
        })
        .max()
        .unwrap_or(0)
}
