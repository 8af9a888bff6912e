//! Backtracking search for homomorphisms, subgraph embeddings and induced
//! copies of a pattern graph inside a target graph.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::named;

/// Default cap on search-tree nodes before giving up with a guard error.
pub const DEFAULT_NODE_LIMIT: usize = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    /// Edge-preserving, not necessarily injective.
    Homomorphism,
    /// Injective and edge-preserving.
    Subgraph,
    /// Injective, preserving both edges and non-edges.
    Induced,
}

struct Search<'a> {
    pattern: &'a Graph,
    target: &'a Graph,
    kind: MapKind,
    assignment: Vec<Option<usize>>,
    nodes: usize,
    limit: usize,
}

impl Search<'_> {
    fn run(&mut self, domains: Vec<VertexSet>) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::GuardExceeded {
                what: "search nodes",
                limit: self.limit,
                actual: self.nodes,
            });
        }
        // most constrained unassigned variable, lowest index on ties
        let next = (0..self.pattern.n())
            .filter(|&v| self.assignment[v].is_none())
            .min_by_key(|&v| (domains[v].len(), v));
        let Some(v) = next else {
            return Ok(true);
        };
        for x in domains[v].iter() {
            let mut child = domains.clone();
            let mut dead = false;
            for u in 0..self.pattern.n() {
                if u == v || self.assignment[u].is_some() {
                    continue;
                }
                if self.pattern.has_edge(u, v) {
                    child[u].intersect_with(self.target.neighbors(x));
                } else if self.kind == MapKind::Induced {
                    child[u].difference_with(self.target.neighbors(x));
                }
                if self.kind != MapKind::Homomorphism {
                    child[u].remove(x);
                }
                if child[u].is_empty() {
                    dead = true;
                    break;
                }
            }
            if dead {
                continue;
            }
            self.assignment[v] = Some(x);
            if self.run(child)? {
                return Ok(true);
            }
            self.assignment[v] = None;
        }
        Ok(false)
    }
}

/// Finds a map of the given kind from `pattern` into `target`.
pub fn find_map(
    pattern: &Graph,
    target: &Graph,
    kind: MapKind,
    node_limit: usize,
) -> Result<Option<Vec<usize>>> {
    let (p, t) = (pattern.n(), target.n());
    if kind != MapKind::Homomorphism && p > t {
        return Ok(None);
    }
    let mut domains = Vec::with_capacity(p);
    for v in 0..p {
        let dv = pattern.degree(v);
        let ok = (0..t).filter(|&x| match kind {
            MapKind::Homomorphism => dv == 0 || target.degree(x) > 0,
            _ => target.degree(x) >= dv,
        });
        let d = VertexSet::from_iter(t, ok);
        if d.is_empty() {
            return Ok(None);
        }
        domains.push(d);
    }
    let mut search = Search {
        pattern,
        target,
        kind,
        assignment: vec![None; p],
        nodes: 0,
        limit: node_limit,
    };
    if search.run(domains)? {
        Ok(Some(
            search.assignment.into_iter().map(|a| a.unwrap()).collect(),
        ))
    } else {
        Ok(None)
    }
}

/// Some edge-preserving map `g -> h`, if one exists.
pub fn homomorphism_exists(g: &Graph, h: &Graph) -> Result<Option<Vec<usize>>> {
    find_map(g, h, MapKind::Homomorphism, DEFAULT_NODE_LIMIT)
}

/// Some injective edge-preserving map `h -> g` (a copy of `h` in `g`).
pub fn subgraph_contains(g: &Graph, h: &Graph) -> Result<Option<Vec<usize>>> {
    find_map(h, g, MapKind::Subgraph, DEFAULT_NODE_LIMIT)
}

pub fn induced_subgraph_contains(g: &Graph, h: &Graph) -> Result<Option<Vec<usize>>> {
    find_map(h, g, MapKind::Induced, DEFAULT_NODE_LIMIT)
}

/// Whether the 3-dimensional cube occurs as an induced subgraph.
pub fn has_induced_cube(g: &Graph) -> Result<bool> {
    Ok(induced_subgraph_contains(g, &named::cube())?.is_some())
}

/// Checks that `map` sends every edge of `from` to an edge of `to`.
pub fn is_homomorphism(from: &Graph, to: &Graph, map: &[usize]) -> bool {
    map.len() == from.n()
        && map.iter().all(|&x| x < to.n())
        && from
            .edges()
            .iter()
            .all(|&(u, v)| to.has_edge(map[u], map[v]))
}

/// A homomorphism that is also injective.
pub fn is_subgraph_embedding(from: &Graph, to: &Graph, map: &[usize]) -> bool {
    let mut seen = VertexSet::new(to.n());
    for &x in map {
        if x >= to.n() || seen.contains(x) {
            return false;
        }
        seen.insert(x);
    }
    is_homomorphism(from, to, map)
}
