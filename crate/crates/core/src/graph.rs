//! Finite simple graphs and the elementary operations the rest of the crate
//! is built on.

use std::collections::VecDeque;

use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::error::{guard, Error, Result};
use crate::rational::{self, Rational};

/// Undirected simple graph on vertices `0..n`. Immutable once built.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<VertexSet>,
    weights: Option<Vec<Rational>>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![VertexSet::new(n); n],
            weights: None,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![VertexSet::new(n); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::validation(format!(
                    "edge ({u},{v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::validation(format!("self-loop at {u}")));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Graph { adj, weights: None })
    }

    /// Builds from adjacency rows, symmetrizing and dropping loops.
    pub fn from_adjacency(mut adj: Vec<VertexSet>) -> Self {
        let n = adj.len();
        for (v, row) in adj.iter_mut().enumerate() {
            *row = row.resized(n);
            row.remove(v);
        }
        for u in 0..n {
            for v in adj[u].clone().iter() {
                adj[v].insert(u);
            }
        }
        Graph { adj, weights: None }
    }

    pub fn with_weights(mut self, weights: Vec<Rational>) -> Result<Self> {
        if weights.len() != self.n() {
            return Err(Error::validation(format!(
                "{} weights for {} vertices",
                weights.len(),
                self.n()
            )));
        }
        if weights.iter().any(|w| w < &Rational::zero()) {
            return Err(Error::validation("vertex weights must be nonnegative"));
        }
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn without_weights(mut self) -> Self {
        self.weights = None;
        self
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn weights(&self) -> Option<&[Rational]> {
        self.weights.as_deref()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n() {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.len()).sum::<usize>() / 2
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Subgraph induced on `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let m = vertices.len();
        let mut adj = vec![VertexSet::new(m); m];
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate() {
                if self.has_edge(u, v) {
                    adj[i].insert(j);
                }
            }
        }
        let weights = self
            .weights
            .as_ref()
            .map(|w| vertices.iter().map(|&v| w[v].clone()).collect());
        Graph { adj, weights }
    }

    pub fn is_stable(&self, set: &VertexSet) -> bool {
        set.iter().all(|v| self.adj[v].is_disjoint(set))
    }

    pub fn is_proper_coloring(&self, colors: &[usize]) -> bool {
        colors.len() == self.n() && self.edges().iter().all(|&(u, v)| colors[u] != colors[v])
    }

    /// BFS distances from `src`; `None` for unreachable vertices.
    pub fn distances(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for v in self.adj[u].iter() {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Diameter, or `None` if disconnected. The empty graph has diameter 0.
    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for s in 0..self.n() {
            for d in self.distances(s) {
                best = best.max(d?);
            }
        }
        Some(best)
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side: Vec<Option<bool>> = vec![None; self.n()];
        for s in 0..self.n() {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for v in self.adj[u].iter() {
                    match side[v] {
                        None => {
                            side[v] = Some(!su);
                            queue.push_back(v);
                        }
                        Some(sv) if sv == su => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub color: Vec<usize>,
    pub num_colors: usize,
}

impl Coloring {
    pub fn new(color: Vec<usize>) -> Self {
        let num_colors = color.iter().map(|c| c + 1).max().unwrap_or(0);
        Coloring { color, num_colors }
    }

    /// Renumbers colors to `0..k` in order of first appearance.
    pub fn compacted(&self) -> Coloring {
        let mut map = std::collections::HashMap::new();
        let color = self
            .color
            .iter()
            .map(|c| {
                let next = map.len();
                *map.entry(*c).or_insert(next)
            })
            .collect();
        Coloring {
            color,
            num_colors: map.len(),
        }
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        self.color.iter().all(|&c| c < self.num_colors) && g.is_proper_coloring(&self.color)
    }
}

/// A bipartition `(X, Y)`: `side[v] == false` puts `v` in `X`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cut {
    pub side: Vec<bool>,
}

impl Cut {
    pub fn x(&self) -> Vec<usize> {
        (0..self.side.len()).filter(|&v| !self.side[v]).collect()
    }

    pub fn y(&self) -> Vec<usize> {
        (0..self.side.len()).filter(|&v| self.side[v]).collect()
    }

    pub fn crossing_degree(&self, g: &Graph, v: usize) -> usize {
        g.neighbors(v)
            .iter()
            .filter(|&u| self.side[u] != self.side[v])
            .count()
    }

    pub fn crossing_edges(&self, g: &Graph) -> usize {
        g.edges()
            .iter()
            .filter(|&&(u, v)| self.side[u] != self.side[v])
            .count()
    }

    /// No single-vertex flip increases the number of crossing edges.
    pub fn is_flip_stable(&self, g: &Graph) -> bool {
        (0..g.n()).all(|v| 2 * self.crossing_degree(g, v) >= g.degree(v))
    }
}

/// Minimum degree. Fails on the empty graph.
pub fn min_degree(g: &Graph) -> Result<usize> {
    (0..g.n())
        .map(|v| g.degree(v))
        .min()
        .ok_or_else(|| Error::precondition("minimum degree of the empty graph"))
}

/// Minimum over vertices of the total weight of the neighborhood.
pub fn min_weighted_degree(g: &Graph) -> Result<Rational> {
    let w = g
        .weights()
        .ok_or_else(|| Error::precondition("graph carries no vertex weights"))?;
    (0..g.n())
        .map(|v| g.neighbors(v).iter().map(|u| &w[u]).sum::<Rational>())
        .min()
        .ok_or_else(|| Error::precondition("minimum degree of the empty graph"))
}

pub fn is_triangle_free(g: &Graph) -> bool {
    find_triangle(g).is_none()
}

pub fn find_triangle(g: &Graph) -> Option<(usize, usize, usize)> {
    for (u, v) in g.edges() {
        if let Some(w) = g.neighbors(u).intersection(g.neighbors(v)).first() {
            return Some((u, v, w));
        }
    }
    None
}

/// Length of a shortest odd cycle; `None` when the graph is bipartite.
pub fn odd_girth(g: &Graph) -> Option<usize> {
    // From each root, an edge joining two vertices at equal BFS depth d
    // closes an odd walk of length 2d+1; the minimum over roots is exact.
    let mut best: Option<usize> = None;
    for s in 0..g.n() {
        let dist = g.distances(s);
        for (u, v) in g.edges() {
            if let (Some(du), Some(dv)) = (dist[u], dist[v]) {
                if du == dv {
                    let len = 2 * du + 1;
                    best = Some(best.map_or(len, |b: usize| b.min(len)));
                }
            }
        }
    }
    best
}

/// Local-search cut from a seeded random start.
pub fn max_cut_local(g: &Graph, seed: u64) -> Cut {
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut side: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    if n >= 2 {
        if side.iter().all(|&s| s) {
            side[0] = false;
        } else if side.iter().all(|&s| !s) {
            side[n - 1] = true;
        }
    }
    max_cut_local_from(g, Cut { side })
}

/// Repeatedly flips the lowest-index vertex with more neighbors on its own
/// side than across, until no such vertex exists.
pub fn max_cut_local_from(g: &Graph, start: Cut) -> Cut {
    let mut cut = start;
    'outer: loop {
        for v in 0..g.n() {
            let across = cut.crossing_degree(g, v);
            if 2 * across < g.degree(v) {
                cut.side[v] = !cut.side[v];
                continue 'outer;
            }
        }
        return cut;
    }
}

pub const MAX_CUT_EXACT_LIMIT: usize = 24;

/// Exhaustive maximum cut over all bipartitions (vertex 0 fixed in `X`).
pub fn max_cut_exact(g: &Graph) -> Result<Cut> {
    let n = g.n();
    guard("max-cut vertices", n, MAX_CUT_EXACT_LIMIT)?;
    if n < 2 {
        return Ok(Cut {
            side: vec![false; n],
        });
    }
    let rows: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, u| m | 1 << u))
        .collect();
    // Gray-code walk over masks of vertices 1..n on the Y side
    let mut mask: u32 = 0;
    let mut value: i64 = 0;
    let mut best = (-1i64, 0u32);
    let total = 1u64 << (n - 1);
    for step in 0..total {
        if step > 0 {
            let bit = step.trailing_zeros() as usize + 1;
            let nb = rows[bit];
            let across = if mask >> bit & 1 == 1 {
                (nb & !mask).count_ones() as i64
            } else {
                (nb & mask).count_ones() as i64
            };
            value += g.degree(bit) as i64 - 2 * across;
            mask ^= 1 << bit;
        }
        if value > best.0 {
            best = (value, mask);
        }
    }
    let side = (0..n).map(|v| best.1 >> v & 1 == 1).collect();
    Ok(Cut { side })
}

/// Adds every edge `xy` with `x`, `y` at distance at least 3, scanning
/// pairs in lexicographic order; the result is maximal triangle-free.
pub fn maximal_triangle_free_closure(g: &Graph) -> Result<Graph> {
    if let Some((a, b, c)) = find_triangle(g) {
        return Err(Error::precondition(format!(
            "closure needs a triangle-free graph; found triangle {a},{b},{c}"
        )));
    }
    let n = g.n();
    let mut adj: Vec<VertexSet> = (0..n).map(|v| g.neighbors(v).clone()).collect();
    for u in 0..n {
        for v in u + 1..n {
            if !adj[u].contains(v) && adj[u].is_disjoint(&adj[v]) {
                adj[u].insert(v);
                adj[v].insert(u);
            }
        }
    }
    let out = Graph {
        adj,
        weights: g.weights.clone(),
    };
    Ok(out)
}

/// Adding any non-edge would create a triangle.
pub fn is_maximal_triangle_free(g: &Graph) -> bool {
    is_triangle_free(g)
        && (0..g.n()).all(|u| {
            (u + 1..g.n()).all(|v| g.has_edge(u, v) || !g.neighbors(u).is_disjoint(g.neighbors(v)))
        })
}

/// Every neighborhood induces a bipartite graph.
pub fn is_locally_bipartite(g: &Graph) -> bool {
    (0..g.n()).all(|v| g.induced(&g.neighbors(v).to_vec()).is_bipartite())
}

/// Partition witness for a near bipartite graph: `stable` is a stable set
/// and the rest induces maximum degree at most one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NearBipartiteWitness {
    pub stable: Vec<usize>,
    pub matching: Vec<(usize, usize)>,
    /// Vertices outside `stable` that are not covered by `matching`.
    pub isolated: Vec<usize>,
}

impl NearBipartiteWitness {
    /// Components of the max-degree-one part: matching edges then isolated vertices.
    pub fn components(&self) -> usize {
        self.matching.len() + self.isolated.len()
    }

    pub fn verify(&self, g: &Graph) -> Result<()> {
        if !is_triangle_free(g) {
            return Err(Error::verification(
                "near bipartite graphs are triangle-free",
            ));
        }
        let s = VertexSet::from_iter(g.n(), self.stable.iter().copied());
        if !g.is_stable(&s) {
            return Err(Error::verification("witness set is not stable"));
        }
        let mut covered = s.clone();
        for &(a, b) in &self.matching {
            if !g.has_edge(a, b) || covered.contains(a) || covered.contains(b) {
                return Err(Error::verification(format!("bad matching edge ({a},{b})")));
            }
            covered.insert(a);
            covered.insert(b);
        }
        for &v in &self.isolated {
            if covered.contains(v) {
                return Err(Error::verification(format!("vertex {v} listed twice")));
            }
            covered.insert(v);
        }
        if covered.len() != g.n() {
            return Err(Error::verification(
                "witness does not partition the vertices",
            ));
        }
        let rest: Vec<usize> = s.complement().to_vec();
        if g.induced(&rest).max_degree() > 1 {
            return Err(Error::verification("remainder has a vertex of degree two"));
        }
        Ok(())
    }
}

pub const NEAR_BIPARTITE_LIMIT: usize = 30;

/// Searches for a near bipartite partition, trying to put each vertex in
/// the stable part before the matching part.
pub fn is_near_bipartite(g: &Graph) -> Result<Option<NearBipartiteWitness>> {
    let n = g.n();
    guard("near-bipartite vertices", n, NEAR_BIPARTITE_LIMIT)?;
    if !is_triangle_free(g) {
        return Ok(None);
    }
    // side: Some(true) = stable part, Some(false) = matching part
    fn search(g: &Graph, v: usize, side: &mut Vec<Option<bool>>) -> bool {
        if v == g.n() {
            return true;
        }
        let nb = g.neighbors(v);
        // stable part: no neighbor already in the stable part
        if nb.iter().all(|u| side[u] != Some(true)) {
            side[v] = Some(true);
            if search(g, v + 1, side) {
                return true;
            }
        }
        // matching part: at most one matching-part neighbor, which itself
        // has no other matching-part neighbor
        let mp: Vec<usize> = nb.iter().filter(|&u| side[u] == Some(false)).collect();
        let ok = match mp.as_slice() {
            [] => true,
            [u] => g
                .neighbors(*u)
                .iter()
                .all(|w| w == v || side[w] != Some(false)),
            _ => false,
        };
        if ok {
            side[v] = Some(false);
            if search(g, v + 1, side) {
                return true;
            }
        }
        side[v] = None;
        false
    }
    let mut side = vec![None; n];
    if !search(g, 0, &mut side) {
        return Ok(None);
    }
    let stable: Vec<usize> = (0..n).filter(|&v| side[v] == Some(true)).collect();
    let mut matching = Vec::new();
    let mut isolated = Vec::new();
    for v in (0..n).filter(|&v| side[v] == Some(false)) {
        match g.neighbors(v).iter().find(|&u| side[u] == Some(false)) {
            Some(u) if u > v => matching.push((v, u)),
            Some(_) => {}
            None => isolated.push(v),
        }
    }
    Ok(Some(NearBipartiteWitness {
        stable,
        matching,
        isolated,
    }))
}

/// Replaces each vertex `v` by `ceil(w(v) * scale)` pairwise non-adjacent
/// copies; copies inherit all adjacencies. Copies are numbered class by class.
pub fn blow_up(g: &Graph, scale: usize) -> Result<Graph> {
    let w = g
        .weights()
        .ok_or_else(|| Error::precondition("blow-up needs vertex weights"))?;
    if scale == 0 {
        return Err(Error::validation("blow-up scale must be positive"));
    }
    let s = rational::from_usize(scale);
    let sizes: Vec<usize> = w
        .iter()
        .map(|x| rational::ceil_to_usize(&(x * &s)))
        .collect();
    blow_up_sizes(g, &sizes)
}

/// Blow-up with explicit class sizes.
pub fn blow_up_sizes(g: &Graph, sizes: &[usize]) -> Result<Graph> {
    if sizes.len() != g.n() {
        return Err(Error::validation("one class size per vertex required"));
    }
    let mut start = Vec::with_capacity(sizes.len());
    let mut total = 0;
    for &s in sizes {
        start.push(total);
        total += s;
    }
    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        for a in 0..sizes[u] {
            for b in 0..sizes[v] {
                edges.push((start[u] + a, start[v] + b));
            }
        }
    }
    Graph::from_edges(total, &edges)
}
