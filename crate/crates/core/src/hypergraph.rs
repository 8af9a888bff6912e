//! Hypergraphs and paired hypergraphs: transversals (exact and fractional),
//! shattering, VC-dimension, dual and paired VC-dimension.

use std::collections::HashSet;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::error::{guard, Error, Result};
use crate::graph::Graph;
use crate::lp::{lp_min, LpProblem, Sense};
use crate::rational::{self, Rational};

/// Hypergraph on vertices `0..n`; edge order is part of its identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "HypergraphJson", try_from = "HypergraphJson")]
pub struct Hypergraph {
    n: usize,
    edges: Vec<VertexSet>,
}

#[derive(Serialize, Deserialize)]
struct HypergraphJson {
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl From<Hypergraph> for HypergraphJson {
    fn from(h: Hypergraph) -> Self {
        HypergraphJson {
            n: h.n,
            edges: h.edges.iter().map(|e| e.to_vec()).collect(),
        }
    }
}

impl TryFrom<HypergraphJson> for Hypergraph {
    type Error = Error;
    fn try_from(j: HypergraphJson) -> Result<Self> {
        Hypergraph::from_lists(j.n, &j.edges)
    }
}

impl Hypergraph {
    pub fn new(n: usize, edges: Vec<VertexSet>) -> Self {
        let edges = edges.into_iter().map(|e| e.resized(n)).collect();
        Hypergraph { n, edges }
    }

    pub fn from_lists(n: usize, edges: &[Vec<usize>]) -> Result<Self> {
        let mut out = Vec::with_capacity(edges.len());
        for e in edges {
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(Error::validation(format!("vertex {v} out of range {n}")));
            }
            out.push(VertexSet::from_iter(n, e.iter().copied()));
        }
        Ok(Hypergraph { n, edges: out })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    fn check_no_empty_edge(&self) -> Result<()> {
        match self.edges.iter().position(|e| e.is_empty()) {
            Some(i) => Err(Error::precondition(format!(
                "hyperedge {i} is empty; no transversal exists"
            ))),
            None => Ok(()),
        }
    }

    /// Splits vertex `v` into `v` and a new last vertex carried by the same edges.
    pub fn duplicate_vertex(&self, v: usize) -> Hypergraph {
        let n = self.n + 1;
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let mut e = e.resized(n);
                if e.contains(v) {
                    e.insert(n - 1);
                }
                e
            })
            .collect();
        Hypergraph { n, edges }
    }

    pub fn is_transversal(&self, t: &VertexSet) -> bool {
        self.edges.iter().all(|e| !e.is_disjoint(t))
    }

    /// Edge incidence masks of each vertex (requires at most 64 edges).
    fn vertex_signatures(&self) -> Vec<u64> {
        let mut sig = vec![0u64; self.n];
        for (i, e) in self.edges.iter().enumerate() {
            for v in e.iter() {
                sig[v] |= 1 << i;
            }
        }
        sig
    }

    fn edge_masks(&self) -> Vec<u64> {
        self.edges
            .iter()
            .map(|e| e.iter().fold(0u64, |m, v| m | 1 << v))
            .collect()
    }
}

/// A hypergraph whose edges are themselves joined by a graph on edge indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "PairedJson", try_from = "PairedJson")]
pub struct PairedHypergraph {
    h: Hypergraph,
    pair_graph: Graph,
}

#[derive(Serialize, Deserialize)]
struct PairedJson {
    n: usize,
    edges: Vec<Vec<usize>>,
    pairs: Vec<(usize, usize)>,
}

impl From<PairedHypergraph> for PairedJson {
    fn from(p: PairedHypergraph) -> Self {
        let pairs = p.pair_graph.edges();
        let HypergraphJson { n, edges } = p.h.into();
        PairedJson { n, edges, pairs }
    }
}

impl TryFrom<PairedJson> for PairedHypergraph {
    type Error = Error;
    fn try_from(j: PairedJson) -> Result<Self> {
        let h = Hypergraph::from_lists(j.n, &j.edges)?;
        let g = Graph::from_edges(h.num_edges(), &j.pairs)?;
        PairedHypergraph::new(h, g)
    }
}

impl PairedHypergraph {
    pub fn new(h: Hypergraph, pair_graph: Graph) -> Result<Self> {
        if pair_graph.n() != h.num_edges() {
            return Err(Error::validation(format!(
                "pair graph has {} vertices but there are {} hyperedges",
                pair_graph.n(),
                h.num_edges()
            )));
        }
        Ok(PairedHypergraph { h, pair_graph })
    }

    pub fn hypergraph(&self) -> &Hypergraph {
        &self.h
    }

    pub fn pair_graph(&self) -> &Graph {
        &self.pair_graph
    }

    pub fn n(&self) -> usize {
        self.h.n
    }

    pub fn edge(&self, i: usize) -> &VertexSet {
        &self.h.edges[i]
    }

    /// Keeps only hyperedges `ids` (in that order) and the pairs among them.
    pub fn sub_edges(&self, ids: &[usize]) -> PairedHypergraph {
        let h = Hypergraph {
            n: self.h.n,
            edges: ids.iter().map(|&i| self.h.edges[i].clone()).collect(),
        };
        PairedHypergraph {
            h,
            pair_graph: self.pair_graph.induced(ids),
        }
    }

    /// Replaces hyperedge contents, keeping indices and pairs.
    pub fn with_edges(&self, edges: Vec<VertexSet>) -> PairedHypergraph {
        assert_eq!(edges.len(), self.h.edges.len());
        PairedHypergraph {
            h: Hypergraph::new(self.h.n, edges),
            pair_graph: self.pair_graph.clone(),
        }
    }

    pub fn duplicate_vertex(&self, v: usize) -> PairedHypergraph {
        PairedHypergraph {
            h: self.h.duplicate_vertex(v),
            pair_graph: self.pair_graph.clone(),
        }
    }

    /// Size of `A ∩ B` for a pair-graph edge.
    pub fn overlap(&self, a: usize, b: usize) -> usize {
        self.h.edges[a].intersection_len(&self.h.edges[b])
    }
}

// ---------------------------------------------------------------------------
// transversals

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transversal {
    pub size: usize,
    pub vertices: Vec<usize>,
}

pub const TRANSVERSAL_VERTEX_LIMIT: usize = 24;
pub const TRANSVERSAL_EDGE_LIMIT: usize = 40;

/// Minimum transversal by branch and bound. Allowed when the hypergraph
/// has at most 24 vertices or at most 40 edges.
pub fn transversality_exact(h: &Hypergraph) -> Result<Transversal> {
    h.check_no_empty_edge()?;
    if h.n > TRANSVERSAL_VERTEX_LIMIT {
        guard("transversal edges", h.num_edges(), TRANSVERSAL_EDGE_LIMIT)?;
    }
    let greedy = greedy_transversal(h);
    let mut best = greedy.clone();
    let mut chosen = VertexSet::new(h.n);
    let forbidden = VertexSet::new(h.n);
    hitting_bb(&h.edges, &mut chosen, &forbidden, &mut best);
    let vertices = best.to_vec();
    Ok(Transversal {
        size: vertices.len(),
        vertices,
    })
}

fn greedy_transversal(h: &Hypergraph) -> VertexSet {
    let mut t = VertexSet::new(h.n);
    let mut open: Vec<&VertexSet> = h.edges.iter().collect();
    while !open.is_empty() {
        let v = (0..h.n)
            .max_by_key(|&v| {
                (
                    open.iter().filter(|e| e.contains(v)).count(),
                    std::cmp::Reverse(v),
                )
            })
            .unwrap();
        t.insert(v);
        open.retain(|e| !e.contains(v));
    }
    t
}

fn hitting_bb(
    edges: &[VertexSet],
    chosen: &mut VertexSet,
    forbidden: &VertexSet,
    best: &mut VertexSet,
) {
    let open: Vec<VertexSet> = edges
        .iter()
        .filter(|e| e.is_disjoint(chosen))
        .map(|e| e.difference(forbidden))
        .collect();
    if open.is_empty() {
        if chosen.len() < best.len() {
            *best = chosen.clone();
        }
        return;
    }
    if open.iter().any(|e| e.is_empty()) {
        return;
    }
    // pairwise disjoint open edges each need their own vertex
    let mut by_size: Vec<&VertexSet> = open.iter().collect();
    by_size.sort_by_key(|e| e.len());
    let mut used = VertexSet::new(chosen.capacity());
    let mut packing = 0;
    for e in by_size {
        if e.is_disjoint(&used) {
            used.union_with(e);
            packing += 1;
        }
    }
    if chosen.len() + packing >= best.len() {
        return;
    }
    let branch = open.iter().min_by_key(|e| e.len()).unwrap().clone();
    let mut forbid = forbidden.clone();
    for v in branch.iter() {
        chosen.insert(v);
        hitting_bb(edges, chosen, &forbid, best);
        chosen.remove(v);
        forbid.insert(v);
    }
}

/// Vertex weights giving every hyperedge weight at least one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FractionalWeighting {
    #[serde(with = "rational::serde_rational::vec")]
    pub w: Vec<Rational>,
    #[serde(with = "rational::serde_rational")]
    pub total: Rational,
}

impl FractionalWeighting {
    pub fn is_transversal_of(&self, h: &Hypergraph) -> bool {
        self.w.len() == h.n
            && self.w.iter().all(|x| x >= &Rational::zero())
            && self.total == self.w.iter().sum::<Rational>()
            && h.edges
                .iter()
                .all(|e| e.iter().map(|v| &self.w[v]).sum::<Rational>() >= Rational::one())
    }
}

/// Optimal fractional transversal plus an optimal fractional edge packing
/// (the LP dual), which certifies optimality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FractionalTransversal {
    pub weighting: FractionalWeighting,
    #[serde(with = "rational::serde_rational::vec")]
    pub packing: Vec<Rational>,
}

impl FractionalTransversal {
    pub fn value(&self) -> &Rational {
        &self.weighting.total
    }

    /// Weighting is a fractional transversal, packing puts at most one on
    /// every vertex, and both have the same total.
    pub fn verify(&self, h: &Hypergraph) -> Result<()> {
        if !self.weighting.is_transversal_of(h) {
            return Err(Error::verification(
                "weighting is not a fractional transversal",
            ));
        }
        if self.packing.len() != h.num_edges() || self.packing.iter().any(|y| y < &Rational::zero())
        {
            return Err(Error::verification("malformed edge packing"));
        }
        for v in 0..h.n {
            let load: Rational = h
                .edges
                .iter()
                .zip(&self.packing)
                .filter(|(e, _)| e.contains(v))
                .map(|(_, y)| y)
                .sum();
            if load > Rational::one() {
                return Err(Error::verification(format!("packing overloads vertex {v}")));
            }
        }
        if self.packing.iter().sum::<Rational>() != self.weighting.total {
            return Err(Error::verification("nonzero duality gap"));
        }
        Ok(())
    }
}

/// Builds the covering LP `min sum w  s.t.  w(e) >= 1` for every edge.
pub fn transversal_lp(h: &Hypergraph) -> LpProblem {
    let mut p = LpProblem::new(vec![Rational::one(); h.n]);
    for e in &h.edges {
        let row = (0..h.n)
            .map(|v| {
                if e.contains(v) {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        p.add(row, Sense::Ge, Rational::one());
    }
    p
}

pub fn fractional_transversality(h: &Hypergraph) -> Result<FractionalTransversal> {
    h.check_no_empty_edge()?;
    let p = transversal_lp(h);
    let sol = lp_min(&p)?;
    sol.verify(&p)?;
    Ok(FractionalTransversal {
        weighting: FractionalWeighting {
            total: sol.value.clone(),
            w: sol.x,
        },
        packing: sol.dual,
    })
}

// ---------------------------------------------------------------------------
// shattering

/// Largest `X ⊆ 0..universe` shattered by `family` (each member a bitmask);
/// lexicographically first among the largest.
fn max_shattered(family: &[u64], universe: usize) -> Vec<usize> {
    fn shattered(family: &[u64], x: u64) -> bool {
        let need = 1usize << x.count_ones();
        if family.len() < need {
            return false;
        }
        let traces: HashSet<u64> = family.iter().map(|f| f & x).collect();
        traces.len() == need
    }
    fn extend(family: &[u64], universe: usize, x: u64, last: usize, best: &mut u64) {
        if x.count_ones() > best.count_ones() {
            *best = x;
        }
        for v in last..universe {
            let y = x | 1 << v;
            if shattered(family, y) {
                extend(family, universe, y, v + 1, best);
            }
        }
    }
    if family.is_empty() {
        return Vec::new();
    }
    let mut best = 0u64;
    extend(family, universe, 0, 0, &mut best);
    (0..universe).filter(|&v| best >> v & 1 == 1).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VcResult {
    pub dimension: usize,
    /// A largest shattered vertex set (for the dual: a set of edge indices).
    pub witness: Vec<usize>,
}

pub const VC_VERTEX_LIMIT: usize = 20;
pub const DUAL_VC_EDGE_LIMIT: usize = 20;

/// VC-dimension: largest vertex set every subset of which is cut out by
/// some hyperedge. A hypergraph without edges shatters nothing; reported as 0.
pub fn vc_dimension(h: &Hypergraph) -> Result<VcResult> {
    guard("VC-dimension vertices", h.n, VC_VERTEX_LIMIT)?;
    let witness = max_shattered(&h.edge_masks(), h.n);
    Ok(VcResult {
        dimension: witness.len(),
        witness,
    })
}

/// Largest set of hyperedges forming a complete Venn diagram.
pub fn dual_vc_dimension(h: &Hypergraph) -> Result<VcResult> {
    guard("dual VC-dimension edges", h.num_edges(), DUAL_VC_EDGE_LIMIT)?;
    let witness = max_shattered(&h.vertex_signatures(), h.num_edges());
    Ok(VcResult {
        dimension: witness.len(),
        witness,
    })
}

// ---------------------------------------------------------------------------
// paired VC-dimension

/// `d` oriented pair-graph edges `(A_i, B_i)` and, for every `I ⊆ 0..d`
/// (bit `i` set means `i ∈ I`), a vertex lying in `A_i` for `i ∈ I` and in
/// `B_j` for `j ∉ I`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairedVcWitness {
    pub pairs: Vec<(usize, usize)>,
    pub cell_reps: Vec<usize>,
}

impl PairedVcWitness {
    pub fn dimension(&self) -> usize {
        self.pairs.len()
    }

    /// Re-validates by direct membership tests.
    pub fn verify(&self, p: &PairedHypergraph, matched: bool) -> Result<()> {
        let d = self.pairs.len();
        let fail = |m: String| Err(Error::verification(m));
        let mut seen_pairs = HashSet::new();
        for &(a, b) in &self.pairs {
            if a >= p.h.num_edges() || b >= p.h.num_edges() || !p.pair_graph.has_edge(a, b) {
                return fail(format!("({a},{b}) is not a pair-graph edge"));
            }
            if !seen_pairs.insert((a.min(b), a.max(b))) {
                return fail(format!("pair ({a},{b}) used twice"));
            }
        }
        if matched {
            let mut used = HashSet::new();
            for &(a, b) in &self.pairs {
                if !used.insert(a) || !used.insert(b) {
                    return fail("pairs do not form a matching".into());
                }
            }
        }
        if (d > 0 || p.n() > 0) && self.cell_reps.len() != 1 << d {
            return fail(format!("expected {} cell representatives", 1 << d));
        }
        for (cell, &v) in self.cell_reps.iter().enumerate() {
            if v >= p.n() {
                return fail(format!("representative {v} out of range"));
            }
            for (i, &(a, b)) in self.pairs.iter().enumerate() {
                let side = if cell >> i & 1 == 1 { a } else { b };
                if !p.edge(side).contains(v) {
                    return fail(format!("vertex {v} misses cell {cell:b} at pair {i}"));
                }
            }
        }
        Ok(())
    }

    /// Same witness with the orientation of pair `i` reversed.
    pub fn swapped(&self, i: usize) -> PairedVcWitness {
        let mut pairs = self.pairs.clone();
        pairs[i] = (pairs[i].1, pairs[i].0);
        let cell_reps = (0..self.cell_reps.len())
            .map(|cell| self.cell_reps[cell ^ (1 << i)])
            .collect();
        PairedVcWitness { pairs, cell_reps }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairedVcOptions {
    /// Chosen pairs must be pairwise disjoint.
    pub matched: bool,
    /// Stop once this dimension is reached (at most 6).
    pub max_dim: usize,
}

impl Default for PairedVcOptions {
    fn default() -> Self {
        PairedVcOptions {
            matched: false,
            max_dim: PAIRED_VC_DIM_CAP,
        }
    }
}

impl PairedVcOptions {
    pub fn matched(max_dim: usize) -> Self {
        PairedVcOptions {
            matched: true,
            max_dim,
        }
    }
}

pub const PAIRED_VC_DIM_CAP: usize = 6;
pub const PAIRED_VC_PAIR_LIMIT: usize = 200;

struct PairedSearch<'a> {
    p: &'a PairedHypergraph,
    edges: Vec<(usize, usize)>,
    opts: PairedVcOptions,
    chosen: Vec<usize>,
    best: Vec<usize>,
    best_cells: Vec<VertexSet>,
}

impl PairedSearch<'_> {
    fn dfs(&mut self, start: usize, cells: &[VertexSet]) {
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
            self.best_cells = cells.to_vec();
        }
        if self.best.len() >= self.opts.max_dim {
            return;
        }
        for idx in start..self.edges.len() {
            if self.chosen.len() + (self.edges.len() - idx) <= self.best.len() {
                return;
            }
            let (a, b) = self.edges[idx];
            if self.opts.matched
                && self.chosen.iter().any(|&c| {
                    [a, b].contains(&self.edges[c].0) || [a, b].contains(&self.edges[c].1)
                })
            {
                continue;
            }
            let ea = self.p.edge(a);
            let eb = self.p.edge(b);
            let mut next = Vec::with_capacity(cells.len() * 2);
            next.extend(cells.iter().map(|c| c.intersection(eb)));
            next.extend(cells.iter().map(|c| c.intersection(ea)));
            if next.iter().any(|c| c.is_empty()) {
                continue;
            }
            self.chosen.push(idx);
            self.dfs(idx + 1, &next);
            self.chosen.pop();
            if self.best.len() >= self.opts.max_dim {
                return;
            }
        }
    }
}

/// Largest `d` (up to `opts.max_dim`) with a paired VC witness. Pair-graph
/// edges are oriented from the lower to the higher hyperedge index;
/// orientation does not affect the result.
pub fn paired_vc_dimension(
    p: &PairedHypergraph,
    opts: PairedVcOptions,
) -> Result<(usize, PairedVcWitness)> {
    guard("paired VC dimension cap", opts.max_dim, PAIRED_VC_DIM_CAP)?;
    let edges = p.pair_graph.edges();
    guard("pair-graph edges", edges.len(), PAIRED_VC_PAIR_LIMIT)?;
    let root = VertexSet::full(p.n());
    let mut s = PairedSearch {
        p,
        edges,
        opts,
        chosen: Vec::new(),
        best: Vec::new(),
        best_cells: vec![root.clone()],
    };
    if p.n() > 0 {
        s.dfs(0, &[root]);
    }
    let pairs: Vec<(usize, usize)> = s.best.iter().map(|&i| s.edges[i]).collect();
    let cell_reps = s.best_cells.iter().filter_map(|c| c.first()).collect();
    let w = PairedVcWitness { pairs, cell_reps };
    Ok((w.dimension(), w))
}

// ---------------------------------------------------------------------------
// derived paired hypergraphs

/// Restriction to `w`: every hyperedge becomes `e ∩ w`, vertices are
/// renumbered in increasing order of `w`, and the pair graph is kept.
pub fn restrict(p: &PairedHypergraph, w: &VertexSet) -> Result<PairedHypergraph> {
    if w.is_empty() {
        return Err(Error::precondition("restriction to an empty vertex set"));
    }
    let verts = w.to_vec();
    let mut index = vec![usize::MAX; p.n()];
    for (i, &v) in verts.iter().enumerate() {
        index[v] = i;
    }
    let edges =
        p.h.edges
            .iter()
            .map(|e| VertexSet::from_iter(verts.len(), e.intersection(w).iter().map(|v| index[v])))
            .collect();
    Ok(PairedHypergraph {
        h: Hypergraph {
            n: verts.len(),
            edges,
        },
        pair_graph: p.pair_graph.clone(),
    })
}

/// Hyperedges are the neighborhoods `N(v)`; `N(u)` and `N(v)` are paired
/// when `uv` is an edge.
pub fn neighborhood_paired(g: &Graph) -> PairedHypergraph {
    let edges = (0..g.n()).map(|v| g.neighbors(v).clone()).collect();
    PairedHypergraph {
        h: Hypergraph { n: g.n(), edges },
        pair_graph: g.clone().without_weights(),
    }
}

/// The neighborhood hypergraph alone.
pub fn neighborhood_hypergraph(g: &Graph) -> Hypergraph {
    neighborhood_paired(g).h
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StablePaired {
    pub paired: PairedHypergraph,
    /// The stable sets of the graph, one per vertex of the hypergraph.
    pub stable_sets: Vec<VertexSet>,
}

pub const STABLE_PAIRED_LIMIT: usize = 20;

/// All stable sets (including the empty one), in increasing order of
/// their bitmask value.
pub fn stable_sets(g: &Graph) -> Result<Vec<VertexSet>> {
    guard(
        "stable-set enumeration vertices",
        g.n(),
        STABLE_PAIRED_LIMIT,
    )?;
    let n = g.n();
    let rows: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, u| m | 1 << u))
        .collect();
    let mut masks = Vec::new();
    fn grow(rows: &[u32], v: usize, mask: u32, out: &mut Vec<u32>) {
        if v == rows.len() {
            out.push(mask);
            return;
        }
        grow(rows, v + 1, mask, out);
        if rows[v] & mask == 0 {
            grow(rows, v + 1, mask | 1 << v, out);
        }
    }
    grow(&rows, 0, 0, &mut masks);
    masks.sort_unstable();
    Ok(masks
        .into_iter()
        .map(|m| VertexSet::from_iter(n, (0..n).filter(|&v| m >> v & 1 == 1)))
        .collect())
}

/// Vertices are the stable sets of `g`; hyperedge `S_v` collects those
/// containing `v`; `S_u`, `S_v` are paired when `uv` is an edge.
pub fn stable_paired(g: &Graph) -> Result<StablePaired> {
    let stable = stable_sets(g)?;
    let edges = (0..g.n())
        .map(|v| {
            VertexSet::from_iter(
                stable.len(),
                (0..stable.len()).filter(|&i| stable[i].contains(v)),
            )
        })
        .collect();
    Ok(StablePaired {
        paired: PairedHypergraph {
            h: Hypergraph {
                n: stable.len(),
                edges,
            },
            pair_graph: g.clone().without_weights(),
        },
        stable_sets: stable,
    })
}

// ---------------------------------------------------------------------------
// transversal bound

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HwCheck {
    pub tau: usize,
    #[serde(with = "rational::serde_rational")]
    pub tau_star: Rational,
    pub d: usize,
    /// `None` when `d * tau_star <= 1` and the logarithm is not positive.
    pub bound_ok: Option<bool>,
    /// `tau` exceeds half of the bound.
    pub near_bound: bool,
}

/// Checks `tau <= 16 d tau* ln(d tau*)` with rigorous rational enclosures
/// of the logarithm.
pub fn check_hw_bound(h: &Hypergraph) -> Result<HwCheck> {
    let tau = transversality_exact(h)?.size;
    let tau_star = fractional_transversality(h)?.weighting.total;
    let d = vc_dimension(h)?.dimension;
    let x = rational::from_usize(d) * &tau_star;
    if x <= Rational::one() {
        return Ok(HwCheck {
            tau,
            tau_star,
            d,
            bound_ok: None,
            near_bound: false,
        });
    }
    // tau / (16 x) against ln x; the logarithm of a rational > 1 is irrational
    let lhs = rational::from_usize(tau) / (rational::int(16) * &x);
    let bound_ok = rational::compare_refining(&lhs, |bits| rational::ln_bounds(&x, bits))
        != std::cmp::Ordering::Greater;
    let half = lhs * rational::int(2);
    let near_bound = rational::compare_refining(&half, |bits| rational::ln_bounds(&x, bits))
        == std::cmp::Ordering::Greater;
    Ok(HwCheck {
        tau,
        tau_star,
        d,
        bound_ok: Some(bound_ok),
        near_bound,
    })
}
