//! Constructive coloring procedures: the cube-free cut/transversal
//! coloring, overlap stripping, the booster tree, and the maps that turn
//! paired VC witnesses into Zykov homomorphisms and subgraphs.

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::constructions::{binomial, zykov_matching};
use crate::error::{guard, Error, Result};
use crate::graph::{self, Coloring, Cut, Graph};
use crate::hypergraph::{
    self, neighborhood_paired, transversality_exact, Hypergraph, PairedHypergraph, PairedVcWitness,
};
use crate::rational::{self, Rational};
use crate::search;
use crate::solvers::chromatic_number_exact;

// ---------------------------------------------------------------------------
// cut and transversal coloring

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TricubeReport {
    #[serde(with = "rational::serde_rational")]
    pub c: Rational,
    pub cut: Cut,
    /// Vertices of `Y` meeting every `Y`-neighborhood of an `X`-vertex.
    pub t_x: Vec<usize>,
    /// Vertices of `X` meeting every `X`-neighborhood of a `Y`-vertex.
    pub t_y: Vec<usize>,
    pub coloring: Coloring,
    pub num_colors: usize,
    /// Dyadic upper estimate of `192 ln(6/c) / c`.
    #[serde(with = "rational::serde_rational")]
    pub bound: Rational,
    pub bound_ceil: usize,
}

impl TricubeReport {
    pub fn verify(&self, g: &Graph) -> Result<()> {
        let fail = |m: &str| Err(Error::verification(m.to_string()));
        if !self.coloring.is_proper(g) {
            return fail("coloring is not proper");
        }
        if self.num_colors != self.coloring.num_colors
            || self.num_colors > self.t_x.len() + self.t_y.len()
        {
            return fail("too many colors for the transversals");
        }
        if !self.cut.is_flip_stable(g) {
            return fail("cut is not flip-stable");
        }
        let tx = VertexSet::from_iter(g.n(), self.t_x.iter().copied());
        let ty = VertexSet::from_iter(g.n(), self.t_y.iter().copied());
        for v in 0..g.n() {
            let (t, own_side) = if self.cut.side[v] {
                (&ty, true)
            } else {
                (&tx, false)
            };
            if t.iter().any(|u| self.cut.side[u] == own_side) {
                return fail("transversal on the wrong side");
            }
            if g.neighbors(v).is_disjoint(t) {
                return fail("a vertex has no neighbor in its transversal");
            }
        }
        Ok(())
    }
}

/// Upper estimate of `192 ln(6/c) / c`.
pub fn tricube_bound(c: &Rational) -> Rational {
    let x = rational::int(6) / c;
    rational::ln_bounds(&x, 64).hi * rational::int(192) / c
}

/// Transversal of the `other`-side neighborhoods of `side` vertices, in
/// original vertex numbers.
fn side_transversal(g: &Graph, side: &[usize], other: &[usize]) -> Result<Vec<usize>> {
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in other.iter().enumerate() {
        index[v] = i;
    }
    let edges: Vec<Vec<usize>> = side
        .iter()
        .map(|&x| {
            g.neighbors(x)
                .iter()
                .filter(|&u| index[u] != usize::MAX)
                .map(|u| index[u])
                .collect()
        })
        .collect();
    let h = Hypergraph::from_lists(other.len(), &edges)?;
    let t = transversality_exact(&h)?;
    Ok(t.vertices.iter().map(|&i| other[i]).collect())
}

/// Colors a triangle-free graph without induced cube and with minimum
/// degree at least `c n`: take a flip-stable cut `(X, Y)`, a minimum
/// transversal `T_X ⊆ Y` of the neighborhoods of `X`, and color each
/// `X`-vertex by its first neighbor in `T_X` (each class lies in one
/// neighborhood, hence is stable); symmetrically for `Y`.
pub fn tricube_color(g: &Graph, c: &Rational, seed: u64) -> Result<TricubeReport> {
    let n = g.n();
    if n < 2 {
        return Err(Error::precondition("need at least two vertices"));
    }
    if !c.is_positive_rational() {
        return Err(Error::validation("density c must be positive"));
    }
    if let Some((a, b, d)) = graph::find_triangle(g) {
        return Err(Error::precondition(format!(
            "graph has a triangle {a},{b},{d}"
        )));
    }
    let md = graph::min_degree(g)?;
    if rational::from_usize(md) < c * rational::from_usize(n) {
        return Err(Error::precondition(format!(
            "minimum degree {md} is below c·n = {}",
            rational::format_rational(&(c * rational::from_usize(n)))
        )));
    }
    if search::has_induced_cube(g)? {
        return Err(Error::precondition(
            "not cube-free: the graph contains an induced 3-cube",
        ));
    }
    let cut = graph::max_cut_local(g, seed);
    let (x, y) = (cut.x(), cut.y());
    let t_x = side_transversal(g, &x, &y)?;
    let t_y = side_transversal(g, &y, &x)?;
    let mut color = vec![0; n];
    for (vs, t, offset) in [(&x, &t_x, 0), (&y, &t_y, t_x.len())] {
        for &v in vs.iter() {
            let i = t
                .iter()
                .position(|&u| g.has_edge(u, v))
                .expect("transversal covers");
            color[v] = offset + i;
        }
    }
    let coloring = Coloring::new(color).compacted();
    let bound = tricube_bound(c);
    let report = TricubeReport {
        c: c.clone(),
        bound_ceil: rational::ceil_to_usize(&bound),
        bound,
        num_colors: coloring.num_colors,
        coloring,
        cut,
        t_x,
        t_y,
    };
    report.verify(g)?;
    Ok(report)
}

trait PositiveRational {
    fn is_positive_rational(&self) -> bool;
}

impl PositiveRational for Rational {
    fn is_positive_rational(&self) -> bool {
        self > &Rational::zero()
    }
}

// ---------------------------------------------------------------------------
// overlap stripping

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StripReport {
    /// Pair-graph edges whose paired sets share more than `eps' n` vertices.
    pub removed: Vec<(usize, usize)>,
    /// Greedy maximal matching of the removed edges.
    pub matching: Vec<(usize, usize)>,
    /// Colors of the pair-graph vertices touched by removed edges.
    pub color: Vec<Option<usize>>,
    pub num_colors: usize,
}

impl StripReport {
    /// The removed edges form a graph properly colored by `color`.
    pub fn verify(&self) -> Result<()> {
        for &(a, b) in &self.removed {
            match (self.color[a], self.color[b]) {
                (Some(x), Some(y)) if x != y => {}
                _ => {
                    return Err(Error::verification(format!(
                        "removed edge ({a},{b}) badly colored"
                    )))
                }
            }
        }
        if self.num_colors > 2 * self.matching.len() + 1 {
            return Err(Error::verification("more than 2|M|+1 colors"));
        }
        Ok(())
    }
}

/// Moves pair-graph edges with overlap `|A ∩ B| > eps' n` into a separate
/// graph, colored through a maximal matching: matched vertices get their
/// own colors, all other touched vertices share one more.
pub fn strip_large_overlap(
    p: &PairedHypergraph,
    eps_prime: &Rational,
) -> Result<(PairedHypergraph, StripReport)> {
    if eps_prime <= &Rational::zero() {
        return Err(Error::validation("ε′ must be positive"));
    }
    let limit = eps_prime * rational::from_usize(p.n());
    let (mut keep, mut removed) = (Vec::new(), Vec::new());
    for (a, b) in p.pair_graph().edges() {
        if rational::from_usize(p.overlap(a, b)) > limit {
            removed.push((a, b));
        } else {
            keep.push((a, b));
        }
    }
    let m = p.hypergraph().num_edges();
    let mut matched = VertexSet::new(m);
    let mut matching = Vec::new();
    for &(a, b) in &removed {
        if !matched.contains(a) && !matched.contains(b) {
            matched.insert(a);
            matched.insert(b);
            matching.push((a, b));
        }
    }
    let mut color = vec![None; m];
    for (i, &(a, b)) in matching.iter().enumerate() {
        color[a] = Some(2 * i);
        color[b] = Some(2 * i + 1);
    }
    let mut num_colors = 2 * matching.len();
    for &(a, b) in &removed {
        for v in [a, b] {
            if color[v].is_none() {
                color[v] = Some(2 * matching.len());
                num_colors = 2 * matching.len() + 1;
            }
        }
    }
    let report = StripReport {
        removed,
        matching,
        color,
        num_colors,
    };
    report.verify()?;
    let reduced = PairedHypergraph::new(p.hypergraph().clone(), Graph::from_edges(m, &keep)?)?;
    Ok((reduced, report))
}

// ---------------------------------------------------------------------------
// boosters

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoosterConfig {
    /// Density floor of the hyperedges.
    #[serde(with = "rational::serde_rational")]
    pub c: Rational,
    #[serde(with = "rational::serde_rational")]
    pub eps: Rational,
    /// Paired VC-dimension the instance is assumed not to exceed.
    pub d: usize,
    /// Booster arity.
    pub p: usize,
    #[serde(with = "rational::serde_rational")]
    pub eps_prime: Rational,
    /// Accept `p != 2^d + 1`.
    #[serde(default)]
    pub force: bool,
}

impl BoosterConfig {
    /// `p = 2^d + 1` and `eps' = eps (c/9)^(2p) / 2`.
    pub fn new(c: Rational, eps: Rational, d: usize) -> Self {
        let p = (1 << d) + 1;
        let eps_prime = Self::eps_prime_ceiling(&c, &eps, p) / rational::int(2);
        BoosterConfig {
            c,
            eps,
            d,
            p,
            eps_prime,
            force: false,
        }
    }

    /// Same, with an explicit arity (forced when it differs from `2^d + 1`).
    pub fn with_arity(c: Rational, eps: Rational, d: usize, p: usize) -> Self {
        let eps_prime = Self::eps_prime_ceiling(&c, &eps, p) / rational::int(2);
        BoosterConfig {
            force: p != (1 << d) + 1,
            c,
            eps,
            d,
            p,
            eps_prime,
        }
    }

    fn eps_prime_ceiling(c: &Rational, eps: &Rational, p: usize) -> Rational {
        let base = c / rational::int(9);
        let mut pow = Rational::one();
        for _ in 0..2 * p {
            pow *= &base;
        }
        eps * pow
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.c > Rational::zero() && self.c < Rational::one()) {
            return Err(Error::validation("c must satisfy 0 < c < 1"));
        }
        if self.eps <= Rational::zero() {
            return Err(Error::validation("ε must be positive"));
        }
        guard("booster dimension d", self.d, 8)?;
        if self.p != (1 << self.d) + 1 && !self.force {
            return Err(Error::validation(format!(
                "p must be tuned to 2^d+1 = {} (got {}; use force to override)",
                (1 << self.d) + 1,
                self.p
            )));
        }
        if self.eps_prime <= Rational::zero()
            || self.eps_prime >= Self::eps_prime_ceiling(&self.c, &self.eps, self.p)
        {
            return Err(Error::validation("ε′ must satisfy 0 < ε′ < ε(c/9)^(2p)"));
        }
        Ok(())
    }

    /// Smallest `s` with `(1+eps)^s c >= 1`.
    pub fn depth_bound(&self) -> usize {
        let growth = Rational::one() + &self.eps;
        let mut x = self.c.clone();
        let mut s = 0;
        while x < Rational::one() {
            x *= &growth;
            s += 1;
        }
        s
    }

    /// `(1+eps)^s c`.
    pub fn floor_at(&self, s: usize) -> Rational {
        let growth = Rational::one() + &self.eps;
        (0..s).fold(self.c.clone(), |x, _| x * &growth)
    }
}

/// `|F ∩ S| / |S| >= (1+eps) |F| / n`.
pub fn is_boosted(f: &VertexSet, s: &VertexSet, n: usize, eps: &Rational) -> bool {
    if s.is_empty() || n == 0 {
        return false;
    }
    let lhs = rational::from_usize(f.intersection_len(s) * n);
    let rhs = (Rational::one() + eps) * rational::from_usize(f.len() * s.len());
    lhs >= rhs
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtractionStop {
    /// The pair graph has no edges at all.
    StablePairGraph,
    /// Every pair-graph edge has an endpoint boosted by a current atom.
    BoosterFound,
    /// The matching reached `d + 1` edges with all cells nonempty.
    ReachedDimension,
    /// The last extension emptied a cell.
    EmptyCell,
    /// An unboosted edge exists but touches the matching.
    NoBooster,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceStep {
    pub matched: usize,
    /// Edge added at this step (none on the final step).
    pub edge: Option<(usize, usize)>,
    pub atom_sizes: Vec<usize>,
    /// `|A| / n` and `|B| / n` of the added edge.
    #[serde(with = "rational::serde_rational::vec")]
    pub densities: Vec<Rational>,
    /// Accumulated near-disjointness slack `i · 2ε′/c`, for comparison only.
    #[serde(with = "rational::serde_rational")]
    pub slack: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Extraction {
    pub matching: Vec<(usize, usize)>,
    /// Cells by bitmask (bit `i` set means inside `A_i`), then the leftover.
    pub atoms: Vec<Vec<usize>>,
    pub stop: ExtractionStop,
    pub trace: Vec<TraceStep>,
}

fn atoms_of(p: &PairedHypergraph, matching: &[(usize, usize)]) -> Vec<VertexSet> {
    let mut cells = vec![VertexSet::full(p.n())];
    for &(a, b) in matching {
        let mut next = Vec::with_capacity(cells.len() * 2);
        next.extend(cells.iter().map(|c| c.intersection(p.edge(b))));
        next.extend(cells.iter().map(|c| c.intersection(p.edge(a))));
        cells = next;
    }
    let mut leftover = VertexSet::full(p.n());
    for c in &cells {
        leftover.difference_with(c);
    }
    cells.push(leftover);
    cells
}

/// Greedily grows a matching of pair-graph edges, each new edge having
/// both endpoints unboosted by every current atom; see [`ExtractionStop`]
/// for the ways it ends. Hyperedges must all have the same size.
pub fn extract_unboosted_matching(p: &PairedHypergraph, cfg: &BoosterConfig) -> Result<Extraction> {
    cfg.validate()?;
    let sizes: Vec<usize> = p.hypergraph().edges().iter().map(|e| e.len()).collect();
    if sizes.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::precondition(
            "hyperedges must all have the same size",
        ));
    }
    let n = p.n();
    let edges = p.pair_graph().edges();
    let step_slack = rational::int(2) * &cfg.eps_prime / &cfg.c;
    let mut matching: Vec<(usize, usize)> = Vec::new();
    let mut trace = Vec::new();
    let finish = |matching: Vec<(usize, usize)>, atoms: Vec<VertexSet>, stop, trace| Extraction {
        matching,
        atoms: atoms.iter().map(|a| a.to_vec()).collect(),
        stop,
        trace,
    };
    if edges.is_empty() {
        let atoms = atoms_of(p, &matching);
        return Ok(finish(
            matching,
            atoms,
            ExtractionStop::StablePairGraph,
            trace,
        ));
    }
    loop {
        let atoms = atoms_of(p, &matching);
        let k = matching.len();
        let record = |edge: Option<(usize, usize)>| TraceStep {
            matched: k,
            edge,
            atom_sizes: atoms.iter().map(|a| a.len()).collect(),
            densities: edge
                .map(|(a, b)| {
                    [a, b]
                        .iter()
                        .map(|&e| {
                            rational::from_usize(p.edge(e).len()) / rational::from_usize(n.max(1))
                        })
                        .collect()
                })
                .unwrap_or_default(),
            slack: &step_slack * rational::from_usize(k),
        };
        if atoms[..atoms.len() - 1].iter().any(|c| c.is_empty()) {
            trace.push(record(None));
            return Ok(finish(matching, atoms, ExtractionStop::EmptyCell, trace));
        }
        if k == cfg.d + 1 {
            trace.push(record(None));
            return Ok(finish(
                matching,
                atoms,
                ExtractionStop::ReachedDimension,
                trace,
            ));
        }
        let unboosted = |e: usize| atoms.iter().all(|s| !is_boosted(p.edge(e), s, n, &cfg.eps));
        let used = |e: usize| matching.iter().any(|&(a, b)| a == e || b == e);
        let mut blocked = false;
        let mut pick = None;
        for &(a, b) in &edges {
            if unboosted(a) && unboosted(b) {
                if used(a) || used(b) {
                    blocked = true;
                } else {
                    pick = Some((a, b));
                    break;
                }
            }
        }
        match pick {
            Some(e) => {
                trace.push(record(Some(e)));
                matching.push(e);
            }
            None => {
                trace.push(record(None));
                let stop = if blocked {
                    ExtractionStop::NoBooster
                } else {
                    ExtractionStop::BoosterFound
                };
                return Ok(finish(matching, atoms, stop, trace));
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    Internal,
    StableLeaf,
    NoBoosterLeaf,
    SmallLeaf,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoosterNode {
    pub depth: usize,
    #[serde(with = "rational::serde_rational")]
    pub density_floor: Rational,
    /// Hyperedge size after truncation to the density floor.
    pub edge_size: usize,
    /// Pair-graph vertices of the input that this node's hyperedges stand for.
    pub edge_ids: Vec<usize>,
    /// The node's (restricted, truncated) paired hypergraph.
    pub paired: PairedHypergraph,
    pub kind: NodeKind,
    /// Booster sets `S_1..S_p` in node-local vertex numbers.
    pub boosters: Vec<Vec<usize>>,
    /// `E_0, E_1, ..., E_p` as node-local hyperedge indices.
    pub parts: Vec<Vec<usize>>,
    /// Child node for each `E_i` (`i >= 1`) that is nonempty.
    pub children: Vec<Option<usize>>,
    pub colors: usize,
    pub extraction: Option<Extraction>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoosterTree {
    pub config: BoosterConfig,
    pub strip: StripReport,
    pub nodes: Vec<BoosterNode>,
    pub depth: usize,
    pub depth_bound: usize,
    pub coloring: Coloring,
}

/// Keeps the `size` lowest-index vertices of every hyperedge.
pub fn truncate_edges(p: &PairedHypergraph, size: usize) -> Result<PairedHypergraph> {
    let mut out = Vec::with_capacity(p.hypergraph().num_edges());
    for (i, e) in p.hypergraph().edges().iter().enumerate() {
        if e.len() < size {
            return Err(Error::precondition(format!(
                "hyperedge {i} has {} vertices, below the required {size}",
                e.len()
            )));
        }
        out.push(VertexSet::from_iter(p.n(), e.iter().take(size)));
    }
    Ok(p.with_edges(out))
}

struct TreeBuilder<'a> {
    cfg: &'a BoosterConfig,
    nodes: Vec<BoosterNode>,
}

impl TreeBuilder<'_> {
    /// Builds the subtree and returns (node index, local colors per hyperedge).
    fn build(
        &mut self,
        p: PairedHypergraph,
        ids: Vec<usize>,
        depth: usize,
    ) -> Result<(usize, Vec<usize>)> {
        let floor = self.cfg.floor_at(depth);
        let n = p.n();
        let size = rational::ceil_to_usize(&(&floor * rational::from_usize(n)));
        let p = truncate_edges(&p, size)?;
        let m = p.hypergraph().num_edges();
        let idx = self.nodes.len();
        self.nodes.push(BoosterNode {
            depth,
            density_floor: floor.clone(),
            edge_size: size,
            edge_ids: ids.clone(),
            paired: p.clone(),
            kind: NodeKind::StableLeaf,
            boosters: Vec::new(),
            parts: Vec::new(),
            children: Vec::new(),
            colors: 0,
            extraction: None,
        });
        let pg = p.pair_graph();
        let exact = |kind: NodeKind, nodes: &mut Vec<BoosterNode>| -> Result<Vec<usize>> {
            let (k, col) = chromatic_number_exact(pg)?;
            nodes[idx].kind = kind;
            nodes[idx].colors = k;
            Ok(col.color)
        };
        if pg.edge_count() == 0 {
            self.nodes[idx].kind = NodeKind::StableLeaf;
            self.nodes[idx].colors = usize::from(m > 0);
            return Ok((idx, vec![0; m]));
        }
        // n at most (1/floor)^(d+1)
        let inv = Rational::one() / &floor;
        let cutoff = (0..=self.cfg.d).fold(Rational::one(), |x, _| x * &inv);
        if rational::from_usize(n) <= cutoff.ceil() {
            let col = exact(NodeKind::SmallLeaf, &mut self.nodes)?;
            return Ok((idx, col));
        }
        let ex = extract_unboosted_matching(&p, self.cfg)?;
        let boosters: Vec<VertexSet> = ex
            .atoms
            .iter()
            .filter(|a| !a.is_empty())
            .map(|a| VertexSet::from_iter(n, a.iter().copied()))
            .collect();
        let found = ex.stop == ExtractionStop::BoosterFound && boosters.len() <= self.cfg.p;
        self.nodes[idx].extraction = Some(ex);
        if !found {
            let col = exact(NodeKind::NoBoosterLeaf, &mut self.nodes)?;
            return Ok((idx, col));
        }
        let mut parts = vec![Vec::new(); boosters.len() + 1];
        for j in 0..m {
            let i = boosters
                .iter()
                .position(|s| is_boosted(p.edge(j), s, n, &self.cfg.eps))
                .map_or(0, |i| i + 1);
            parts[i].push(j);
        }
        let mut color = vec![usize::MAX; m];
        let mut next = 0;
        if !parts[0].is_empty() {
            for &j in &parts[0] {
                color[j] = 0;
            }
            next = 1;
        }
        let mut children = Vec::with_capacity(boosters.len());
        for (i, s) in boosters.iter().enumerate() {
            let part = &parts[i + 1];
            if part.is_empty() {
                children.push(None);
                continue;
            }
            let sub = hypergraph::restrict(&p.sub_edges(part), s)?;
            let sub_ids = part.iter().map(|&j| ids[j]).collect();
            let (child, local) = self.build(sub, sub_ids, depth + 1)?;
            let used = local.iter().map(|c| c + 1).max().unwrap_or(0);
            for (&j, c) in part.iter().zip(local) {
                color[j] = next + c;
            }
            next += used;
            children.push(Some(child));
        }
        let node = &mut self.nodes[idx];
        node.kind = NodeKind::Internal;
        node.boosters = boosters.iter().map(|s| s.to_vec()).collect();
        node.parts = parts;
        node.children = children;
        node.colors = next;
        Ok((idx, color))
    }
}

/// Recursive booster decomposition. Large overlaps are stripped first and
/// colored separately; the two colorings are combined as a product.
pub fn booster_tree(p: &PairedHypergraph, cfg: &BoosterConfig) -> Result<BoosterTree> {
    cfg.validate()?;
    let n = p.n();
    let need = &cfg.c * rational::from_usize(n);
    if let Some(i) = p
        .hypergraph()
        .edges()
        .iter()
        .position(|e| rational::from_usize(e.len()) < need)
    {
        return Err(Error::precondition(format!(
            "hyperedge {i} has density below c"
        )));
    }
    let (reduced, strip) = strip_large_overlap(p, &cfg.eps_prime)?;
    let m = p.hypergraph().num_edges();
    let mut b = TreeBuilder {
        cfg,
        nodes: Vec::new(),
    };
    let (_, tree_color) = b.build(reduced, (0..m).collect(), 0)?;
    let combined: Vec<usize> = (0..m)
        .map(|v| strip.color[v].map_or(0, |c| c + 1) * m.max(1) + tree_color[v])
        .collect();
    let coloring = Coloring::new(combined).compacted();
    let depth = b.nodes.iter().map(|x| x.depth).max().unwrap_or(0);
    let tree = BoosterTree {
        config: cfg.clone(),
        strip,
        depth,
        depth_bound: cfg.depth_bound(),
        nodes: b.nodes,
        coloring,
    };
    tree.verify(p)?;
    Ok(tree)
}

impl BoosterTree {
    /// Re-checks every structural invariant against the input.
    pub fn verify(&self, p: &PairedHypergraph) -> Result<()> {
        let fail = |m: String| Err(Error::verification(m));
        if !self.coloring.is_proper(p.pair_graph()) {
            return fail("assembled coloring is not proper".into());
        }
        self.strip.verify()?;
        if self.depth > self.depth_bound {
            return fail(format!(
                "depth {} exceeds bound {}",
                self.depth, self.depth_bound
            ));
        }
        for (i, node) in self.nodes.iter().enumerate() {
            let np = &node.paired;
            if node.density_floor != self.config.floor_at(node.depth) {
                return fail(format!("node {i}: density floor is off"));
            }
            let want =
                rational::ceil_to_usize(&(&node.density_floor * rational::from_usize(np.n())));
            if node.edge_size != want || np.hypergraph().edges().iter().any(|e| e.len() != want) {
                return fail(format!("node {i}: hyperedges not truncated to the floor"));
            }
            if node.kind == NodeKind::StableLeaf && np.pair_graph().edge_count() > 0 {
                return fail(format!("node {i}: stable leaf with pair-graph edges"));
            }
            if node.kind != NodeKind::Internal {
                continue;
            }
            let m = np.hypergraph().num_edges();
            let mut seen = vec![0usize; m];
            for part in &node.parts {
                for &j in part {
                    seen[j] += 1;
                }
            }
            if seen.iter().any(|&c| c != 1) {
                return fail(format!("node {i}: parts do not partition the hyperedges"));
            }
            if node.boosters.len() > self.config.p || node.parts.len() != node.boosters.len() + 1 {
                return fail(format!("node {i}: booster arity"));
            }
            let e0 = VertexSet::from_iter(m, node.parts[0].iter().copied());
            if !np.pair_graph().is_stable(&e0) {
                return fail(format!("node {i}: E_0 is not stable"));
            }
            for (k, s) in node.boosters.iter().enumerate() {
                let s = VertexSet::from_iter(np.n(), s.iter().copied());
                for &j in &node.parts[k + 1] {
                    if !is_boosted(np.edge(j), &s, np.n(), &self.config.eps) {
                        return fail(format!(
                            "node {i}: hyperedge {j} not boosted by S_{}",
                            k + 1
                        ));
                    }
                }
                match node.children[k] {
                    Some(c) => {
                        let child = &self.nodes[c];
                        let ids: Vec<usize> = node.parts[k + 1]
                            .iter()
                            .map(|&j| node.edge_ids[j])
                            .collect();
                        if child.edge_ids != ids
                            || child.depth != node.depth + 1
                            || child.paired.n() != s.len()
                        {
                            return fail(format!("node {i}: child {c} does not match E_{}", k + 1));
                        }
                    }
                    None if node.parts[k + 1].is_empty() => {}
                    None => return fail(format!("node {i}: E_{} has no child", k + 1)),
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Zykov maps

/// Homomorphism `Z_k -> g` from a matched witness on the neighborhood
/// paired hypergraph of `g`: matching edge `i` goes to `(a_i, b_i)`, and
/// the apex choosing endpoint set `c` goes to the representative of the
/// cell lying in `N(a_i)` exactly where `c` picks `2i`.
pub fn zykov_witness_to_hom(g: &Graph, w: &PairedVcWitness) -> Result<Vec<usize>> {
    let p = neighborhood_paired(g);
    w.verify(&p, true)?;
    let k = w.dimension();
    let z = zykov_matching(k)?;
    let full = (1usize << k) - 1;
    let mut map = Vec::with_capacity(z.n());
    for &(a, b) in &w.pairs {
        map.push(a);
        map.push(b);
    }
    for c in 0..1usize << k {
        map.push(w.cell_reps[full & !c]);
    }
    if !search::is_homomorphism(&z, g, &map) {
        return Err(Error::verification("witness map is not a homomorphism"));
    }
    Ok(map)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Lift {
    pub k: usize,
    pub paired: PairedHypergraph,
    /// `X` side of the cut; hyperedge `i` belongs to `v1[i]`.
    pub v1: Vec<usize>,
    pub v2: Vec<usize>,
    /// Vertex `j` of the lifted hypergraph is this `2^k`-subset of `v2`.
    pub subsets: Vec<Vec<usize>>,
}

pub const LIFT_VERTEX_LIMIT: usize = 4096;

/// Lifted paired hypergraph: vertices are the `2^k`-subsets of the `Y`
/// side, the hyperedge of an `X`-vertex collects the subsets inside its
/// neighborhood, and the pair graph is `g` induced on `X`.
pub fn subfree_lift(g: &Graph, cut: &Cut, k: usize) -> Result<Lift> {
    if cut.side.len() != g.n() {
        return Err(Error::validation("cut does not match the graph"));
    }
    guard("lift exponent k", k, 2)?;
    let (v1, v2) = (cut.x(), cut.y());
    let size = 1usize << k;
    guard(
        "lifted vertices",
        binomial(v2.len(), size),
        LIFT_VERTEX_LIMIT,
    )?;
    let mut subsets = Vec::new();
    let mut cur = Vec::with_capacity(size);
    fn combos(
        items: &[usize],
        size: usize,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            combos(items, size, i + 1, cur, out);
            cur.pop();
        }
    }
    combos(&v2, size, 0, &mut cur, &mut subsets);
    let nv = subsets.len();
    let edges: Vec<VertexSet> = v1
        .iter()
        .map(|&v| {
            VertexSet::from_iter(
                nv,
                (0..nv).filter(|&j| subsets[j].iter().all(|&u| g.has_edge(u, v))),
            )
        })
        .collect();
    let paired = PairedHypergraph::new(Hypergraph::new(nv, edges), g.induced(&v1))?;
    Ok(Lift {
        k,
        paired,
        v1,
        v2,
        subsets,
    })
}

/// Injective copy of `Z_k` in `g` from a matched witness of dimension `k`
/// on the lift: each cell's `2^k`-subset offers enough distinct vertices to
/// give every apex its own image.
pub fn lift_witness_to_zykov_subgraph(
    g: &Graph,
    lift: &Lift,
    w: &PairedVcWitness,
) -> Result<Vec<usize>> {
    w.verify(&lift.paired, true)?;
    let k = w.dimension();
    if k != lift.k {
        return Err(Error::validation(
            "witness dimension differs from the lift exponent",
        ));
    }
    let z = zykov_matching(k)?;
    let full = (1usize << k) - 1;
    let mut map = Vec::with_capacity(z.n());
    for &(a, b) in &w.pairs {
        map.push(lift.v1[a]);
        map.push(lift.v1[b]);
    }
    let mut used = VertexSet::new(g.n());
    for c in 0..1usize << k {
        let subset = &lift.subsets[w.cell_reps[full & !c]];
        // at most 2^k - 1 vertices are taken when choosing for this apex
        let v = subset
            .iter()
            .copied()
            .find(|&v| !used.contains(v))
            .ok_or_else(|| Error::verification("no free vertex in cell subset"))?;
        used.insert(v);
        map.push(v);
    }
    if !search::is_subgraph_embedding(&z, g, &map) {
        return Err(Error::verification(
            "lifted map is not a subgraph embedding",
        ));
    }
    Ok(map)
}
