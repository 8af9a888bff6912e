//! Graph families: Kneser, Hajnal, Zykov matchings, discretized Borsuk
//! graphs, the weighted Borsuk-Hajnal graph and the bicap graph.

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::error::{guard, Error, Result};
use crate::graph::{self, Coloring, Graph, NearBipartiteWitness};
use crate::rational::{self, Rational};
use crate::search;
use crate::sphere::{self, AngleTest, SpherePoint};

// ---------------------------------------------------------------------------
// Kneser

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KneserParams {
    pub n: usize,
    pub k: usize,
}

pub const KNESER_VERTEX_LIMIT: usize = 100_000;
pub const KNESER_EDGE_LIMIT: usize = 5_000_000;

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
        if r > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    r as usize
}

impl KneserParams {
    pub fn ground(&self) -> usize {
        2 * self.n + self.k
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::validation("Kneser graphs need n >= 1"));
        }
        guard(
            "Kneser vertices",
            binomial(self.ground(), self.n),
            KNESER_VERTEX_LIMIT,
        )?;
        let v = binomial(self.ground(), self.n);
        let deg = binomial(self.ground() - self.n, self.n);
        guard("Kneser edges", v.saturating_mul(deg) / 2, KNESER_EDGE_LIMIT)
    }
}

/// The `n`-subsets of `0..2n+k` in colex order.
pub fn kneser_vertices(p: &KneserParams) -> Result<Vec<VertexSet>> {
    p.validate()?;
    let m = p.ground();
    let mut out = Vec::with_capacity(binomial(m, p.n));
    for_each_combination(m, p.n, |c| {
        out.push(VertexSet::from_iter(m, c.iter().copied()))
    });
    Ok(out)
}

/// Calls `f` on every `n`-subset of `0..m` (as a sorted slice), colex order.
fn for_each_combination(m: usize, n: usize, mut f: impl FnMut(&[usize])) {
    if n > m {
        return;
    }
    let mut c: Vec<usize> = (0..n).collect();
    loop {
        f(&c);
        // smallest position that can move up by one
        let Some(i) = (0..n).find(|&i| c[i] + 1 < if i + 1 < n { c[i + 1] } else { m }) else {
            return;
        };
        c[i] += 1;
        for (j, x) in c[..i].iter_mut().enumerate() {
            *x = j;
        }
    }
}

/// Position of a sorted subset in colex order.
fn colex_rank(c: &[usize]) -> usize {
    c.iter().enumerate().map(|(i, &x)| binomial(x, i + 1)).sum()
}

/// Kneser graph: `n`-subsets of a `(2n+k)`-set, adjacent when disjoint.
pub fn kneser(p: &KneserParams) -> Result<Graph> {
    let verts = kneser_vertices(p)?;
    let mut edges = Vec::new();
    for (i, x) in verts.iter().enumerate() {
        let comp = x.complement().to_vec();
        for_each_combination(comp.len(), p.n, |c| {
            let sub: Vec<usize> = c.iter().map(|&j| comp[j]).collect();
            let j = colex_rank(&sub);
            if j > i {
                edges.push((i, j));
            }
        });
    }
    Graph::from_edges(verts.len(), &edges)
}

/// Proper coloring with `k+2` colors: a subset whose least element is
/// `i < k` gets color `i`; the rest live in the last `2n` elements and are
/// split by whether they contain element `k`.
pub fn kneser_canonical_coloring(p: &KneserParams) -> Result<Coloring> {
    let verts = kneser_vertices(p)?;
    let color = verts
        .iter()
        .map(|x| {
            let least = x.first().expect("subsets are nonempty");
            if least < p.k {
                least
            } else if least == p.k {
                p.k
            } else {
                p.k + 1
            }
        })
        .collect();
    Ok(Coloring::new(color))
}

// ---------------------------------------------------------------------------
// Hajnal

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HajnalParams {
    pub k: usize,
    pub n: usize,
    pub l: usize,
}

pub const HAJNAL_VERTEX_LIMIT: usize = 200_000;

/// Vertex ranges of a Hajnal graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HajnalLayout {
    pub kneser: std::ops::Range<usize>,
    /// `S_1, ..., S_{2n+k}` in order.
    pub parts: Vec<std::ops::Range<usize>>,
    pub s_prime: std::ops::Range<usize>,
}

impl HajnalParams {
    fn kneser(&self) -> KneserParams {
        KneserParams {
            n: self.n,
            k: self.k,
        }
    }

    fn validate(&self) -> Result<()> {
        let m = 2 * self.n + self.k;
        if self.n == 0 {
            return Err(Error::validation("Hajnal graphs need n >= 1"));
        }
        if self.l == 0 || !self.l.is_multiple_of(m) {
            return Err(Error::validation(format!(
                "2n+k must divide ℓ (2n+k = {m}, ℓ = {})",
                self.l
            )));
        }
        self.kneser().validate()?;
        guard(
            "Hajnal vertices",
            3 * self.l + binomial(m, self.n),
            HAJNAL_VERTEX_LIMIT,
        )
    }

    pub fn layout(&self) -> Result<HajnalLayout> {
        self.validate()?;
        let m = 2 * self.n + self.k;
        let kv = binomial(m, self.n);
        let part = 2 * self.l / m;
        let parts = (0..m).map(|i| kv + i * part..kv + (i + 1) * part).collect();
        Ok(HajnalLayout {
            kneser: 0..kv,
            parts,
            s_prime: kv + 2 * self.l..kv + 3 * self.l,
        })
    }
}

/// Kneser graph plus a stable set `S` of size `2l` split evenly into
/// `S_1..S_{2n+k}` (subset `x` joined to every `S_i` with `i in x`), plus a
/// stable set `S'` of size `l` completely joined to `S`.
pub fn hajnal(p: &HajnalParams) -> Result<Graph> {
    let lay = p.layout()?;
    let verts = kneser_vertices(&p.kneser())?;
    let kg = kneser(&p.kneser())?;
    let mut edges = kg.edges();
    for (x, set) in verts.iter().enumerate() {
        for (i, part) in lay.parts.iter().enumerate() {
            if set.contains(i) {
                edges.extend(part.clone().map(|s| (x, s)));
            }
        }
    }
    let s_all = lay.parts[0].start..lay.parts.last().unwrap().end;
    for s in s_all {
        edges.extend(lay.s_prime.clone().map(|t| (s, t)));
    }
    Graph::from_edges(lay.s_prime.end, &edges)
}

// ---------------------------------------------------------------------------
// Zykov matchings

pub const ZYKOV_LIMIT: usize = 12;

/// `Z_k`: matching edges `(2i, 2i+1)` for `i < k`, then one apex `2k + c`
/// for every `c < 2^k`, joined to `2i + bit_i(c)` for each `i`.
pub fn zykov_matching(k: usize) -> Result<Graph> {
    guard("Zykov matching size", k, ZYKOV_LIMIT)?;
    let n = 2 * k + (1 << k);
    let mut edges: Vec<(usize, usize)> = (0..k).map(|i| (2 * i, 2 * i + 1)).collect();
    for c in 0..1usize << k {
        for i in 0..k {
            edges.push((2 * k + c, 2 * i + (c >> i & 1)));
        }
    }
    Graph::from_edges(n, &edges)
}

/// Apex vertex of `Z_k` for endpoint choice `c`.
pub fn zykov_apex(k: usize, c: usize) -> usize {
    2 * k + c
}

/// Homomorphism from a near bipartite graph into `Z_m`, where `m` counts
/// the components of the max-degree-one part (matching edges, then isolated
/// vertices). Component `i` lands on matching edge `i`; a stable vertex
/// goes to the apex choosing, for each matching edge, the endpoint image it
/// may be adjacent to.
pub fn near_bipartite_to_zykov_hom(
    g: &Graph,
    w: &NearBipartiteWitness,
) -> Result<(usize, Vec<usize>)> {
    w.verify(g)?;
    let m = w.components();
    let z = zykov_matching(m)?;
    let mut map = vec![usize::MAX; g.n()];
    for (i, &(a, b)) in w.matching.iter().enumerate() {
        map[a] = 2 * i;
        map[b] = 2 * i + 1;
    }
    let offset = w.matching.len();
    for (j, &u) in w.isolated.iter().enumerate() {
        map[u] = 2 * (offset + j);
    }
    for &s in &w.stable {
        let c = w
            .matching
            .iter()
            .enumerate()
            .filter(|(_, &(_, b))| g.has_edge(s, b))
            .fold(0usize, |c, (i, _)| c | 1 << i);
        map[s] = zykov_apex(m, c);
    }
    if !search::is_homomorphism(g, &z, &map) {
        return Err(Error::verification("constructed map is not a homomorphism"));
    }
    Ok((m, map))
}

// ---------------------------------------------------------------------------
// Borsuk-type graphs

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Sampling {
    /// Evenly spaced grid (circle only).
    #[default]
    Grid,
    /// Seeded sample of exact rational unit vectors.
    Random,
}

pub const SPHERE_POINT_LIMIT: usize = 4000;

/// Angles are given in units of pi: `eps_pi = 1/30` means `pi/30`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BorsukParams {
    pub d: usize,
    #[serde(with = "rational::serde_rational")]
    pub eps_pi: Rational,
    pub num_points: usize,
    pub seed: u64,
    #[serde(default)]
    pub sampling: Sampling,
}

fn sample(d: usize, count: usize, sampling: Sampling, seed: u64) -> Result<Vec<SpherePoint>> {
    guard("sphere points", count, SPHERE_POINT_LIMIT)?;
    match sampling {
        Sampling::Grid if d == 1 => Ok(sphere::grid(count)),
        Sampling::Grid => Err(Error::validation(
            "grid sampling is only available for d = 1",
        )),
        Sampling::Random => Ok(sphere::random_points(d, count, seed)),
    }
}

fn check_angle(name: &str, r: &Rational, max: Rational) -> Result<()> {
    if r <= &Rational::zero() || r >= &max {
        return Err(Error::validation(format!(
            "{name} must lie strictly between 0 and {} pi",
            rational::format_rational(&max)
        )));
    }
    Ok(())
}

/// Seed of the independent stream used for cap or bicap centers.
fn center_seed(seed: u64) -> u64 {
    seed ^ 0x9e37_79b9_7f4a_7c15
}

/// Points on the sphere joined when at angular distance at least `pi - eps`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointGraph {
    pub graph: Graph,
    pub points: Vec<SpherePoint>,
}

fn borsuk_edges(points: &[SpherePoint], eps_pi: &Rational) -> Result<Vec<(usize, usize)>> {
    let far = AngleTest::new(Rational::one() - eps_pi)?;
    let mut edges = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if far.at_least(&points[i], &points[j]) {
                edges.push((i, j));
            }
        }
    }
    Ok(edges)
}

pub fn borsuk_discrete(p: &BorsukParams) -> Result<PointGraph> {
    if p.d == 0 {
        return Err(Error::validation("sphere dimension d must be at least 1"));
    }
    if p.num_points < p.d + 2 {
        return Err(Error::validation("need at least d+2 points"));
    }
    check_angle("eps", &p.eps_pi, Rational::one())?;
    let points = sample(p.d, p.num_points, p.sampling, p.seed)?;
    let edges = borsuk_edges(&points, &p.eps_pi)?;
    Ok(PointGraph {
        graph: Graph::from_edges(points.len(), &edges)?,
        points,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Part {
    #[serde(rename = "B'")]
    BPrime,
    #[serde(rename = "S'")]
    SPrime,
    #[serde(rename = "S")]
    S,
    #[serde(rename = "v")]
    V,
}

/// A generated graph with a part label per vertex and the sphere points of
/// the Borsuk part and of the cap (or bicap) centers.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub labels: Vec<Part>,
    pub points: Vec<SpherePoint>,
    pub centers: Vec<SpherePoint>,
}

impl LabeledGraph {
    pub fn part(&self, part: Part) -> Vec<usize> {
        (0..self.labels.len())
            .filter(|&v| self.labels[v] == part)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BorsukHajnalParams {
    pub d: usize,
    #[serde(with = "rational::serde_rational")]
    pub eps_pi: Rational,
    #[serde(with = "rational::serde_rational")]
    pub delta_pi: Rational,
    pub num_points: usize,
    /// Number of cap centers; `None` reuses the Borsuk points.
    #[serde(default)]
    pub cap_centers: Option<usize>,
    pub seed: u64,
    #[serde(default)]
    pub sampling: Sampling,
}

fn centers_for(
    d: usize,
    points: &[SpherePoint],
    count: Option<usize>,
    sampling: Sampling,
    seed: u64,
) -> Result<Vec<SpherePoint>> {
    match count {
        None => Ok(points.to_vec()),
        Some(0) => Ok(Vec::new()),
        Some(m) => sample(d, m, sampling, center_seed(seed)),
    }
}

/// Borsuk graph `B'`, a stable set `S'` of caps (a point joins every cap of
/// angular radius `pi/2 - delta` containing it), and a vertex `v` joined to
/// all of `S'`. Weights: `v` gets 1/3, `S'` shares 2/3 evenly, and `B'`
/// shares `1/(10 |B'| n)` evenly, `n` being the total vertex count.
pub fn borsuk_hajnal(p: &BorsukHajnalParams) -> Result<LabeledGraph> {
    check_angle("eps", &p.eps_pi, rational::rat(1, 2))?;
    check_angle("delta", &p.delta_pi, rational::rat(1, 2))?;
    if p.eps_pi >= p.delta_pi {
        return Err(Error::validation("parameters need 0 < ε < δ"));
    }
    let base = borsuk_discrete(&BorsukParams {
        d: p.d,
        eps_pi: p.eps_pi.clone(),
        num_points: p.num_points,
        seed: p.seed,
        sampling: p.sampling,
    })?;
    let centers = centers_for(p.d, &base.points, p.cap_centers, p.sampling, p.seed)?;
    if centers.is_empty() {
        return Err(Error::validation("at least one cap center is needed"));
    }
    let nb = base.points.len();
    let nc = centers.len();
    let n = nb + nc + 1;
    let v = n - 1;
    let mut edges = base.graph.edges();
    let inside = AngleTest::new(rational::rat(1, 2) - &p.delta_pi)?;
    for (c, center) in centers.iter().enumerate() {
        for (x, pt) in base.points.iter().enumerate() {
            if inside.at_most(pt, center) {
                edges.push((x, nb + c));
            }
        }
        edges.push((nb + c, v));
    }
    let tiny = Rational::one()
        / (rational::from_usize(10 * nb) * rational::from_usize(nb) * rational::from_usize(n));
    let cap_w = rational::rat(2, 3) / rational::from_usize(nc);
    let mut weights = vec![tiny; nb];
    weights.extend(std::iter::repeat_n(cap_w, nc));
    weights.push(rational::rat(1, 3));
    let graph = Graph::from_edges(n, &edges)?.with_weights(weights)?;
    let mut labels = vec![Part::BPrime; nb];
    labels.extend(std::iter::repeat_n(Part::SPrime, nc));
    labels.push(Part::V);
    Ok(LabeledGraph {
        graph,
        labels,
        points: base.points,
        centers,
    })
}

/// Shortest odd cycle with at most one vertex outside `B'`; `None` if
/// there is none.
pub fn near_odd_girth(lg: &LabeledGraph) -> Result<Option<usize>> {
    if lg.labels.len() != lg.graph.n() {
        return Err(Error::validation("one part label per vertex required"));
    }
    let b = lg.part(Part::BPrime);
    let gb = lg.graph.induced(&b);
    let mut local = vec![usize::MAX; lg.graph.n()];
    for (i, &v) in b.iter().enumerate() {
        local[v] = i;
    }
    let mut best = graph::odd_girth(&gb);
    let outside: Vec<usize> = (0..lg.graph.n())
        .filter(|&v| local[v] == usize::MAX)
        .collect();
    // odd walks between B'-neighbors of a single outside vertex
    let mut attach: Vec<Vec<usize>> = vec![Vec::new(); b.len()];
    let mut hoods: Vec<Vec<usize>> = Vec::new();
    for &c in &outside {
        let hood: Vec<usize> = lg
            .graph
            .neighbors(c)
            .iter()
            .filter(|&x| local[x] != usize::MAX)
            .map(|x| local[x])
            .collect();
        for &x in &hood {
            attach[x].push(hoods.len());
        }
        hoods.push(hood);
    }
    for x in 0..b.len() {
        if attach[x].is_empty() {
            continue;
        }
        let odd = parity_distances(&gb, x);
        for &h in &attach[x] {
            for &y in &hoods[h] {
                if let Some(l) = odd[y] {
                    let len = l + 2;
                    if best.is_none_or(|b| len < b) {
                        best = Some(len);
                    }
                }
            }
        }
    }
    Ok(best)
}

/// Shortest odd-length walk from `src` to every vertex.
pub fn parity_distances(g: &Graph, src: usize) -> Vec<Option<usize>> {
    let n = g.n();
    let mut dist = vec![[usize::MAX; 2]; n];
    let mut queue = std::collections::VecDeque::new();
    dist[src][0] = 0;
    queue.push_back((src, 0usize));
    while let Some((v, p)) = queue.pop_front() {
        let d = dist[v][p];
        for u in g.neighbors(v).iter() {
            if dist[u][1 - p] == usize::MAX {
                dist[u][1 - p] = d + 1;
                queue.push_back((u, 1 - p));
            }
        }
    }
    dist.into_iter()
        .map(|d| (d[1] != usize::MAX).then_some(d[1]))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BicapParams {
    pub d: usize,
    #[serde(with = "rational::serde_rational")]
    pub eps_pi: Rational,
    #[serde(with = "rational::serde_rational")]
    pub delta_pi: Rational,
    pub num_points: usize,
    /// Number of bicap centers; `None` reuses the Borsuk points.
    #[serde(default)]
    pub num_bicaps: Option<usize>,
    pub seed: u64,
    #[serde(default)]
    pub sampling: Sampling,
}

/// Borsuk graph `B` plus a stable set `S` of bicaps: a point joins a bicap
/// when its angle to the center is at most `pi/2 - delta` or at least
/// `pi/2 + delta`.
pub fn bicap_graph(p: &BicapParams) -> Result<LabeledGraph> {
    check_angle("eps", &p.eps_pi, rational::rat(1, 2))?;
    check_angle("delta", &p.delta_pi, rational::rat(1, 2))?;
    if p.delta_pi >= p.eps_pi {
        return Err(Error::validation("bicap parameters need δ < ε"));
    }
    let base = borsuk_discrete(&BorsukParams {
        d: p.d,
        eps_pi: p.eps_pi.clone(),
        num_points: p.num_points,
        seed: p.seed,
        sampling: p.sampling,
    })?;
    let centers = centers_for(p.d, &base.points, p.num_bicaps, p.sampling, p.seed)?;
    let nb = base.points.len();
    let n = nb + centers.len();
    let mut edges = base.graph.edges();
    let near = AngleTest::new(rational::rat(1, 2) - &p.delta_pi)?;
    let far = AngleTest::new(rational::rat(1, 2) + &p.delta_pi)?;
    for (c, center) in centers.iter().enumerate() {
        for (x, pt) in base.points.iter().enumerate() {
            if near.at_most(pt, center) || far.at_least(pt, center) {
                edges.push((x, nb + c));
            }
        }
    }
    let mut labels = vec![Part::BPrime; nb];
    labels.extend(std::iter::repeat_n(Part::S, centers.len()));
    Ok(LabeledGraph {
        graph: Graph::from_edges(n, &edges)?,
        labels,
        points: base.points,
        centers,
    })
}

/// Vertices of a graph as a set, for callers that need [`VertexSet`]s of parts.
pub fn part_set(lg: &LabeledGraph, part: Part) -> VertexSet {
    VertexSet::from_iter(lg.graph.n(), lg.part(part))
}
