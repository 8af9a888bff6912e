//! Exact chromatic number, fractional chromatic number and independence
//! number. The exact LP core lives in [`crate::lp`] and is re-exported here.

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{guard, Error, Result};
use crate::graph::{Coloring, Graph};
use crate::rational::{self, Rational};

pub use crate::lp::{lp_min, Constraint, LpProblem, LpSolution, Sense};

pub const CHROMATIC_LIMIT: usize = 64;
pub const CHROMATIC_NODE_LIMIT: usize = 50_000_000;

fn masks(g: &Graph) -> Vec<u64> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, u| m | 1 << u))
        .collect()
}

/// Largest clique found by greedy extension from every start vertex.
pub fn greedy_clique(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut best: Vec<usize> = Vec::new();
    for start in 0..n {
        let mut clique = vec![start];
        let mut cand = g.neighbors(start).clone();
        while let Some(v) = cand
            .iter()
            .max_by_key(|&v| (g.neighbors(v).intersection_len(&cand), std::cmp::Reverse(v)))
        {
            clique.push(v);
            cand.intersect_with(g.neighbors(v));
        }
        if clique.len() > best.len() {
            clique.sort_unstable();
            best = clique;
        }
    }
    best
}

struct Dsatur<'a> {
    g: &'a Graph,
    adj: Vec<u64>,
    color: Vec<usize>,
    sat: Vec<u64>,
    best: Vec<usize>,
    best_k: usize,
    lower: usize,
    nodes: usize,
}

const UNCOLORED: usize = usize::MAX;

impl Dsatur<'_> {
    fn assign(&mut self, v: usize, c: usize) -> u64 {
        self.color[v] = c;
        let mut touched = 0u64;
        let mut nb = self.adj[v];
        while nb != 0 {
            let u = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            if self.color[u] == UNCOLORED && self.sat[u] >> c & 1 == 0 {
                self.sat[u] |= 1 << c;
                touched |= 1 << u;
            }
        }
        touched
    }

    fn unassign(&mut self, v: usize, c: usize, mut touched: u64) {
        self.color[v] = UNCOLORED;
        while touched != 0 {
            let u = touched.trailing_zeros() as usize;
            touched &= touched - 1;
            self.sat[u] &= !(1 << c);
        }
    }

    fn search(&mut self, colored: usize, used: usize) -> Result<()> {
        self.nodes += 1;
        guard("coloring search nodes", self.nodes, CHROMATIC_NODE_LIMIT)?;
        if used >= self.best_k {
            return Ok(());
        }
        if colored == self.g.n() {
            self.best_k = used;
            self.best = self.color.clone();
            return Ok(());
        }
        // highest saturation, then highest degree, then lowest index
        let v = (0..self.g.n())
            .filter(|&v| self.color[v] == UNCOLORED)
            .max_by_key(|&v| {
                (
                    self.sat[v].count_ones(),
                    self.g.degree(v),
                    std::cmp::Reverse(v),
                )
            })
            .unwrap();
        for c in 0..used {
            if self.sat[v] >> c & 1 == 0 {
                let t = self.assign(v, c);
                self.search(colored + 1, used)?;
                self.unassign(v, c, t);
                if self.best_k <= self.lower {
                    return Ok(());
                }
            }
        }
        if used + 1 < self.best_k {
            let t = self.assign(v, used);
            self.search(colored + 1, used + 1)?;
            self.unassign(v, used, t);
        }
        Ok(())
    }
}

fn greedy_dsatur(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut color = vec![UNCOLORED; n];
    let mut sat = vec![0u64; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| color[v] == UNCOLORED)
            .max_by_key(|&v| (sat[v].count_ones(), g.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        let c = (!sat[v]).trailing_zeros() as usize;
        color[v] = c;
        for u in g.neighbors(v).iter() {
            sat[u] |= 1 << c;
        }
    }
    color
}

/// Exact chromatic number by DSATUR branch and bound, with a greedy clique
/// lower bound and a greedy DSATUR upper bound.
pub fn chromatic_number_exact(g: &Graph) -> Result<(usize, Coloring)> {
    let n = g.n();
    guard("chromatic number vertices", n, CHROMATIC_LIMIT)?;
    if n == 0 {
        return Ok((0, Coloring::new(Vec::new())));
    }
    let clique = greedy_clique(g);
    let start = greedy_dsatur(g);
    let start_k = start.iter().max().unwrap() + 1;
    let mut s = Dsatur {
        g,
        adj: masks(g),
        color: vec![UNCOLORED; n],
        sat: vec![0; n],
        best_k: start_k,
        best: start,
        lower: clique.len(),
        nodes: 0,
    };
    if s.best_k > s.lower {
        // the clique's colors are fixed up to renaming
        for (c, &v) in clique.iter().enumerate() {
            s.assign(v, c);
        }
        s.search(clique.len(), clique.len())?;
    }
    let coloring = Coloring::new(s.best);
    debug_assert!(coloring.is_proper(g));
    Ok((s.best_k, coloring))
}

/// Independence number and a maximum stable set (lowest-index first among
/// equals), by branch and bound on bit masks.
pub fn independence_number(g: &Graph) -> Result<(usize, Vec<usize>)> {
    let n = g.n();
    guard("independence number vertices", n, CHROMATIC_LIMIT)?;
    let adj = masks(g);
    fn grow(adj: &[u64], cand: u64, cur: u64, best: &mut u64) {
        if cand == 0 {
            if cur.count_ones() > best.count_ones() {
                *best = cur;
            }
            return;
        }
        if cur.count_ones() + cand.count_ones() <= best.count_ones() {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        let rest = cand & !(1 << v);
        grow(adj, rest & !adj[v], cur | 1 << v, best);
        grow(adj, rest, cur, best);
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best = 0u64;
    grow(&adj, all, 0, &mut best);
    let set: Vec<usize> = (0..n).filter(|&v| best >> v & 1 == 1).collect();
    Ok((set.len(), set))
}

pub const FRACTIONAL_CHROMATIC_LIMIT: usize = 20;

/// Maximal stable sets as bit masks in increasing numeric order.
pub fn maximal_stable_sets(g: &Graph) -> Result<Vec<u32>> {
    let n = g.n();
    guard(
        "stable-set enumeration vertices",
        n,
        FRACTIONAL_CHROMATIC_LIMIT,
    )?;
    let adj: Vec<u32> = masks(g).into_iter().map(|m| m as u32).collect();
    // Bron-Kerbosch with pivoting on the complement graph
    fn bk(adj: &[u32], r: u32, mut p: u32, mut x: u32, out: &mut Vec<u32>) {
        if p == 0 && x == 0 {
            out.push(r);
            return;
        }
        let pu = (p | x).trailing_zeros() as usize;
        // non-neighbors in the complement are the graph neighbors of the pivot
        let mut cand = p & (adj[pu] | 1 << pu);
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            let keep = !adj[v] & !(1 << v);
            bk(adj, r | 1 << v, p & keep, x & keep, out);
            p &= !(1 << v);
            x |= 1 << v;
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return Ok(vec![0]);
    }
    let all = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    bk(&adj, 0, all, 0, &mut out);
    out.sort_unstable();
    Ok(out)
}

/// Stable sets with positive weights covering every vertex at least once,
/// plus vertex weights (a fractional clique) certifying optimality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FractionalColoring {
    pub sets: Vec<Vec<usize>>,
    #[serde(with = "rational::serde_rational::vec")]
    pub weights: Vec<Rational>,
    #[serde(with = "rational::serde_rational")]
    pub value: Rational,
    #[serde(with = "rational::serde_rational::vec")]
    pub vertex_duals: Vec<Rational>,
}

impl FractionalColoring {
    pub fn verify(&self, g: &Graph) -> Result<()> {
        let fail = |m: String| Err(Error::verification(m));
        if self.sets.len() != self.weights.len() || self.vertex_duals.len() != g.n() {
            return fail("certificate dimensions".into());
        }
        let mut cover = vec![Rational::zero(); g.n()];
        for (s, w) in self.sets.iter().zip(&self.weights) {
            if w.is_negative() {
                return fail("negative stable-set weight".into());
            }
            for (i, &u) in s.iter().enumerate() {
                if u >= g.n() || s[..i].iter().any(|&v| v == u || g.has_edge(u, v)) {
                    return fail(format!("set {s:?} is not a stable set"));
                }
                cover[u] += w;
            }
        }
        if let Some(v) = cover.iter().position(|c| c < &Rational::one()) {
            return fail(format!("vertex {v} covered less than once"));
        }
        if self.weights.iter().sum::<Rational>() != self.value {
            return fail("value differs from total weight".into());
        }
        if self.vertex_duals.iter().any(|y| y.is_negative())
            || self.vertex_duals.iter().sum::<Rational>() != self.value
        {
            return fail("dual weights do not match the value".into());
        }
        for m in maximal_stable_sets(g)? {
            let load: Rational = (0..g.n())
                .filter(|&v| m >> v & 1 == 1)
                .map(|v| &self.vertex_duals[v])
                .sum();
            if load > Rational::one() {
                return fail(format!("dual weight exceeds one on stable set {m:#b}"));
            }
        }
        Ok(())
    }
}

/// Fractional chromatic number by an exact LP over the maximal stable sets.
pub fn fractional_chromatic(g: &Graph) -> Result<(Rational, FractionalColoring)> {
    let n = g.n();
    let sets = maximal_stable_sets(g)?;
    if n == 0 {
        let fc = FractionalColoring {
            sets: Vec::new(),
            weights: Vec::new(),
            value: Rational::zero(),
            vertex_duals: Vec::new(),
        };
        return Ok((Rational::zero(), fc));
    }
    let mut p = LpProblem::new(vec![Rational::one(); sets.len()]);
    for v in 0..n {
        let row = sets
            .iter()
            .map(|m| {
                if m >> v & 1 == 1 {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        p.add(row, Sense::Ge, Rational::one());
    }
    let sol = lp_min(&p)?;
    sol.verify(&p)?;
    let mut fc = FractionalColoring {
        sets: Vec::new(),
        weights: Vec::new(),
        value: sol.value.clone(),
        vertex_duals: sol.dual.clone(),
    };
    for (m, w) in sets.iter().zip(sol.x) {
        if w.is_positive() {
            fc.sets.push((0..n).filter(|&v| m >> v & 1 == 1).collect());
            fc.weights.push(w);
        }
    }
    Ok((sol.value, fc))
}
