//! Exact rational linear programming: a dense two-phase tableau simplex
//! with Bland's rule, returning primal and dual certificates.

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Constraint {
    #[serde(with = "rational::serde_rational::vec")]
    pub coeffs: Vec<Rational>,
    pub sense: Sense,
    #[serde(with = "rational::serde_rational")]
    pub rhs: Rational,
}

/// `minimize c.x` subject to the constraints, `x >= 0` and optional upper bounds.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct LpProblem {
    #[serde(with = "rational::serde_rational::vec")]
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    #[serde(with = "rational::serde_rational::vec_option")]
    pub upper_bounds: Vec<Option<Rational>>,
}

impl LpProblem {
    pub fn new(objective: Vec<Rational>) -> Self {
        let n = objective.len();
        LpProblem {
            objective,
            constraints: Vec::new(),
            upper_bounds: vec![None; n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add(&mut self, coeffs: Vec<Rational>, sense: Sense, rhs: Rational) -> &mut Self {
        assert_eq!(coeffs.len(), self.num_vars(), "constraint width");
        self.constraints.push(Constraint { coeffs, sense, rhs });
        self
    }

    /// Constraints with upper bounds appended as `<=` rows.
    fn all_rows(&self) -> Vec<Constraint> {
        let n = self.num_vars();
        let mut rows = self.constraints.clone();
        for (j, ub) in self.upper_bounds.iter().enumerate() {
            if let Some(u) = ub {
                let mut coeffs = vec![Rational::zero(); n];
                coeffs[j] = Rational::one();
                rows.push(Constraint {
                    coeffs,
                    sense: Sense::Le,
                    rhs: u.clone(),
                });
            }
        }
        rows
    }
}

/// Optimal value, a basic optimal solution, and dual multipliers (one per
/// constraint row, followed by one per finite upper bound).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpSolution {
    #[serde(with = "rational::serde_rational")]
    pub value: Rational,
    #[serde(with = "rational::serde_rational::vec")]
    pub x: Vec<Rational>,
    #[serde(with = "rational::serde_rational::vec")]
    pub dual: Vec<Rational>,
}

impl LpSolution {
    /// Re-checks primal feasibility, dual feasibility and a zero duality gap.
    pub fn verify(&self, p: &LpProblem) -> Result<()> {
        let rows = p.all_rows();
        let n = p.num_vars();
        let fail = |m: String| Err(Error::verification(m));
        if self.x.len() != n || self.dual.len() != rows.len() {
            return fail("certificate dimensions".into());
        }
        if self.x.iter().any(|v| v.is_negative()) {
            return fail("negative primal variable".into());
        }
        for (i, r) in rows.iter().enumerate() {
            let lhs: Rational = r.coeffs.iter().zip(&self.x).map(|(a, x)| a * x).sum();
            let ok = match r.sense {
                Sense::Le => lhs <= r.rhs,
                Sense::Ge => lhs >= r.rhs,
                Sense::Eq => lhs == r.rhs,
            };
            if !ok {
                return fail(format!("row {i} violated"));
            }
            let y = &self.dual[i];
            let sign_ok = match r.sense {
                Sense::Le => !y.is_positive(),
                Sense::Ge => !y.is_negative(),
                Sense::Eq => true,
            };
            if !sign_ok {
                return fail(format!("dual multiplier {i} has the wrong sign"));
            }
        }
        for j in 0..n {
            let aty: Rational = rows
                .iter()
                .zip(&self.dual)
                .map(|(r, y)| &r.coeffs[j] * y)
                .sum();
            if aty > p.objective[j] {
                return fail(format!("dual constraint {j} violated"));
            }
        }
        let primal: Rational = p.objective.iter().zip(&self.x).map(|(c, x)| c * x).sum();
        let dual: Rational = rows.iter().zip(&self.dual).map(|(r, y)| &r.rhs * y).sum();
        if primal != self.value || dual != self.value {
            return fail("duality gap is not zero".into());
        }
        Ok(())
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    obj: Vec<Rational>,
    basis: Vec<usize>,
    /// first artificial column
    art: usize,
    width: usize,
}

impl Tableau {
    fn rhs(&self) -> usize {
        self.width
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let prow = std::mem::take(&mut self.rows[r]);
        let nz: Vec<usize> = (0..prow.len()).filter(|&j| !prow[j].is_zero()).collect();
        let eliminate = |row: &mut Vec<Rational>| {
            let f = row[c].clone();
            if f.is_zero() {
                return;
            }
            for &j in &nz {
                let d = &f * &prow[j];
                row[j] -= d;
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.obj);
        self.rows[r] = prow;
        self.basis[r] = c;
    }

    /// Runs Bland-rule pivots over columns `< limit`.
    fn optimize(&mut self, limit: usize) -> Result<()> {
        let rhs = self.rhs();
        loop {
            let Some(c) = (0..limit).find(|&j| self.obj[j].is_negative()) else {
                return Ok(());
            };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[c].is_positive() {
                    let ratio = &row[rhs] / &row[c];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => {
                            ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                        }
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return Err(Error::Unbounded),
            }
        }
    }
}

/// Solves `p` exactly.
pub fn lp_min(p: &LpProblem) -> Result<LpSolution> {
    let n = p.num_vars();
    let rows = p.all_rows();
    let m = rows.len();
    let slack_count = rows.iter().filter(|r| r.sense != Sense::Eq).count();
    let art = n + slack_count;
    let width = art + m;
    let mut sign = Vec::with_capacity(m);
    let mut t_rows = Vec::with_capacity(m);
    let mut slack = n;
    for (i, r) in rows.iter().enumerate() {
        let mut row = vec![Rational::zero(); width + 1];
        row[..n].clone_from_slice(&r.coeffs[..n]);
        match r.sense {
            Sense::Le => {
                row[slack] = Rational::one();
                slack += 1;
            }
            Sense::Ge => {
                row[slack] = -Rational::one();
                slack += 1;
            }
            Sense::Eq => {}
        }
        row[width] = r.rhs.clone();
        let s = if r.rhs.is_negative() {
            for v in row.iter_mut() {
                *v = -&*v;
            }
            -1
        } else {
            1
        };
        row[art + i] = Rational::one();
        sign.push(s);
        t_rows.push(row);
    }
    // phase one: minimize the sum of artificials
    let mut obj = vec![Rational::zero(); width + 1];
    for row in &t_rows {
        for j in 0..art {
            obj[j] -= &row[j];
        }
        obj[width] -= &row[width];
    }
    let mut t = Tableau {
        rows: t_rows,
        obj,
        basis: (art..art + m).collect(),
        art,
        width,
    };
    t.optimize(width)?;
    if !t.obj[width].is_zero() {
        return Err(Error::Infeasible);
    }
    // drive zero-level artificials out of the basis where possible
    for r in 0..m {
        if t.basis[r] >= t.art {
            if let Some(c) = (0..t.art).find(|&j| !t.rows[r][j].is_zero()) {
                t.pivot(r, c);
            }
        }
    }
    // phase two
    let cost = |j: usize| -> Rational {
        if j < n {
            p.objective[j].clone()
        } else {
            Rational::zero()
        }
    };
    let mut obj = vec![Rational::zero(); width + 1];
    for j in 0..=width {
        let mut v = if j < width { cost(j) } else { Rational::zero() };
        for (i, row) in t.rows.iter().enumerate() {
            let cb = cost(t.basis[i]);
            if !cb.is_zero() && !row[j].is_zero() {
                v -= cb * &row[j];
            }
        }
        obj[j] = v;
    }
    t.obj = obj;
    t.optimize(t.art)?;

    let mut x = vec![Rational::zero(); n];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            x[b] = t.rows[i][width].clone();
        }
    }
    let dual: Vec<Rational> = (0..m)
        .map(|i| {
            let y = -&t.obj[art + i];
            if sign[i] < 0 {
                -y
            } else {
                y
            }
        })
        .collect();
    let value: Rational = p.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
    Ok(LpSolution { value, x, dual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn single_lower_bound() {
        let mut p = LpProblem::new(vec![int(1)]);
        p.add(vec![int(1)], Sense::Ge, int(3));
        let s = lp_min(&p).unwrap();
        assert_eq!(s.value, int(3));
        s.verify(&p).unwrap();
    }

    #[test]
    fn odd_cycle_vertex_cover() {
        // fractional vertex cover of C5: all 1/2, value 5/2
        let mut p = LpProblem::new(vec![int(1); 5]);
        for i in 0..5 {
            let mut row = vec![int(0); 5];
            row[i] = int(1);
            row[(i + 1) % 5] = int(1);
            p.add(row, Sense::Ge, int(1));
        }
        let s = lp_min(&p).unwrap();
        assert_eq!(s.value, rat(5, 2));
        s.verify(&p).unwrap();
    }

    #[test]
    fn mixed_senses_negative_rhs_and_bounds() {
        // min -x - 2y  s.t. x + y <= 4, x - y >= -2, x = ... bounded y <= 3
        let mut p = LpProblem::new(vec![int(-1), int(-2)]);
        p.add(vec![int(1), int(1)], Sense::Le, int(4));
        p.add(vec![int(1), int(-1)], Sense::Ge, int(-2));
        p.upper_bounds[1] = Some(int(3));
        let s = lp_min(&p).unwrap();
        // optimum at x=1, y=3
        assert_eq!(s.value, int(-7));
        assert_eq!(s.x, vec![int(1), int(3)]);
        s.verify(&p).unwrap();
    }

    #[test]
    fn equality_and_redundant_rows() {
        let mut p = LpProblem::new(vec![int(2), int(3)]);
        p.add(vec![int(1), int(1)], Sense::Eq, int(1));
        p.add(vec![int(2), int(2)], Sense::Eq, int(2));
        let s = lp_min(&p).unwrap();
        assert_eq!(s.value, int(2));
        s.verify(&p).unwrap();
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut p = LpProblem::new(vec![int(1)]);
        p.add(vec![int(1)], Sense::Le, int(1));
        p.add(vec![int(1)], Sense::Ge, int(2));
        assert_eq!(lp_min(&p), Err(Error::Infeasible));
        let mut p = LpProblem::new(vec![int(-1)]);
        p.add(vec![int(1)], Sense::Ge, int(0));
        assert_eq!(lp_min(&p), Err(Error::Unbounded));
    }
}
