//! Dense two-phase simplex over exact rationals, with Bland's rule.
//!
//! Instances here are small (a few hundred rows and columns at most), so a
//! dense tableau of `BigRational` is fast enough and makes every optimum
//! exact.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

/// Optimise `objective · x` subject to the rows, with `x ≥ 0`.
///
/// Coefficients are stored as sparse `(row, column, value)` triplets.
#[derive(Debug, Clone, PartialEq)]
pub struct LPInstance {
    pub sense: Sense,
    pub objective: Vec<BigRational>,
    pub entries: Vec<(usize, usize, BigRational)>,
    pub rows: Vec<(Relation, BigRational)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LPSolution {
    pub x: Vec<BigRational>,
    pub objective: BigRational,
}

pub fn rat(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

impl LPInstance {
    pub fn new(sense: Sense, objective: Vec<BigRational>) -> Self {
        LPInstance {
            sense,
            objective,
            entries: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add_row(&mut self, coefs: impl IntoIterator<Item = (usize, BigRational)>, rel: Relation, rhs: BigRational) -> usize {
        let row = self.rows.len();
        self.entries.extend(coefs.into_iter().map(|(c, v)| (row, c, v)));
        self.rows.push((rel, rhs));
        row
    }

    /// Row activities `A x`.
    pub fn activities(&self, x: &[BigRational]) -> Vec<BigRational> {
        let mut act = vec![BigRational::zero(); self.rows.len()];
        for (r, c, v) in &self.entries {
            act[*r] += v * &x[*c];
        }
        act
    }

    pub fn is_feasible(&self, x: &[BigRational]) -> bool {
        x.len() == self.num_vars()
            && x.iter().all(|v| !v.is_negative())
            && self.activities(x).iter().zip(&self.rows).all(|(a, (rel, b))| match rel {
                Relation::Le => a <= b,
                Relation::Ge => a >= b,
                Relation::Eq => a == b,
            })
    }

    pub fn value(&self, x: &[BigRational]) -> BigRational {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }
}

struct Tableau {
    a: Vec<Vec<BigRational>>,
    b: Vec<BigRational>,
    basis: Vec<usize>,
    /// Reduced costs of a maximisation; entering columns have positive cost.
    cost: Vec<BigRational>,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.a[row][col].clone();
        for v in self.a[row].iter_mut() {
            *v /= &p;
        }
        self.b[row] /= &p;
        let (pr, pb) = (self.a[row].clone(), self.b[row].clone());
        for i in 0..self.a.len() {
            if i == row || self.a[i][col].is_zero() {
                continue;
            }
            let f = self.a[i][col].clone();
            for (v, w) in self.a[i].iter_mut().zip(&pr) {
                if !w.is_zero() {
                    *v -= &f * w;
                }
            }
            self.b[i] -= &f * &pb;
        }
        let f = self.cost[col].clone();
        if !f.is_zero() {
            for (v, w) in self.cost.iter_mut().zip(&pr) {
                if !w.is_zero() {
                    *v -= &f * w;
                }
            }
        }
        self.basis[row] = col;
    }

    /// Reduced costs of `c` against the current basis.
    fn price(&mut self, c: &[BigRational]) {
        self.cost = c.to_vec();
        for (i, &bv) in self.basis.iter().enumerate() {
            let cb = c[bv].clone();
            if cb.is_zero() {
                continue;
            }
            for (v, w) in self.cost.iter_mut().zip(&self.a[i]) {
                if !w.is_zero() {
                    *v -= &cb * w;
                }
            }
        }
    }

    /// Runs Bland's rule restricted to the first `cols` columns.
    fn optimize(&mut self, cols: usize) -> Result<()> {
        loop {
            let Some(col) = (0..cols).find(|&j| self.cost[j].is_positive()) else {
                return Ok(());
            };
            let mut leave: Option<(usize, BigRational)> = None;
            for i in 0..self.a.len() {
                if !self.a[i][col].is_positive() {
                    continue;
                }
                let ratio = &self.b[i] / &self.a[i][col];
                let better = match &leave {
                    None => true,
                    Some((k, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*k]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((row, _)) => self.pivot(row, col),
                None => return Err(Error::Lp("unbounded")),
            }
        }
    }
}

/// Solves `inst` exactly. Errors with [`Error::Lp`] if it is infeasible or
/// unbounded.
pub fn solve_lp(inst: &LPInstance) -> Result<LPSolution> {
    let nv = inst.num_vars();
    let m = inst.rows.len();
    let mut dense = vec![vec![BigRational::zero(); nv]; m];
    for (r, c, v) in &inst.entries {
        if *r >= m || *c >= nv {
            return Err(Error::Lp("malformed: coefficient outside the instance"));
        }
        dense[*r][*c] += v;
    }
    let mut rels: Vec<Relation> = inst.rows.iter().map(|r| r.0).collect();
    let mut b: Vec<BigRational> = inst.rows.iter().map(|r| r.1.clone()).collect();
    for i in 0..m {
        if b[i].is_negative() {
            for v in dense[i].iter_mut() {
                *v = -v.clone();
            }
            b[i] = -b[i].clone();
            rels[i] = match rels[i] {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
        }
    }
    let slacks = rels.iter().filter(|r| **r != Relation::Eq).count();
    let arts = rels.iter().filter(|r| **r != Relation::Le).count();
    let real = nv + slacks;
    let width = real + arts;
    let mut a = vec![vec![BigRational::zero(); width]; m];
    let mut basis = vec![0; m];
    let (mut s, mut t) = (nv, real);
    for i in 0..m {
        a[i][..nv].clone_from_slice(&dense[i]);
        match rels[i] {
            Relation::Le => {
                a[i][s] = BigRational::one();
                basis[i] = s;
                s += 1;
            }
            Relation::Ge => {
                a[i][s] = -BigRational::one();
                a[i][t] = BigRational::one();
                basis[i] = t;
                s += 1;
                t += 1;
            }
            Relation::Eq => {
                a[i][t] = BigRational::one();
                basis[i] = t;
                t += 1;
            }
        }
    }
    let mut tab = Tableau {
        a,
        b,
        basis,
        cost: Vec::new(),
    };

    if arts > 0 {
        let mut phase1 = vec![BigRational::zero(); width];
        for v in &mut phase1[real..] {
            *v = -BigRational::one();
        }
        tab.price(&phase1);
        tab.optimize(width)?;
        let infeas: BigRational = (0..m).filter(|&i| tab.basis[i] >= real).map(|i| tab.b[i].clone()).sum();
        if infeas.is_positive() {
            return Err(Error::Lp("infeasible"));
        }
        // drive zero-level artificials out of the basis, dropping redundant rows
        let mut i = 0;
        while i < tab.a.len() {
            if tab.basis[i] >= real {
                match (0..real).find(|&j| !tab.a[i][j].is_zero()) {
                    Some(j) => tab.pivot(i, j),
                    None => {
                        tab.a.remove(i);
                        tab.b.remove(i);
                        tab.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
        for row in tab.a.iter_mut() {
            row.truncate(real);
        }
    }

    let mut c = vec![BigRational::zero(); real];
    for (j, v) in inst.objective.iter().enumerate() {
        c[j] = match inst.sense {
            Sense::Maximize => v.clone(),
            Sense::Minimize => -v.clone(),
        };
    }
    tab.price(&c);
    tab.optimize(real)?;
    let mut x = vec![BigRational::zero(); nv];
    for (i, &bv) in tab.basis.iter().enumerate() {
        if bv < nv {
            x[bv] = tab.b[i].clone();
        }
    }
    let objective = inst.value(&x);
    Ok(LPSolution { x, objective })
}
