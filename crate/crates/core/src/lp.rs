//! Dense exact simplex with Bland's rule.
//!
//! Solves `min c·x` subject to `A x = b`, `x ≥ 0` with rational `A`, `c` and a
//! right-hand side in any ordered vector space over `Q` (plain rationals or
//! infinitesimally perturbed rationals).

use num_traits::{One, Signed, Zero};

use crate::rational::{LpScalar, Q};

/// Result of an LP solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome<R> {
    Infeasible,
    Unbounded,
    Optimal { x: Vec<R>, value: R },
}

impl<R> LpOutcome<R> {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible)
    }
}

struct Tableau<R> {
    rows: Vec<Vec<Q>>,
    rhs: Vec<R>,
    basis: Vec<usize>,
    cost: Vec<Q>,
    value: R,
    allowed: usize,
}

impl<R: LpScalar> Tableau<R> {
    fn pivot(&mut self, p: usize, j: usize) {
        let inv = Q::one() / &self.rows[p][j];
        for v in self.rows[p].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        self.rhs[p] = self.rhs[p].mul_q(&inv);
        let prow = self.rows[p].clone();
        let prhs = self.rhs[p].clone();
        for i in 0..self.rows.len() {
            if i == p || self.rows[i][j].is_zero() {
                continue;
            }
            let f = self.rows[i][j].clone();
            for (v, pv) in self.rows[i].iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
            self.rhs[i] = self.rhs[i].lp_sub(&prhs.mul_q(&f));
        }
        if !self.cost[j].is_zero() {
            let f = self.cost[j].clone();
            for (v, pv) in self.cost.iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
            self.value = self.value.lp_add(&prhs.mul_q(&f));
        }
        self.basis[p] = j;
    }

    /// Runs Bland's rule to optimality; returns false when unbounded.
    fn run(&mut self) -> bool {
        loop {
            let Some(j) = (0..self.allowed).find(|&j| self.cost[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, R)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][j];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs[i].mul_q(&(Q::one() / a));
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                None => return false,
                Some((p, _)) => self.pivot(p, j),
            }
        }
    }

    fn reprice(&mut self, c: &[Q]) {
        let width = self.cost.len();
        let mut cost: Vec<Q> = (0..width).map(|j| c.get(j).cloned().unwrap_or_else(Q::zero)).collect();
        let mut value = R::lp_zero();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = c.get(b).cloned().unwrap_or_else(Q::zero);
            if cb.is_zero() {
                continue;
            }
            for (v, a) in cost.iter_mut().zip(&self.rows[i]) {
                if !a.is_zero() {
                    *v -= &cb * a;
                }
            }
            value = value.lp_add(&self.rhs[i].mul_q(&cb));
        }
        self.cost = cost;
        self.value = value;
    }
}

/// Minimizes `c·x` over `{x ≥ 0 : A x = b}`.
pub fn minimize<R: LpScalar>(a: &[Vec<Q>], b: &[R], c: &[Q]) -> LpOutcome<R> {
    let m = a.len();
    let n = c.len();
    assert_eq!(b.len(), m, "row count mismatch");
    assert!(a.iter().all(|r| r.len() == n), "column count mismatch");

    let mut rows: Vec<Vec<Q>> = a.to_vec();
    let mut rhs: Vec<R> = b.to_vec();
    for i in 0..m {
        if rhs[i].lp_is_negative() {
            rhs[i] = R::lp_zero().lp_sub(&rhs[i]);
            for v in rows[i].iter_mut() {
                *v = -v.clone();
            }
        }
    }

    // Reuse unit columns as the starting basis where possible.
    let mut basis = vec![usize::MAX; m];
    for j in 0..n {
        let nz: Vec<usize> = (0..m).filter(|&i| !rows[i][j].is_zero()).collect();
        if nz.len() == 1 && rows[nz[0]][j].is_one() && basis[nz[0]] == usize::MAX {
            basis[nz[0]] = j;
        }
    }
    let missing: Vec<usize> = (0..m).filter(|&i| basis[i] == usize::MAX).collect();
    let width = n + missing.len();
    for row in rows.iter_mut() {
        row.resize(width, Q::zero());
    }
    for (k, &i) in missing.iter().enumerate() {
        rows[i][n + k] = Q::one();
        basis[i] = n + k;
    }

    let mut t = Tableau {
        rows,
        rhs,
        basis,
        cost: vec![Q::zero(); width],
        value: R::lp_zero(),
        allowed: width,
    };

    if !missing.is_empty() {
        let phase1: Vec<Q> = (0..width).map(|j| if j >= n { Q::one() } else { Q::zero() }).collect();
        t.reprice(&phase1);
        t.run();
        if !t.value.lp_is_zero() {
            return LpOutcome::Infeasible;
        }
        // Drive zero-level artificials out of the basis; drop redundant rows.
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] >= n {
                match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                    Some(j) => {
                        t.pivot(i, j);
                        i += 1;
                    }
                    None => {
                        t.rows.remove(i);
                        t.rhs.remove(i);
                        t.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
        for row in t.rows.iter_mut() {
            row.truncate(n);
        }
        t.cost.truncate(n);
    }
    t.allowed = n;
    t.reprice(c);
    if !t.run() {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![R::lp_zero(); n];
    for (i, &bj) in t.basis.iter().enumerate() {
        x[bj] = t.rhs[i].clone();
    }
    LpOutcome::Optimal { x, value: t.value }
}

/// True when `{x ≥ 0 : A x = b}` is non-empty.
pub fn feasible<R: LpScalar>(a: &[Vec<Q>], b: &[R]) -> bool {
    let n = a.first().map_or(0, |r| r.len());
    minimize(a, b, &vec![Q::zero(); n]).is_feasible()
}
