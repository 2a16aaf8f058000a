//! Exact rational and integer linear algebra helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{content, Q};

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Q::one() / &m[r][c];
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        let prow = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of a matrix given by rows.
pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{y : M y = 0}` for `M` given by rows with `cols` columns.
pub fn null_space(rows: &[Vec<Q>], cols: usize) -> Vec<Vec<Q>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut y = vec![Q::zero(); cols];
            y[f] = Q::one();
            for (r, &p) in pivots.iter().enumerate() {
                y[p] = -m[r][f].clone();
            }
            y
        })
        .collect()
}

/// Solves `sum_j y_j cols[j] = v`; `None` when `v` is outside the span.
/// The columns must be linearly independent.
pub fn solve_in_span(cols: &[Vec<Q>], v: &[Q]) -> Option<Vec<Q>> {
    let k = cols.len();
    let n = v.len();
    let mut m: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            let mut row: Vec<Q> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(v[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.contains(&k) {
        return None;
    }
    let mut y = vec![Q::zero(); k];
    for (r, &p) in pivots.iter().enumerate() {
        y[p] = m[r][k].clone();
    }
    Some(y)
}

/// Indices of a maximal linearly independent subset, chosen greedily in order.
pub fn independent_subset(vectors: &[Vec<Q>]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        rows.push(v.clone());
        if rank(&rows) > chosen.len() {
            chosen.push(i);
        } else {
            rows.pop();
        }
    }
    chosen
}

fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    (e.gcd, e.x, e.y)
}

/// Column Hermite reduction of a full-row-rank integer matrix `m` (k × n):
/// returns `(h, u)` with `m · u = [h | 0]`, `u` unimodular (n × n) and `h`
/// lower triangular (k × k) with positive diagonal.
pub fn column_hermite(m: &[Vec<BigInt>]) -> Option<(Vec<Vec<BigInt>>, Vec<Vec<BigInt>>)> {
    let k = m.len();
    let n = m.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let col_op = |a: &mut Vec<Vec<BigInt>>, i: usize, j: usize, x: &BigInt, y: &BigInt, p: &BigInt, q: &BigInt| {
        // new col_i = x col_i + y col_j ; new col_j = p col_i + q col_j
        for row in a.iter_mut() {
            let ci = row[i].clone();
            let cj = row[j].clone();
            row[i] = x * &ci + y * &cj;
            row[j] = p * &ci + q * &cj;
        }
    };
    for r in 0..k {
        if r >= n {
            return None;
        }
        if a[r][r].is_zero() {
            let j = (r + 1..n).find(|&j| !a[r][j].is_zero())?;
            for row in a.iter_mut().chain(u.iter_mut()) {
                row.swap(r, j);
            }
        }
        for j in r + 1..n {
            if a[r][j].is_zero() {
                continue;
            }
            let (g, x, y) = ext_gcd(&a[r][r], &a[r][j]);
            let p = -(&a[r][j] / &g);
            let q = &a[r][r] / &g;
            col_op(&mut a, r, j, &x, &y, &p, &q);
            col_op(&mut u, r, j, &x, &y, &p, &q);
        }
        if a[r][r].is_negative() {
            for row in a.iter_mut().chain(u.iter_mut()) {
                row[r] = -row[r].clone();
            }
        }
    }
    let h = a.iter().map(|row| row[..k].to_vec()).collect();
    Some((h, u))
}

/// Given an integer matrix `bt` (k × n, full row rank) and a nonzero rational
/// `f ∈ Q^k`, returns the integer vector `λ ∈ Z^n` with `bt · λ = t f` for the
/// least `t > 0` attainable.
pub fn minimal_integral_preimage(bt: &[Vec<BigInt>], f: &[Q]) -> Option<Vec<BigInt>> {
    let k = bt.len();
    let (h, u) = column_hermite(bt)?;
    // forward substitution h g = f
    let mut g = vec![Q::zero(); k];
    for i in 0..k {
        let mut s = f[i].clone();
        for j in 0..i {
            s -= Q::from_integer(h[i][j].clone()) * &g[j];
        }
        g[i] = s / Q::from_integer(h[i][i].clone());
    }
    let c = content(&g)?;
    let z: Vec<BigInt> = g.iter().map(|x| (x / &c).to_integer()).collect();
    let n = u.len();
    Some(
        (0..n)
            .map(|row| (0..k).fold(BigInt::zero(), |acc, j| acc + &u[row][j] * &z[j]))
            .collect(),
    )
}
