//! Brute-force verifiers that share no algorithmic code with the primary modules.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{invalid, precondition, Result};
use crate::lattice::{DimVec, Weight};
use crate::quiver::Quiver;
use crate::rational::{qi, qr, GenericReal, Q};
use crate::zonotope::{Segment, Zonotope};

fn slot_offsets(d: &DimVec) -> Vec<usize> {
    let mut acc = 0;
    d.0.iter()
        .map(|&k| {
            let o = acc;
            acc += k;
            o
        })
        .collect()
}

fn unit(n: usize, s: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[s] = Q::one();
    v
}

/// Edge weights `β^t_j − β^s_i` of the gauge part, one entry per pair with multiplicity.
fn edge_weights(q: &Quiver, d: &DimVec) -> Vec<Vec<Q>> {
    let n = d.total();
    let off = slot_offsets(d);
    let mut out = Vec::new();
    for &(s, t) in q.edges() {
        if Some(s) == q.framing() || Some(t) == q.framing() {
            continue;
        }
        for i in 0..d.0[s] {
            for j in 0..d.0[t] {
                let mut w = unit(n, off[t] + j);
                w[off[s] + i] -= Q::one();
                out.push(w);
            }
        }
    }
    out
}

fn adjoint_weights(d: &DimVec) -> Vec<Vec<Q>> {
    let n = d.total();
    let off = slot_offsets(d);
    let mut out = Vec::new();
    for (a, &k) in d.0.iter().enumerate() {
        for i in 0..k {
            for j in 0..k {
                if i != j {
                    let mut w = unit(n, off[a] + i);
                    w[off[a] + j] -= Q::one();
                    out.push(w);
                }
            }
        }
    }
    out
}

fn dot_int(l: &[i64], x: &[Q]) -> Q {
    l.iter().zip(x).map(|(&a, y)| y * qi(a)).sum()
}

fn rank_of(mut rows: Vec<Vec<Q>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in r + 1..rows.len() {
            let f = &rows[i][c] / &pivot;
            if f.is_zero() {
                continue;
            }
            for j in c..cols {
                let sub = &f * &rows[r][j];
                rows[i][j] -= sub;
            }
        }
        r += 1;
    }
    r
}

fn oracle_support(z: &Zonotope, lambda: &[i64]) -> Q {
    let mut h = dot_int(lambda, &z.offset.0);
    for s in &z.segments {
        let t = dot_int(lambda, &s.dir.0) * &s.len;
        if t.is_positive() {
            h += t;
        }
    }
    h
}

fn span_contains(z: &Zonotope, v: &[Q]) -> bool {
    let dirs: Vec<Vec<Q>> = z.segments.iter().map(|s| s.dir.0.clone()).collect();
    let base = rank_of(dirs.clone());
    let mut with = dirs;
    with.push(v.to_vec());
    rank_of(with) == base
}

/// Membership through the facet inequalities and an affine-span test.
pub fn membership_by_facets(z: &Zonotope, x: &Weight) -> Result<bool> {
    let facets = z.facets()?;
    let rel: Vec<Q> = x.0.iter().zip(&z.offset.0).map(|(a, b)| a - b).collect();
    if !span_contains(z, &rel) {
        return Ok(false);
    }
    Ok(facets.iter().all(|f| dot_int(&f.normal.0, &x.0) <= oracle_support(z, &f.normal.0)))
}

/// Membership of `base + ε · inf` for infinitesimal `ε > 0` in a full-dimensional zonotope.
pub fn generic_membership_by_facets(z: &Zonotope, base: &Weight, inf: &Weight) -> Result<bool> {
    let n = z.offset.len();
    let dirs: Vec<Vec<Q>> = z.segments.iter().map(|s| s.dir.0.clone()).collect();
    if rank_of(dirs) != n {
        return invalid("generic membership needs a full-dimensional zonotope");
    }
    for f in z.facets()? {
        let lhs = dot_int(&f.normal.0, &base.0);
        let h = oracle_support(z, &f.normal.0);
        if lhs > h || (lhs == h && dot_int(&f.normal.0, &inf.0).is_positive()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `max_S ⟨1_S, x⟩ / ⟨1_S, R(d)^{1_S>0}⟩` over all nonempty proper slot subsets, clamped at 0.
pub fn rinv_by_cuts(q: &Quiver, d: &DimVec, x: &Weight) -> Result<Q> {
    if q.very_symmetric().is_none() {
        return precondition("cut formula needs a very symmetric quiver");
    }
    let n = d.total();
    if x.len() != n {
        return invalid("weight has the wrong length");
    }
    if n > 20 {
        return invalid("too many slots for subset enumeration");
    }
    let weights = edge_weights(q, d);
    let mut best = Q::zero();
    for mask in 1u32..(1u32 << n).saturating_sub(1) {
        let mu: Vec<i64> = (0..n).map(|s| i64::from((mask >> s) & 1)).collect();
        let num = dot_int(&mu, &x.0);
        let den: Q = weights.iter().map(|w| dot_int(&mu, w)).filter(Q::is_positive).sum();
        if den.is_positive() && num.clone() / &den > best {
            best = num / den;
        }
    }
    Ok(best)
}

/// Labels and generator count found by exhaustive scanning.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanResult {
    /// `(parts, v)` sorted lexicographically.
    pub labels: Vec<(Vec<Vec<usize>>, Vec<Q>)>,
    pub generators: usize,
}

fn tuples_summing(d: &[usize], k: usize) -> Vec<Vec<Vec<usize>>> {
    if k == 0 {
        return if d.iter().all(|&x| x == 0) { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let mut first = vec![0usize; d.len()];
    loop {
        // odometer over 0..=d
        let mut i = 0;
        while i < d.len() {
            if first[i] < d[i] {
                first[i] += 1;
                break;
            }
            first[i] = 0;
            i += 1;
        }
        if i == d.len() {
            break;
        }
        let rest: Vec<usize> = d.iter().zip(&first).map(|(a, b)| a - b).collect();
        for mut tail in tuples_summing(&rest, k - 1) {
            tail.insert(0, first.clone());
            out.push(tail);
        }
    }
    out
}

fn generic_ge(x: &Q, g: &GenericReal) -> bool {
    *x > g.q || (*x == g.q && g.eps <= 0)
}

fn generic_lt(x: &Q, g: &GenericReal) -> bool {
    *x < g.q || (*x == g.q && g.eps > 0)
}

fn lcm_den(vals: &[Q]) -> i64 {
    vals.iter().fold(1i64, |acc, v| {
        let den = v.denom().try_into().unwrap_or(1i64);
        acc.lcm(&den)
    })
}

fn half_w(q: &Quiver, d: &DimVec) -> Zonotope {
    Zonotope {
        offset: Weight::zero(d.total()),
        segments: edge_weights(q, d)
            .into_iter()
            .filter(|w| w.iter().any(|x| !x.is_zero()))
            .map(|w| Segment { dir: Weight(w), len: qr(1, 2) })
            .collect(),
    }
}

fn oracle_rho(d: &DimVec) -> Vec<Q> {
    d.0.iter()
        .flat_map(|&k| (1..=k).map(move |j| qr(2 * j as i64 - 1 - k as i64, 2)))
        .collect()
}

fn is_dominant(d: &DimVec, chi: &[i64]) -> bool {
    let off = slot_offsets(d);
    d.0.iter()
        .enumerate()
        .all(|(a, &k)| (1..k).all(|i| chi[off[a] + i - 1] <= chi[off[a] + i]))
}

fn integer_box(z: &Zonotope, shift: &[Q], widen: i64) -> Vec<(i64, i64)> {
    (0..z.offset.len())
        .map(|s| {
            let mut lo = z.offset.0[s].clone() + &shift[s];
            let mut hi = lo.clone();
            for seg in &z.segments {
                let t = &seg.dir.0[s] * &seg.len;
                if t.is_positive() {
                    hi += t;
                } else {
                    lo += t;
                }
            }
            let lo: i64 = lo.ceil().to_integer().try_into().unwrap_or(i64::MIN / 4);
            let hi: i64 = hi.floor().to_integer().try_into().unwrap_or(i64::MAX / 4);
            (lo - widen, hi + widen)
        })
        .collect()
}

fn box_points(bounds: &[(i64, i64)], mut visit: impl FnMut(&[i64]) -> Result<()>) -> Result<()> {
    if bounds.iter().any(|(l, h)| l > h) {
        return Ok(());
    }
    let mut cur: Vec<i64> = bounds.iter().map(|b| b.0).collect();
    loop {
        visit(&cur)?;
        let mut i = 0;
        while i < cur.len() {
            if cur[i] < bounds[i].1 {
                cur[i] += 1;
                break;
            }
            cur[i] = bounds[i].0;
            i += 1;
        }
        if i == cur.len() {
            return Ok(());
        }
    }
}

/// Number of dominant integral `χ` with `χ + ρ − δ ∈ 𝐖(d)`.
pub fn magic_count_brute(q: &Quiver, d: &DimVec, delta: &Weight) -> Result<usize> {
    let z = half_w(q, d);
    let rho = oracle_rho(d);
    let shift: Vec<Q> = delta.0.iter().zip(&rho).map(|(a, b)| a - b).collect();
    let mut count = 0;
    box_points(&integer_box(&z, &shift, 0), |chi| {
        if !is_dominant(d, chi) {
            return Ok(());
        }
        let x = Weight(chi.iter().zip(&shift).map(|(&c, s)| qi(c) - s).collect());
        if membership_by_facets(&z, &x)? {
            count += 1;
        }
        Ok(())
    })?;
    Ok(count)
}

/// Number of dominant integral `χ` with `χ + ρ − δ − μσ ∈ 𝐕(d)`.
pub fn dd_count_brute(q: &Quiver, d: &DimVec, delta: &Weight, mu: &GenericReal) -> Result<usize> {
    let n = d.total();
    let mut z = half_w(q, d);
    for s in 0..n {
        z.segments.push(Segment { dir: Weight(unit(n, s)), len: Q::one() });
    }
    let rho = oracle_rho(d);
    let shift: Vec<Q> = (0..n).map(|s| &delta.0[s] + &mu.q - &rho[s]).collect();
    let inf = Weight(vec![qi(-i64::from(mu.eps)); n]);
    let mut count = 0;
    box_points(&integer_box(&z, &shift, 1), |chi| {
        if !is_dominant(d, chi) {
            return Ok(());
        }
        let x = Weight(chi.iter().zip(&shift).map(|(&c, s)| qi(c) - s).collect());
        if generic_membership_by_facets(&z, &x, &inf)? {
            count += 1;
        }
        Ok(())
    })?;
    Ok(count)
}

/// Block-local `θ_i` from `Σ θ_i = −½ R(d)^{λ>0} + ½ g(d)^{λ>0}`.
fn oracle_thetas(q: &Quiver, d: &DimVec, parts: &[Vec<usize>]) -> Vec<Vec<Q>> {
    let n = d.total();
    let k = parts.len();
    // block index per slot: vertex-major, block-minor
    let mut block_of = vec![0usize; n];
    let off = slot_offsets(d);
    for a in 0..d.len() {
        let mut s = off[a];
        for (b, p) in parts.iter().enumerate() {
            for _ in 0..p[a] {
                block_of[s] = b;
                s += 1;
            }
        }
    }
    let lam: Vec<i64> = block_of.iter().map(|&b| (k - 1 - b) as i64).collect();
    let mut total = vec![Q::zero(); n];
    for (ws, coef) in [(edge_weights(q, d), qr(-1, 2)), (adjoint_weights(d), qr(1, 2))] {
        for w in ws {
            if dot_int(&lam, &w).is_positive() {
                for (t, x) in total.iter_mut().zip(&w) {
                    *t += x * &coef;
                }
            }
        }
    }
    (0..k)
        .map(|b| (0..n).filter(|&s| block_of[s] == b).map(|s| total[s].clone()).collect())
        .collect()
}

fn block_delta(d: &DimVec, parts: &[Vec<usize>], delta: &Weight) -> Vec<Vec<Q>> {
    let off = slot_offsets(d);
    let mut out = vec![Vec::new(); parts.len()];
    for a in 0..d.len() {
        let mut s = off[a];
        for (b, p) in parts.iter().enumerate() {
            for _ in 0..p[a] {
                out[b].push(delta.0[s].clone());
                s += 1;
            }
        }
    }
    out
}

/// Exhaustive scan of the framed window `μ ≤ v_1/d̄_1 < … < v_k/d̄_k < μ + α`.
pub fn window_scan(q: &Quiver, d: &DimVec, mu: &GenericReal, alpha: i64, delta: &Weight) -> Result<ScanResult> {
    if alpha <= 0 {
        return invalid("alpha must be positive");
    }
    let hi = GenericReal { q: &mu.q + qi(alpha), eps: mu.eps };
    let mut labels = Vec::new();
    let mut generators = 0usize;
    for k in 1..=d.total() {
        for parts in tuples_summing(&d.0, k) {
            let thetas = oracle_thetas(q, d, &parts);
            let deltas = block_delta(d, &parts, delta);
            let sums: Vec<Q> = thetas
                .iter()
                .zip(&deltas)
                .map(|(t, e)| t.iter().sum::<Q>() + e.iter().sum::<Q>())
                .collect();
            let step = lcm_den(&sums);
            let cands: Vec<Vec<Q>> = parts
                .iter()
                .zip(&sums)
                .map(|(p, s)| {
                    let db: i64 = p.iter().sum::<usize>() as i64;
                    let lo: i64 = (&mu.q * qi(db * step)).floor().to_integer().try_into().unwrap_or(0) - step;
                    let up: i64 = (&hi.q * qi(db * step)).ceil().to_integer().try_into().unwrap_or(0) + step;
                    (lo..=up)
                        .map(|m| qr(m, step))
                        .filter(|v| (v + s).is_integer())
                        .filter(|v| {
                            let sl = v / qi(db);
                            generic_ge(&sl, mu) && generic_lt(&sl, &hi)
                        })
                        .collect()
                })
                .collect();
            let dbar: Vec<i64> = parts.iter().map(|p| p.iter().sum::<usize>() as i64).collect();
            let mut idx = vec![0usize; k];
            if cands.iter().any(Vec::is_empty) {
                continue;
            }
            loop {
                let vs: Vec<Q> = idx.iter().enumerate().map(|(i, &j)| cands[i][j].clone()).collect();
                let increasing = (1..k).all(|i| &vs[i - 1] / qi(dbar[i - 1]) < &vs[i] / qi(dbar[i]));
                if increasing {
                    let mut prod = 1usize;
                    for (b, p) in parts.iter().enumerate() {
                        let pd = DimVec(p.clone());
                        let db = dbar[b];
                        let bw: Vec<Q> = thetas[b]
                            .iter()
                            .zip(&deltas[b])
                            .map(|(t, e)| t + e + &vs[b] / qi(db))
                            .collect();
                        prod *= magic_count_brute(q, &pd, &Weight(bw))?;
                    }
                    generators += prod;
                    labels.push((parts.clone(), vs));
                }
                let mut i = 0;
                while i < k {
                    idx[i] += 1;
                    if idx[i] < cands[i].len() {
                        break;
                    }
                    idx[i] = 0;
                    i += 1;
                }
                if i == k {
                    break;
                }
            }
        }
    }
    labels.sort();
    Ok(ScanResult { labels, generators })
}

/// One line of the self-check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckLine {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn line(name: &str, r: Result<(bool, String)>) -> CheckLine {
    match r {
        Ok((pass, detail)) => CheckLine { name: name.into(), pass, detail },
        Err(e) => CheckLine { name: name.into(), pass: false, detail: format!("error: {e}") },
    }
}

/// Deterministic comparison of oracles against the primary algorithms.
pub fn self_check() -> Vec<CheckLine> {
    use crate::bps::dd_generators;
    use crate::lattice::GenericWeight;
    use crate::sod::framed_summands;
    use crate::zonotope::w_polytope;

    let three = Quiver::loops(3);
    let a2t = Quiver::a2().triple();
    let mut out = Vec::new();

    out.push(line("membership: LP vs facets on grids", (|| {
        let mut n = 0;
        for (q, d) in [(&three, DimVec(vec![2])), (&three, DimVec(vec![3])), (&a2t, DimVec(vec![1, 1]))] {
            let z = w_polytope(q, &d)?;
            let m = d.total();
            let grid: Vec<(i64, i64)> = vec![(-6, 6); m];
            let mut bad = 0;
            box_points(&grid, |p| {
                let x = Weight(p.iter().map(|&c| qr(c, 2)).collect());
                if z.contains(&x, &Q::one())? != membership_by_facets(&z, &x)? {
                    bad += 1;
                }
                n += 1;
                Ok(())
            })?;
            if bad > 0 {
                return Ok((false, format!("{bad} disagreements")));
            }
        }
        Ok((true, format!("{n} points")))
    })()));

    out.push(line("r-invariant: LP vs cuts", (|| {
        let mut n = 0;
        for (q, d) in [(&three, DimVec(vec![3])), (&a2t, DimVec(vec![2, 1]))] {
            let z = w_polytope(q, &d)?;
            let grid = vec![(-3, 3); d.total() - 1];
            let mut bad = 0;
            box_points(&grid, |p| {
                let mut v: Vec<Q> = p.iter().map(|&c| qr(c, 2)).collect();
                v.push(-v.iter().sum::<Q>());
                let x = Weight(v);
                if z.r_invariant(&x)? != rinv_by_cuts(q, &d, &x)? {
                    bad += 1;
                }
                n += 1;
                Ok(())
            })?;
            if bad > 0 {
                return Ok((false, format!("{bad} disagreements")));
            }
        }
        Ok((true, format!("{n} points")))
    })()));

    out.push(line("framed windows: enumeration vs scan", (|| {
        let mu: GenericReal = GenericReal { q: Q::zero(), eps: -1 };
        let mut checked = 0;
        for dd in 1..=3usize {
            for alpha in 1..=2 {
                let d = DimVec(vec![dd]);
                let z = Weight::zero(dd);
                let rep = framed_summands(&three, &d, &mu, alpha, &z)?;
                let scan = window_scan(&three, &d, &mu, alpha, &z)?;
                let mut mine: Vec<(Vec<Vec<usize>>, Vec<Q>)> =
                    rep.labels.iter().map(|e| e.label.lex_key()).collect();
                mine.sort();
                if mine != scan.labels || rep.generator_count != Some(scan.generators) {
                    return Ok((false, format!("d={dd} alpha={alpha}")));
                }
                checked += 1;
            }
        }
        Ok((true, format!("{checked} windows")))
    })()));

    out.push(line("quasi-BPS generators: enumeration vs scan", (|| {
        let mu: GenericReal = GenericReal { q: Q::zero(), eps: -1 };
        for dd in 1..=3usize {
            let d = DimVec(vec![dd]);
            let delta = GenericWeight::shifted(&Weight::zero(dd), &mu);
            let fast = dd_generators(&three, &d, &delta)?.len();
            let brute = dd_count_brute(&three, &d, &Weight::zero(dd), &mu)?;
            if fast != brute {
                return Ok((false, format!("d={dd}: {fast} vs {brute}")));
            }
        }
        Ok((true, "d = 1..3".into()))
    })()));

    out
}
