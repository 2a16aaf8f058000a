//! Enumeration of semiorthogonal summand labels and Knörrer shift bookkeeping.

use itertools::Itertools;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::bps::{block_weights, compare_keys, magic_generators, SummandKey, SummandLabel, SummandOrder};
use crate::error::{invalid, precondition, Result};
use crate::lattice::{
    block_cocharacter, partition_sum, rep_weights, split_blocks, tau_sigma, DimVec, GenericWeight, Space,
    Weight,
};
use crate::quiver::Quiver;
use crate::rational::{frac, qi, GenericReal, Q};

/// Closed slope interval; a missing end is unbounded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeWindow {
    pub lo: Option<GenericReal>,
    pub hi: Option<GenericReal>,
}

impl SlopeWindow {
    pub fn new(lo: GenericReal, hi: GenericReal) -> Self {
        Self { lo: Some(lo), hi: Some(hi) }
    }

    fn bounded(&self) -> Result<(GenericReal, GenericReal)> {
        match (&self.lo, &self.hi) {
            (Some(lo), Some(hi)) => Ok((lo.clone(), hi.clone())),
            _ => invalid("the slope window must be bounded on both sides"),
        }
    }
}

/// Window parameters of a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WindowSpec {
    /// `μ ≤ v_1/d̄_1 < … < v_k/d̄_k < μ + α`.
    Framed { mu: GenericReal, alpha: i64 },
    /// `Σ v_i = w` with all slopes in `[lo, hi]`.
    Unframed { w: Q, lo: GenericReal, hi: GenericReal },
    /// All slopes in `[lo, hi]`.
    Preprojective { lo: GenericReal, hi: GenericReal },
}

/// How the label order of a report was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderSource {
    /// Linear extension of the summand comparison, ties broken lexicographically.
    Compared,
    /// The comparison relation had a cycle; remaining labels are lexicographic.
    CompareCycle,
    /// Lexicographic by partition and slope numbers.
    Lexicographic,
}

impl OrderSource {
    pub fn name(self) -> &'static str {
        match self {
            OrderSource::Compared => "compared",
            OrderSource::CompareCycle => "compare-cycle",
            OrderSource::Lexicographic => "lexicographic",
        }
    }
}

/// One summand of a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelEntry {
    pub label: SummandLabel,
    /// Block-local weights `θ_i + δ_i + v_i τ_{d_i}`.
    pub block_weights: Vec<Weight>,
    /// Fractional parts of the `v_i`.
    pub cosets: Vec<Q>,
    /// `Π_i` number of block magic generators.
    pub generators: Option<usize>,
    /// Shifted weights `w_i` of the preprojective g-loop case.
    pub shifted_w: Option<Vec<Q>>,
}

/// Enumerated summands of a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SodReport {
    pub quiver: Quiver,
    pub d: DimVec,
    pub window: WindowSpec,
    pub labels: Vec<LabelEntry>,
    pub count: usize,
    pub generator_count: Option<usize>,
    pub order: OrderSource,
}

impl SodReport {
    pub fn label_set(&self) -> Vec<SummandLabel> {
        self.labels.iter().map(|e| e.label.clone()).collect()
    }
}

/// All ordered partitions of `d` into nonzero dimension vectors.
pub fn compositions(d: &DimVec) -> Vec<Vec<DimVec>> {
    if d.is_zero() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in d.0.iter().map(|&k| 0..=k).multi_cartesian_product() {
        if first.iter().all(|&x| x == 0) {
            continue;
        }
        let rest = DimVec(d.0.iter().zip(&first).map(|(a, b)| a - b).collect());
        for mut tail in compositions(&rest) {
            tail.insert(0, DimVec(first.clone()));
            out.push(tail);
        }
    }
    out
}

#[derive(Clone, Copy)]
enum Bound {
    Open,
    Closed,
}

fn above(x: &GenericReal, lo: &GenericReal, b: Bound) -> bool {
    match b {
        Bound::Open => x > lo,
        Bound::Closed => x >= lo,
    }
}

/// `v ∈ −s + ℤ` with `v/d̄` in the given interval.
fn coset_candidates(s: &Q, dbar: usize, lo: (&GenericReal, Bound), hi: (&GenericReal, Bound)) -> Vec<Q> {
    let base = frac(&-s);
    let dq = qi(dbar as i64);
    let start = ((&lo.0.q - Q::one()) * &dq - &base).floor().to_integer();
    let end = ((&hi.0.q + Q::one()) * &dq - &base).ceil().to_integer();
    let mut out = Vec::new();
    let mut n = start;
    while n <= end {
        let v = &base + Q::from_integer(n.clone());
        let slope = GenericReal::exact(&v / &dq);
        if above(&slope, lo.0, lo.1) && above(hi.0, &slope, hi.1) {
            out.push(v);
        }
        n += 1;
    }
    out
}

fn slope(v: &Q, p: &DimVec) -> Q {
    v / qi(p.total() as i64)
}

/// Tuples picking one candidate per block with strictly increasing slopes.
fn increasing_tuples(parts: &[DimVec], cands: &[Vec<Q>], sum: Option<&Q>) -> Vec<Vec<Q>> {
    fn rec(
        i: usize,
        parts: &[DimVec],
        cands: &[Vec<Q>],
        sum: Option<&Q>,
        cur: &mut Vec<Q>,
        acc: &Q,
        out: &mut Vec<Vec<Q>>,
    ) {
        let prev = cur.last().map(|v| slope(v, &parts[i - 1]));
        let ok = |v: &Q| prev.as_ref().is_none_or(|p| slope(v, &parts[i]) > *p);
        if i + 1 == parts.len() {
            if let Some(total) = sum {
                let v = total - acc;
                if cands[i].binary_search(&v).is_ok() && ok(&v) {
                    cur.push(v);
                    out.push(cur.clone());
                    cur.pop();
                }
                return;
            }
        }
        for v in &cands[i] {
            if !ok(v) {
                continue;
            }
            cur.push(v.clone());
            if i + 1 == parts.len() {
                out.push(cur.clone());
            } else {
                rec(i + 1, parts, cands, sum, cur, &(acc + v), out);
            }
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if !parts.is_empty() {
        rec(0, parts, cands, sum, &mut Vec::new(), &Q::zero(), &mut out);
    }
    out
}

struct Spec<'a> {
    lo: (&'a GenericReal, Bound),
    hi: (&'a GenericReal, Bound),
    sum: Option<&'a Q>,
}

/// Labels of one composition; `offsets[i]` is `⟨1, θ_i + δ_i⟩`.
fn labels_for(parts: &[DimVec], offsets: &[Q], spec: &Spec<'_>) -> Vec<SummandLabel> {
    let cands: Vec<Vec<Q>> = parts
        .iter()
        .zip(offsets)
        .map(|(p, s)| coset_candidates(s, p.total(), spec.lo, spec.hi))
        .collect();
    increasing_tuples(parts, &cands, spec.sum)
        .into_iter()
        .map(|vs| SummandLabel::new(parts.iter().cloned().zip(vs).collect()))
        .collect()
}

fn require_gauge(q: &Quiver) -> Result<()> {
    if q.framing().is_some() {
        return invalid("expected an unframed quiver; the framing is implicit");
    }
    Ok(())
}

fn entry(q: &Quiver, label: SummandLabel, delta: &Weight, count_gens: bool) -> Result<LabelEntry> {
    let bws = block_weights(q, &label, delta)?;
    let generators = if count_gens {
        let mut prod = 1usize;
        for ((p, _), bw) in label.parts.iter().zip(&bws) {
            prod *= magic_generators(q, p, bw)?.len();
        }
        Some(prod)
    } else {
        None
    };
    Ok(LabelEntry {
        cosets: label.slope_numbers().iter().map(frac).collect(),
        block_weights: bws,
        label,
        generators,
        shifted_w: None,
    })
}

/// Sorts entries lexicographically, then by a linear extension of the comparison when available.
fn order_entries(q: &Quiver, mut entries: Vec<LabelEntry>) -> Result<(Vec<LabelEntry>, OrderSource)> {
    entries.sort_by_key(|a| a.label.lex_key());
    if q.very_symmetric().is_none_or(|a| a == 0) {
        return Ok((entries, OrderSource::Lexicographic));
    }
    let keys = entries
        .iter()
        .map(|e| SummandKey::new(q, &e.label))
        .collect::<Result<Vec<_>>>()?;
    let n = keys.len();
    // before[i][j]: label i must come before label j
    let before: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| compare_keys(&keys[i], &keys[j]) == SummandOrder::ABeforeB).collect())
        .collect();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut source = OrderSource::Compared;
    while order.len() < n {
        let next = (0..n).find(|&j| !placed[j] && (0..n).all(|i| placed[i] || !before[i][j]));
        match next {
            Some(j) => {
                placed[j] = true;
                order.push(j);
            }
            None => {
                source = OrderSource::CompareCycle;
                order.extend((0..n).filter(|&j| !placed[j]));
                break;
            }
        }
    }
    let mut slots: Vec<Option<LabelEntry>> = entries.into_iter().map(Some).collect();
    Ok((order.into_iter().map(|i| slots[i].take().unwrap()).collect(), source))
}

fn theta_offsets(q: &Quiver, parts: &[DimVec], delta: &Weight) -> Result<Vec<Q>> {
    let bws = block_weights(q, &SummandLabel::new(parts.iter().cloned().map(|p| (p, Q::zero())).collect()), delta)?;
    Ok(bws.iter().map(Weight::total).collect())
}

fn finish(
    q: &Quiver,
    d: &DimVec,
    window: WindowSpec,
    entries: Vec<LabelEntry>,
    order_by_compare: bool,
) -> Result<SodReport> {
    let (labels, order) = if order_by_compare {
        order_entries(q, entries)?
    } else {
        let mut e = entries;
        e.sort_by_key(|a| a.label.lex_key());
        (e, OrderSource::Lexicographic)
    };
    let generator_count = labels.iter().map(|e| e.generators).sum::<Option<usize>>();
    Ok(SodReport {
        quiver: q.clone(),
        d: d.clone(),
        window,
        count: labels.len(),
        labels,
        generator_count,
        order,
    })
}

/// Summands of the framed stack with `α` framing edges per vertex.
pub fn framed_summands(q: &Quiver, d: &DimVec, mu: &GenericReal, alpha: i64, delta: &Weight) -> Result<SodReport> {
    require_gauge(q)?;
    d.checked_for(q)?;
    if alpha <= 0 {
        return invalid(format!("alpha must be positive, got {alpha}"));
    }
    if !q.is_symmetric() || q.loop_parity().is_none() {
        return precondition("framed summands need a symmetric quiver with loop counts of equal parity");
    }
    if delta.len() != d.total() {
        return invalid("delta has the wrong number of coordinates");
    }
    if d.is_zero() {
        return invalid("d must be nonzero");
    }
    if !crate::bps::is_good_weight(q, d, &GenericWeight::shifted(delta, mu))? {
        return precondition("delta + mu sigma is not a good weight");
    }
    let hi = mu.shift(&qi(alpha));
    let spec = Spec {
        lo: (mu, Bound::Closed),
        hi: (&hi, Bound::Open),
        sum: None,
    };
    let comps = compositions(d);
    let nested: Vec<Vec<LabelEntry>> = comps
        .par_iter()
        .map(|parts| {
            let offsets = theta_offsets(q, parts, delta)?;
            labels_for(parts, &offsets, &spec)
                .into_iter()
                .map(|l| entry(q, l, delta, true))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    finish(
        q,
        d,
        WindowSpec::Framed { mu: mu.clone(), alpha },
        nested.into_iter().flatten().collect(),
        true,
    )
}

/// Summands of the unframed stack of weight `w` whose slopes lie in the window.
pub fn unframed_summands(q: &Quiver, d: &DimVec, w: &Q, window: &SlopeWindow) -> Result<SodReport> {
    require_gauge(q)?;
    d.checked_for(q)?;
    let (lo, hi) = window.bounded()?;
    if !q.is_symmetric() {
        return precondition("unframed summands need a symmetric quiver");
    }
    if d.is_zero() {
        return invalid("d must be nonzero");
    }
    let delta = Weight::zero(d.total());
    let spec = Spec {
        lo: (&lo, Bound::Closed),
        hi: (&hi, Bound::Closed),
        sum: Some(w),
    };
    let nested: Vec<Vec<LabelEntry>> = compositions(d)
        .par_iter()
        .map(|parts| {
            let offsets = theta_offsets(q, parts, &delta)?;
            labels_for(parts, &offsets, &spec)
                .into_iter()
                .map(|l| entry(q, l, &delta, true))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    finish(
        q,
        d,
        WindowSpec::Unframed { w: w.clone(), lo, hi },
        nested.into_iter().flatten().collect(),
        true,
    )
}

/// `θ_i` of the preprojective decomposition: `Σ θ_i = −½ R̄(d)^{λ>0} + g(d)^{λ>0}`.
pub fn preprojective_thetas(q0: &Quiver, parts: &[DimVec]) -> Result<Vec<Weight>> {
    let d = partition_sum(parts)?;
    let lambda = block_cocharacter(parts)?;
    let rbar = rep_weights(q0, &d, Space::Rbar, None)?;
    let g = rep_weights(q0, &d, Space::G, None)?;
    let half = Q::new(1.into(), 2.into());
    let total = &rbar.positive_sum(&lambda).scale(&-half) + &g.positive_sum(&lambda);
    split_blocks(&total, parts, "preprojective theta")
}

/// `w_i = v_i + (g − 1) d_i (Σ_{j<i} d_j − Σ_{j>i} d_j)` for the g-loop quiver.
pub fn gloop_shifted_weights(g: usize, label: &SummandLabel) -> Vec<Q> {
    let ds: Vec<i64> = label.parts.iter().map(|(p, _)| p.total() as i64).collect();
    let gm = g as i64 - 1;
    label
        .parts
        .iter()
        .enumerate()
        .map(|(i, (_, v))| {
            let below: i64 = ds[..i].iter().sum();
            let above: i64 = ds[i + 1..].iter().sum();
            v + qi(gm * ds[i] * (below - above))
        })
        .collect()
}

fn gloop_count(q0: &Quiver) -> Option<usize> {
    (q0.gauge_count() == 1 && q0.edges().iter().all(|&(s, t)| s == 0 && t == 0)).then(|| q0.edges().len())
}

/// Summands of the preprojective stack whose slopes lie in the window.
pub fn preprojective_summands(q0: &Quiver, d: &DimVec, window: &SlopeWindow) -> Result<SodReport> {
    require_gauge(q0)?;
    d.checked_for(q0)?;
    let (lo, hi) = window.bounded()?;
    if d.is_zero() {
        return invalid("d must be nonzero");
    }
    let spec = Spec {
        lo: (&lo, Bound::Closed),
        hi: (&hi, Bound::Closed),
        sum: None,
    };
    let gl = gloop_count(q0);
    let nested: Vec<Vec<LabelEntry>> = compositions(d)
        .par_iter()
        .map(|parts| {
            let thetas = preprojective_thetas(q0, parts)?;
            let offsets: Vec<Q> = thetas.iter().map(Weight::total).collect();
            labels_for(parts, &offsets, &spec)
                .into_iter()
                .map(|label| {
                    let bws = label
                        .parts
                        .iter()
                        .zip(&thetas)
                        .map(|((p, v), th)| Ok(th + &tau_sigma(p)?.0.scale(v)))
                        .collect::<Result<Vec<_>>>()?;
                    Ok(LabelEntry {
                        cosets: label.slope_numbers().iter().map(frac).collect(),
                        block_weights: bws,
                        generators: None,
                        shifted_w: gl.map(|g| gloop_shifted_weights(g, &label)),
                        label,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    finish(
        q0,
        d,
        WindowSpec::Preprojective { lo, hi },
        nested.into_iter().flatten().collect(),
        false,
    )
}

/// Residuals of the companion shift identities for one partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnorrerReport {
    pub companion: Quiver,
    /// `−½(R^ℷ − R)^{λ>0} − ½U + ½U^λ + U^{λ>0}`.
    pub identity_residual: Weight,
    /// `(Σθ_i − U^{λ>0}) − (Σθ^ℷ_i − ½U + ½U^λ)`.
    pub shift_residual: Weight,
    /// `δ° = −½ U(d)`.
    pub delta_shift: Weight,
    pub delta_weyl_invariant: bool,
}

impl KnorrerReport {
    pub fn holds(&self) -> bool {
        self.identity_residual.is_zero() && self.shift_residual.is_zero() && self.delta_weyl_invariant
    }
}

/// Verifies the weight identities relating a quiver to its very symmetric companion.
pub fn knorrer_shift_check(q: &Quiver, d: &DimVec, parts: &[DimVec], a_const: Option<usize>) -> Result<KnorrerReport> {
    require_gauge(q)?;
    d.checked_for(q)?;
    if partition_sum(parts)? != *d {
        return invalid("partition does not sum to d");
    }
    let (qc, u) = q.very_symmetric_companion(a_const)?;
    let lambda = block_cocharacter(parts)?;
    let half = Q::new(1.into(), 2.into());
    let r = rep_weights(q, d, Space::R, None)?;
    let rc = rep_weights(&qc, d, Space::R, None)?;
    let uw = rep_weights(q, d, Space::U, Some(&u))?;
    let g = rep_weights(q, d, Space::G, None)?;
    let (r_pos, rc_pos) = (r.positive_sum(&lambda), rc.positive_sum(&lambda));
    let (u_all, u_fix, u_pos) = (uw.sum(), uw.fixed_sum(&lambda), uw.positive_sum(&lambda));
    let g_half = g.positive_sum(&lambda).scale(&half);
    let identity = &(&(&(&rc_pos - &r_pos).scale(&-half.clone()) - &u_all.scale(&half)) + &u_fix.scale(&half)) + &u_pos;
    let theta = &r_pos.scale(&-half.clone()) + &g_half;
    let theta_c = &rc_pos.scale(&-half.clone()) + &g_half;
    let lhs = &theta - &u_pos;
    let rhs = &(&theta_c - &u_all.scale(&half)) + &u_fix.scale(&half);
    let delta_shift = u_all.scale(&-half);
    Ok(KnorrerReport {
        companion: qc,
        identity_residual: identity,
        shift_residual: &lhs - &rhs,
        delta_weyl_invariant: delta_shift.is_weyl_invariant(d),
        delta_shift,
    })
}
