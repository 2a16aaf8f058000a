//! Generator enumeration for magic and quasi-BPS windows, good weights, the
//! weight decomposition, summand labels and their ordering.

use std::cmp::Ordering;

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::error::{internal, invalid, precondition, Result};
use crate::lattice::{
    block_cocharacter, block_slots, partition_sum, rep_weights, rho, tau_sigma, theta_weights, Cocharacter, DimVec,
    GenericWeight, Space, Weight,
};
use crate::quiver::Quiver;
use crate::rational::{qi, Q};
use crate::zonotope::{cut_ratio, v_polytope, w_polytope, Zonotope};

/// Ordered partition `(d_i)` of `d` with slope numbers `v_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SummandLabel {
    pub parts: Vec<(DimVec, Q)>,
}

impl SummandLabel {
    pub fn new(parts: Vec<(DimVec, Q)>) -> Self {
        Self { parts }
    }

    pub fn partition(&self) -> Vec<DimVec> {
        self.parts.iter().map(|(d, _)| d.clone()).collect()
    }

    pub fn slope_numbers(&self) -> Vec<Q> {
        self.parts.iter().map(|(_, v)| v.clone()).collect()
    }

    /// `Σ v_i`.
    pub fn weight(&self) -> Q {
        self.parts.iter().map(|(_, v)| v).sum()
    }

    /// `v_i / d̄_i`.
    pub fn slopes(&self) -> Vec<Q> {
        self.parts.iter().map(|(d, v)| v / qi(d.total() as i64)).collect()
    }

    pub fn slopes_increasing(&self) -> bool {
        self.slopes().windows(2).all(|w| w[0] < w[1])
    }

    /// Sort key: partition, then slope numbers.
    pub fn lex_key(&self) -> (Vec<Vec<usize>>, Vec<Q>) {
        (self.parts.iter().map(|(d, _)| d.0.clone()).collect(), self.slope_numbers())
    }
}

/// One refinement step of the decomposition: coefficient and partition after the step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathLevel {
    pub r: Q,
    pub partition: Vec<DimVec>,
    /// Sum of `N_ℓ` over the blocks split at this level, in global slots.
    pub n_weight: Weight,
}

/// Refinement chain with coefficients and final residuals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionPath {
    pub levels: Vec<PathLevel>,
    /// Block-local residuals `ψ_i ∈ 𝐖(d_i)`.
    pub psi: Vec<Weight>,
}

/// Output of [`decompose_weight`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub w: Q,
    pub path: PartitionPath,
    pub label: SummandLabel,
    /// Block-local `θ_i`.
    pub thetas: Vec<Weight>,
}

/// Outcome of comparing two summand labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SummandOrder {
    ABeforeB,
    BBeforeA,
    IncomparableOrthogonal,
    Equal,
}

impl SummandOrder {
    pub fn name(self) -> &'static str {
        match self {
            SummandOrder::ABeforeB => "A_before_B",
            SummandOrder::BBeforeA => "B_before_A",
            SummandOrder::IncomparableOrthogonal => "incomparable-orthogonal",
            SummandOrder::Equal => "equal",
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            SummandOrder::ABeforeB => SummandOrder::BBeforeA,
            SummandOrder::BBeforeA => SummandOrder::ABeforeB,
            other => other,
        }
    }
}

fn require_symmetric(q: &Quiver) -> Result<()> {
    if !q.is_symmetric() {
        return precondition("quiver is not symmetric");
    }
    Ok(())
}

fn require_very_symmetric(q: &Quiver) -> Result<usize> {
    match q.very_symmetric() {
        Some(a) if a > 0 => Ok(a),
        _ => precondition("quiver is not very symmetric"),
    }
}

fn check_weight(d: &DimVec, w: &Weight, what: &str) -> Result<()> {
    if w.len() != d.total() {
        return invalid(format!("{what} has {} coordinates, expected {}", w.len(), d.total()));
    }
    Ok(())
}

/// Dominant integral `χ` with `χ + ρ − δ` in the zonotope, sorted lexicographically.
fn enumerate_generators(z: &Zonotope, d: &DimVec, delta: &GenericWeight) -> Result<Vec<Weight>> {
    let n = d.total();
    let rho = rho(d);
    let shift = &delta.base - &rho;
    let perturbed = !delta.is_exact();
    let widen = if perturbed { Q::one() } else { Q::zero() };
    let bounds: Vec<(i64, i64)> = z
        .coordinate_bounds(&Q::one())
        .into_iter()
        .enumerate()
        .map(|(s, (lo, hi))| {
            let lo = (lo + &shift.0[s] - &widen).ceil().to_integer();
            let hi = (hi + &shift.0[s] + &widen).floor().to_integer();
            (i64::try_from(lo).unwrap_or(i64::MIN / 4), i64::try_from(hi).unwrap_or(i64::MAX / 4))
        })
        .collect();
    let (tlo, thi) = z.total_bounds(&Q::one());
    let st = shift.total();
    let total_lo = i64::try_from((tlo + &st - &widen).ceil().to_integer()).unwrap_or(i64::MIN / 4);
    let total_hi = i64::try_from((thi + &st + &widen).floor().to_integer()).unwrap_or(i64::MAX / 4);
    if total_lo > total_hi || bounds.iter().any(|(l, h)| l > h) {
        return Ok(Vec::new());
    }
    let vertex = d.slot_vertex();
    let mut suffix_lo = vec![0i64; n + 1];
    let mut suffix_hi = vec![0i64; n + 1];
    for s in (0..n).rev() {
        suffix_lo[s] = suffix_lo[s + 1] + bounds[s].0;
        suffix_hi[s] = suffix_hi[s + 1] + bounds[s].1;
    }
    let mut out = Vec::new();
    let mut cur = vec![0i64; n];
    let mut stack: Vec<(usize, i64, i64)> = Vec::new();
    // iterative depth-first search over (slot, value, running sum)
    fn first_value(s: usize, cur: &[i64], vertex: &[usize], bounds: &[(i64, i64)]) -> i64 {
        if s > 0 && vertex[s - 1] == vertex[s] {
            bounds[s].0.max(cur[s - 1])
        } else {
            bounds[s].0
        }
    }
    if n == 0 {
        let chi = Weight::zero(0);
        if total_lo <= 0 && 0 <= total_hi && z.contains_generic(&shifted_point(&chi, &rho, delta), &Q::one())? {
            out.push(chi);
        }
        return Ok(out);
    }
    stack.push((0, first_value(0, &cur, &vertex, &bounds), 0));
    while let Some((s, v, sum)) = stack.pop() {
        if v > bounds[s].1 {
            continue;
        }
        stack.push((s, v + 1, sum));
        cur[s] = v;
        let partial = sum + v;
        if partial + suffix_lo[s + 1] > total_hi || partial + suffix_hi[s + 1] < total_lo {
            continue;
        }
        if s + 1 == n {
            let chi = Weight::from_ints(&cur);
            if z.contains_generic(&shifted_point(&chi, &rho, delta), &Q::one())? {
                out.push(chi);
            }
        } else {
            stack.push((s + 1, first_value(s + 1, &cur, &vertex, &bounds), partial));
        }
    }
    out.sort();
    Ok(out)
}

fn shifted_point(chi: &Weight, rho: &Weight, delta: &GenericWeight) -> GenericWeight {
    GenericWeight {
        base: &(chi + rho) - &delta.base,
        inf: -&delta.inf,
    }
}

/// Dominant integral `χ` with `χ + ρ − δ ∈ 𝐖(d)`.
pub fn magic_generators(q: &Quiver, d: &DimVec, delta: &Weight) -> Result<Vec<Weight>> {
    d.checked_for(q)?;
    require_symmetric(q)?;
    check_weight(d, delta, "delta")?;
    if !delta.total().is_integer() {
        return Ok(Vec::new());
    }
    let z = w_polytope(q, d)?;
    enumerate_generators(&z, d, &GenericWeight::exact(delta.clone()))
}

/// Dominant integral `χ` with `χ + ρ − δ ∈ 𝐕(d)`; `δ` may be perturbed.
pub fn dd_generators(q: &Quiver, d: &DimVec, delta: &GenericWeight) -> Result<Vec<Weight>> {
    d.checked_for(q)?;
    require_symmetric(q)?;
    check_weight(d, &delta.base, "delta")?;
    let z = v_polytope(q, d)?;
    enumerate_generators(&z, d, delta)
}

/// Goodness of a Weyl-invariant, possibly perturbed, weight.
pub fn is_good_weight(q: &Quiver, d: &DimVec, delta: &GenericWeight) -> Result<bool> {
    d.checked_for(q)?;
    check_weight(d, &delta.base, "delta")?;
    if !delta.base.is_weyl_invariant(d) || !delta.inf.is_weyl_invariant(d) {
        return invalid("delta is not Weyl-invariant");
    }
    let offsets = d.offsets();
    let per_vertex = |w: &Weight, a: usize| -> Q {
        if d.0[a] == 0 {
            Q::zero()
        } else {
            w.0[offsets[a]].clone()
        }
    };
    let ranges: Vec<std::ops::RangeInclusive<usize>> = d.0.iter().map(|&k| 0..=k).collect();
    for cut in ranges.into_iter().multi_cartesian_product() {
        if cut.iter().all(|&c| c == 0) {
            continue;
        }
        let mut base = Q::zero();
        let mut inf = Q::zero();
        for (a, &c) in cut.iter().enumerate() {
            base -= qi(2 * c as i64) * per_vertex(&delta.base, a);
            inf -= qi(2 * c as i64) * per_vertex(&delta.inf, a);
        }
        if inf.is_zero() && base.is_integer() {
            return Ok(false);
        }
    }
    Ok(true)
}

struct Block {
    dims: DimVec,
    slots: Vec<usize>,
    res: Weight,
}

fn local_dims(parent: &DimVec, local: &[usize]) -> DimVec {
    let vertex = parent.slot_vertex();
    let mut dims = vec![0; parent.len()];
    for &s in local {
        dims[vertex[s]] += 1;
    }
    DimVec(dims)
}

/// Decomposes `χ + ρ − δ` along a path of partitions (very symmetric quivers only).
pub fn decompose_weight(q: &Quiver, d: &DimVec, chi: &Weight, delta: &Weight) -> Result<Decomposition> {
    d.checked_for(q)?;
    let a_const = require_very_symmetric(q)?;
    check_weight(d, chi, "chi")?;
    check_weight(d, delta, "delta")?;
    if !chi.is_integral() || !chi.is_dominant(d) {
        return precondition("chi must be integral and dominant");
    }
    if !delta.is_weyl_invariant(d) {
        return precondition("delta must be Weyl-invariant");
    }
    let n = d.total();
    let (tau, _) = tau_sigma(d)?;
    let rho_d = rho(d);
    let w = (chi - delta).total();
    let target = &(chi + &rho_d) - delta;
    let x0 = &target - &tau.scale(&w);
    let half = Q::new(1.into(), 2.into());

    let mut blocks = vec![Block {
        dims: d.clone(),
        slots: (0..n).collect(),
        res: x0.clone(),
    }];
    let mut levels: Vec<PathLevel> = Vec::new();
    loop {
        let cuts: Vec<(Q, Vec<Vec<usize>>)> = blocks
            .iter()
            .map(|b| {
                if b.slots.len() < 2 {
                    (Q::zero(), Vec::new())
                } else {
                    cut_ratio(a_const, &b.dims, &b.res)
                }
            })
            .collect();
        let rmax = cuts.iter().map(|(r, _)| r.clone()).max().unwrap_or_else(Q::zero);
        if rmax <= half {
            break;
        }
        let mut next = Vec::new();
        let mut n_weight = Weight::zero(n);
        for (b, (r, tight)) in blocks.into_iter().zip(cuts) {
            if r != rmax {
                next.push(b);
                continue;
            }
            let lp_r = w_polytope(q, &b.dims)?.r_invariant(&b.res)?;
            if lp_r != r {
                return internal(format!("cut formula gives {r} but the LP gives {lp_r}"));
            }
            if tight.windows(2).any(|p| !p[0].iter().all(|s| p[1].contains(s))) {
                return internal("tight cuts do not form a chain");
            }
            // sub-blocks from low to high values
            let m = b.slots.len();
            let mut pieces: Vec<Vec<usize>> = Vec::new();
            let mut prev: Vec<usize> = (0..m).collect();
            for set in tight.iter().rev() {
                pieces.push(prev.iter().copied().filter(|s| !set.contains(s)).collect());
                prev = set.clone();
            }
            pieces.push(prev);
            let k = pieces.len() as i64;
            let mut lam = vec![0i64; m];
            for (j, piece) in pieces.iter().enumerate() {
                for &s in piece {
                    lam[s] = k - 1 - j as i64;
                }
            }
            let n_local = rep_weights(q, &b.dims, Space::R, None)?.positive_sum(&Cocharacter(lam));
            let res = &b.res + &n_local.scale(&rmax);
            n_weight = &n_weight + &Weight::embed(&n_local, &b.slots, n);
            for piece in pieces {
                next.push(Block {
                    dims: local_dims(&b.dims, &piece),
                    slots: piece.iter().map(|&s| b.slots[s]).collect(),
                    res: res.restrict(&piece),
                });
            }
        }
        blocks = next;
        levels.push(PathLevel {
            r: rmax,
            partition: blocks.iter().map(|b| b.dims.clone()).collect(),
            n_weight,
        });
    }

    let parts: Vec<DimVec> = blocks.iter().map(|b| b.dims.clone()).collect();
    let canonical = block_slots(&parts)?;
    if canonical.iter().zip(&blocks).any(|(c, b)| *c != b.slots) {
        return internal("final blocks are not in canonical position");
    }
    let lambda = block_cocharacter(&parts)?;
    let r_pos = rep_weights(q, d, Space::R, None)?.positive_sum(&lambda);
    let mut y = &r_pos.scale(&half) + &tau.scale(&w);
    let mut rn = Weight::zero(n);
    for l in &levels {
        rn = &rn + &l.n_weight.scale(&l.r);
    }
    y = &y - &rn;
    let mut vs = Vec::with_capacity(parts.len());
    for (p, slots) in parts.iter().zip(&canonical) {
        let local = y.restrict(slots);
        if local.0.windows(2).any(|x| x[0] != x[1]) {
            return internal("slope weight is not constant on a block");
        }
        vs.push(&local.0[0] * qi(p.total() as i64));
    }
    let psi: Vec<Weight> = blocks.iter().map(|b| b.res.clone()).collect();
    let mut psi_sum = Weight::zero(n);
    for (p, slots) in psi.iter().zip(&canonical) {
        psi_sum = &psi_sum + &Weight::embed(p, slots, n);
    }
    if target != &(&psi_sum - &rn) + &tau.scale(&w) {
        return internal("reconstruction identity failed");
    }
    let thetas = theta_weights(q, &parts)?;
    let mut rebuilt = Weight::zero(n);
    for (i, slots) in canonical.iter().enumerate() {
        let (tau_i, _) = tau_sigma(&parts[i])?;
        let local = &(&(&thetas[i] + &tau_i.scale(&vs[i])) + &psi[i]) - &rho(&parts[i]);
        let local = &local + &delta.restrict(slots);
        rebuilt = &rebuilt + &Weight::embed(&local, slots, n);
    }
    if rebuilt != *chi {
        return internal("block reconstruction of chi failed");
    }
    let label = SummandLabel::new(parts.into_iter().zip(vs).collect());
    Ok(Decomposition {
        w,
        path: PartitionPath { levels, psi },
        label,
        thetas,
    })
}

/// Label of the summand containing `χ`.
pub fn to_summand(q: &Quiver, d: &DimVec, chi: &Weight, delta: &Weight) -> Result<SummandLabel> {
    Ok(decompose_weight(q, d, chi, delta)?.label)
}

/// Block weights `θ_i + δ_i + v_i τ_{d_i}` of a label.
pub fn block_weights(q: &Quiver, label: &SummandLabel, delta: &Weight) -> Result<Vec<Weight>> {
    let parts = label.partition();
    let thetas = theta_weights(q, &parts)?;
    let slots = block_slots(&parts)?;
    let mut out = Vec::with_capacity(parts.len());
    for (i, (p, v)) in label.parts.iter().enumerate() {
        let (tau, _) = tau_sigma(p)?;
        out.push(&(&thetas[i] + &delta.restrict(&slots[i])) + &tau.scale(v));
    }
    Ok(out)
}

/// Canonical generator of a label: the first tuple of block magic generators,
/// in lexicographic order of concatenated coordinates, that assembles to a
/// dominant weight decomposing back to the label.
pub fn from_summand(q: &Quiver, d: &DimVec, label: &SummandLabel, delta: &Weight) -> Result<Weight> {
    require_very_symmetric(q)?;
    let parts = label.partition();
    if partition_sum(&parts)? != *d {
        return invalid("label partition does not sum to d");
    }
    check_weight(d, delta, "delta")?;
    let slots = block_slots(&parts)?;
    let bws = block_weights(q, label, delta)?;
    let mut gens = Vec::with_capacity(parts.len());
    for (p, bw) in parts.iter().zip(&bws) {
        let g = magic_generators(q, p, bw)?;
        if g.is_empty() {
            return precondition("a block has no magic generators; the label violates integrality");
        }
        gens.push(g);
    }
    let n = d.total();
    for pick in gens.iter().map(|g| 0..g.len()).multi_cartesian_product() {
        let mut chi = Weight::zero(n);
        for (i, &j) in pick.iter().enumerate() {
            chi = &chi + &Weight::embed(&gens[i][j], &slots[i], n);
        }
        if !chi.is_dominant(d) {
            continue;
        }
        if to_summand(q, d, &chi, delta)? == *label {
            return Ok(chi);
        }
    }
    precondition("no integral dominant representative decomposes to this label")
}

/// One level of the label-side refinement chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RPrimeLevel {
    pub r: Q,
    pub partition: Vec<DimVec>,
}

/// `w_i` with `χ_A + ½ g(d)^{λ<0} = Σ w_i τ_{d_i}`.
pub fn label_block_sums(q: &Quiver, label: &SummandLabel) -> Result<Vec<Q>> {
    let parts = label.partition();
    let d = partition_sum(&parts)?;
    let thetas = theta_weights(q, &parts)?;
    let lambda = block_cocharacter(&parts)?;
    let gneg = rep_weights(q, &d, Space::G, None)?.negative_sum(&lambda);
    let half = Q::new(1.into(), 2.into());
    let slots = block_slots(&parts)?;
    Ok(label
        .parts
        .iter()
        .enumerate()
        .map(|(i, (_, v))| v + thetas[i].total() + gneg.restrict(&slots[i]).total() * &half)
        .collect())
}

/// `(r'_n, π_n)` levels of a label (very symmetric quivers).
pub fn r_prime_levels(q: &Quiver, label: &SummandLabel) -> Result<Vec<RPrimeLevel>> {
    let a_const = require_very_symmetric(q)?;
    let ws = label_block_sums(q, label)?;
    let dbar: Vec<usize> = label.parts.iter().map(|(p, _)| p.total()).collect();
    let parts = label.partition();
    let mut groups: Vec<std::ops::Range<usize>> = vec![0..parts.len()];
    let mut out = Vec::new();
    loop {
        let mut evals: Vec<Option<(Q, Vec<usize>)>> = Vec::new();
        for g in &groups {
            if g.len() < 2 {
                evals.push(None);
                continue;
            }
            let total_d: usize = dbar[g.clone()].iter().sum();
            let mut best: Option<(Q, Vec<usize>)> = None;
            for a in g.start + 1..g.end {
                let (wl, dl): (Q, usize) = (ws[g.start..a].iter().sum(), dbar[g.start..a].iter().sum());
                let (wh, dh): (Q, usize) = (ws[a..g.end].iter().sum(), dbar[a..g.end].iter().sum());
                let val = (wh / qi(dh as i64) - wl / qi(dl as i64)) / qi((a_const * total_d) as i64);
                match &mut best {
                    Some((b, arg)) if *b == val => arg.push(a),
                    Some((b, _)) if *b > val => {}
                    _ => best = Some((val, vec![a])),
                }
            }
            evals.push(best);
        }
        let Some(rmax) = evals.iter().flatten().map(|(r, _)| r.clone()).max() else {
            break;
        };
        let mut next = Vec::new();
        for (g, e) in groups.iter().zip(&evals) {
            match e {
                Some((r, cuts)) if *r == rmax => {
                    let mut start = g.start;
                    for &c in cuts {
                        next.push(start..c);
                        start = c;
                    }
                    next.push(start..g.end);
                }
                _ => next.push(g.clone()),
            }
        }
        groups = next;
        let partition = groups
            .iter()
            .map(|g| partition_sum(&parts[g.clone()]))
            .collect::<Result<Vec<_>>>()?;
        out.push(RPrimeLevel { r: rmax, partition });
    }
    Ok(out)
}

/// `e ≥ d`: `e` refines `d` into consecutive pieces.
pub fn refines(e: &[DimVec], d: &[DimVec]) -> bool {
    let mut it = e.iter();
    for target in d {
        let mut acc = vec![0usize; target.len()];
        loop {
            let Some(p) = it.next() else { return false };
            if p.len() != acc.len() {
                return false;
            }
            for (a, x) in acc.iter_mut().zip(&p.0) {
                *a += x;
            }
            if acc.iter().zip(&target.0).any(|(a, t)| a > t) {
                return false;
            }
            if acc == target.0 {
                break;
            }
        }
    }
    it.next().is_none()
}

/// Precomputed comparison data of a label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummandKey {
    pub label: SummandLabel,
    pub w: Q,
    pub levels: Vec<RPrimeLevel>,
}

impl SummandKey {
    pub fn new(q: &Quiver, label: &SummandLabel) -> Result<Self> {
        Ok(Self {
            label: label.clone(),
            w: label.weight(),
            levels: r_prime_levels(q, label)?,
        })
    }
}

/// Compares two precomputed keys.
pub fn compare_keys(a: &SummandKey, b: &SummandKey) -> SummandOrder {
    if a.label == b.label {
        return SummandOrder::Equal;
    }
    match a.w.cmp(&b.w) {
        Ordering::Greater => return SummandOrder::BBeforeA,
        Ordering::Less => return SummandOrder::ABeforeB,
        Ordering::Equal => {}
    }
    let len = a.levels.len().max(b.levels.len());
    for i in 0..len {
        let ra = a.levels.get(i).map_or_else(Q::zero, |l| l.r.clone());
        let rb = b.levels.get(i).map_or_else(Q::zero, |l| l.r.clone());
        match ra.cmp(&rb) {
            Ordering::Greater => return SummandOrder::ABeforeB,
            Ordering::Less => return SummandOrder::BBeforeA,
            Ordering::Equal => {}
        }
        let (Some(la), Some(lb)) = (a.levels.get(i), b.levels.get(i)) else {
            return SummandOrder::IncomparableOrthogonal;
        };
        if la.partition == lb.partition {
            continue;
        }
        if refines(&lb.partition, &la.partition) {
            return SummandOrder::ABeforeB;
        }
        if refines(&la.partition, &lb.partition) {
            return SummandOrder::BBeforeA;
        }
        return SummandOrder::IncomparableOrthogonal;
    }
    SummandOrder::IncomparableOrthogonal
}

/// Order of two summand labels of the same `d` (very symmetric quivers).
pub fn compare_summands(q: &Quiver, d: &DimVec, a: &SummandLabel, b: &SummandLabel) -> Result<SummandOrder> {
    for l in [a, b] {
        if partition_sum(&l.partition())? != *d {
            return invalid("label partition does not sum to d");
        }
    }
    Ok(compare_keys(&SummandKey::new(q, a)?, &SummandKey::new(q, b)?))
}
