//! Weight lattice `M(d)`, cocharacters, distinguished weights and weight multisets.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::error::{invalid, precondition, Result};
use crate::quiver::{Quiver, USpec};
use crate::rational::{qi, Q};

/// Dimension vector indexed by the gauge vertices of a quiver.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVec(pub Vec<usize>);

impl DimVec {
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Start of each vertex's slot range.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.0
            .iter()
            .map(|&d| {
                let o = acc;
                acc += d;
                o
            })
            .collect()
    }

    /// `(vertex, index)` of each slot, vertex-major, 0-based index.
    pub fn slots(&self) -> Vec<(usize, usize)> {
        self.0.iter().enumerate().flat_map(|(a, &d)| (0..d).map(move |i| (a, i))).collect()
    }

    /// Vertex of each slot.
    pub fn slot_vertex(&self) -> Vec<usize> {
        self.slots().into_iter().map(|(a, _)| a).collect()
    }

    pub fn checked_for(&self, q: &Quiver) -> Result<()> {
        if self.0.len() != q.gauge_count() {
            return invalid(format!(
                "dimension vector has {} entries but the quiver has {} gauge vertices",
                self.0.len(),
                q.gauge_count()
            ));
        }
        Ok(())
    }
}

/// Sum of the parts of a partition.
pub fn partition_sum(parts: &[DimVec]) -> Result<DimVec> {
    let Some(first) = parts.first() else {
        return invalid("empty partition");
    };
    let mut acc = vec![0; first.len()];
    for p in parts {
        if p.len() != acc.len() {
            return invalid("partition parts have different lengths");
        }
        if p.is_zero() {
            return invalid("partition has a zero part");
        }
        for (a, &x) in acc.iter_mut().zip(&p.0) {
            *a += x;
        }
    }
    Ok(DimVec(acc))
}

/// Global slots of each block: per vertex, block 1 takes the first slots.
pub fn block_slots(parts: &[DimVec]) -> Result<Vec<Vec<usize>>> {
    let d = partition_sum(parts)?;
    let offsets = d.offsets();
    let mut used = vec![0usize; d.len()];
    let mut out = Vec::with_capacity(parts.len());
    for p in parts {
        let mut slots = Vec::with_capacity(p.total());
        for (a, &k) in p.0.iter().enumerate() {
            for i in 0..k {
                slots.push(offsets[a] + used[a] + i);
            }
            used[a] += k;
        }
        out.push(slots);
    }
    Ok(out)
}

/// Exact rational coordinates over the slots of a dimension vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<Q>);

impl Weight {
    pub fn zero(n: usize) -> Self {
        Weight(vec![Q::zero(); n])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Weight(v.iter().map(|&x| qi(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Q) -> Weight {
        Weight(self.0.iter().map(|x| x * c).collect())
    }

    /// `⟨1_d, self⟩`.
    pub fn total(&self) -> Q {
        self.0.iter().sum()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    /// Coordinates non-decreasing within each vertex.
    pub fn is_dominant(&self, d: &DimVec) -> bool {
        let mut pos = 0;
        for &k in &d.0 {
            if self.0[pos..pos + k].windows(2).any(|w| w[0] > w[1]) {
                return false;
            }
            pos += k;
        }
        true
    }

    /// Constant on the slots of each vertex.
    pub fn is_weyl_invariant(&self, d: &DimVec) -> bool {
        let mut pos = 0;
        for &k in &d.0 {
            if self.0[pos..pos + k].windows(2).any(|w| w[0] != w[1]) {
                return false;
            }
            pos += k;
        }
        true
    }

    /// Coordinates at the given slots.
    pub fn restrict(&self, slots: &[usize]) -> Weight {
        Weight(slots.iter().map(|&s| self.0[s].clone()).collect())
    }

    /// Writes `local` into the given slots of a weight of length `n`.
    pub fn embed(local: &Weight, slots: &[usize], n: usize) -> Weight {
        let mut w = Weight::zero(n);
        for (x, &s) in local.0.iter().zip(slots) {
            w.0[s] = x.clone();
        }
        w
    }

    /// Per-vertex sort into dominant order.
    pub fn dominant_sorted(&self, d: &DimVec) -> Weight {
        let mut out = self.0.clone();
        let mut pos = 0;
        for &k in &d.0 {
            out[pos..pos + k].sort();
            pos += k;
        }
        Weight(out)
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        assert_eq!(self.len(), o.len(), "weight length mismatch");
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        assert_eq!(self.len(), o.len(), "weight length mismatch");
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

/// Weight plus an infinitesimal weight: `base + ε·inf` with `ε → 0⁺`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenericWeight {
    pub base: Weight,
    pub inf: Weight,
}

impl GenericWeight {
    pub fn exact(base: Weight) -> Self {
        let n = base.len();
        Self { base, inf: Weight::zero(n) }
    }

    /// `base + μ σ_d`.
    pub fn shifted(base: &Weight, mu: &crate::rational::GenericReal) -> Self {
        let n = base.len();
        Self {
            base: Weight(base.0.iter().map(|x| x + &mu.q).collect()),
            inf: Weight(vec![mu.eps_q(); n]),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.inf.is_zero()
    }
}

/// Integer value per slot.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cocharacter(pub Vec<i64>);

impl Cocharacter {
    pub fn pair(&self, w: &Weight) -> Q {
        assert_eq!(self.0.len(), w.len(), "pairing length mismatch");
        self.0.iter().zip(&w.0).filter(|(l, _)| **l != 0).map(|(&l, x)| x * qi(l)).sum()
    }

    pub fn constant(n: usize, c: i64) -> Self {
        Cocharacter(vec![c; n])
    }
}

/// Multiset of weights with positive multiplicities, kept in sorted order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightMultiset {
    entries: BTreeMap<Weight, usize>,
    dim: usize,
}

impl WeightMultiset {
    pub fn new(dim: usize) -> Self {
        Self { entries: BTreeMap::new(), dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn insert(&mut self, w: Weight, mult: usize) {
        assert_eq!(w.len(), self.dim, "weight length mismatch");
        if mult > 0 {
            *self.entries.entry(w).or_insert(0) += mult;
        }
    }

    pub fn extend(&mut self, other: &WeightMultiset) {
        for (w, &m) in &other.entries {
            self.insert(w.clone(), m);
        }
    }

    /// `(weight, multiplicity)` pairs in sorted order.
    pub fn iter(&self) -> impl Iterator<Item = (&Weight, usize)> {
        self.entries.iter().map(|(w, &m)| (w, m))
    }

    pub fn multiplicity(&self, w: &Weight) -> usize {
        self.entries.get(w).copied().unwrap_or(0)
    }

    /// Total number of weights counted with multiplicity.
    pub fn count(&self) -> usize {
        self.entries.values().sum()
    }

    /// Sum of all weights with multiplicity.
    pub fn sum(&self) -> Weight {
        self.filtered_sum(|_| true)
    }

    /// Sum of the weights with `⟨λ, β⟩ > 0`.
    pub fn positive_sum(&self, lambda: &Cocharacter) -> Weight {
        self.filtered_sum(|w| lambda.pair(w).is_positive())
    }

    /// Sum of the weights with `⟨λ, β⟩ < 0`.
    pub fn negative_sum(&self, lambda: &Cocharacter) -> Weight {
        self.filtered_sum(|w| lambda.pair(w).is_negative())
    }

    /// Sum of the weights with `⟨λ, β⟩ = 0`.
    pub fn fixed_sum(&self, lambda: &Cocharacter) -> Weight {
        self.filtered_sum(|w| lambda.pair(w).is_zero())
    }

    fn filtered_sum(&self, keep: impl Fn(&Weight) -> bool) -> Weight {
        let mut acc = Weight::zero(self.dim);
        for (w, &m) in &self.entries {
            if keep(w) {
                let mq = qi(m as i64);
                for (a, x) in acc.0.iter_mut().zip(&w.0) {
                    *a += x * &mq;
                }
            }
        }
        acc
    }

    /// Closed under negation as a multiset.
    pub fn is_negation_closed(&self) -> bool {
        self.entries.iter().all(|(w, &m)| self.multiplicity(&-w) == m)
    }
}

/// `ρ`: slot `(a, k)` has coordinate `(2k − 1 − d^a)/2` for 1-based `k`.
pub fn rho(d: &DimVec) -> Weight {
    Weight(
        d.slots()
            .into_iter()
            .map(|(a, i)| Q::new(((2 * (i + 1)) as i64 - 1 - d.0[a] as i64).into(), 2.into()))
            .collect(),
    )
}

/// `(τ_d, σ_d)`.
pub fn tau_sigma(d: &DimVec) -> Result<(Weight, Weight)> {
    let n = d.total();
    if n == 0 {
        return invalid("tau is undefined for the zero dimension vector");
    }
    let sigma = Weight(vec![qi(1); n]);
    let tau = Weight(vec![Q::new(1.into(), (n as i64).into()); n]);
    Ok((tau, sigma))
}

/// Representation space whose torus weights are requested.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    /// `R(d)`.
    R,
    /// `R(d)` plus the framing weights `{β^a_i}`.
    Rf,
    /// `R(d)` of the doubled quiver.
    Rbar,
    /// Adjoint `g(d)`, including `d̄` zero weights.
    G,
    /// The added half-edge space of a companion construction.
    U,
}

fn edge_weights(d: &DimVec, offsets: &[usize], framing: Option<usize>, edges: &[(usize, usize)], out: &mut WeightMultiset) {
    let n = d.total();
    for &(s, t) in edges {
        let src: Vec<Option<usize>> = if Some(s) == framing {
            vec![None]
        } else {
            (0..d.0[s]).map(|i| Some(offsets[s] + i)).collect()
        };
        let tgt: Vec<usize> = (0..d.0[t]).map(|j| offsets[t] + j).collect();
        for &i in &src {
            for &j in &tgt {
                let mut w = Weight::zero(n);
                w.0[j] += qi(1);
                if let Some(i) = i {
                    w.0[i] -= qi(1);
                }
                out.insert(w, 1);
            }
        }
    }
}

/// Torus weights of a representation space; an edge `a → b` contributes `β^b_j − β^a_i`.
pub fn rep_weights(q: &Quiver, d: &DimVec, space: Space, u: Option<&USpec>) -> Result<WeightMultiset> {
    d.checked_for(q)?;
    let n = d.total();
    let offsets = d.offsets();
    let mut out = WeightMultiset::new(n);
    match space {
        Space::R => edge_weights(d, &offsets, q.framing(), q.edges(), &mut out),
        Space::Rf => {
            edge_weights(d, &offsets, q.framing(), q.edges(), &mut out);
            for s in 0..n {
                let mut w = Weight::zero(n);
                w.0[s] = qi(1);
                out.insert(w, 1);
            }
        }
        Space::Rbar => {
            let dq = q.double();
            edge_weights(d, &offsets, dq.framing(), dq.edges(), &mut out);
        }
        Space::G => {
            for (a, &k) in d.0.iter().enumerate() {
                for i in 0..k {
                    for j in 0..k {
                        let mut w = Weight::zero(n);
                        w.0[offsets[a] + i] += qi(1);
                        w.0[offsets[a] + j] -= qi(1);
                        out.insert(w, 1);
                    }
                }
            }
        }
        Space::U => {
            let Some(u) = u else {
                return invalid("the U space needs a U-spec");
            };
            edge_weights(d, &offsets, None, &u.edges, &mut out);
        }
    }
    Ok(out)
}

/// Canonical antidominant cocharacter of an ordered partition: block `i` (1-based) gets `k − i`.
pub fn block_cocharacter(parts: &[DimVec]) -> Result<Cocharacter> {
    let d = partition_sum(parts)?;
    let k = parts.len() as i64;
    let mut vals = vec![0i64; d.total()];
    for (b, slots) in block_slots(parts)?.iter().enumerate() {
        for &s in slots {
            vals[s] = k - 1 - b as i64;
        }
    }
    Ok(Cocharacter(vals))
}

/// Width `n_λ = ⟨λ, R(d)^{λ>0}⟩ − ⟨λ, g(d)^{λ>0}⟩`.
pub fn n_lambda(q: &Quiver, d: &DimVec, lambda: &Cocharacter) -> Result<Q> {
    if !q.is_symmetric() {
        return precondition("the width is defined for symmetric quivers");
    }
    if lambda.0.len() != d.total() {
        return invalid("cocharacter length differs from the number of slots");
    }
    let r = rep_weights(q, d, Space::R, None)?;
    let g = rep_weights(q, d, Space::G, None)?;
    Ok(lambda.pair(&r.positive_sum(lambda)) - lambda.pair(&g.positive_sum(lambda)))
}

/// Splits a blockwise Weyl-invariant weight into block-local pieces.
pub(crate) fn split_blocks(total: &Weight, parts: &[DimVec], what: &str) -> Result<Vec<Weight>> {
    let slots = block_slots(parts)?;
    let mut out = Vec::with_capacity(parts.len());
    for (p, s) in parts.iter().zip(&slots) {
        let local = total.restrict(s);
        if !local.is_weyl_invariant(p) {
            return precondition(format!("{what} is not Weyl-invariant on every block"));
        }
        out.push(local);
    }
    Ok(out)
}

/// `θ_i` with `Σ θ_i = −½ R(d)^{λ>0} + ½ g(d)^{λ>0}`, as block-local weights.
pub fn theta_weights(q: &Quiver, parts: &[DimVec]) -> Result<Vec<Weight>> {
    if !q.is_symmetric() {
        return precondition("theta weights are defined for symmetric quivers");
    }
    let d = partition_sum(parts)?;
    let lambda = block_cocharacter(parts)?;
    let r = rep_weights(q, &d, Space::R, None)?;
    let g = rep_weights(q, &d, Space::G, None)?;
    let half = Q::new(1.into(), 2.into());
    let total = &r.positive_sum(&lambda).scale(&-half.clone()) + &g.positive_sum(&lambda).scale(&half);
    split_blocks(&total, parts, "theta")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;

    #[test]
    fn rho_values() {
        assert_eq!(rho(&DimVec(vec![1])), Weight::from_ints(&[0]));
        assert_eq!(rho(&DimVec(vec![2])), Weight(vec![qr(-1, 2), qr(1, 2)]));
        assert_eq!(rho(&DimVec(vec![3])), Weight::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn tau_values() {
        let (t, s) = tau_sigma(&DimVec(vec![1, 2])).unwrap();
        assert_eq!(t, Weight(vec![qr(1, 3); 3]));
        assert_eq!(s, Weight::from_ints(&[1, 1, 1]));
        assert!(tau_sigma(&DimVec(vec![0])).is_err());
    }

    #[test]
    fn three_loop_r_weights() {
        let r = rep_weights(&Quiver::loops(3), &DimVec(vec![2]), Space::R, None).unwrap();
        assert_eq!(r.multiplicity(&Weight::from_ints(&[0, 0])), 6);
        assert_eq!(r.multiplicity(&Weight::from_ints(&[1, -1])), 3);
        assert_eq!(r.multiplicity(&Weight::from_ints(&[-1, 1])), 3);
        assert!(r.is_negation_closed());
    }

    #[test]
    fn a2_framed_weights() {
        let r = rep_weights(&Quiver::a2(), &DimVec(vec![1, 1]), Space::Rf, None).unwrap();
        assert_eq!(r.count(), 3);
        assert_eq!(r.multiplicity(&Weight::from_ints(&[-1, 1])), 1);
        assert_eq!(r.multiplicity(&Weight::from_ints(&[1, 0])), 1);
        assert_eq!(r.multiplicity(&Weight::from_ints(&[0, 1])), 1);
        let framed = Quiver::a2().frame(1).unwrap();
        assert_eq!(rep_weights(&framed, &DimVec(vec![1, 1]), Space::R, None).unwrap(), r);
    }

    #[test]
    fn block_cocharacters() {
        let one = DimVec(vec![1]);
        assert_eq!(block_cocharacter(&[one.clone(), one.clone()]).unwrap(), Cocharacter(vec![1, 0]));
        assert_eq!(block_cocharacter(&[DimVec(vec![2])]).unwrap(), Cocharacter(vec![0, 0]));
        let l = block_cocharacter(&[DimVec(vec![1, 1]), DimVec(vec![1, 0])]).unwrap();
        assert_eq!(l, Cocharacter(vec![1, 0, 1]));
        assert!(block_cocharacter(&[]).is_err());
        assert!(block_cocharacter(&[DimVec(vec![0])]).is_err());
    }

    #[test]
    fn widths() {
        let lam = Cocharacter(vec![1, 0]);
        let d = DimVec(vec![2]);
        assert_eq!(n_lambda(&Quiver::loops(3), &d, &lam).unwrap(), qi(2));
        for g in 1..5 {
            let t = Quiver::loops(g).triple();
            assert_eq!(n_lambda(&t, &d, &lam).unwrap(), qi(2 * g as i64));
        }
        assert_eq!(n_lambda(&Quiver::loops(3), &d, &Cocharacter(vec![1, 1])).unwrap(), qi(0));
        assert!(n_lambda(&Quiver::a2(), &DimVec(vec![1, 1]), &Cocharacter(vec![1, 0])).is_err());
    }

    #[test]
    fn theta_three_loop() {
        let one = DimVec(vec![1]);
        let th = theta_weights(&Quiver::loops(3), &[one.clone(), one]).unwrap();
        assert_eq!(th, vec![Weight::from_ints(&[-1]), Weight::from_ints(&[1])]);
        let th = theta_weights(&Quiver::loops(3), &[DimVec(vec![3])]).unwrap();
        assert!(th[0].is_zero());
    }
}
