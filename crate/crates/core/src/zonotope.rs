//! Translated Minkowski sums of segments: membership, r-invariant, facets.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{internal, invalid, precondition, Error, Result};
use crate::lattice::{rep_weights, Cocharacter, DimVec, GenericWeight, Space, Weight, WeightMultiset};
use crate::linalg::{independent_subset, minimal_integral_preimage, null_space, rank, solve_in_span};
use crate::lp::{feasible, minimize, LpOutcome};
use crate::quiver::Quiver;
use crate::rational::{content, qi, LpScalar, Perturbed, Q};

/// The segment `[0, len · dir]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub dir: Weight,
    pub len: Q,
}

/// `offset + Σ [0, len_j · dir_j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Zonotope {
    pub offset: Weight,
    pub segments: Vec<Segment>,
}

/// Facet of a zonotope within its affine span: `⟨normal, x⟩ ≤ support`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Cocharacter,
    pub support: Q,
}

/// Limits on facet enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FacetCap {
    pub max_dim: usize,
    pub max_dirs: usize,
}

impl Default for FacetCap {
    fn default() -> Self {
        Self { max_dim: 8, max_dirs: 24 }
    }
}

static GLOBAL_DIM: AtomicUsize = AtomicUsize::new(8);
static GLOBAL_DIRS: AtomicUsize = AtomicUsize::new(24);

impl FacetCap {
    /// Cap used by [`Zonotope::facets`].
    pub fn global() -> Self {
        Self {
            max_dim: GLOBAL_DIM.load(AtomicOrdering::Relaxed),
            max_dirs: GLOBAL_DIRS.load(AtomicOrdering::Relaxed),
        }
    }

    /// Replaces the cap used by [`Zonotope::facets`].
    pub fn set_global(self) {
        GLOBAL_DIM.store(self.max_dim, AtomicOrdering::Relaxed);
        GLOBAL_DIRS.store(self.max_dirs, AtomicOrdering::Relaxed);
    }

    /// Parses `"dim,dirs"`.
    pub fn parse(s: &str) -> Result<Self> {
        let parsed = s
            .split_once(',')
            .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)));
        match parsed {
            Some((max_dim, max_dirs)) => Ok(Self { max_dim, max_dirs }),
            None => invalid(format!("facet cap must be \"dim,dirs\", got {s:?}")),
        }
    }
}

/// Segments merged by line: `[-neg, pos] · dir` with `dir` primitive integral and
/// first nonzero coordinate positive.
#[derive(Clone, Debug)]
pub(crate) struct Line {
    pub dir: Vec<Q>,
    pub neg: Q,
    pub pos: Q,
}

fn canonical_line(v: &[Q]) -> Option<(Vec<Q>, Q)> {
    let c = content(v)?;
    let first_neg = v.iter().find(|x| !x.is_zero())?.is_negative();
    let c = if first_neg { -c } else { c };
    Some((v.iter().map(|x| x / &c).collect(), c))
}

impl Zonotope {
    /// `offset + ½ Σ_β mult(β) [0, β]`, zero weights dropped.
    pub fn half_sum(offset: Weight, weights: &WeightMultiset) -> Self {
        let mut z = Self { offset, segments: Vec::new() };
        z.add_segments(weights, &Q::new(1.into(), 2.into()));
        z
    }

    /// Adds `coef · mult(β) [0, β]` for every nonzero weight.
    pub fn add_segments(&mut self, weights: &WeightMultiset, coef: &Q) {
        for (w, m) in weights.iter() {
            if w.is_zero() {
                continue;
            }
            self.segments.push(Segment {
                dir: w.clone(),
                len: coef * qi(m as i64),
            });
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.offset.len()
    }

    pub(crate) fn lines(&self) -> Vec<Line> {
        let mut map: BTreeMap<Vec<Q>, (Q, Q)> = BTreeMap::new();
        for s in &self.segments {
            let Some((dir, c)) = canonical_line(&s.dir.0) else { continue };
            if s.len.is_zero() {
                continue;
            }
            let entry = map.entry(dir).or_insert_with(|| (Q::zero(), Q::zero()));
            let l = &s.len * &c;
            if l.is_positive() {
                entry.1 += l;
            } else {
                entry.0 -= l;
            }
        }
        map.into_iter().map(|(dir, (neg, pos))| Line { dir, neg, pos }).collect()
    }

    /// Dimension of the linear span of the segments.
    pub fn span_dim(&self) -> usize {
        rank(&self.lines().into_iter().map(|l| l.dir).collect::<Vec<_>>())
    }

    /// Per-coordinate bounds `(lo, hi)` of the zonotope scaled about its offset.
    pub fn coordinate_bounds(&self, scale: &Q) -> Vec<(Q, Q)> {
        let lines = self.lines();
        (0..self.ambient_dim())
            .map(|s| {
                let mut lo = self.offset.0[s].clone();
                let mut hi = lo.clone();
                for l in &lines {
                    let a = &l.dir[s];
                    let (p, n) = (a * &l.pos * scale, -(a * &l.neg) * scale);
                    if p > n {
                        hi += p;
                        lo += n;
                    } else {
                        hi += n;
                        lo += p;
                    }
                }
                (lo, hi)
            })
            .collect()
    }

    /// Bounds of `⟨1, x⟩` over the zonotope scaled about its offset.
    pub fn total_bounds(&self, scale: &Q) -> (Q, Q) {
        let mut lo = self.offset.total();
        let mut hi = lo.clone();
        for l in self.lines() {
            let t: Q = l.dir.iter().sum();
            let (p, n) = (&t * &l.pos * scale, -(&t * &l.neg) * scale);
            if p > n {
                hi += p;
                lo += n;
            } else {
                hi += n;
                lo += p;
            }
        }
        (lo, hi)
    }

    fn membership_lp<R: LpScalar>(&self, rhs: Vec<R>, scale: &Q) -> bool {
        let lines = self.lines();
        let n = self.ambient_dim();
        let l = lines.len();
        let mut a = Vec::with_capacity(n + l);
        let mut b = Vec::with_capacity(n + l);
        for (s, r) in rhs.into_iter().enumerate() {
            let mut row = vec![Q::zero(); 2 * l];
            let mut shift = Q::zero();
            for (j, line) in lines.iter().enumerate() {
                row[j] = line.dir[s].clone();
                shift += &line.dir[s] * &line.neg;
            }
            a.push(row);
            b.push(r.lp_add(&R::from_q(&(shift * scale))));
        }
        for (j, line) in lines.iter().enumerate() {
            let mut row = vec![Q::zero(); 2 * l];
            row[j] = Q::one();
            row[l + j] = Q::one();
            a.push(row);
            b.push(R::from_q(&((&line.neg + &line.pos) * scale)));
        }
        feasible(&a, &b)
    }

    /// `x ∈ offset + scale · (Z − offset)`, decided by exact LP.
    pub fn contains(&self, x: &Weight, scale: &Q) -> Result<bool> {
        self.check_point(x, scale)?;
        let rhs: Vec<Q> = (x - &self.offset).0;
        Ok(self.membership_lp(rhs, scale))
    }

    /// Membership of an infinitesimally perturbed point.
    pub fn contains_generic(&self, x: &GenericWeight, scale: &Q) -> Result<bool> {
        self.check_point(&x.base, scale)?;
        if x.inf.len() != x.base.len() {
            return invalid("perturbation length mismatch");
        }
        if x.is_exact() {
            return self.contains(&x.base, scale);
        }
        let rhs: Vec<Perturbed> = x
            .base
            .0
            .iter()
            .zip(&self.offset.0)
            .zip(&x.inf.0)
            .map(|((v, o), e)| Perturbed::new(v - o, e.clone()))
            .collect();
        Ok(self.membership_lp(rhs, scale))
    }

    fn check_point(&self, x: &Weight, scale: &Q) -> Result<()> {
        if scale.is_negative() {
            return invalid("negative scale");
        }
        if x.len() != self.ambient_dim() {
            return invalid(format!("point has {} coordinates, expected {}", x.len(), self.ambient_dim()));
        }
        Ok(())
    }

    /// Least `r ≥ 0` with `x − offset ∈ 2r (Z − offset)`.
    pub fn r_invariant(&self, x: &Weight) -> Result<Q> {
        self.check_point(x, &Q::zero())?;
        let lines = self.lines();
        let n = self.ambient_dim();
        let l = lines.len();
        // variables: z_0..z_{l-1}, r, s_0..s_{l-1}
        let width = 2 * l + 1;
        let two = qi(2);
        let mut a = Vec::with_capacity(n + l);
        let mut b = Vec::with_capacity(n + l);
        for s in 0..n {
            let mut row = vec![Q::zero(); width];
            let mut rcoef = Q::zero();
            for (j, line) in lines.iter().enumerate() {
                row[j] = line.dir[s].clone();
                rcoef -= &two * &line.neg * &line.dir[s];
            }
            row[l] = rcoef;
            a.push(row);
            b.push(&x.0[s] - &self.offset.0[s]);
        }
        for (j, line) in lines.iter().enumerate() {
            let mut row = vec![Q::zero(); width];
            row[j] = Q::one();
            row[l] = -(&two * (&line.neg + &line.pos));
            row[l + 1 + j] = Q::one();
            a.push(row);
            b.push(Q::zero());
        }
        let mut c = vec![Q::zero(); width];
        c[l] = Q::one();
        match minimize(&a, &b, &c) {
            LpOutcome::Optimal { value, .. } => Ok(value),
            LpOutcome::Infeasible => precondition("point is outside the cone spanned by the zonotope"),
            LpOutcome::Unbounded => internal("r-invariant LP is unbounded"),
        }
    }

    /// Whether `x − offset` lies in the linear span of the segments.
    pub fn in_span(&self, x: &Weight) -> bool {
        let lines = self.lines();
        let dirs: Vec<Vec<Q>> = lines.into_iter().map(|l| l.dir).collect();
        let basis: Vec<Vec<Q>> = independent_subset(&dirs).into_iter().map(|i| dirs[i].clone()).collect();
        solve_in_span(&basis, &(x - &self.offset).0).is_some()
    }

    /// Facets within the affine span, with the global cap.
    pub fn facets(&self) -> Result<Vec<Facet>> {
        self.facets_with_cap(FacetCap::global())
    }

    /// Facets within the affine span: one pair per hyperplane spanned by generator directions.
    pub fn facets_with_cap(&self, cap: FacetCap) -> Result<Vec<Facet>> {
        let lines = self.lines();
        let dirs: Vec<Vec<Q>> = lines.iter().map(|l| l.dir.clone()).collect();
        let basis_idx = independent_subset(&dirs);
        let k = basis_idx.len();
        if k > cap.max_dim || dirs.len() > cap.max_dirs {
            return Err(Error::CapExceeded {
                dim: k,
                dirs: dirs.len(),
                max_dim: cap.max_dim,
                max_dirs: cap.max_dirs,
            });
        }
        if k == 0 {
            return Ok(Vec::new());
        }
        let basis: Vec<Vec<Q>> = basis_idx.iter().map(|&i| dirs[i].clone()).collect();
        let coords: Vec<Vec<Q>> = dirs
            .iter()
            .map(|v| solve_in_span(&basis, v).ok_or_else(|| Error::Internal("direction outside span".into())))
            .collect::<Result<_>>()?;
        let bt: Vec<Vec<BigInt>> = basis.iter().map(|v| v.iter().map(|x| x.to_integer()).collect()).collect();
        let mut seen: BTreeSet<Vec<BigInt>> = BTreeSet::new();
        let mut out = Vec::new();
        for subset in (0..dirs.len()).combinations(k - 1) {
            let rows: Vec<Vec<Q>> = subset.iter().map(|&i| coords[i].clone()).collect();
            if rank(&rows) != k - 1 {
                continue;
            }
            let ns = null_space(&rows, k);
            let f = &ns[0];
            for sign in [1i64, -1] {
                let fs: Vec<Q> = f.iter().map(|x| x * qi(sign)).collect();
                let lam = minimal_integral_preimage(&bt, &fs).ok_or_else(|| Error::Internal("hermite reduction failed".into()))?;
                let key: Vec<BigInt> = bt
                    .iter()
                    .map(|row| row.iter().zip(&lam).map(|(a, b)| a * b).sum())
                    .collect();
                if !seen.insert(key) {
                    continue;
                }
                let normal = Cocharacter(
                    lam.iter()
                        .map(|v| v.to_i64().ok_or_else(|| Error::Internal("facet normal overflow".into())))
                        .collect::<Result<_>>()?,
                );
                let support = support_value(&normal, &self.offset, &lines);
                out.push(Facet { normal, support });
            }
        }
        out.sort();
        Ok(out)
    }

    /// Support function `max ⟨λ, x⟩` over the zonotope.
    pub fn support(&self, lambda: &Cocharacter) -> Q {
        support_value(lambda, &self.offset, &self.lines())
    }

    /// Whether a point of the zonotope lies on a facet.
    pub fn on_boundary(&self, x: &Weight) -> Result<bool> {
        if !self.contains(x, &Q::one())? {
            return invalid("point is not in the zonotope");
        }
        Ok(self.facets()?.iter().any(|f| f.normal.pair(x) == f.support))
    }
}

fn support_value(lambda: &Cocharacter, offset: &Weight, lines: &[Line]) -> Q {
    let mut h = lambda.pair(offset);
    for l in lines {
        let t: Q = lambda.0.iter().zip(&l.dir).map(|(&a, x)| x * qi(a)).sum();
        if t.is_positive() {
            h += &t * &l.pos;
        } else {
            h -= &t * &l.neg;
        }
    }
    h
}

/// `𝐖(d) = ½ Σ_{β ∈ R(d)} [0, β]`.
pub fn w_polytope(q: &Quiver, d: &DimVec) -> Result<Zonotope> {
    let r = rep_weights(q, d, Space::R, None)?;
    Ok(Zonotope::half_sum(Weight::zero(d.total()), &r))
}

/// `𝐕(d) = 𝐖(d) + Σ_{β ∈ ℬ} [0, β]` with the framing weights `ℬ = {β^a_i}`.
pub fn v_polytope(q: &Quiver, d: &DimVec) -> Result<Zonotope> {
    let mut z = w_polytope(q, d)?;
    let mut b = WeightMultiset::new(d.total());
    for s in 0..d.total() {
        let mut w = Weight::zero(d.total());
        w.0[s] = qi(1);
        b.insert(w, 1);
    }
    z.add_segments(&b, &Q::one());
    Ok(z)
}

/// Maximal cut ratio for a very symmetric quiver with constant `a_const`:
/// `max_S ⟨1_S, x⟩ / (A |S| (n − |S|))` over per-vertex top sets `S`, clamped at 0,
/// with the tight sets (local slot indices) listed by increasing size.
pub fn cut_ratio(a_const: usize, d: &DimVec, x: &Weight) -> (Q, Vec<Vec<usize>>) {
    let n = d.total();
    let offsets = d.offsets();
    // per-vertex slots ordered by decreasing value
    let order: Vec<Vec<usize>> = d
        .0
        .iter()
        .enumerate()
        .map(|(a, &k)| {
            let mut idx: Vec<usize> = (offsets[a]..offsets[a] + k).collect();
            idx.sort_by(|&i, &j| x.0[j].cmp(&x.0[i]).then(j.cmp(&i)));
            idx
        })
        .collect();
    let mut best = Q::zero();
    let mut tight: Vec<Vec<usize>> = Vec::new();
    let ranges: Vec<std::ops::RangeInclusive<usize>> = d.0.iter().map(|&k| 0..=k).collect();
    for cut in ranges.into_iter().multi_cartesian_product() {
        let size: usize = cut.iter().sum();
        if size == 0 || size == n {
            continue;
        }
        let set: Vec<usize> = cut.iter().enumerate().flat_map(|(a, &c)| order[a][..c].iter().copied()).sorted().collect();
        let num: Q = set.iter().map(|&s| &x.0[s]).sum();
        let ratio = num / qi((a_const * size * (n - size)) as i64);
        if ratio > best {
            best = ratio;
            tight = vec![set];
        } else if ratio == best && best.is_positive() {
            tight.push(set);
        }
    }
    if a_const == 0 {
        return (Q::zero(), Vec::new());
    }
    tight.sort_by_key(|s| s.len());
    (best, tight)
}
