//! Numeric structure reports for preprojective moduli of a quiver `Q°`.

use crate::error::{internal, invalid, Result};
use crate::lattice::{rep_weights, DimVec, Space};
use crate::quiver::Quiver;
use crate::rational::{gcd_i64, qr, Q};

/// Coprimality gate with the sub-totals that would admit an integral slope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportGate {
    pub gate: bool,
    /// `(d̄′, v′)` with `0 < d̄′ < d̄` and `v′ = v d̄′ / d̄ ∈ ℤ`.
    pub witnesses: Vec<(usize, Q)>,
}

/// `gcd(v, d̄) = 1` together with its witnesses.
pub fn support_gate(dbar: usize, v: i64) -> Result<SupportGate> {
    if dbar == 0 {
        return invalid("the total dimension must be positive");
    }
    let witnesses = (1..dbar)
        .map(|dp| (dp, qr(v * dp as i64, dbar as i64)))
        .filter(|(_, vp)| vp.is_integer())
        .collect();
    Ok(SupportGate {
        gate: gcd_i64(v, dbar as i64) == 1,
        witnesses,
    })
}

/// Dimension of the good moduli space, when asserted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DimP {
    Value(i64),
    NotAsserted { alpha: i64 },
}

fn gauge_alpha(q0: &Quiver) -> Result<i64> {
    if q0.framing().is_some() {
        return invalid("expected an unframed quiver");
    }
    q0.alpha_min().ok_or_else(|| crate::Error::Invalid("quiver has no vertices".into()))
}

/// `α_{Q°} = min α_{a,b}`.
pub fn alpha_q(q0: &Quiver) -> Result<i64> {
    gauge_alpha(q0)
}

/// `2 + Σ_{a,b} d^a d^b α_{a,b}` when `α_{Q°} ≥ 2`.
pub fn dim_p(q0: &Quiver, d: &DimVec) -> Result<DimP> {
    let alpha = gauge_alpha(q0)?;
    d.checked_for(q0)?;
    if alpha < 2 {
        return Ok(DimP::NotAsserted { alpha });
    }
    let n = q0.gauge_count();
    let mut sum = 2i64;
    for a in 0..n {
        for b in 0..n {
            sum += (d.0[a] * d.0[b]) as i64 * q0.alpha_idx(a, b);
        }
    }
    let rbar = rep_weights(q0, d, Space::Rbar, None)?.count() as i64;
    let g = rep_weights(q0, d, Space::G, None)?.count() as i64;
    if 2 + rbar - 2 * g != sum {
        return internal(format!("dimension formulas disagree: {sum} vs {}", 2 + rbar - 2 * g));
    }
    Ok(DimP::Value(sum))
}

/// Sufficient-condition flags; `false` means no criterion applies.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StructureFlags {
    pub xy_gorenstein: bool,
    pub p_classical_normal: bool,
    pub p_gorenstein: bool,
    pub serre_trivial_applicable: bool,
    pub indecomposable_applicable: bool,
    pub regular_proper_applicable: bool,
}

fn two_loop_two(q0: &Quiver, d: &DimVec) -> bool {
    q0.gauge_count() == 1 && q0.edges().len() == 2 && d.total() == 2
}

/// Gorenstein and normality flags.
pub fn gorenstein_flags(q0: &Quiver, d: &DimVec) -> Result<StructureFlags> {
    let alpha = gauge_alpha(q0)?;
    d.checked_for(q0)?;
    Ok(StructureFlags {
        xy_gorenstein: alpha >= 1,
        p_classical_normal: alpha >= 2,
        p_gorenstein: alpha >= 3 || (alpha == 2 && d.total() >= 3) || two_loop_two(q0, d),
        ..StructureFlags::default()
    })
}

/// Combined report for `(Q°, d, v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub alpha: i64,
    /// All `α_{a,b}` even.
    pub parity: bool,
    pub gate: SupportGate,
    pub dim_p: DimP,
    pub flags: StructureFlags,
}

/// Applicability of the Serre-triviality, indecomposability and regularity statements.
pub fn serre_report(q0: &Quiver, d: &DimVec, v: i64) -> Result<StructureReport> {
    let alpha = gauge_alpha(q0)?;
    let mut flags = gorenstein_flags(q0, d)?;
    let gate = support_gate(d.total(), v)?;
    let parity = q0.assum1();
    flags.serre_trivial_applicable = parity && alpha >= 2 && flags.p_gorenstein && gate.gate;
    flags.indecomposable_applicable = parity && flags.p_classical_normal && gate.gate;
    flags.regular_proper_applicable = alpha >= 2 && gate.gate;
    Ok(StructureReport {
        alpha,
        parity,
        gate,
        dim_p: dim_p(q0, d)?,
        flags,
    })
}

/// Codimension of the `λ ≥ 0` locus for a split `d = d_1 + d_2`, with two candidate lower bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodimBound {
    /// `Σ d_1^a d_2^b α_{a,b} + Σ d_1^a d_2^a`.
    pub codim: i64,
    /// `d̄_1 d̄_2 α_{Q°}`; always a lower bound.
    pub linear: i64,
    /// `2 d̄_1 d̄_2 α_{Q°}`; fails for the 2-loop quiver with `d_1 = d_2 = 1`.
    pub doubled: i64,
}

/// Codimension and lower bounds for a two-part split.
pub fn codim_bound(q0: &Quiver, d1: &DimVec, d2: &DimVec) -> Result<CodimBound> {
    let alpha = gauge_alpha(q0)?;
    d1.checked_for(q0)?;
    d2.checked_for(q0)?;
    let n = q0.gauge_count();
    let mut lhs = 0i64;
    for a in 0..n {
        lhs += (d1.0[a] * d2.0[a]) as i64;
        for b in 0..n {
            lhs += (d1.0[a] * d2.0[b]) as i64 * q0.alpha_idx(a, b);
        }
    }
    let linear = (d1.total() * d2.total()) as i64 * alpha;
    Ok(CodimBound {
        codim: lhs,
        linear,
        doubled: 2 * linear,
    })
}
