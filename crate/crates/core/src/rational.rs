//! Exact rationals and generic (infinitesimally perturbed) reals.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{invalid, Error, Result};

/// Exact rational number.
pub type Q = BigRational;

/// Integer as a rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `n / d` as a reduced rational.
pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let t = s.trim();
    if t.contains('/') {
        let (n, d) = t.split_once('/').unwrap();
        let n = BigInt::from_str(n.trim()).map_err(|_| Error::Invalid(format!("bad rational {s:?}")))?;
        let d = BigInt::from_str(d.trim()).map_err(|_| Error::Invalid(format!("bad rational {s:?}")))?;
        if d.is_zero() {
            return invalid(format!("zero denominator in {s:?}"));
        }
        Ok(Q::new(n, d))
    } else {
        BigInt::from_str(t)
            .map(Q::from_integer)
            .map_err(|_| Error::Invalid(format!("bad rational {s:?}")))
    }
}

/// Renders as `"p"` or `"p/q"`.
pub fn fmt_q(q: &Q) -> String {
    q.to_string()
}

/// True when `q` is an integer.
pub fn is_integer(q: &Q) -> bool {
    q.is_integer()
}

/// Integer value of an integral rational.
pub fn to_i64(q: &Q) -> Option<i64> {
    if q.is_integer() {
        q.to_integer().to_i64()
    } else {
        None
    }
}

/// Fractional part in `[0, 1)`.
pub fn frac(q: &Q) -> Q {
    q - q.floor()
}

/// Greatest common divisor of two machine integers (non-negative result).
pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Positive rational `c` with `v / c` a primitive integer vector; `None` for the zero vector.
pub fn content(v: &[Q]) -> Option<Q> {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    let mut any = false;
    for x in v.iter().filter(|x| !x.is_zero()) {
        any = true;
        num = num.gcd(x.numer());
        den = den.lcm(x.denom());
    }
    any.then(|| Q::new(num, den))
}

/// A real number `q + eps * 0⁺` with `eps ∈ {-1, 0, 1}`.
///
/// Ordering is lexicographic on `(q, eps)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenericReal {
    pub q: Q,
    pub eps: i8,
}

impl GenericReal {
    pub fn new(q: Q, eps: i8) -> Result<Self> {
        if !(-1..=1).contains(&eps) {
            return invalid(format!("perturbation must be -1, 0 or 1, got {eps}"));
        }
        Ok(Self { q, eps })
    }

    /// Exact rational with no perturbation.
    pub fn exact(q: Q) -> Self {
        Self { q, eps: 0 }
    }

    /// Shift by a rational.
    pub fn shift(&self, by: &Q) -> Self {
        Self {
            q: &self.q + by,
            eps: self.eps,
        }
    }

    /// Multiply by a positive rational.
    pub fn scale_pos(&self, by: &Q) -> Self {
        debug_assert!(by.is_positive());
        Self {
            q: &self.q * by,
            eps: self.eps,
        }
    }

    /// Perturbation as a rational coefficient.
    pub fn eps_q(&self) -> Q {
        qi(self.eps as i64)
    }
}

impl fmt::Display for GenericReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.eps {
            0 => write!(f, "{}", self.q),
            1 => write!(f, "{}:+1", self.q),
            _ => write!(f, "{}:-1", self.q),
        }
    }
}

impl FromStr for GenericReal {
    type Err = Error;

    /// Parses `"q"`, `"q:+1"` or `"q:-1"`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().split_once(':') {
            None => Ok(Self::exact(parse_q(s)?)),
            Some((q, e)) => {
                let eps = match e.trim() {
                    "+1" | "1" => 1,
                    "-1" => -1,
                    "0" => 0,
                    other => return invalid(format!("bad perturbation {other:?}")),
                };
                Ok(Self { q: parse_q(q)?, eps })
            }
        }
    }
}

/// `v + e * ε` for an infinitesimal `ε > 0`, used as right-hand sides of exact LPs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perturbed {
    pub v: Q,
    pub e: Q,
}

impl Perturbed {
    pub fn new(v: Q, e: Q) -> Self {
        Self { v, e }
    }
}

/// Ordered vector space over `Q` used as LP right-hand side.
pub trait LpScalar: Clone + Ord + fmt::Debug {
    fn lp_zero() -> Self;
    fn from_q(q: &Q) -> Self;
    fn lp_is_zero(&self) -> bool;
    fn lp_add(&self, o: &Self) -> Self;
    fn lp_sub(&self, o: &Self) -> Self;
    fn mul_q(&self, q: &Q) -> Self;
    fn lp_is_negative(&self) -> bool {
        *self < Self::lp_zero()
    }
}

impl LpScalar for Q {
    fn lp_zero() -> Self {
        Zero::zero()
    }
    fn from_q(q: &Q) -> Self {
        q.clone()
    }
    fn lp_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn lp_add(&self, o: &Self) -> Self {
        self + o
    }
    fn lp_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_q(&self, q: &Q) -> Self {
        self * q
    }
}

impl LpScalar for Perturbed {
    fn lp_zero() -> Self {
        Self::new(Zero::zero(), Zero::zero())
    }
    fn from_q(q: &Q) -> Self {
        Self::new(q.clone(), Zero::zero())
    }
    fn lp_is_zero(&self) -> bool {
        self.v.is_zero() && self.e.is_zero()
    }
    fn lp_add(&self, o: &Self) -> Self {
        Self::new(&self.v + &o.v, &self.e + &o.e)
    }
    fn lp_sub(&self, o: &Self) -> Self {
        Self::new(&self.v - &o.v, &self.e - &o.e)
    }
    fn mul_q(&self, q: &Q) -> Self {
        Self::new(&self.v * q, &self.e * q)
    }
}

impl Add for &Perturbed {
    type Output = Perturbed;
    fn add(self, o: Self) -> Perturbed {
        LpScalar::lp_add(self, o)
    }
}

impl Sub for &Perturbed {
    type Output = Perturbed;
    fn sub(self, o: Self) -> Perturbed {
        LpScalar::lp_sub(self, o)
    }
}

impl Neg for &Perturbed {
    type Output = Perturbed;
    fn neg(self) -> Perturbed {
        Perturbed::new(-&self.v, -&self.e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "-1/2", "7", "3/4"] {
            assert_eq!(fmt_q(&parse_q(s).unwrap()), s);
        }
        assert_eq!(parse_q("2/4").unwrap(), qr(1, 2));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn generic_real_order() {
        let a: GenericReal = "0:-1".parse().unwrap();
        let b: GenericReal = "0".parse().unwrap();
        let c: GenericReal = "0:+1".parse().unwrap();
        let d: GenericReal = "-1/3".parse().unwrap();
        assert!(d < a && a < b && b < c);
        assert_eq!(a.to_string(), "0:-1");
        assert_eq!(c.to_string(), "0:+1");
    }

    #[test]
    fn content_of_vectors() {
        assert_eq!(content(&[qr(1, 2), qr(3, 4)]), Some(qr(1, 4)));
        assert_eq!(content(&[qi(0), qi(0)]), None);
        assert_eq!(content(&[qi(-6), qi(4)]), Some(qi(2)));
    }

    #[test]
    fn perturbed_order() {
        let a = Perturbed::new(qi(0), qi(1));
        let b = Perturbed::new(qr(1, 100), qi(-5));
        assert!(Perturbed::lp_zero() < a && a < b);
    }
}
