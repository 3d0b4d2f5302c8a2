//! Exact real numbers of the form `sign * coeff * sqrt(radicand)`.
//!
//! `radicand` is always squarefree and zero is stored as `(0, 0, 1)`, so
//! structural equality coincides with numeric equality. Only the operations
//! that triples of the form `(p, q, r)` with `p^2, q^2, r^2, pqr` integral
//! actually need are provided: products, same-radicand differences and exact
//! comparison.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest argument accepted by [`Surd::sqrt_of`]. Trial division runs up to
/// the cube root of the input, so this keeps extraction in the low millions of
/// divisions.
pub const MAX_SQRT_INPUT: u128 = 1_000_000_000_000_000_000_000;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SurdRepr", into = "SurdRepr")]
pub struct Surd {
    sign: i8,
    coeff: u64,
    radicand: u64,
}

#[derive(Serialize, Deserialize)]
struct SurdRepr {
    sign: i8,
    coeff: u64,
    radicand: u64,
}

impl TryFrom<SurdRepr> for Surd {
    type Error = Error;

    fn try_from(r: SurdRepr) -> Result<Self> {
        Surd::new(r.sign, r.coeff, r.radicand)
    }
}

impl From<Surd> for SurdRepr {
    fn from(s: Surd) -> Self {
        SurdRepr {
            sign: s.sign,
            coeff: s.coeff,
            radicand: s.radicand,
        }
    }
}

impl Surd {
    pub const ZERO: Surd = Surd {
        sign: 0,
        coeff: 0,
        radicand: 1,
    };
    pub const ONE: Surd = Surd {
        sign: 1,
        coeff: 1,
        radicand: 1,
    };

    /// Builds a surd from already-canonical parts, rejecting anything that is
    /// not in canonical form.
    pub fn new(sign: i8, coeff: u64, radicand: u64) -> Result<Self> {
        if !(-1..=1).contains(&sign) {
            return Err(Error::Parse(format!("sign must be -1, 0 or 1, got {sign}")));
        }
        if (sign == 0) != (coeff == 0) {
            return Err(Error::Parse("sign is zero exactly when coeff is zero".into()));
        }
        if radicand == 0 {
            return Err(Error::Parse("radicand must be positive".into()));
        }
        if sign == 0 && radicand != 1 {
            return Err(Error::Parse("zero is stored with radicand 1".into()));
        }
        let (k, d) = squarefree_decompose(radicand as u128)?;
        if k != 1 || d != radicand {
            return Err(Error::Parse(format!("radicand {radicand} is not squarefree")));
        }
        Ok(Surd {
            sign,
            coeff,
            radicand,
        })
    }

    pub fn integer(v: i64) -> Self {
        Self::from_signed_coeff(v as i128, 1).expect("i64 fits")
    }

    /// `+sqrt(m)` in canonical form.
    pub fn sqrt_of(m: u128) -> Result<Self> {
        if m == 0 {
            return Ok(Self::ZERO);
        }
        let (coeff, radicand) = squarefree_decompose(m)?;
        Ok(Surd {
            sign: 1,
            coeff,
            radicand,
        })
    }

    fn from_signed_coeff(v: i128, radicand: u64) -> Result<Self> {
        if v == 0 {
            return Ok(Self::ZERO);
        }
        let coeff = u64::try_from(v.unsigned_abs()).map_err(|_| Error::Overflow("surd coefficient"))?;
        Ok(Surd {
            sign: if v > 0 { 1 } else { -1 },
            coeff,
            radicand,
        })
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn coeff(&self) -> u64 {
        self.coeff
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn is_integer(&self) -> bool {
        self.radicand == 1
    }

    /// The value as an integer, when the radicand is 1.
    pub fn as_integer(&self) -> Option<i128> {
        self.is_integer()
            .then(|| self.sign as i128 * self.coeff as i128)
    }

    /// The exact integer `coeff^2 * radicand`.
    pub fn square(&self) -> Result<i128> {
        let k = self.coeff as u128;
        k.checked_mul(k)
            .and_then(|k2| k2.checked_mul(self.radicand as u128))
            .and_then(|v| i128::try_from(v).ok())
            .ok_or(Error::Overflow("surd square"))
    }

    pub fn to_f64(&self) -> f64 {
        self.sign as f64 * self.coeff as f64 * (self.radicand as f64).sqrt()
    }

    /// Exact product; the radicand of the result is the squarefree part of
    /// the product of the two radicands.
    pub fn mul(&self, other: &Surd) -> Result<Surd> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::ZERO);
        }
        let g = gcd(self.radicand, other.radicand);
        let da = self.radicand / g;
        let db = other.radicand / g;
        let radicand = (da as u128)
            .checked_mul(db as u128)
            .and_then(|v| u64::try_from(v).ok())
            .ok_or(Error::Overflow("surd product radicand"))?;
        let coeff = (self.coeff as u128)
            .checked_mul(other.coeff as u128)
            .and_then(|v| v.checked_mul(g as u128))
            .and_then(|v| u64::try_from(v).ok())
            .ok_or(Error::Overflow("surd product coefficient"))?;
        Ok(Surd {
            sign: self.sign * other.sign,
            coeff,
            radicand,
        })
    }

    /// Multiplication by an integer.
    pub fn scale(&self, k: i64) -> Result<Surd> {
        let v = (self.sign as i128 * self.coeff as i128)
            .checked_mul(k as i128)
            .ok_or(Error::Overflow("surd scale"))?;
        Self::from_signed_coeff(v, if v == 0 { 1 } else { self.radicand })
    }

    /// `self - other`, defined when both share a radicand or one is zero.
    pub fn sub_same_radicand(&self, other: &Surd) -> Result<Surd> {
        if other.is_zero() {
            return Ok(*self);
        }
        if self.is_zero() {
            return Ok(-*other);
        }
        if self.radicand != other.radicand {
            return Err(Error::RadicandMismatch(self.radicand, other.radicand));
        }
        let v = self.sign as i128 * self.coeff as i128 - other.sign as i128 * other.coeff as i128;
        Self::from_signed_coeff(v, if v == 0 { 1 } else { self.radicand })
    }

    fn magnitude_cmp(&self, other: &Surd) -> Ordering {
        let lhs = (self.coeff as u128)
            .checked_mul(self.coeff as u128)
            .and_then(|v| v.checked_mul(self.radicand as u128));
        let rhs = (other.coeff as u128)
            .checked_mul(other.coeff as u128)
            .and_then(|v| v.checked_mul(other.radicand as u128));
        match (lhs, rhs) {
            (Some(a), Some(b)) => a.cmp(&b),
            _ => {
                let big = |s: &Surd| {
                    BigUint::from(s.coeff) * BigUint::from(s.coeff) * BigUint::from(s.radicand)
                };
                big(self).cmp(&big(other))
            }
        }
    }
}

impl Ord for Surd {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.sign.cmp(&other.sign) {
            Ordering::Equal => match self.sign {
                0 => Ordering::Equal,
                1 => self.magnitude_cmp(other),
                _ => other.magnitude_cmp(self),
            },
            ord => ord,
        }
    }
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Neg for Surd {
    type Output = Surd;

    fn neg(self) -> Surd {
        Surd {
            sign: -self.sign,
            ..self
        }
    }
}

impl Default for Surd {
    fn default() -> Self {
        Self::ZERO
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.sign < 0 {
            write!(f, "-")?;
        }
        match (self.coeff, self.radicand) {
            (k, 1) => write!(f, "{k}"),
            (1, d) => write!(f, "sqrt({d})"),
            (k, d) => write!(f, "{k}*sqrt({d})"),
        }
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Surd({self})")
    }
}

impl FromStr for Surd {
    type Err = Error;

    /// Accepts `n`, `sqrt(m)` and `k*sqrt(m)` with an optional sign;
    /// non-canonical radicands such as `sqrt(20)` are normalised.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("cannot parse surd from {s:?}"));
        let t = s.trim();
        let (negative, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest.trim_start()),
            None => (false, t.strip_prefix('+').unwrap_or(t).trim_start()),
        };
        let parse_u = |v: &str| v.trim().parse::<u64>().map_err(|_| bad());
        let (coeff, radicand) = if let Some(star) = body.find('*') {
            let k = parse_u(&body[..star])?;
            let inner = sqrt_argument(body[star + 1..].trim()).ok_or_else(bad)?;
            (k, parse_u(inner)?)
        } else if let Some(inner) = sqrt_argument(body) {
            (1, parse_u(inner)?)
        } else {
            (parse_u(body)?, 1)
        };
        let root = Surd::sqrt_of(radicand as u128)?;
        let v = root.scale(i64::try_from(coeff).map_err(|_| Error::Overflow("surd coefficient"))?)?;
        Ok(if negative { -v } else { v })
    }
}

fn sqrt_argument(s: &str) -> Option<&str> {
    s.strip_prefix("sqrt")?
        .trim_start()
        .strip_prefix('(')?
        .strip_suffix(')')
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Exact integer square root test.
pub fn perfect_square_root(n: u128) -> Option<u128> {
    let r = n.isqrt();
    (r * r == n).then_some(r)
}

/// Splits `m > 0` as `coeff^2 * radicand` with `radicand` squarefree.
///
/// Primes are stripped by trial division while `d^3 <= n`; the cofactor left
/// over then has at most two prime factors, so it is either a perfect square
/// or already squarefree.
pub fn squarefree_decompose(m: u128) -> Result<(u64, u64)> {
    debug_assert!(m > 0);
    if let Some(r) = perfect_square_root(m) {
        return Ok((u64::try_from(r).map_err(|_| Error::Overflow("sqrt coefficient"))?, 1));
    }
    if m > MAX_SQRT_INPUT {
        return Err(Error::Overflow("squarefree extraction input"));
    }
    let mut n = m;
    let mut coeff: u128 = 1;
    let mut radicand: u128 = 1;
    let mut d: u128 = 2;
    while d * d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0u32;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            coeff *= d.pow(e / 2);
            if e % 2 == 1 {
                radicand *= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    match perfect_square_root(n) {
        Some(r) => coeff *= r,
        None => radicand *= n,
    }
    Ok((
        u64::try_from(coeff).map_err(|_| Error::Overflow("sqrt coefficient"))?,
        u64::try_from(radicand).map_err(|_| Error::Overflow("sqrt radicand"))?,
    ))
}
