//! Triples `(p, q, r)` standing for the skew-symmetric matrix
//! `[[0, -r, q], [r, 0, -p], [-q, p, 0]]`, over an exact or a float backend.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrices::perm::Perm;
use crate::surd::Surd;

/// Entry type of a [`Triple`]. [`Surd`] is the exact backend, `f64` the
/// approximate one.
pub trait Scalar: Copy + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Type of squares and Markov constants: `i128` for surds, `f64` for floats.
    type Value: Copy + PartialEq + PartialOrd + fmt::Debug + fmt::Display + Send + Sync;

    fn zero() -> Self;
    fn from_int(v: i64) -> Self;
    fn mul(self, o: Self) -> Result<Self>;
    fn sub(self, o: Self) -> Result<Self>;
    fn scale(self, k: i64) -> Result<Self>;
    fn signum(self) -> i8;
    fn compare(self, o: Self) -> Ordering;
    fn to_f64(self) -> f64;
    fn value_from_int(v: i64) -> Self::Value;
    /// `p^2 + q^2 + r^2 - pqr`.
    fn markov(e: &[Self; 3]) -> Result<Self::Value>;
    /// Membership check run when a triple is built.
    fn check_triple(e: &[Self; 3]) -> Result<()>;
    /// Equality for the backend: structural for surds, relative `1e-9` for floats.
    fn agrees(self, o: Self) -> bool;
}

impl Scalar for Surd {
    type Value = i128;

    fn zero() -> Self {
        Surd::ZERO
    }
    fn from_int(v: i64) -> Self {
        Surd::integer(v)
    }
    fn mul(self, o: Self) -> Result<Self> {
        Surd::mul(&self, &o)
    }
    fn sub(self, o: Self) -> Result<Self> {
        self.sub_same_radicand(&o)
    }
    fn scale(self, k: i64) -> Result<Self> {
        Surd::scale(&self, k)
    }
    fn signum(self) -> i8 {
        self.sign()
    }
    fn compare(self, o: Self) -> Ordering {
        self.cmp(&o)
    }
    fn to_f64(self) -> f64 {
        Surd::to_f64(&self)
    }
    fn value_from_int(v: i64) -> i128 {
        v as i128
    }
    fn markov(e: &[Self; 3]) -> Result<i128> {
        let prod = e[0].mul(e[1])?.mul(e[2])?;
        let prod = prod
            .as_integer()
            .ok_or_else(|| Error::NotInShat(format!("pqr = {prod} is not an integer")))?;
        let mut sum: i128 = 0;
        for v in e {
            sum = sum.checked_add(v.square()?).ok_or(Error::Overflow("markov constant"))?;
        }
        sum.checked_sub(prod).ok_or(Error::Overflow("markov constant"))
    }
    fn check_triple(e: &[Self; 3]) -> Result<()> {
        let prod = e[0].mul(e[1])?.mul(e[2])?;
        if prod.is_integer() {
            Ok(())
        } else {
            Err(Error::NotInShat(format!("pqr = {prod} is not an integer")))
        }
    }
    fn agrees(self, o: Self) -> bool {
        self == o
    }
}

impl Scalar for f64 {
    type Value = f64;

    fn zero() -> Self {
        0.0
    }
    fn from_int(v: i64) -> Self {
        v as f64
    }
    fn mul(self, o: Self) -> Result<Self> {
        Ok(self * o)
    }
    fn sub(self, o: Self) -> Result<Self> {
        Ok(self - o)
    }
    fn scale(self, k: i64) -> Result<Self> {
        Ok(self * k as f64)
    }
    fn signum(self) -> i8 {
        if self > 0.0 {
            1
        } else if self < 0.0 {
            -1
        } else {
            0
        }
    }
    fn compare(self, o: Self) -> Ordering {
        self.total_cmp(&o)
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn value_from_int(v: i64) -> f64 {
        v as f64
    }
    fn markov(e: &[Self; 3]) -> Result<f64> {
        Ok(e[0] * e[0] + e[1] * e[1] + e[2] * e[2] - e[0] * e[1] * e[2])
    }
    fn check_triple(e: &[Self; 3]) -> Result<()> {
        if e.iter().all(|v| v.is_finite()) {
            Ok(())
        } else {
            Err(Error::Precondition("triple entries must be finite".into()))
        }
    }
    fn agrees(self, o: Self) -> bool {
        (self - o).abs() <= 1e-9 * self.abs().max(o.abs()).max(1.0)
    }
}

#[derive(Clone, Copy, PartialEq, Debug, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Serialize", deserialize = "T: Deserialize<'de> + Scalar"))]
#[serde(try_from = "[T; 3]", into = "[T; 3]")]
pub struct Triple<T: Scalar> {
    entries: [T; 3],
}

impl<T: Scalar> TryFrom<[T; 3]> for Triple<T> {
    type Error = Error;

    fn try_from(e: [T; 3]) -> Result<Self> {
        Triple::from_array(e)
    }
}

impl<T: Scalar> From<Triple<T>> for [T; 3] {
    fn from(t: Triple<T>) -> Self {
        t.entries
    }
}

impl<T: Scalar> Triple<T> {
    pub fn new(p: T, q: T, r: T) -> Result<Self> {
        Self::from_array([p, q, r])
    }

    pub fn from_array(entries: [T; 3]) -> Result<Self> {
        T::check_triple(&entries)?;
        Ok(Triple { entries })
    }

    /// The γ maps preserve membership, so their images skip the check.
    fn from_gamma(entries: [T; 3]) -> Self {
        Triple { entries }
    }

    pub fn p(&self) -> T {
        self.entries[0]
    }
    pub fn q(&self) -> T {
        self.entries[1]
    }
    pub fn r(&self) -> T {
        self.entries[2]
    }

    pub fn entries(&self) -> &[T; 3] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> T {
        self.entries[i]
    }

    /// `γ_k`, with `k` in `1..=3`: the `k`-th entry is replaced by the product
    /// of the other two minus itself.
    pub fn gamma(&self, k: usize) -> Result<Self> {
        let i = index(k)?;
        let (j, l) = others(i);
        let mut e = self.entries;
        e[i] = e[j].mul(e[l])?.sub(e[i])?;
        Ok(Self::from_gamma(e))
    }

    pub fn gamma_word(&self, word: &[u8]) -> Result<Self> {
        word.iter().try_fold(*self, |t, &k| t.gamma(k as usize))
    }

    pub fn markov(&self) -> Result<T::Value> {
        T::markov(&self.entries)
    }

    /// Column permutation; entry `i` moves to position `σ(i)`.
    pub fn permute(&self, sigma: Perm) -> Self {
        Triple {
            entries: sigma.apply(self.entries),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.entries.iter().all(|v| v.signum() > 0)
    }

    /// Entrywise partial order.
    pub fn le_entrywise(&self, other: &Self) -> bool {
        (0..3).all(|i| self.entries[i].compare(other.entries[i]) != Ordering::Greater)
    }

    /// Entries in non-increasing order.
    pub fn sorted_desc(&self) -> Self {
        let mut e = self.entries;
        e.sort_by(|a, b| b.compare(*a));
        Triple { entries: e }
    }

    pub fn to_f64(&self) -> Triple<f64> {
        Triple {
            entries: self.entries.map(|v| v.to_f64()),
        }
    }

    pub fn agrees(&self, other: &Self) -> bool {
        (0..3).all(|i| self.entries[i].agrees(other.entries[i]))
    }
}

impl Eq for Triple<Surd> {}

impl std::hash::Hash for Triple<Surd> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.entries.hash(state)
    }
}

impl<T: Scalar> fmt::Display for Triple<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, {}, {}", self.entries[0], self.entries[1], self.entries[2])
    }
}

impl FromStr for Triple<Surd> {
    type Err = Error;

    /// Comma-separated surd expressions: `5, 2*sqrt(5), sqrt(5)`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected three comma-separated entries in {s:?}")));
        }
        Triple::new(parts[0].parse()?, parts[1].parse()?, parts[2].parse()?)
    }
}

impl FromStr for Triple<f64> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad float {p:?}"))))
            .collect::<Result<Vec<_>>>()?;
        match parts[..] {
            [p, q, r] => Triple::new(p, q, r),
            _ => Err(Error::Parse(format!("expected three comma-separated entries in {s:?}"))),
        }
    }
}

pub(crate) fn index(k: usize) -> Result<usize> {
    if (1..=3).contains(&k) {
        Ok(k - 1)
    } else {
        Err(Error::Precondition(format!("mutation index must be 1, 2 or 3, got {k}")))
    }
}

/// The two zero-based indices other than `i`, in increasing order.
pub(crate) fn others(i: usize) -> (usize, usize) {
    match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(s: &str) -> Triple<Surd> {
        s.parse().unwrap()
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(st("3,3,3").gamma(1).unwrap(), st("6,3,3"));
        assert_eq!(st("2,2,2").gamma(3).unwrap(), st("2,2,2"));
        let s = st("5, 2*sqrt(5), sqrt(5)");
        let g = s.gamma(2).unwrap();
        assert_eq!(g, st("5, 3*sqrt(5), sqrt(5)"));
        assert_eq!(s.markov().unwrap(), 0);
        assert_eq!(g.markov().unwrap(), 0);
    }

    #[test]
    fn markov_examples() {
        assert_eq!(st("2,2,2").markov().unwrap(), 4);
        assert_eq!(st("5, 2*sqrt(5), sqrt(5)").markov().unwrap(), 0);
    }

    #[test]
    fn shat_membership_enforced() {
        assert!(matches!(
            "sqrt(2), 1, 1".parse::<Triple<Surd>>(),
            Err(Error::NotInShat(_))
        ));
        assert!("sqrt(2), sqrt(3), sqrt(6)".parse::<Triple<Surd>>().is_ok());
    }

    #[test]
    fn float_backend() {
        let t = Triple::new(3.0, 3.0, 3.0).unwrap();
        assert_eq!(t.gamma(1).unwrap().p(), 6.0);
        assert_eq!(t.markov().unwrap(), 0.0);
        assert!(Triple::new(f64::NAN, 1.0, 1.0).is_err());
    }

    #[test]
    fn json_is_array_of_surds() {
        let t = st("5, 2*sqrt(5), sqrt(5)");
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(
            json,
            r#"[{"sign":1,"coeff":5,"radicand":1},{"sign":1,"coeff":2,"radicand":5},{"sign":1,"coeff":1,"radicand":5}]"#
        );
        let back: Triple<Surd> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn bad_index() {
        assert!(st("3,3,3").gamma(0).is_err());
        assert!(st("3,3,3").gamma(4).is_err());
    }
}
