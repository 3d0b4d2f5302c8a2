//! Rank-3 skew-symmetrizable matrices in tuple form.
//!
//! The tuple `(x y z / x' y' z')` stands for
//!
//! ```text
//!     [  0   -z'   y  ]
//! B = [  z    0   -x' ]
//!     [ -y'   x    0  ]
//! ```
//!
//! with `xyz = x'y'z'` and each of `(x, x')`, `(y, y')`, `(z, z')` sharing a sign.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrices::path::MutationPath;
use crate::matrices::perm::Perm;
use crate::matrices::triple::{index, others, Triple};
use crate::surd::Surd;

/// Sign pattern of the associated quiver.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CyclicityClass {
    PositiveCyclic,
    NegativeCyclic,
    Acyclic,
}

impl fmt::Display for CyclicityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CyclicityClass::PositiveCyclic => "positive-cyclic",
            CyclicityClass::NegativeCyclic => "negative-cyclic",
            CyclicityClass::Acyclic => "acyclic",
        })
    }
}

/// A validated tuple `(x y z / x' y' z')`.
///
/// The derived `Ord` is lexicographic and only used for set keys and stable
/// output ordering; the entrywise partial order is [`MatM::le_entrywise`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct MatM {
    top: [i64; 3],
    bottom: [i64; 3],
}

impl MatM {
    /// Checks the product identity and the column sign agreement.
    pub fn new(top: [i64; 3], bottom: [i64; 3]) -> Result<Self> {
        for c in 0..3 {
            if top[c].signum() != bottom[c].signum() {
                return Err(Error::SignMismatch {
                    column: c + 1,
                    top: top[c],
                    bottom: bottom[c],
                });
            }
        }
        let equal = match (product3(&top), product3(&bottom)) {
            (Some(a), Some(b)) => a == b,
            _ => big_product3(&top) == big_product3(&bottom),
        };
        if !equal {
            return Err(Error::ProductMismatch {
                xyz: product3(&top).unwrap_or(i128::MAX),
                xyz_prime: product3(&bottom).unwrap_or(i128::MAX),
            });
        }
        Ok(MatM { top, bottom })
    }

    /// `validate(x, y, z, x', y', z')`.
    pub fn from_six(v: [i64; 6]) -> Result<Self> {
        Self::new([v[0], v[1], v[2]], [v[3], v[4], v[5]])
    }

    /// Reads the tuple off a full 3x3 matrix after checking the zero diagonal,
    /// sign-skew-symmetry and `b12 b23 b31 = -b32 b21 b13`.
    pub fn from_matrix3(b: [[i64; 3]; 3]) -> Result<Self> {
        if (0..3).any(|i| b[i][i] != 0) {
            return Err(Error::Parse("diagonal entries must be zero".into()));
        }
        for i in 0..3 {
            for j in 0..3 {
                if i != j && b[i][j].signum() != -b[j][i].signum() {
                    return Err(Error::Parse(format!(
                        "b{}{} = {} and -b{}{} = {} differ in sign",
                        i + 1,
                        j + 1,
                        b[i][j],
                        j + 1,
                        i + 1,
                        -(b[j][i] as i128)
                    )));
                }
            }
        }
        let lhs = big_product3(&[b[0][1], b[1][2], b[2][0]]);
        let rhs = -big_product3(&[b[2][1], b[1][0], b[0][2]]);
        if lhs != rhs {
            return Err(Error::Parse(format!(
                "b12 b23 b31 = {lhs} but -b32 b21 b13 = {rhs}; matrix is not skew-symmetrizable"
            )));
        }
        let neg = |v: i64| v.checked_neg().ok_or(Error::Overflow("matrix entry"));
        Self::new(
            [b[2][1], b[0][2], b[1][0]],
            [neg(b[1][2])?, neg(b[2][0])?, neg(b[0][1])?],
        )
    }

    pub fn to_matrix3(&self) -> [[i64; 3]; 3] {
        let [x, y, z] = self.top;
        let [xp, yp, zp] = self.bottom;
        [[0, -zp, y], [z, 0, -xp], [-yp, x, 0]]
    }

    pub fn top(&self) -> [i64; 3] {
        self.top
    }

    pub fn bottom(&self) -> [i64; 3] {
        self.bottom
    }

    pub fn six(&self) -> [i64; 6] {
        let [x, y, z] = self.top;
        let [xp, yp, zp] = self.bottom;
        [x, y, z, xp, yp, zp]
    }

    /// `a_i a'_i` for the zero-based column `i`.
    pub fn column_product(&self, i: usize) -> i128 {
        self.top[i] as i128 * self.bottom[i] as i128
    }

    pub fn column_products(&self) -> [i128; 3] {
        [0, 1, 2].map(|i| self.column_product(i))
    }

    /// `xyz`, which equals `x'y'z'`.
    pub fn xyz(&self) -> Result<i128> {
        product3(&self.top).ok_or(Error::Overflow("xyz"))
    }

    pub fn cyclicity(&self) -> CyclicityClass {
        let all = self.six();
        if all.iter().all(|&v| v > 0) {
            CyclicityClass::PositiveCyclic
        } else if all.iter().all(|&v| v < 0) {
            CyclicityClass::NegativeCyclic
        } else {
            CyclicityClass::Acyclic
        }
    }

    pub fn is_positive(&self) -> bool {
        self.cyclicity() == CyclicityClass::PositiveCyclic
    }

    pub fn max_abs_entry(&self) -> u64 {
        self.six().iter().map(|v| v.unsigned_abs()).max().unwrap_or(0)
    }

    /// Matrix mutation `μ_k`, `k` in `1..=3`, with the full sign rule.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        let i = index(k)?;
        let b = self.to_matrix3().map(|row| row.map(|v| v as i128));
        let m = mutate_matrix(&b, i);
        let narrow = |v: &i128| i64::try_from(*v).map_err(|_| Error::Overflow("mutation"));
        let mut out = [[0i64; 3]; 3];
        for r in 0..3 {
            for c in 0..3 {
                out[r][c] = narrow(&m[r][c])?;
            }
        }
        Self::from_matrix3(out)
    }

    pub fn mutate_word(&self, word: &[u8]) -> Result<Self> {
        word.iter().try_fold(*self, |m, &k| m.mutate(k as usize))
    }

    /// `γ_k`, the tuple formula for `-μ_k` on cyclic input, applied to any
    /// tuple. With `k = 1`: `x <- y'z' - x` and `x' <- yz - x'`.
    pub fn gamma(&self, k: usize) -> Result<Self> {
        let i = index(k)?;
        let (j, l) = others(i);
        let overflow = || Error::Overflow("gamma");
        let new_top = (self.bottom[j] as i128 * self.bottom[l] as i128)
            .checked_sub(self.top[i] as i128)
            .and_then(|v| i64::try_from(v).ok())
            .ok_or_else(overflow)?;
        let new_bottom = (self.top[j] as i128 * self.top[l] as i128)
            .checked_sub(self.bottom[i] as i128)
            .and_then(|v| i64::try_from(v).ok())
            .ok_or_else(overflow)?;
        let mut top = self.top;
        let mut bottom = self.bottom;
        top[i] = new_top;
        bottom[i] = new_bottom;
        Self::new(top, bottom)
    }

    pub fn gamma_word(&self, word: &[u8]) -> Result<Self> {
        word.iter().try_fold(*self, |m, &k| m.gamma(k as usize))
    }

    pub fn gamma_path(&self, path: &MutationPath) -> Result<Self> {
        self.gamma_word(path.indices())
    }

    /// `xx' + yy' + zz' - xyz`, the form that is γ-invariant on every tuple.
    pub fn markov(&self) -> Result<i128> {
        self.markov_with(self.xyz()?)
    }

    /// `xx' + yy' + zz' - |xyz|`, the form used for cyclic matrices.
    pub fn markov_abs(&self) -> Result<i128> {
        self.markov_with(self.xyz()?.abs())
    }

    /// `xx' + yy' + zz' - ε|xyz|` with `ε = 1` on cyclic and `ε = -1` on acyclic
    /// tuples. Agrees with [`MatM::markov_abs`] on cyclic input and is invariant
    /// under every mutation `μ_k`, including those that change cyclicity.
    pub fn markov_mutation_invariant(&self) -> Result<i128> {
        let abs = self.xyz()?.abs();
        match self.cyclicity() {
            CyclicityClass::Acyclic => self.markov_with(-abs),
            _ => self.markov_with(abs),
        }
    }

    fn markov_with(&self, xyz: i128) -> Result<i128> {
        let overflow = || Error::Overflow("markov constant");
        let mut sum: i128 = 0;
        for i in 0..3 {
            sum = sum.checked_add(self.column_product(i)).ok_or_else(overflow)?;
        }
        sum.checked_sub(xyz).ok_or_else(overflow)
    }

    /// The double-sided skew-symmetrized form `(ε_x √(xx'), ε_y √(yy'), ε_z √(zz'))`.
    pub fn sk(&self) -> Result<Triple<Surd>> {
        let mut e = [Surd::ZERO; 3];
        for (i, slot) in e.iter_mut().enumerate() {
            let root = Surd::sqrt_of(self.column_product(i) as u128)?;
            *slot = if self.top[i] < 0 { -root } else { root };
        }
        Triple::from_array(e)
    }

    /// Columns permuted by `sigma`, then rows swapped when `transpose` is set.
    pub fn permute(&self, sigma: Perm, transpose: bool) -> Self {
        let top = sigma.apply(self.top);
        let bottom = sigma.apply(self.bottom);
        if transpose {
            MatM {
                top: bottom,
                bottom: top,
            }
        } else {
            MatM { top, bottom }
        }
    }

    pub fn transpose(&self) -> Self {
        self.permute(Perm::IDENTITY, true)
    }

    /// All twelve images under column permutations and the row swap,
    /// deduplicated and sorted.
    pub fn permutations(&self) -> Vec<MatM> {
        let mut out: Vec<MatM> = Perm::all()
            .iter()
            .flat_map(|&s| [self.permute(s, false), self.permute(s, true)])
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn negate(&self) -> Result<Self> {
        let neg = |v: i64| v.checked_neg().ok_or(Error::Overflow("negation"));
        Ok(MatM {
            top: [neg(self.top[0])?, neg(self.top[1])?, neg(self.top[2])?],
            bottom: [neg(self.bottom[0])?, neg(self.bottom[1])?, neg(self.bottom[2])?],
        })
    }

    pub fn le_entrywise(&self, other: &Self) -> bool {
        (0..3).all(|i| self.top[i] <= other.top[i] && self.bottom[i] <= other.bottom[i])
    }
}

fn product3(v: &[i64; 3]) -> Option<i128> {
    (v[0] as i128 * v[1] as i128).checked_mul(v[2] as i128)
}

fn big_product3(v: &[i64; 3]) -> BigInt {
    v.iter().map(|&a| BigInt::from(a)).product()
}

/// `μ_k` on a full 3x3 matrix (zero-based `k`):
/// `b'_ij = -b_ij` if `i = k` or `j = k`, else
/// `b_ij + b_ik [b_kj]_+ + [-b_ik]_+ b_kj`.
pub fn mutate_matrix<T: Signed + Clone + PartialOrd>(b: &[[T; 3]; 3], k: usize) -> [[T; 3]; 3] {
    let pos = |v: &T| if *v > T::zero() { v.clone() } else { T::zero() };
    let mut out = b.clone();
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = if i == k || j == k {
                -b[i][j].clone()
            } else {
                b[i][j].clone()
                    + b[i][k].clone() * pos(&b[k][j])
                    + pos(&-b[i][k].clone()) * b[k][j].clone()
            };
        }
    }
    out
}

impl fmt::Display for MatM {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = self.top;
        let [xp, yp, zp] = self.bottom;
        write!(f, "{x} {y} {z} / {xp} {yp} {zp}")
    }
}

impl fmt::Debug for MatM {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatM({self})")
    }
}

impl FromStr for MatM {
    type Err = Error;

    /// Accepts `x y z / x' y' z'` or a row-major JSON 3x3 matrix.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.starts_with('[') {
            let b: [[i64; 3]; 3] = serde_json::from_str(t)
                .map_err(|e| Error::Parse(format!("bad 3x3 matrix {t:?}: {e}")))?;
            return Self::from_matrix3(b);
        }
        let rows: Vec<&str> = t.split('/').collect();
        if rows.len() != 2 {
            return Err(Error::Parse(format!("expected `x y z / x' y' z'`, got {t:?}")));
        }
        let row = |r: &str| -> Result<[i64; 3]> {
            let v = r
                .split_whitespace()
                .map(|w| w.parse::<i64>().map_err(|_| Error::Parse(format!("bad integer {w:?}"))))
                .collect::<Result<Vec<_>>>()?;
            v.try_into()
                .map_err(|_| Error::Parse(format!("expected three integers in {r:?}")))
        };
        Self::new(row(rows[0])?, row(rows[1])?)
    }
}

impl TryFrom<String> for MatM {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<MatM> for String {
    fn from(m: MatM) -> Self {
        m.to_string()
    }
}
