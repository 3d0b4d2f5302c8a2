//! Classification: cyclicity, the cluster-cyclicity criterion, the (M1)/(M2)/(M3)
//! conditions, the (A)/(B) dichotomy, 1,2-orbits and fixed points.

use std::any::{Any, TypeId};
use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrices::triple::others;
use crate::matrices::{CyclicityClass, MatM, MutationPath, Scalar, Triple};
use crate::search::{DEFAULT_DESCENT_CAP, DEFAULT_NEGATIVE_SEARCH_CAP};

/// Distance to `(2, 2, 2)` below which a float descent counts as converged.
pub const FLOAT_LIMIT_TOL: f64 = 1e-9;
/// Relative tolerance for the `(p, p, 2)` shape and the 1,2-sequence trichotomy.
pub const FLOAT_SHAPE_TOL: f64 = 1e-9;
/// A float triple on `C = 4` is only known to about `1e-14`, and near
/// `(2, 2, 2)` the distance to the limit behaves like `√|C - 4|`, so the orbit
/// can be followed to roughly `1e-7` and no further. A descent that stops
/// (M1 or M3) within this distance of `(2, 2, 2)`, starting from a triple
/// with `C = 4` up to rounding, is reported as case (B).
pub const FLOAT_DRIFT_TOL: f64 = 1e-6;

pub fn cyclicity(m: &MatM) -> CyclicityClass {
    m.cyclicity()
}

/// Which part of the cluster-cyclicity criterion failed.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Violation {
    #[serde(rename = "acyclic_input")]
    AcyclicInput,
    #[serde(rename = "product_xx_lt_4")]
    ProductXxLt4,
    #[serde(rename = "product_yy_lt_4")]
    ProductYyLt4,
    #[serde(rename = "product_zz_lt_4")]
    ProductZzLt4,
    #[serde(rename = "markov_gt_4")]
    MarkovGt4,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Violation::AcyclicInput => "the matrix itself is acyclic",
            Violation::ProductXxLt4 => "xx' < 4",
            Violation::ProductYyLt4 => "yy' < 4",
            Violation::ProductZzLt4 => "zz' < 4",
            Violation::MarkovGt4 => "C > 4",
        })
    }
}

/// Outcome of the cluster-cyclicity test, with a mutation word leading to an
/// acyclic matrix in the negative case.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "decision", rename_all = "snake_case")]
pub enum Certificate {
    ClusterCyclic {
        markov: i128,
        products: [i128; 3],
    },
    ClusterAcyclic {
        violated: Violation,
        witness_path: MutationPath,
    },
}

impl Certificate {
    pub fn is_cluster_cyclic(&self) -> bool {
        matches!(self, Certificate::ClusterCyclic { .. })
    }
}

/// A cyclic matrix is cluster-cyclic iff `C(B) <= 4` and `xx', yy', zz' >= 4`,
/// with `C(B) = xx' + yy' + zz' - |xyz|`. Acyclic input is trivially
/// cluster-acyclic.
pub fn is_cluster_cyclic(m: &MatM) -> Result<Certificate> {
    let pos = match m.cyclicity() {
        CyclicityClass::Acyclic => {
            return Ok(Certificate::ClusterAcyclic {
                violated: Violation::AcyclicInput,
                witness_path: MutationPath::empty(),
            })
        }
        CyclicityClass::PositiveCyclic => *m,
        // μ_k(-B) = -μ_k(B), so -B has the same mutation words to acyclic matrices.
        CyclicityClass::NegativeCyclic => m.negate()?,
    };
    let products = pos.column_products();
    let markov = m.markov_abs()?;
    let violated = match products.iter().position(|&v| v < 4) {
        Some(0) => Some(Violation::ProductXxLt4),
        Some(1) => Some(Violation::ProductYyLt4),
        Some(_) => Some(Violation::ProductZzLt4),
        None if markov > 4 => Some(Violation::MarkovGt4),
        None => None,
    };
    match violated {
        None => Ok(Certificate::ClusterCyclic { markov, products }),
        Some(violated) => Ok(Certificate::ClusterAcyclic {
            violated,
            witness_path: acyclic_witness(&pos, DEFAULT_NEGATIVE_SEARCH_CAP)?,
        }),
    }
}

/// A γ-word taking a positive tuple that fails the criterion to a tuple that
/// is no longer positive; every intermediate tuple stays positive, so the same
/// word of mutations reaches an acyclic matrix.
///
/// While every column product is at least 4 the word descends strictly; once a
/// column product drops below 4 the other two indices alternate.
pub fn acyclic_witness(m: &MatM, cap: usize) -> Result<MutationPath> {
    if !m.is_positive() {
        return Err(Error::Precondition(format!("{m} is not positive-cyclic")));
    }
    let mut cur = *m;
    let mut word = Vec::new();
    for _ in 0..cap {
        if !cur.is_positive() {
            return MutationPath::new(word);
        }
        if let Some(small) = (0..3).find(|&i| cur.column_product(i) < 4) {
            let (i, j) = others(small);
            let next = if word.last() == Some(&(i as u8 + 1)) { j } else { i };
            word.push(next as u8 + 1);
            cur = cur.gamma(next + 1)?;
            continue;
        }
        let xyz = cur.xyz()?;
        let down = (0..3)
            .find(|&i| xyz < 2 * cur.column_product(i))
            .ok_or_else(|| Error::Precondition(format!("{cur} satisfies (M1); no acyclic witness")))?;
        word.push(down as u8 + 1);
        cur = cur.gamma(down + 1)?;
    }
    Err(Error::SearchBudgetExceeded(cap))
}

/// (M1)/(M2)/(M3): how many indices `i` satisfy `S <= γ_i(S)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum MkClass {
    M1,
    M2,
    M3,
}

impl fmt::Display for MkClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

fn class_from_count(n: usize) -> MkClass {
    match n {
        3 => MkClass::M1,
        2 => MkClass::M2,
        _ => MkClass::M3,
    }
}

/// Whether `S <= γ_i(S)`, i.e. `e_j e_l >= 2 e_i` (zero-based `i`).
fn gamma_non_decreasing<T: Scalar>(s: &Triple<T>, i: usize) -> Result<bool> {
    let (j, l) = others(i);
    let prod = s.get(j).mul(s.get(l))?;
    Ok(prod.compare(s.get(i).scale(2)?) != Ordering::Less)
}

/// Counts the non-decreasing γ directions. Valid for any triple; on positive
/// triples it agrees with comparing `pqr` against `2p^2, 2q^2, 2r^2`.
pub fn mk_class<T: Scalar>(s: &Triple<T>) -> Result<MkClass> {
    let mut n = 0;
    for i in 0..3 {
        if gamma_non_decreasing(s, i)? {
            n += 1;
        }
    }
    Ok(class_from_count(n))
}

/// The same classification for a positive tuple, by `xyz >= 2 a_i a'_i`.
pub fn mk_class_matm(m: &MatM) -> Result<MkClass> {
    if !m.is_positive() {
        return Err(Error::Precondition(format!("{m} is not positive")));
    }
    let xyz = m.xyz()?;
    let n = (0..3).filter(|&i| xyz >= 2 * m.column_product(i)).count();
    Ok(class_from_count(n))
}

/// Membership in the fundamental domain: `xyz >= 2xx', 2yy', 2zz'`.
pub fn in_fundamental_domain(m: &MatM) -> Result<bool> {
    Ok(m.is_positive() && mk_class_matm(m)? == MkClass::M1)
}

/// The (A)/(B) dichotomy of a cluster-positive triple.
#[derive(Clone, PartialEq, Debug, Serialize)]
#[serde(tag = "class")]
pub enum AbClass<T: Scalar> {
    /// The orbit has a unique (M1) element, reached from the input by `path`.
    A {
        representative: Triple<T>,
        path: MutationPath,
    },
    /// The strictly decreasing sequence never reaches (M1) and tends to
    /// `(2, 2, 2)`; `last` is the final iterate computed and `path` the
    /// decreasing word taking the input to it.
    B {
        limit: Triple<T>,
        last: Triple<T>,
        steps: usize,
        path: MutationPath,
    },
}

impl<T: Scalar> AbClass<T> {
    pub fn is_a(&self) -> bool {
        matches!(self, AbClass::A { .. })
    }
}

fn float_near(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

/// Whether the sorted float triple looks like `(p, p, 2)`.
pub fn has_pp2_shape(s: &Triple<f64>, tol: f64) -> bool {
    let d = s.sorted_desc();
    float_near(d.p(), d.q(), tol) && float_near(d.r(), 2.0, tol)
}

/// Runs the descent: while the current triple is (M2), apply the unique
/// strictly decreasing γ (smallest index on ties). Reaching (M1) gives class A.
/// In the float backend, getting within [`FLOAT_LIMIT_TOL`] of `(2, 2, 2)`
/// gives class B and an approximate `(p, p, 2)` shape counts as (M1).
pub fn ab_class<T: Scalar>(s: &Triple<T>, cap: usize) -> Result<AbClass<T>> {
    if !s.is_positive() {
        return Err(Error::Precondition(format!("({s}) is not positive")));
    }
    if TypeId::of::<T>() == TypeId::of::<f64>() {
        let out: Box<dyn Any> = Box::new(ab_class_f64(&s.to_f64(), cap)?);
        return Ok(*out.downcast::<AbClass<T>>().expect("T is f64"));
    }
    let mut cur = *s;
    let mut word = Vec::new();
    for step in 0..=cap {
        match mk_class(&cur)? {
            MkClass::M1 => {
                return Ok(AbClass::A {
                    representative: cur,
                    path: MutationPath::new(word)?,
                })
            }
            MkClass::M3 => return Err(Error::NotClusterPositive(format!("({cur}), class M3"))),
            MkClass::M2 => {}
        }
        if step == cap {
            break;
        }
        let mut down = None;
        for i in 0..3 {
            if !gamma_non_decreasing(&cur, i)? {
                down = Some(i);
                break;
            }
        }
        let i = down.expect("an (M2) triple has a decreasing direction");
        word.push(i as u8 + 1);
        cur = cur.gamma(i + 1)?;
        if !cur.is_positive() {
            return Err(Error::NotClusterPositive(format!("({cur})")));
        }
    }
    Err(Error::IterationCapExceeded {
        cap,
        last: cur.to_string(),
    })
}

/// The float descent runs on offsets `d_i = e_i - 2`. Near `(2, 2, 2)` the
/// entries differ from 2 by far less than their rounding error, so working
/// with `e_i` directly drifts off the surface and can fall below 2.
/// In offsets `γ_i` reads `d_i <- 2d_j + 2d_l + d_j d_l - d_i`.
fn ab_class_f64(s: &Triple<f64>, cap: usize) -> Result<AbClass<f64>> {
    let entries = |d: &[f64; 3]| Triple::new(2.0 + d[0], 2.0 + d[1], 2.0 + d[2]);
    let pqr = s.p() * s.q() * s.r();
    let on_c4 = (s.markov()? - 4.0).abs() <= 1e-12 * pqr.abs().max(1.0);
    let mut d = s.entries().map(|e| e - 2.0);
    let mut word = Vec::new();
    for step in 0..=cap {
        let cur = entries(&d)?;
        let dist = d.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let limit = |word: Vec<u8>| -> Result<AbClass<f64>> {
            Ok(AbClass::B {
                limit: Triple::new(2.0, 2.0, 2.0)?,
                last: cur,
                steps: step,
                path: MutationPath::new(word)?,
            })
        };
        if dist < FLOAT_LIMIT_TOL {
            return limit(word);
        }
        if has_pp2_shape(&cur, FLOAT_SHAPE_TOL) {
            return Ok(AbClass::A {
                representative: cur,
                path: MutationPath::new(word)?,
            });
        }
        // growth of entry i under γ_i; non-negative means S <= γ_i(S) there
        let growth: [f64; 3] = [0, 1, 2].map(|i| {
            let (j, l) = others(i);
            2.0 * d[j] + 2.0 * d[l] + d[j] * d[l] - 2.0 * d[i]
        });
        let stalled = on_c4 && dist < FLOAT_DRIFT_TOL;
        match growth.iter().filter(|g| **g >= 0.0).count() {
            3 if stalled => return limit(word),
            3 => {
                return Ok(AbClass::A {
                    representative: cur,
                    path: MutationPath::new(word)?,
                })
            }
            2 => {}
            _ if stalled => return limit(word),
            _ => return Err(Error::NotClusterPositive(format!("({cur}), class M3"))),
        }
        if step == cap {
            break;
        }
        let i = growth.iter().position(|g| *g < 0.0).expect("an (M2) triple has a decreasing direction");
        d[i] += growth[i];
        word.push(i as u8 + 1);
        if d[i] <= -2.0 {
            return Err(Error::NotClusterPositive(format!("({})", entries(&d)?)));
        }
    }
    Err(Error::IterationCapExceeded {
        cap,
        last: entries(&d)?.to_string(),
    })
}

pub fn ab_class_default<T: Scalar>(s: &Triple<T>) -> Result<AbClass<T>> {
    ab_class(s, DEFAULT_DESCENT_CAP)
}

/// Positive tuple fixed by every γ_k: `xx' = yy' = zz' = 4`.
pub fn is_fixed_point(m: &MatM) -> bool {
    m.is_positive() && m.column_products().iter().all(|&v| v == 4)
}

/// All positive integer fixed points, sorted: every choice of column pairs
/// from `(1, 4), (2, 2), (4, 1)` obeying `xyz = x'y'z' = 8`.
pub fn integer_fixed_points() -> Vec<MatM> {
    const PAIRS: [(i64, i64); 3] = [(1, 4), (2, 2), (4, 1)];
    let mut out = Vec::new();
    for a in PAIRS {
        for b in PAIRS {
            for c in PAIRS {
                if a.0 * b.0 * c.0 == 8 && a.1 * b.1 * c.1 == 8 {
                    out.push(MatM::new([a.0, b.0, c.0], [a.1, b.1, c.1]).expect("valid by construction"));
                }
            }
        }
    }
    out.sort();
    out
}

/// `u_n(r)` from `u_{-2} = -1`, `u_{-1} = 0`, `u_{n+1} = r u_n - u_{n-1}`.
pub fn chebyshev_u<T: Scalar>(n: i64, r: T) -> Result<T> {
    if n < -2 {
        return Err(Error::Precondition(format!("u_n needs n >= -2, got {n}")));
    }
    let (mut prev, mut cur) = (T::from_int(-1), T::zero());
    if n == -2 {
        return Ok(prev);
    }
    for _ in -1..n {
        let next = r.mul(cur)?.sub(prev)?;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// The alternating γ_1/γ_2 iterates of a triple together with the values
/// `f_k = q u_k(r) - p u_{k-1}(r)` for `k = -1..=n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OneTwoOrbit<T: Scalar> {
    pub iterates: Vec<Triple<T>>,
    /// `f_values[k + 1] = f_k`.
    pub f_values: Vec<T>,
}

impl<T: Scalar> OneTwoOrbit<T> {
    pub fn f(&self, k: i64) -> T {
        self.f_values[(k + 1) as usize]
    }
}

/// Iterates `S_0 = S`, `S_k = γ_1(S_{k-1})` for odd `k` and `γ_2(S_{k-1})` for
/// even `k`, and checks them against the Chebyshev closed form: for even `k`,
/// `S_k = (f_{k-1}, f_k, r)`; for odd `k`, `S_k = (f_k, f_{k-1}, r)`.
pub fn one_two_orbit<T: Scalar>(s: &Triple<T>, n: usize) -> Result<OneTwoOrbit<T>> {
    let (p, q, r) = (s.p(), s.q(), s.r());
    let mut f_values = Vec::with_capacity(n + 2);
    let (mut u_prev, mut u_cur) = (T::zero(), T::from_int(1)); // u_{-1}, u_0
    f_values.push(p);
    for _ in 0..=n {
        f_values.push(q.mul(u_cur)?.sub(p.mul(u_prev)?)?);
        let next = r.mul(u_cur)?.sub(u_prev)?;
        u_prev = u_cur;
        u_cur = next;
    }
    let mut iterates = Vec::with_capacity(n + 1);
    let mut cur = *s;
    for k in 0..=n {
        if k > 0 {
            cur = cur.gamma(if k % 2 == 1 { 1 } else { 2 })?;
        }
        let (fk, fk1) = (f_values[k + 1], f_values[k]);
        let (ep, eq) = if k % 2 == 0 { (fk1, fk) } else { (fk, fk1) };
        if !(cur.p().agrees(ep) && cur.q().agrees(eq) && cur.r().agrees(r)) {
            return Err(Error::Precondition(format!(
                "1,2-orbit disagrees with the Chebyshev form at k = {k}: ({cur}) vs f = ({ep}, {eq})"
            )));
        }
        iterates.push(cur);
    }
    Ok(OneTwoOrbit { iterates, f_values })
}

/// Smallest `n >= 1` with `f_n(S) < 0`, for a positive triple with `r < 2`.
pub fn find_negative_in_12_orbit<T: Scalar>(s: &Triple<T>, cap: usize) -> Result<(usize, T)> {
    let two = T::from_int(2);
    if !s.is_positive() || s.r().compare(two) != Ordering::Less {
        return Err(Error::Precondition(format!("({s}) needs p, q > 0 and 0 < r < 2")));
    }
    let r = s.r();
    let (mut prev, mut cur) = (s.p(), s.q());
    for n in 1..=cap {
        let next = r.mul(cur)?.sub(prev)?;
        if next.signum() < 0 {
            return Ok((n, next));
        }
        prev = cur;
        cur = next;
    }
    Err(Error::SearchBudgetExceeded(cap))
}

/// Long-run behaviour of the γ_1/γ_2 iterates of a float triple with
/// `p, q, r >= 2`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SequenceBehavior {
    Diverges,
    ConstantEqual,
    ConvergesToZero,
}

/// With `r = 2 cosh θ`: `r = 2` and `p = q` is constant, `r > 2` and
/// `q e^θ = p` converges to 0, anything else diverges.
pub fn analyze_12_sequence(s: &Triple<f64>) -> Result<SequenceBehavior> {
    let (p, q, r) = (s.p(), s.q(), s.r());
    if !(p >= 2.0 && q >= 2.0 && r >= 2.0) {
        return Err(Error::Precondition(format!("({s}) needs p, q, r >= 2")));
    }
    if float_near(r, 2.0, FLOAT_SHAPE_TOL) {
        return Ok(if float_near(p, q, FLOAT_SHAPE_TOL) {
            SequenceBehavior::ConstantEqual
        } else {
            SequenceBehavior::Diverges
        });
    }
    let lambda = (r / 2.0).acosh().exp();
    Ok(if float_near(q * lambda, p, FLOAT_SHAPE_TOL) {
        SequenceBehavior::ConvergesToZero
    } else {
        SequenceBehavior::Diverges
    })
}

/// `f_{-1}, …, f_n` for a float triple, evaluated in the eigenbasis of the
/// recurrence instead of by forward iteration, which amplifies rounding by
/// `e^{nθ}`. For `r > 2`, `f_k = α λ^k + β λ^{-k}` with `λ = e^θ`; when
/// [`analyze_12_sequence`] reports convergence the growing amplitude `α` is
/// zero and is dropped.
pub fn one_two_sequence_f64(s: &Triple<f64>, n: usize) -> Result<Vec<f64>> {
    let (p, q, r) = (s.p(), s.q(), s.r());
    let ks = (-1..=n as i64).map(|k| k as f64);
    if r < 2.0 && !float_near(r, 2.0, FLOAT_SHAPE_TOL) {
        let mut out = vec![p, q];
        for _ in 1..=n {
            let k = out.len();
            out.push(r * out[k - 1] - out[k - 2]);
        }
        out.truncate(n + 2);
        return Ok(out);
    }
    if float_near(r, 2.0, FLOAT_SHAPE_TOL) {
        return Ok(ks.map(|k| (q - p) * k + q).collect());
    }
    let lambda = (r + (r * r - 4.0).sqrt()) / 2.0;
    let gap = lambda - lambda.recip();
    let converges = p >= 2.0 && q >= 2.0 && analyze_12_sequence(s)? == SequenceBehavior::ConvergesToZero;
    let alpha = if converges { 0.0 } else { (q * lambda - p) / gap };
    let beta = (p - q / lambda) / gap;
    Ok(ks.map(|k| alpha * lambda.powf(k) + beta * lambda.powf(-k)).collect())
}
