//! Minimal representatives with a prescribed Markov constant, and witnesses
//! that every constant `n <= 4` occurs.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrices::{MatM, Triple};
use crate::orbits::lift_to_matm;
use crate::surd::{perfect_square_root, Surd};

/// The root `R >= 2` of `3R² - R³ = C`, with exact integer bounds on `R²`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RBound {
    pub markov: i64,
    pub r: f64,
    pub r_square_floor: u64,
    pub r_square_ceil: u64,
}

/// `√k <= R` exactly: `k√k <= 3k - C`.
fn sqrt_below_root(k: u64, c: i64) -> bool {
    let rhs = 3 * k as i128 - c as i128;
    rhs >= 0 && (k as i128).pow(3) <= rhs * rhs
}

pub fn bound_r(c: i64) -> Result<RBound> {
    if c > 4 {
        return Err(Error::Precondition(format!("no root R >= 2 for C = {c} > 4")));
    }
    if c < -1_000_000_000_000 {
        return Err(Error::Overflow("bound_r"));
    }
    // R = t + 1 with t³ - 3t + (C - 2) = 0.
    let h = (2.0 - c as f64) / 2.0;
    let t = if h <= 1.0 {
        2.0 * (h.acos() / 3.0).cos()
    } else {
        2.0 * (h.acosh() / 3.0).cosh()
    };
    let r = t + 1.0;
    let mut k = ((r * r).floor() as u64).max(4);
    while k > 4 && !sqrt_below_root(k, c) {
        k -= 1;
    }
    while sqrt_below_root(k + 1, c) {
        k += 1;
    }
    let exact = (k as i128).pow(3) == (3 * k as i128 - c as i128).pow(2);
    Ok(RBound {
        markov: c,
        r,
        r_square_floor: k,
        r_square_ceil: if exact { k } else { k + 1 },
    })
}

/// An (M1) triple `p >= q >= r` with `pqr >= 2p²`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct M1Representative {
    pub triple: Triple<Surd>,
    /// `(p², q², r²)`.
    pub squares: [u64; 3],
    pub markov: i64,
}

impl M1Representative {
    fn from_squares(a: u64, b: u64, c: u64, markov: i64) -> Result<Self> {
        let triple = Triple::new(
            Surd::sqrt_of(a as u128)?,
            Surd::sqrt_of(b as u128)?,
            Surd::sqrt_of(c as u128)?,
        )?;
        Ok(M1Representative {
            triple,
            squares: [a, b, c],
            markov,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Enumeration {
    pub markov: i64,
    pub bound: RBound,
    pub p_square_cap: Option<u64>,
    /// Ordered by `(r², q², p²)`.
    pub representatives: Vec<M1Representative>,
    /// Number of `(q², r²)` pairs examined.
    pub visited: u64,
}

/// For fixed `(b, c) = (q², r²)` and `k = b + c - C`, the condition
/// `a + b + c - √(abc) = C` reads `a² - a(bc - 2k) + k² = 0`, and (M1) is
/// `a <= k`, the smaller root.
fn m1_square_for(b: u64, c: u64, markov: i64) -> Option<u64> {
    let k = b as i128 + c as i128 - markov as i128;
    let bc = b as i128 * c as i128;
    let disc = bc.checked_mul(bc - 4 * k)?;
    if disc < 0 {
        return None;
    }
    let d = perfect_square_root(disc as u128)? as i128;
    let num = bc - 2 * k - d;
    if num <= 0 || num % 2 != 0 {
        return None;
    }
    u64::try_from(num / 2).ok()
}

/// All (M1) representatives `p >= q >= r` in Ŝ with `C(S) = markov` and
/// entries at least 2. The `C = 4` family `(p, p, 2)` is infinite, so it needs
/// `p_square_cap`.
pub fn enumerate_m1(markov: i64, p_square_cap: Option<u64>) -> Result<Enumeration> {
    let bound = bound_r(markov)?;
    if markov == 4 {
        let cap = p_square_cap.ok_or_else(|| Error::Precondition("C = 4 needs a cap on p²".into()))?;
        let representatives = (4..=cap)
            .map(|a| M1Representative::from_squares(a, a, 4, 4))
            .collect::<Result<Vec<_>>>()?;
        return Ok(Enumeration {
            markov,
            bound,
            p_square_cap,
            visited: representatives.len() as u64,
            representatives,
        });
    }
    let cs: Vec<u64> = (5..=bound.r_square_floor).collect();
    let per_c: Vec<Result<(Vec<M1Representative>, u64)>> = cs
        .par_iter()
        .map(|&c| {
            let num = c as i128 * (c as i128 - markov as i128);
            let a_max = u64::try_from(num / (c as i128 - 4)).map_err(|_| Error::Overflow("a bound"))?;
            let a_max = p_square_cap.map_or(a_max, |cap| a_max.min(cap));
            let mut found = Vec::new();
            let mut visited = 0;
            for b in c..=a_max {
                visited += 1;
                if let Some(a) = m1_square_for(b, c, markov) {
                    if a >= b && a <= a_max {
                        found.push(M1Representative::from_squares(a, b, c, markov)?);
                    }
                }
            }
            Ok((found, visited))
        })
        .collect();
    let mut representatives = Vec::new();
    let mut visited = 0;
    for r in per_c {
        let (found, v) = r?;
        representatives.extend(found);
        visited += v;
    }
    Ok(Enumeration {
        markov,
        bound,
        p_square_cap,
        representatives,
        visited,
    })
}

/// Aligned table with columns p, q, r and C.
pub fn format_table(reps: &[M1Representative]) -> String {
    let rows: Vec<[String; 4]> = reps
        .iter()
        .map(|r| {
            let e = r.triple.entries();
            [e[0].to_string(), e[1].to_string(), e[2].to_string(), r.markov.to_string()]
        })
        .collect();
    let header = ["p", "q", "r", "C"].map(String::from);
    let mut widths = header.clone().map(|h| h.len());
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    for row in std::iter::once(&header).chain(&rows) {
        let line: Vec<String> = row.iter().zip(widths).map(|(c, w)| format!("{c:>w$}")).collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub markov: i64,
    pub triple: Triple<Surd>,
    pub lift: MatM,
}

fn witness_from(markov: i64, squares: [u128; 3]) -> Result<Witness> {
    let triple = Triple::from_array([
        Surd::sqrt_of(squares[0])?,
        Surd::sqrt_of(squares[1])?,
        Surd::sqrt_of(squares[2])?,
    ])?;
    Ok(Witness {
        markov,
        lift: lift_to_matm(&triple)?,
        triple,
    })
}

fn gap(n: i64, from: i64) -> Result<u128> {
    if n > 4 {
        return Err(Error::Precondition(format!("witnesses exist only for C <= 4, got {n}")));
    }
    Ok((from as i128 - n as i128) as u128)
}

/// `(√(5(5-n)), 2√(5-n), √5)`, which has `C = n` and entries at least 2.
pub fn surjectivity_witness(n: i64) -> Result<Witness> {
    let g = gap(n, 5)?;
    witness_from(n, [5 * g, 4 * g, 5])
}

/// `(√(9-n), √(9-n), 3)`, a second family with `C = n`.
pub fn alternate_witness(n: i64) -> Result<Witness> {
    let g = gap(n, 9)?;
    witness_from(n, [g, g, 9])
}
