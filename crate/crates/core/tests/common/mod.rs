//! Independent oracles shared by the integration tests. Nothing here calls the
//! library routine it is meant to check.

#![allow(dead_code)]

use markov_mutator::MatM;
use rand::Rng;

pub type Mat = [[i128; 3]; 3];

pub fn to_mat(m: &MatM) -> Mat {
    let (t, b) = (m.top(), m.bottom());
    let [x, y, z] = t.map(|v| v as i128);
    let [xp, yp, zp] = b.map(|v| v as i128);
    [[0, -zp, y], [z, 0, -xp], [-yp, x, 0]]
}

pub fn from_mat(b: &Mat) -> ([i128; 3], [i128; 3]) {
    ([b[2][1], b[0][2], b[1][0]], [-b[1][2], -b[2][0], -b[0][1]])
}

/// Matrix mutation written out entry by entry from the definition.
pub fn mu(b: &Mat, k: usize) -> Mat {
    let mut out = [[0i128; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = if i == k || j == k {
                -b[i][j]
            } else {
                let mut v = b[i][j];
                if b[i][k] > 0 && b[k][j] > 0 {
                    v += b[i][k] * b[k][j];
                } else if b[i][k] < 0 && b[k][j] < 0 {
                    v -= b[i][k] * b[k][j];
                }
                v
            };
        }
    }
    out
}

/// Cyclic: the three entries `b21, b32, b13` are nonzero and share a sign.
pub fn mat_is_cyclic(b: &Mat) -> bool {
    let s = [b[1][0].signum(), b[2][1].signum(), b[0][2].signum()];
    s[0] != 0 && s[0] == s[1] && s[1] == s[2]
}

pub fn mu_word(m: &MatM, word: &[u8]) -> Mat {
    word.iter().fold(to_mat(m), |b, &k| mu(&b, k as usize - 1))
}

/// Every positive tuple with entries in `1..=n` and `xyz = x'y'z'`.
pub fn positive_tuples(n: i64) -> Vec<MatM> {
    let mut out = Vec::new();
    for x in 1..=n {
        for y in 1..=n {
            for z in 1..=n {
                for xp in 1..=n {
                    for yp in 1..=n {
                        for zp in 1..=n {
                            if x * y * z == xp * yp * zp {
                                out.push(MatM::new([x, y, z], [xp, yp, zp]).unwrap());
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// `(lu, mv, nw / lw, mu, nv)` always satisfies the product identity; signed
/// and zero `l, m, n` give acyclic tuples.
pub fn random_tuple<R: Rng>(rng: &mut R, max: i64, signed: bool) -> MatM {
    let coef = |rng: &mut R| {
        let v = rng.gen_range(1..=max);
        if signed && rng.gen_bool(0.3) {
            if rng.gen_bool(0.2) {
                0
            } else {
                -v
            }
        } else {
            v
        }
    };
    let (l, m, n) = (coef(rng), coef(rng), coef(rng));
    let (u, v, w) = (rng.gen_range(1..=max), rng.gen_range(1..=max), rng.gen_range(1..=max));
    MatM::new([l * u, m * v, n * w], [l * w, m * u, n * v]).unwrap()
}

pub fn isqrt_exact(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let mut r = (n as f64).sqrt() as i128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    (r * r == n).then_some(r)
}

/// Squares `(a, b, c)`, `a >= b >= c > 4`, of every (M1) triple with Markov
/// constant `target < 4`, by scanning the whole grid
/// `c <= R², c <= b <= a <= c(c - C)/(c - 4)` with no early pruning.
pub fn brute_force_squares(target: i64) -> Vec<[i64; 3]> {
    let r = bisect_root(target as f64);
    let c_max = (r * r).floor() as i64 + 1;
    let mut out = Vec::new();
    for c in 5..=c_max {
        let a_max = c * (c - target) / (c - 4);
        for b in c..=a_max {
            for a in b..=a_max {
                let abc = a as i128 * b as i128 * c as i128;
                let Some(s) = isqrt_exact(abc) else { continue };
                if a as i128 + b as i128 + c as i128 - s != target as i128 {
                    continue;
                }
                if s >= 2 * a as i128 {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// Root `R >= 2` of `3R² - R³ = C` by bisection.
pub fn bisect_root(c: f64) -> f64 {
    let (mut lo, mut hi) = (2.0f64, 3.0 + c.abs().cbrt() + 1.0);
    for _ in 0..300 {
        let mid = 0.5 * (lo + hi);
        if 3.0 * mid * mid - mid * mid * mid > c {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Chebyshev `u_{-1} .. u_n` at an integer point.
pub fn chebyshev_int(r: i128, n: usize) -> Vec<i128> {
    let mut u = vec![0i128, 1];
    for _ in 1..=n {
        let k = u.len();
        u.push(r * u[k - 1] - u[k - 2]);
    }
    u
}
