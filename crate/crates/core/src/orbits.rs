//! γ-orbits: reduction to the fundamental domain, bounded orbit enumeration,
//! the μ-word search for acyclic matrices, and lifting triples to matrices.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{is_cluster_cyclic, mk_class_matm, MkClass};
use crate::error::{Error, Result};
use crate::matrices::{mutate_matrix, MatM, MutationPath, Triple};
use crate::search::SearchOptions;
use crate::surd::{gcd, Surd};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub representative: MatM,
    /// Word taking the representative to the input.
    pub path: MutationPath,
    /// Number of γ images evaluated during the descent.
    pub explored: usize,
    /// The input passed the cluster-cyclicity test and the representative
    /// satisfies `xyz >= 2xx', 2yy', 2zz'`.
    pub is_minimal_certified: bool,
}

/// Greedy descent: while some `γ_i(M) <= M` with `γ_i(M) != M`, apply the
/// smallest such `i`. On a cluster-cyclic positive tuple this stops at the
/// unique element of the fundamental domain in the orbit.
pub fn reduce_to_fundamental(m: &MatM) -> Result<OrbitReport> {
    if !m.is_positive() {
        return Err(Error::Precondition(format!("{m} is not positive-cyclic")));
    }
    if !is_cluster_cyclic(m)?.is_cluster_cyclic() {
        return Err(Error::NotClusterCyclic);
    }
    let mut cur = *m;
    let mut word = Vec::new();
    let mut explored = 0;
    'descent: loop {
        for k in 1..=3 {
            explored += 1;
            // an image that leaves the 64-bit range is larger than `cur`
            let next = match cur.gamma(k) {
                Ok(g) => g,
                Err(Error::Overflow(_)) => continue,
                Err(e) => return Err(e),
            };
            if next != cur && next.le_entrywise(&cur) {
                word.push(k as u8);
                cur = next;
                continue 'descent;
            }
        }
        break;
    }
    word.reverse();
    Ok(OrbitReport {
        is_minimal_certified: mk_class_matm(&cur)? == MkClass::M1,
        representative: cur,
        path: MutationPath::new(word)?,
        explored,
    })
}

/// A bounded piece of a γ-orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BfsOrbit {
    /// Distinct members, sorted.
    pub members: Vec<MatM>,
    pub depth: usize,
    pub entry_bound: u64,
    /// Images dropped for exceeding the entry bound.
    pub pruned_by_bound: usize,
    /// Images dropped because they left the 64-bit range.
    pub pruned_by_overflow: usize,
}

/// All γ-word images of length at most `opts.depth` whose entries stay within
/// `opts.entry_bound`. Permutations are not identified.
pub fn orbit_bfs(m: &MatM, opts: &SearchOptions) -> Result<BfsOrbit> {
    let mut visited: BTreeSet<MatM> = BTreeSet::new();
    visited.insert(*m);
    let mut frontier = vec![*m];
    let (mut pruned_by_bound, mut pruned_by_overflow) = (0, 0);
    for _ in 0..opts.depth {
        opts.check_cancelled()?;
        if frontier.is_empty() {
            break;
        }
        let images: Vec<Result<MatM>> = frontier
            .par_iter()
            .flat_map_iter(|cur| (1..=3).map(move |k| cur.gamma(k)))
            .collect();
        let mut next = Vec::new();
        for img in images {
            match img {
                Ok(g) if g.max_abs_entry() > opts.entry_bound => pruned_by_bound += 1,
                Ok(g) => {
                    if visited.insert(g) {
                        next.push(g);
                    }
                }
                Err(Error::Overflow(_)) => pruned_by_overflow += 1,
                Err(e) => return Err(e),
            }
        }
        frontier = next;
    }
    Ok(BfsOrbit {
        members: visited.into_iter().collect(),
        depth: opts.depth,
        entry_bound: opts.entry_bound,
        pruned_by_bound,
        pruned_by_overflow,
    })
}

/// Whether `rep` is entrywise at most every member of its bounded orbit.
pub fn is_minimal_in_bfs(rep: &MatM, opts: &SearchOptions) -> Result<bool> {
    Ok(orbit_bfs(rep, opts)?.members.iter().all(|g| rep.le_entrywise(g)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AcyclicHit {
    pub path: MutationPath,
    pub matrix: MatM,
}

type BigMatrix = [[BigInt; 3]; 3];

fn big_is_cyclic(b: &BigMatrix) -> bool {
    let s = [b[1][0].signum(), b[2][1].signum(), b[0][2].signum()];
    !s[0].is_zero() && s[0] == s[1] && s[1] == s[2]
}

/// Breadth-first search over μ-words of length at most `opts.depth` for a
/// matrix that is not cyclic. Runs on arbitrary-precision entries, since
/// mutation growth is doubly exponential in the word length.
pub fn mu_orbit_search_acyclic(m: &MatM, opts: &SearchOptions) -> Result<Option<AcyclicHit>> {
    let start: BigMatrix = m.to_matrix3().map(|row| row.map(BigInt::from));
    let hit = |b: &BigMatrix, word: Vec<u8>| -> Result<Option<AcyclicHit>> {
        let mut out = [[0i64; 3]; 3];
        for r in 0..3 {
            for c in 0..3 {
                out[r][c] = b[r][c].to_i64().ok_or(Error::Overflow("acyclic witness entry"))?;
            }
        }
        Ok(Some(AcyclicHit {
            path: MutationPath::new(word)?,
            matrix: MatM::from_matrix3(out)?,
        }))
    };
    if !big_is_cyclic(&start) {
        return hit(&start, Vec::new());
    }
    let mut visited: HashSet<BigMatrix> = HashSet::new();
    visited.insert(start.clone());
    let mut frontier: Vec<(BigMatrix, Vec<u8>)> = vec![(start, Vec::new())];
    for _ in 0..opts.depth {
        opts.check_cancelled()?;
        let mut next = Vec::new();
        for (b, word) in &frontier {
            for k in 1..=3u8 {
                if word.last() == Some(&k) {
                    continue;
                }
                let img = mutate_matrix(b, k as usize - 1);
                let mut w = word.clone();
                w.push(k);
                if !big_is_cyclic(&img) {
                    return hit(&img, w);
                }
                if visited.insert(img.clone()) {
                    next.push((img, w));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(None)
}

/// An integer tuple whose skew-symmetrized form is `s`.
///
/// Writing `p = l√a`, `q = m√b`, `r = n√c` with squarefree radicands,
/// membership forces `a = wu`, `b = uv`, `c = vw` for `u = gcd(a, b)`,
/// `v = gcd(b, c)`, `w = gcd(c, a)`, and `(lu, mv, nw / lw, mu, nv)` works.
/// Triples with a zero entry use `(p², 1, 0 / 1, q², 0)` and its rearrangements.
pub fn lift_to_matm(s: &Triple<Surd>) -> Result<MatM> {
    let e = *s.entries();
    let overflow = || Error::Overflow("lift");
    let signed = |x: Surd, mag: u64| -> Result<i64> {
        let v = i64::try_from(mag).map_err(|_| overflow())?;
        Ok(if x.sign() < 0 { -v } else { v })
    };
    if e.iter().any(|x| x.is_zero()) {
        let mut top = [0i64; 3];
        let mut bottom = [0i64; 3];
        let mut first = true;
        for i in 0..3 {
            if e[i].is_zero() {
                continue;
            }
            let sq = u64::try_from(e[i].square()?).map_err(|_| overflow())?;
            if first {
                top[i] = signed(e[i], sq)?;
                bottom[i] = signed(e[i], 1)?;
                first = false;
            } else {
                top[i] = signed(e[i], 1)?;
                bottom[i] = signed(e[i], sq)?;
            }
        }
        return MatM::new(top, bottom);
    }
    let [a, b, c] = e.map(|x| x.radicand());
    let (u, v, w) = (gcd(a, b), gcd(b, c), gcd(c, a));
    if a != w * u || b != u * v || c != v * w {
        return Err(Error::NotInShat(format!("({s}): radicands {a}, {b}, {c} do not pair up")));
    }
    let part = |x: Surd, f: u64| -> Result<i64> {
        signed(x, x.coeff().checked_mul(f).ok_or_else(overflow)?)
    };
    MatM::new(
        [part(e[0], u)?, part(e[1], v)?, part(e[2], w)?],
        [part(e[0], w)?, part(e[1], u)?, part(e[2], v)?],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> MatM {
        s.parse().unwrap()
    }
    fn st(s: &str) -> Triple<Surd> {
        s.parse().unwrap()
    }

    #[test]
    fn reduce_examples() {
        let r = reduce_to_fundamental(&m("6 3 3 / 6 3 3")).unwrap();
        assert_eq!(r.representative, m("3 3 3 / 3 3 3"));
        assert_eq!(r.path.indices(), &[1]);
        assert!(r.is_minimal_certified);
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains(r#""representative":"3 3 3 / 3 3 3""#));
        assert!(json.contains(r#""path":[1]"#));

        let r = reduce_to_fundamental(&m("2 2 2 / 2 2 2")).unwrap();
        assert_eq!(r.representative, m("2 2 2 / 2 2 2"));
        assert!(r.path.is_empty());

        assert_eq!(reduce_to_fundamental(&m("1 1 1 / 1 1 1")), Err(Error::NotClusterCyclic));
        assert!(matches!(reduce_to_fundamental(&m("0 1 1 / 0 1 1")), Err(Error::Precondition(_))));
    }

    #[test]
    fn reduce_path_maps_representative_to_input() {
        let input = m("3 3 3 / 3 3 3").gamma_word(&[2, 1, 3, 2]).unwrap();
        let r = reduce_to_fundamental(&input).unwrap();
        assert_eq!(r.representative, m("3 3 3 / 3 3 3"));
        assert_eq!(r.representative.gamma_path(&r.path).unwrap(), input);
    }

    #[test]
    fn bfs_examples() {
        let fixed = m("4 1 2 / 1 4 2");
        for depth in [0, 1, 5] {
            assert_eq!(orbit_bfs(&fixed, &SearchOptions::with_depth(depth)).unwrap().members, vec![fixed]);
        }
        let opts = SearchOptions {
            depth: 3,
            entry_bound: 1_000_000,
            cancel: None,
        };
        let o = orbit_bfs(&m("3 3 3 / 3 3 3"), &opts).unwrap();
        // words without repeats: 1 + 3 + 6 + 12 images, all distinct
        assert_eq!(o.members.len(), 22);
        assert!(o.members.iter().all(|g| g.markov().unwrap() == 0));
    }

    #[test]
    fn bfs_prunes_and_cancels() {
        let opts = SearchOptions {
            depth: 8,
            entry_bound: 100,
            cancel: None,
        };
        let o = orbit_bfs(&m("3 3 3 / 3 3 3"), &opts).unwrap();
        assert!(o.pruned_by_bound > 0);
        assert!(o.members.iter().all(|g| g.max_abs_entry() <= 100));
        let token = crate::search::CancelToken::new();
        token.cancel();
        let opts = SearchOptions {
            cancel: Some(token),
            ..SearchOptions::default()
        };
        assert_eq!(orbit_bfs(&m("3 3 3 / 3 3 3"), &opts), Err(Error::Cancelled));
    }

    #[test]
    fn mu_search_examples() {
        let hit = mu_orbit_search_acyclic(&m("1 1 1 / 1 1 1"), &SearchOptions::default())
            .unwrap()
            .expect("acyclic image");
        assert!(hit.path.len() <= 3);
        assert_eq!(hit.matrix.cyclicity(), crate::CyclicityClass::Acyclic);
        assert_eq!(m("1 1 1 / 1 1 1").mutate_word(hit.path.indices()).unwrap(), hit.matrix);
        assert_eq!(mu_orbit_search_acyclic(&m("2 2 2 / 2 2 2"), &SearchOptions::default()).unwrap(), None);
        assert_eq!(mu_orbit_search_acyclic(&m("3 3 3 / 3 3 3"), &SearchOptions::default()).unwrap(), None);
    }

    #[test]
    fn lift_examples() {
        assert_eq!(lift_to_matm(&st("5, 2*sqrt(5), sqrt(5)")).unwrap(), m("5 10 1 / 5 2 5"));
        assert_eq!(lift_to_matm(&st("3,3,3")).unwrap(), m("3 3 3 / 3 3 3"));
        assert_eq!(lift_to_matm(&st("2,3,0")).unwrap(), m("4 1 0 / 1 9 0"));
        for t in ["5, 2*sqrt(5), sqrt(5)", "3*sqrt(2), 2*sqrt(3), sqrt(6)", "0, sqrt(3), 0", "-2, sqrt(6), sqrt(6)"] {
            let s = st(t);
            assert_eq!(lift_to_matm(&s).unwrap().sk().unwrap(), s, "{t}");
        }
    }
}
