mod common;

use markov_mutator::classify::{ab_class, is_cluster_cyclic, is_fixed_point, mk_class, AbClass, MkClass};
use markov_mutator::enumerate::{alternate_witness, enumerate_m1, surjectivity_witness};
use markov_mutator::orbits::{lift_to_matm, orbit_bfs, reduce_to_fundamental};
use markov_mutator::search::{SearchOptions, DEFAULT_DESCENT_CAP};
use markov_mutator::{Error, MatM, Perm, Surd, Triple};
use proptest::prelude::*;

use common::*;

fn tuple(l: i64, m: i64, n: i64, u: i64, v: i64, w: i64) -> MatM {
    MatM::new([l * u, m * v, n * w], [l * w, m * u, n * v]).unwrap()
}

fn any_tuple() -> impl Strategy<Value = MatM> {
    (-6i64..=6, -6i64..=6, -6i64..=6, 1i64..=6, 1i64..=6, 1i64..=6)
        .prop_map(|(l, m, n, u, v, w)| tuple(l, m, n, u, v, w))
}

fn positive_tuple(max: i64) -> impl Strategy<Value = MatM> {
    (1..=max, 1..=max, 1..=max, 1..=max, 1..=max, 1..=max).prop_map(|(l, m, n, u, v, w)| tuple(l, m, n, u, v, w))
}

fn surd() -> impl Strategy<Value = Surd> {
    (any::<bool>(), 0u128..5_000).prop_map(|(neg, m)| {
        let s = Surd::sqrt_of(m).unwrap();
        if neg {
            -s
        } else {
            s
        }
    })
}

fn word() -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(1u8..=3, 0..=5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn surd_square_round_trip(m in 0u128..10_000_000) {
        prop_assert_eq!(Surd::sqrt_of(m).unwrap().square().unwrap(), m as i128);
    }

    #[test]
    fn surd_mul_laws(a in surd(), b in surd(), c in surd()) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&Surd::ONE).unwrap(), a);
    }

    #[test]
    fn surd_order_matches_floats(a in surd(), b in surd()) {
        let (x, y) = (a.to_f64(), b.to_f64());
        if (x - y).abs() > 1e-6 {
            prop_assert_eq!(a.cmp(&b), x.partial_cmp(&y).unwrap());
        }
    }

    #[test]
    fn surd_text_round_trip(a in surd()) {
        prop_assert_eq!(a.to_string().parse::<Surd>().unwrap(), a);
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Surd>(&json).unwrap(), a);
    }

    #[test]
    fn mutation_is_an_involution_and_matches_definition(m in any_tuple(), k in 1usize..=3) {
        let once = m.mutate(k).unwrap();
        prop_assert_eq!(to_mat(&once), mu(&to_mat(&m), k - 1));
        prop_assert_eq!(once.mutate(k).unwrap(), m);
    }

    #[test]
    fn gamma_is_an_involution_and_keeps_products(m in any_tuple(), k in 1usize..=3) {
        let g = m.gamma(k).unwrap();
        prop_assert_eq!(g.gamma(k).unwrap(), m);
        let (t, b) = (g.top().map(|v| v as i128), g.bottom().map(|v| v as i128));
        prop_assert_eq!(t[0] * t[1] * t[2], b[0] * b[1] * b[2]);
    }

    #[test]
    fn gamma_is_minus_mu_on_cyclic_input(m in positive_tuple(6), k in 1usize..=3) {
        prop_assert_eq!(m.mutate(k).unwrap().negate().unwrap(), m.gamma(k).unwrap());
    }

    #[test]
    fn markov_invariances(m in any_tuple(), k in 1usize..=3, s in 0usize..6, t in any::<bool>()) {
        prop_assert_eq!(m.gamma(k).unwrap().markov().unwrap(), m.markov().unwrap());
        prop_assert_eq!(m.permute(Perm::all()[s], t).markov().unwrap(), m.markov().unwrap());
        prop_assert_eq!(
            m.mutate(k).unwrap().markov_mutation_invariant().unwrap(),
            m.markov_mutation_invariant().unwrap()
        );
        prop_assert_eq!(m.sk().unwrap().markov().unwrap(), m.markov().unwrap());
        if m.cyclicity() != markov_mutator::CyclicityClass::Acyclic {
            prop_assert_eq!(m.markov_mutation_invariant().unwrap(), m.markov_abs().unwrap());
        }
    }

    #[test]
    fn sk_signs_follow_columns(m in any_tuple()) {
        let s = m.sk().unwrap();
        for i in 0..3 {
            prop_assert_eq!(s.get(i).sign() as i64, m.top()[i].signum());
            prop_assert_eq!(s.get(i).square().unwrap(), m.column_product(i));
        }
    }

    #[test]
    fn sk_commutes_with_gamma(m in positive_tuple(6), k in 1usize..=3) {
        prop_assert_eq!(m.sk().unwrap().gamma(k).unwrap(), m.gamma(k).unwrap().sk().unwrap());
    }

    #[test]
    fn text_forms_round_trip(m in any_tuple()) {
        prop_assert_eq!(m.to_string().parse::<MatM>().unwrap(), m);
        prop_assert_eq!(MatM::from_matrix3(m.to_matrix3()).unwrap(), m);
        let json = serde_json::to_string(&m).unwrap();
        prop_assert_eq!(serde_json::from_str::<MatM>(&json).unwrap(), m);
    }

    #[test]
    fn triple_lemmas(m in positive_tuple(8)) {
        let t = m.sk().unwrap();
        let two = Surd::integer(2);
        let c = t.markov().unwrap();
        match mk_class(&t).unwrap() {
            MkClass::M1 => {
                prop_assert!(t.entries().iter().all(|e| *e >= two));
                prop_assert!(c <= 4);
                let d = t.sorted_desc();
                prop_assert_eq!(c == 4, d.p() == d.q() && d.r() == two);
            }
            MkClass::M3 => prop_assert!(t.entries().iter().any(|e| *e < two)),
            MkClass::M2 => {}
        }
    }

    #[test]
    fn nonpositive_third_entry_is_m3(p in 0.01f64..10.0, q in 0.01f64..10.0, r in -10.0f64..=0.0) {
        prop_assert_eq!(mk_class(&Triple::new(p, q, r).unwrap()).unwrap(), MkClass::M3);
    }

    #[test]
    fn words_from_m1_increase(m in positive_tuple(8), w in prop::collection::vec(1u8..=3, 0..=8)) {
        let t = m.sk().unwrap();
        prop_assume!(mk_class(&t).unwrap() == MkClass::M1);
        let mut cur = t;
        let mut last = 0;
        for k in w {
            if k == last {
                continue;
            }
            let next = match cur.gamma(k as usize) {
                Ok(n) => n,
                Err(Error::Overflow(_)) => break,
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            };
            prop_assert!(cur.le_entrywise(&next), "({}) -> ({})", cur, next);
            cur = next;
            last = k;
        }
    }

    #[test]
    fn criterion_matches_triple_form(m in positive_tuple(6)) {
        let t = m.sk().unwrap();
        let two = Surd::integer(2);
        let expected = t.entries().iter().all(|e| *e >= two) && t.markov().unwrap() <= 4;
        prop_assert_eq!(is_cluster_cyclic(&m).unwrap().is_cluster_cyclic(), expected);
    }

    #[test]
    fn acyclic_certificates_reach_acyclic_matrices(m in positive_tuple(6)) {
        if let markov_mutator::classify::Certificate::ClusterAcyclic { witness_path, .. } = is_cluster_cyclic(&m).unwrap() {
            prop_assert!(!mat_is_cyclic(&mu_word(&m, witness_path.indices())));
            // every proper prefix stays cyclic
            for len in 0..witness_path.len() {
                prop_assert!(mat_is_cyclic(&mu_word(&m, &witness_path.indices()[..len])));
            }
        }
    }

    #[test]
    fn non_cluster_positive_has_nonnegative_markov(m in positive_tuple(8)) {
        let t = m.sk().unwrap();
        if let Err(Error::NotClusterPositive(_)) = ab_class(&t, DEFAULT_DESCENT_CAP) {
            prop_assert!(t.markov().unwrap() >= 0);
        }
    }

    #[test]
    fn exact_descent_ends_in_m1(m in positive_tuple(8)) {
        let t = m.sk().unwrap();
        if let Ok(AbClass::A { representative, path }) = ab_class(&t, DEFAULT_DESCENT_CAP) {
            prop_assert_eq!(mk_class(&representative).unwrap(), MkClass::M1);
            prop_assert_eq!(t.gamma_word(path.indices()).unwrap(), representative);
        }
    }

    #[test]
    fn lift_round_trips(m in any_tuple()) {
        let s = m.sk().unwrap();
        prop_assert_eq!(lift_to_matm(&s).unwrap().sk().unwrap(), s);
    }

    #[test]
    fn reduction_is_idempotent_and_canonical(m in positive_tuple(5), w in word()) {
        prop_assume!(is_cluster_cyclic(&m).unwrap().is_cluster_cyclic());
        let r = reduce_to_fundamental(&m).unwrap();
        let again = reduce_to_fundamental(&r.representative).unwrap();
        prop_assert_eq!(again.representative, r.representative);
        prop_assert!(again.path.is_empty());
        if let Ok(t) = m.gamma_word(&w) {
            prop_assert_eq!(reduce_to_fundamental(&t).unwrap().representative, r.representative);
        }
        let rep = r.representative;
        let xyz = rep.xyz().unwrap();
        prop_assert!((0..3).all(|i| xyz >= 2 * rep.column_product(i)));
    }

    #[test]
    fn witnesses_hit_every_constant(n in -1_000_000i64..=4) {
        let two = Surd::integer(2);
        for w in [surjectivity_witness(n).unwrap(), alternate_witness(n).unwrap()] {
            prop_assert_eq!(w.triple.markov().unwrap(), n as i128);
            prop_assert_eq!(w.lift.sk().unwrap(), w.triple);
        }
        let w = surjectivity_witness(n).unwrap();
        prop_assert!(w.triple.entries().iter().all(|e| *e >= two));
    }
}

#[test]
fn bounded_orbits_are_fixed_points() {
    let opts = SearchOptions {
        depth: 8,
        entry_bound: 1_000_000_000,
        cancel: None,
    };
    for m in positive_tuples(4) {
        if !is_cluster_cyclic(&m).unwrap().is_cluster_cyclic() {
            continue;
        }
        let o = orbit_bfs(&m, &opts).unwrap();
        if is_fixed_point(&m) {
            assert_eq!(o.members, vec![m]);
        } else {
            assert!(o.members.len() > 8, "{m} has only {} orbit members", o.members.len());
        }
    }
}

#[test]
fn enumerated_representatives_satisfy_the_bounds() {
    for c in -40..=3 {
        let e = enumerate_m1(c, None).unwrap();
        let brute: Vec<[i64; 3]> = brute_force_squares(c);
        let got: Vec<[i64; 3]> = e.representatives.iter().map(|r| r.squares.map(|v| v as i64)).collect();
        let (mut a, mut b) = (brute.clone(), got.clone());
        a.sort();
        b.sort();
        assert_eq!(a, b, "C = {c}");
        for r in &e.representatives {
            let t = r.triple;
            let [pa, qb, rc] = r.squares.map(|v| v as i128);
            assert!(pa >= qb && qb >= rc && rc > 4);
            assert_eq!(t.markov().unwrap(), c as i128);
            assert_eq!(mk_class(&t).unwrap(), MkClass::M1);
            // C(S) <= C(r, r, r) = 3r² - r³, i.e. r³ <= 3r² - C
            let rhs = 3 * rc - c as i128;
            assert!(rhs >= 0 && rc * rc * rc <= rhs * rhs);
            let lift = lift_to_matm(&t).unwrap();
            assert!(is_cluster_cyclic(&lift).unwrap().is_cluster_cyclic());
        }
    }
}

#[test]
fn bound_matches_bisection() {
    for c in -500..4 {
        let b = markov_mutator::enumerate::bound_r(c).unwrap();
        let r = bisect_root(c as f64);
        assert!((b.r - r).abs() < 1e-9, "C = {c}");
        assert!((b.r_square_floor as f64) <= r * r + 1e-9 && r * r < (b.r_square_floor + 1) as f64 + 1e-9);
    }
}

#[test]
fn float_case_b_has_markov_four() {
    for (q, r) in [(2.3, 3.1), (4.0, 2.5), (5.5, 5.1)] {
        let p: f64 = (q * r + ((q * q - 4.0) * (r * r - 4.0_f64)).sqrt()) / 2.0;
        let s = Triple::new(p, q, r).unwrap();
        if let AbClass::B { .. } = ab_class(&s, DEFAULT_DESCENT_CAP).unwrap() {
            assert!((s.markov().unwrap() - 4.0).abs() < 1e-9);
        }
    }
}
