use std::collections::BTreeSet;

use num_traits::Zero;
use perdom_core::isocrystal::{
    acceptable_set_gln, dominance_leq, hasse_edges, is_acceptable, NewtonVector,
};
use perdom_core::linalg::{q, q_frac, to_q, Q};
use perdom_core::rootdata::{build_root_datum, DiagramAutomorphism, FormNormalization};
use proptest::prelude::*;

fn partial_sums_leq(x: &[Q], y: &[Q]) -> bool {
    let mut sx = Q::zero();
    let mut sy = Q::zero();
    for (a, b) in x.iter().zip(y) {
        sx += a;
        sy += b;
        if sx > sy {
            return false;
        }
    }
    sx == sy
}

/// Every nonincreasing vector of fractions with denominator at most `n` in
/// `[mu_min, mu_max]`, kept if integral per slope block and below `mu`.
fn brute_force_acceptable(mu: &[i64]) -> BTreeSet<Vec<Q>> {
    let n = mu.len();
    let (lo, hi) = (*mu.last().unwrap(), mu[0]);
    let mut candidates: BTreeSet<Q> = BTreeSet::new();
    for m in 1..=n as i64 {
        for k in m * lo..=m * hi {
            candidates.insert(q_frac(k, m));
        }
    }
    let candidates: Vec<Q> = candidates.into_iter().rev().collect();
    let mu_q = to_q(mu);
    let mut out = BTreeSet::new();
    let mut cur = Vec::new();
    fn go(cands: &[Q], n: usize, cur: &mut Vec<Q>, start: usize, mu: &[Q], out: &mut BTreeSet<Vec<Q>>) {
        if cur.len() == n {
            let nv = NewtonVector::gln(cur.clone()).unwrap();
            if nv.is_integral() && partial_sums_leq(cur, mu) {
                out.insert(cur.clone());
            }
            return;
        }
        for i in start..cands.len() {
            cur.push(cands[i].clone());
            go(cands, n, cur, i, mu, out);
            cur.pop();
        }
    }
    go(&candidates, n, &mut cur, 0, &mu_q, &mut out);
    out
}

fn check(mu: &[i64]) {
    let got: Vec<Vec<Q>> = acceptable_set_gln(mu.len(), mu)
        .unwrap()
        .into_iter()
        .map(|p| p.newton.values)
        .collect();
    let mut sorted = got.clone();
    sorted.sort_by(|a, b| b.cmp(a));
    assert_eq!(got, sorted, "mu={mu:?}");
    let set: BTreeSet<Vec<Q>> = got.into_iter().collect();
    assert_eq!(set, brute_force_acceptable(mu), "mu={mu:?}");
}

#[test]
fn small_cases_against_brute_force() {
    check(&[1, 0, 0]);
    check(&[1, 1, 0]);
    check(&[2, 0, -1]);
    check(&[1, 0, 0, 0]);
    check(&[1, 1, 0, 0]);
    check(&[2, 1, 0, -1]);
    check(&[1, 0, 0, 0, 0]);
    check(&[3, 0]);
}

#[test]
fn gl3_minuscule_chain() {
    let pts = acceptable_set_gln(3, &[1, 0, 0]).unwrap();
    let slopes: Vec<Vec<Q>> = pts.iter().map(|p| p.newton.values.clone()).collect();
    assert_eq!(
        slopes,
        vec![
            to_q(&[1, 0, 0]),
            vec![q_frac(1, 2), q_frac(1, 2), q(0)],
            vec![q_frac(1, 3); 3],
        ]
    );
    assert!(pts.iter().all(|p| p.kappa == 1));
    assert_eq!(hasse_edges(&pts), vec![(1, 0), (2, 1)]);
}

#[test]
fn general_acceptability_matches_gln() {
    let d = build_root_datum(&"GL3".parse().unwrap(), &FormNormalization::default()).unwrap();
    let id = DiagramAutomorphism::identity(&d);
    let basic = |x: Q| NewtonVector::general(&d, vec![x; 3]).unwrap();
    assert!(is_acceptable(&d, &basic(q_frac(1, 3)), &[1, 0, 0], &id).unwrap());
    assert!(!is_acceptable(&d, &basic(q(0)), &[1, 0, 0], &id).unwrap());
    let flip = DiagramAutomorphism::from_simple_perm(&d, &[1, 0]).unwrap();
    assert!(is_acceptable(&d, &basic(q(0)), &[1, 0, -1], &flip).unwrap());
}

fn sorted_vec(len: usize) -> impl Strategy<Value = Vec<Q>> {
    proptest::collection::vec(-3i64..=3, len).prop_map(|mut v| {
        v.sort_by(|a, b| b.cmp(a));
        to_q(&v)
    })
}

fn same_total_triple() -> impl Strategy<Value = (Vec<Q>, Vec<Q>, Vec<Q>)> {
    (sorted_vec(4), sorted_vec(4), sorted_vec(4)).prop_map(|(a, mut b, mut c)| {
        let total = |v: &[Q]| v.iter().fold(Q::zero(), |s, x| s + x);
        let ta = total(&a);
        let shift = |v: &mut Vec<Q>| {
            let d = (&ta - total(v)) / q(4);
            for x in v.iter_mut() {
                *x += &d;
            }
        };
        shift(&mut b);
        shift(&mut c);
        (a, b, c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dominance_is_a_partial_order((a, b, c) in same_total_triple()) {
        let nv = |v: &Vec<Q>| NewtonVector::gln(v.clone()).unwrap();
        let (x, y, z) = (nv(&a), nv(&b), nv(&c));
        prop_assert!(dominance_leq(&x, &x).unwrap());
        if dominance_leq(&x, &y).unwrap() && dominance_leq(&y, &x).unwrap() {
            prop_assert_eq!(&a, &b);
        }
        if dominance_leq(&x, &y).unwrap() && dominance_leq(&y, &z).unwrap() {
            prop_assert!(dominance_leq(&x, &z).unwrap());
        }
        // the basic point is the minimum
        let mean = a.iter().fold(Q::zero(), |s, t| s + t) / q(4);
        prop_assert!(dominance_leq(&NewtonVector::constant(4, mean), &x).unwrap());
    }

    #[test]
    fn acceptable_set_matches_brute_force(v in proptest::collection::vec(-3i64..=3, 1..=4)) {
        let mut mu = v;
        mu.sort_by(|a, b| b.cmp(a));
        check(&mu);
    }
}
