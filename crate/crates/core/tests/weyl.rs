use std::collections::{BTreeMap, BTreeSet};

use perdom_core::rootdata::{build_root_datum, DiagramAutomorphism, FormNormalization, RootDatum};
use perdom_core::weyl::{enumerate_weyl_group, galois_orbits, kostant_representatives, WeylElement};
use proptest::prelude::*;

fn datum(s: &str) -> RootDatum {
    build_root_datum(&s.parse().unwrap(), &FormNormalization::default()).unwrap()
}

/// Coset-minimal elements of the full group: `w(alpha) > 0` for every simple
/// `alpha` fixing `mu`, keyed by `w(mu)`.
fn brute_force_kostant(d: &RootDatum, mu: &[i64]) -> BTreeMap<Vec<i64>, usize> {
    let stab: Vec<usize> = (0..d.rank()).filter(|&i| d.simple_pairing(i, mu) == 0).collect();
    let mut out: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    for w in enumerate_weyl_group(d).unwrap() {
        let unit = |i: usize| -> Vec<i64> { (0..d.rank()).map(|k| i64::from(k == i)).collect() };
        let minimal = stab
            .iter()
            .all(|&i| w.act_on_root(d, &unit(i)).iter().all(|&c| c >= 0));
        if minimal {
            let prev = out.insert(w.apply(mu), w.length);
            assert!(prev.is_none(), "two minimal elements in one coset");
        }
    }
    out
}

fn check_against_oracle(s: &str, mu: &[i64]) {
    let d = datum(s);
    let k = kostant_representatives(&d, mu).unwrap();
    let oracle = brute_force_kostant(&d, mu);
    let got: BTreeMap<Vec<i64>, usize> = k
        .entries
        .iter()
        .map(|e| (e.image.clone(), e.representative.length))
        .collect();
    assert_eq!(got, oracle, "{s} mu={mu:?}");
    for e in &k.entries {
        let rebuilt = WeylElement::from_word(&d, &e.representative.reduced_word);
        assert_eq!(rebuilt.matrix, e.representative.matrix);
        assert_eq!(rebuilt.apply(mu), e.image);
        assert_eq!(rebuilt.inversion_count(&d), e.representative.length);
    }
}

#[test]
fn fixed_examples_against_oracle() {
    check_against_oracle("GL3", &[2, -1, -1]);
    check_against_oracle("B3", &[1, 0, 0]);
    check_against_oracle("C3", &[1, 1, 0]);
    check_against_oracle("G2", &[2, 3]);
    let f4 = datum("F4").dominant_representative(&[1, 0, 0, 0]);
    check_against_oracle("F4", &f4);
    check_against_oracle("D4", &[1, 1, 0, 0]);
    check_against_oracle("A2xB2", &[2, 1, 1, 0]);
}

#[test]
fn group_orders_match_product_formula() {
    for s in ["A1", "A3", "B3", "C2", "D4", "G2", "F4", "GL4", "A1xA1", "A2xG2"] {
        let d = datum(s);
        assert_eq!(enumerate_weyl_group(&d).unwrap().len() as u128, d.weyl_order(), "{s}");
    }
}

#[test]
fn canonical_words_are_lexicographically_least() {
    // every reduced word of every element, found by brute force
    let d = datum("B3");
    let all = enumerate_weyl_group(&d).unwrap();
    let mut least: BTreeMap<Vec<Vec<i64>>, Vec<usize>> = BTreeMap::new();
    let mut frontier: Vec<Vec<usize>> = vec![vec![]];
    for len in 0..=9 {
        let mut next = vec![];
        for w in &frontier {
            let e = WeylElement::from_word(&d, w);
            if e.inversion_count(&d) != len {
                continue;
            }
            least
                .entry(e.matrix.clone())
                .and_modify(|x| {
                    if w < x {
                        *x = w.clone()
                    }
                })
                .or_insert_with(|| w.clone());
            for i in 0..d.rank() {
                let mut v = w.clone();
                v.push(i);
                next.push(v);
            }
        }
        frontier = next;
    }
    for w in all {
        assert_eq!(least[&w.matrix], w.reduced_word);
    }
}

#[test]
fn kostant_words_are_lexicographically_least_in_coset() {
    let d = datum("C3");
    let mu = [1, 0, 0];
    let k = kostant_representatives(&d, &mu).unwrap();
    let mut best: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    for w in enumerate_weyl_group(&d).unwrap() {
        let image = w.apply(&mu);
        let e = best.entry(image).or_insert_with(|| w.reduced_word.clone());
        if (w.length, &w.reduced_word) < (e.len(), e) {
            *e = w.reduced_word.clone();
        }
    }
    for e in &k.entries {
        assert_eq!(best[&e.image], e.representative.reduced_word);
    }
    let order: Vec<_> = k
        .entries
        .iter()
        .map(|e| (e.representative.length, e.representative.reduced_word.clone()))
        .collect();
    let mut sorted = order.clone();
    sorted.sort();
    assert_eq!(order, sorted);
}

#[test]
fn gl4_flip_orbits() {
    let d = datum("GL4");
    let mu = [1, 0, 0, -1];
    let tau = DiagramAutomorphism::from_simple_perm(&d, &[2, 1, 0]).unwrap();
    let k = kostant_representatives(&d, &mu).unwrap();
    let orbits = galois_orbits(&k, &tau).unwrap();

    // oracle: images of the whole group, tau applied to vectors directly
    let images: BTreeSet<Vec<i64>> = enumerate_weyl_group(&d)
        .unwrap()
        .iter()
        .map(|w| w.apply(&mu))
        .collect();
    let flip = |v: &[i64]| -> Vec<i64> { v.iter().rev().map(|x| -x).collect() };
    let mut oracle: BTreeSet<BTreeSet<Vec<i64>>> = BTreeSet::new();
    for v in &images {
        oracle.insert([v.clone(), flip(v)].into_iter().collect());
    }
    let got: BTreeSet<BTreeSet<Vec<i64>>> = orbits
        .iter()
        .map(|o| o.members.iter().map(|&m| k.entries[m].image.clone()).collect())
        .collect();
    assert_eq!(got, oracle);

    // frozen: 4 fixed points and 4 swapped pairs, in representative order
    let shape: Vec<(usize, usize)> = orbits.iter().map(|o| (o.length, o.size())).collect();
    assert_eq!(
        shape,
        vec![(0, 1), (1, 2), (2, 1), (2, 2), (3, 2), (3, 1), (4, 2), (5, 1)]
    );
}

#[test]
fn poincare_polynomial_of_grassmannian() {
    // Gr(2, 4): 1 + t + 2t^2 + t^3 + t^4
    let d = datum("GL4");
    let k = kostant_representatives(&d, &[1, 1, 0, 0]).unwrap();
    assert_eq!(k.poincare_coefficients(), vec![1, 1, 2, 1, 1]);
}

fn random_dominant(s: &'static str) -> impl Strategy<Value = (&'static str, Vec<i64>)> {
    let d = datum(s);
    let n = d.ambient_rank();
    proptest::collection::vec(-3i64..=3, n).prop_map(move |v| (s, datum(s).dominant_representative(&v)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn kostant_matches_oracle_rank_three(
        (s, mu) in prop_oneof![random_dominant("A3"), random_dominant("B3"), random_dominant("C3"), random_dominant("GL4")]
    ) {
        check_against_oracle(s, &mu);
    }

    #[test]
    fn stabilizer_count_gives_size(
        (s, mu) in prop_oneof![random_dominant("D4"), random_dominant("G2"), random_dominant("B2")]
    ) {
        let d = datum(s);
        let k = kostant_representatives(&d, &mu).unwrap();
        let stab = d.count_roots_orthogonal_to(&mu);
        prop_assert_eq!(k.max_length(), d.positive_roots().len() - stab);
        let identity = DiagramAutomorphism::identity(&d);
        prop_assert_eq!(galois_orbits(&k, &identity).unwrap().len(), k.len());
    }
}
