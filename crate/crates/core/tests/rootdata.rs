use std::collections::{BTreeSet, VecDeque};

use perdom_core::linalg::{self, q, to_q, Q};
use perdom_core::rootdata::{build_root_datum, DiagramAutomorphism, FormNormalization, RootDatum};

const TYPES: &[&str] = &[
    "A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "C2", "C3", "C4", "D3", "D4", "D5", "E6", "E7",
    "E8", "F4", "G2", "GL2", "GL5", "A2xB2", "GL3xTorus1", "A1xA1xA1",
];

fn datum(s: &str) -> RootDatum {
    build_root_datum(&s.parse().unwrap(), &FormNormalization::default()).unwrap()
}

/// All roots as characters: the orbit of the simple roots under the
/// reflections `chi -> chi - <chi, alpha_i^vee> alpha_i`.
fn root_orbit(d: &RootDatum) -> BTreeSet<Vec<i64>> {
    let mut seen: BTreeSet<Vec<i64>> = d.simple_roots().iter().cloned().collect();
    let mut queue: VecDeque<Vec<i64>> = seen.iter().cloned().collect();
    while let Some(chi) = queue.pop_front() {
        for (a, c) in d.simple_roots().iter().zip(d.simple_coroots()) {
            let k = linalg::dot_i(&chi, c);
            let image: Vec<i64> = chi.iter().zip(a).map(|(x, y)| x - k * y).collect();
            if seen.insert(image.clone()) {
                queue.push_back(image);
            }
        }
    }
    seen
}

#[test]
fn positive_roots_match_reflection_orbit() {
    for s in TYPES {
        let d = datum(s);
        let all = root_orbit(&d);
        let generated: BTreeSet<Vec<i64>> =
            d.positive_roots().iter().map(|r| r.character.clone()).collect();
        assert_eq!(all.len(), 2 * generated.len(), "{s}");
        for r in d.positive_roots() {
            assert!(r.coeffs.iter().all(|&c| c >= 0), "{s}");
            let neg: Vec<i64> = r.character.iter().map(|x| -x).collect();
            assert!(all.contains(&r.character) && all.contains(&neg), "{s}");
        }
    }
}

#[test]
fn form_is_weyl_invariant() {
    for s in TYPES {
        let d = datum(s);
        let n = d.ambient_rank();
        for i in 0..d.rank() {
            let m = d.reflection(i);
            for a in 0..n {
                for b in 0..n {
                    let col = |k: usize| -> Vec<Q> { m.iter().map(|row| q(row[k])).collect() };
                    assert_eq!(linalg::form(d.form(), &col(a), &col(b)), d.form()[a][b], "{s}");
                }
            }
        }
    }
}

#[test]
fn reflection_matrices_are_involutions_fixing_the_center() {
    for s in TYPES {
        let d = datum(s);
        for i in 0..d.rank() {
            let m = d.reflection(i);
            assert_eq!(linalg::mat_mul(m, m), linalg::identity(d.ambient_rank()), "{s}");
            for z in d.central_basis() {
                assert_eq!(&linalg::mat_vec_q(m, z), z, "{s}");
            }
        }
    }
}

#[test]
fn b2_dual_basis_and_lengths() {
    let d = datum("B2");
    assert_eq!(d.simple_roots(), &[vec![1, -1], vec![0, 1]]);
    assert_eq!(d.simple_coroots(), &[vec![1, -1], vec![0, 2]]);
    assert_eq!(d.fundamental_coweights(), &[to_q(&[1, 0]), to_q(&[1, 1])]);
    assert_eq!(d.cartan_matrix(), &[vec![2, -1], vec![-2, 2]]);
}

#[test]
fn central_rank() {
    for (s, r) in [("GL4", 1), ("A3", 0), ("GL2xTorus2", 3), ("E6", 0)] {
        assert_eq!(datum(s).central_basis().len(), r, "{s}");
    }
}

#[test]
fn automorphisms_validate_on_both_sides() {
    let cases: &[(&str, &[usize])] = &[
        ("A3", &[2, 1, 0]),
        ("A4", &[3, 2, 1, 0]),
        ("GL3", &[1, 0]),
        ("D5", &[0, 1, 2, 4, 3]),
        ("E6", &[5, 1, 4, 3, 2, 0]),
        ("A1xA1", &[1, 0]),
        ("B2xB2", &[2, 3, 0, 1]),
    ];
    for (s, perm) in cases {
        let d = datum(s);
        let tau = DiagramAutomorphism::from_simple_perm(&d, perm).unwrap();
        assert_eq!(tau.order(), 2, "{s}");
        for (i, &p) in perm.iter().enumerate() {
            assert_eq!(tau.apply(&d.simple_coroots()[i]), d.simple_coroots()[p], "{s}");
        }
        let roundtrip = DiagramAutomorphism::from_lattice(&d, tau.lattice().clone()).unwrap();
        assert_eq!(roundtrip.perm(), *perm, "{s}");
    }
    let b2 = datum("B2");
    assert!(DiagramAutomorphism::from_simple_perm(&b2, &[1, 0]).is_err());
    let a1b2 = datum("A1xB2");
    assert!(DiagramAutomorphism::from_simple_perm(&a1b2, &[1, 0, 2]).is_err());
}

#[test]
fn dominant_representative_is_dominant_and_in_orbit() {
    let d = datum("F4");
    let v = vec![3, -5, 2, 7];
    let dom = d.dominant_representative(&v);
    assert!(d.is_dominant(&dom));
    let norm = |x: &[i64]| linalg::form(d.form(), &to_q(x), &to_q(x));
    assert_eq!(norm(&v), norm(&dom));
}
