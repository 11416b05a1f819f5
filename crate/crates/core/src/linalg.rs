//! Small exact linear algebra over `Z` and `Q`.
//!
//! Matrices here are tiny (at most a few dozen rows), so plain Gaussian
//! elimination on `BigRational` is all that is needed.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary precision rational number.
pub type Q = BigRational;

/// Integer matrix stored row-major.
pub type IMat = Vec<Vec<i64>>;

/// Rational matrix stored row-major.
pub type QMat = Vec<Vec<Q>>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_q(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

/// Returns the vector as integers if every entry is integral.
pub fn to_integral(v: &[Q]) -> Option<Vec<i64>> {
    v.iter()
        .map(|x| {
            if x.is_integer() {
                i64::try_from(x.to_integer()).ok()
            } else {
                None
            }
        })
        .collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_i(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: &Q, a: &[Q]) -> Vec<Q> {
    a.iter().map(|x| c * x).collect()
}

pub fn is_zero(a: &[Q]) -> bool {
    a.iter().all(Zero::is_zero)
}

pub fn identity(n: usize) -> IMat {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn mat_mul(a: &IMat, b: &IMat) -> IMat {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let k = b.len();
    let mut out = vec![vec![0i64; m]; n];
    for i in 0..n {
        for l in 0..k {
            let x = a[i][l];
            if x == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += x * b[l][j];
            }
        }
    }
    out
}

pub fn mat_vec(a: &IMat, v: &[i64]) -> Vec<i64> {
    a.iter().map(|row| dot_i(row, v)).collect()
}

pub fn mat_vec_q(a: &IMat, v: &[Q]) -> Vec<Q> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(x, _)| **x != 0)
                .fold(Q::zero(), |acc, (x, y)| acc + q(*x) * y)
        })
        .collect()
}

pub fn transpose<T: Clone>(a: &[Vec<T>]) -> Vec<Vec<T>> {
    let m = a.first().map_or(0, Vec::len);
    (0..m).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Bilinear form `x^T P y`.
pub fn form(p: &QMat, x: &[Q], y: &[Q]) -> Q {
    let mut acc = Q::zero();
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        let row: Q = dot(&p[i], y);
        acc += xi * row;
    }
    acc
}

/// Reduced row echelon form; returns the pivot columns.
fn rref(m: &mut QMat) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solves `a x = b` for a square invertible `a`.
pub fn solve(a: &QMat, b: &[Q]) -> Option<Vec<Q>> {
    let n = a.len();
    let mut aug: QMat = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(aug.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

pub fn inverse(a: &QMat) -> Option<QMat> {
    let n = a.len();
    let mut aug: QMat = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Basis of the right kernel `{x : a x = 0}` with `cols` unknowns.
pub fn nullspace(a: &QMat, cols: usize) -> Vec<Vec<Q>> {
    let mut m: QMat = a.to_vec();
    if m.is_empty() {
        return (0..cols)
            .map(|i| (0..cols).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
            .collect();
    }
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// Orthogonal projection (with respect to `p`) onto the span of `basis`.
pub fn project(p: &QMat, basis: &[Vec<Q>], x: &[Q]) -> Vec<Q> {
    if basis.is_empty() {
        return vec![Q::zero(); x.len()];
    }
    let gram: QMat = basis
        .iter()
        .map(|u| basis.iter().map(|v| form(p, u, v)).collect())
        .collect();
    let rhs: Vec<Q> = basis.iter().map(|u| form(p, u, x)).collect();
    let coeffs = solve(&gram, &rhs).expect("Gram matrix of a basis under a definite form is invertible");
    let mut out = vec![Q::zero(); x.len()];
    for (c, u) in coeffs.iter().zip(basis) {
        for (o, ui) in out.iter_mut().zip(u) {
            *o += c * ui;
        }
    }
    out
}

/// Positive definiteness by Sylvester's criterion.
pub fn is_positive_definite(p: &QMat) -> bool {
    (1..=p.len()).all(|k| {
        let minor: QMat = p[..k].iter().map(|row| row[..k].to_vec()).collect();
        determinant(&minor).is_positive()
    })
}

pub fn determinant(a: &QMat) -> Q {
    let n = a.len();
    let mut m = a.to_vec();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        let inv = m[c][c].recip();
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..n {
                let t = &f * &m[c][j];
                m[i][j] -= t;
            }
        }
    }
    det
}

/// Formats a rational as `num/den`, always with an explicit denominator.
pub fn fmt_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `a`, `a/b` (optionally signed) into an exact rational.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_of_gl_roots_is_the_diagonal() {
        let a: QMat = vec![to_q(&[1, -1, 0]), to_q(&[0, 1, -1])];
        let ns = nullspace(&a, 3);
        assert_eq!(ns, vec![to_q(&[1, 1, 1])]);
    }

    #[test]
    fn inverse_round_trip() {
        let a: QMat = vec![to_q(&[2, -1]), to_q(&[-1, 2])];
        let inv = inverse(&a).unwrap();
        assert_eq!(inv[0], vec![q_frac(2, 3), q_frac(1, 3)]);
        assert!(inverse(&vec![to_q(&[1, 2]), to_q(&[2, 4])]).is_none());
    }

    #[test]
    fn rational_text_format() {
        assert_eq!(fmt_q(&q_frac(-2, 4)), "-1/2");
        assert_eq!(fmt_q(&q(3)), "3/1");
        assert_eq!(parse_q(" -1/2 "), Some(q_frac(-1, 2)));
        assert_eq!(parse_q("7"), Some(q(7)));
        assert_eq!(parse_q("1/0"), None);
        assert_eq!(parse_q("x"), None);
    }

    #[test]
    fn sylvester() {
        assert!(is_positive_definite(&vec![to_q(&[2, -1]), to_q(&[-1, 2])]));
        assert!(!is_positive_definite(&vec![to_q(&[1, 2]), to_q(&[2, 1])]));
    }
}
