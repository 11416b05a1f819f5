//! Newton vectors, dominance and the acceptable set `A(G, {mu})`.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, q, q_frac, QMat, Q};
use crate::rootdata::{DiagramAutomorphism, RootDatum};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Frame {
    /// Slope vector of an isocrystal, nonincreasing.
    Gln,
    /// Rational cocharacter in the closed dominant chamber of some datum;
    /// `pairings[i] = <alpha_i, nu>`.
    GeneralDominant { pairings: Vec<Q> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonVector {
    pub frame: Frame,
    pub values: Vec<Q>,
}

impl NewtonVector {
    pub fn gln(slopes: Vec<Q>) -> Result<Self> {
        if slopes.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidNewtonVector("slopes must be nonincreasing".into()));
        }
        Ok(NewtonVector {
            frame: Frame::Gln,
            values: slopes,
        })
    }

    pub fn general(datum: &RootDatum, values: Vec<Q>) -> Result<Self> {
        if values.len() != datum.ambient_rank() {
            return Err(Error::DimensionMismatch {
                expected: datum.ambient_rank(),
                found: values.len(),
            });
        }
        let pairings: Vec<Q> = datum
            .simple_roots()
            .iter()
            .map(|a| linalg::dot(&linalg::to_q(a), &values))
            .collect();
        if let Some(index) = pairings.iter().position(Signed::is_negative) {
            return Err(Error::NotDominant {
                index: index + 1,
                value: linalg::fmt_q(&pairings[index]),
            });
        }
        Ok(NewtonVector {
            frame: Frame::GeneralDominant { pairings },
            values,
        })
    }

    /// The constant vector `(lambda, .., lambda)`.
    pub fn constant(n: usize, lambda: Q) -> Self {
        NewtonVector {
            frame: Frame::Gln,
            values: vec![lambda; n],
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_basic(&self) -> bool {
        match &self.frame {
            Frame::Gln => self.values.windows(2).all(|w| w[0] == w[1]),
            Frame::GeneralDominant { pairings } => pairings.iter().all(Zero::is_zero),
        }
    }

    pub fn total(&self) -> Q {
        self.values.iter().fold(Q::zero(), |acc, x| acc + x)
    }

    /// Distinct slopes with multiplicities, in the stored order.
    pub fn slope_blocks(&self) -> Vec<(Q, usize)> {
        let mut out: Vec<(Q, usize)> = Vec::new();
        for x in &self.values {
            match out.last_mut() {
                Some((y, m)) if y == x => *m += 1,
                _ => out.push((x.clone(), 1)),
            }
        }
        out
    }

    /// `m * x` is integral for every slope `x` of multiplicity `m`.
    pub fn is_integral(&self) -> bool {
        self.slope_blocks()
            .iter()
            .all(|(x, m)| (x * q(*m as i64)).is_integer())
    }
}

/// `x <= y` in the dominance order on nonincreasing vectors.
pub fn dominance_leq(x: &NewtonVector, y: &NewtonVector) -> Result<bool> {
    if x.frame != Frame::Gln || y.frame != Frame::Gln || x.len() != y.len() {
        return Err(Error::FrameMismatch);
    }
    Ok(dominance_leq_slices(&x.values, &y.values))
}

fn dominance_leq_slices(x: &[Q], y: &[Q]) -> bool {
    let (mut sx, mut sy) = (Q::zero(), Q::zero());
    for (a, b) in x.iter().zip(y) {
        sx += a;
        sy += b;
        if sx > sy {
            return false;
        }
    }
    sx == sy
}

/// `mu^diamond = (1/order) sum_k tau^k(mu)`.
pub fn galois_average(mu: &[Q], tau: &DiagramAutomorphism) -> Vec<Q> {
    let mut acc = vec![Q::zero(); mu.len()];
    let mut cur = mu.to_vec();
    for _ in 0..tau.order() {
        acc = linalg::add(&acc, &cur);
        cur = tau.apply_q(&cur);
    }
    linalg::scale(&q_frac(1, tau.order() as i64), &acc)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KottwitzPointGln {
    pub newton: NewtonVector,
    pub kappa: i64,
}

impl KottwitzPointGln {
    pub fn new(newton: NewtonVector) -> Result<Self> {
        if newton.frame != Frame::Gln {
            return Err(Error::FrameMismatch);
        }
        if !newton.is_integral() {
            return Err(Error::InvalidNewtonVector(
                "slope times multiplicity must be integral".into(),
            ));
        }
        let kappa = i64::try_from(newton.total().to_integer())
            .map_err(|_| Error::InvalidNewtonVector("kappa out of range".into()))?;
        Ok(KottwitzPointGln { newton, kappa })
    }
}

fn check_mu_gln(n: usize, mu: &[i64]) -> Result<()> {
    if n == 0 || mu.len() != n {
        return Err(Error::InvalidMu(format!("expected {n} entries, got {}", mu.len())));
    }
    if mu.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidMu("entries must be nonincreasing".into()));
    }
    Ok(())
}

/// All `[b] in B(GL_n)` with `nu_b <= mu`, in descending lexicographic order
/// of slope vectors.
///
/// Points are enumerated as compositions `n = n_1 + .. + n_r` with slopes
/// `k_i / n_i` strictly decreasing.
pub fn acceptable_set_gln(n: usize, mu: &[i64]) -> Result<Vec<KottwitzPointGln>> {
    check_mu_gln(n, mu)?;
    let mu_q = linalg::to_q(mu);
    let prefix: Vec<Q> = std::iter::once(Q::zero())
        .chain(mu_q.iter().scan(Q::zero(), |s, x| {
            *s += x;
            Some(s.clone())
        }))
        .collect();
    let mut out = Vec::new();
    let mut slopes: Vec<Q> = Vec::with_capacity(n);
    search_compositions(mu, &prefix, &mut slopes, None, &mut out);
    out.sort_by(|a: &Vec<Q>, b| b.cmp(a));
    out.into_iter()
        .map(|s| KottwitzPointGln::new(NewtonVector::gln(s)?))
        .collect()
}

fn search_compositions(
    mu: &[i64],
    prefix: &[Q],
    slopes: &mut Vec<Q>,
    last: Option<Q>,
    out: &mut Vec<Vec<Q>>,
) {
    let n = mu.len();
    let used = slopes.len();
    if used == n {
        if prefix[n] == prefix_sum(slopes) {
            out.push(slopes.clone());
        }
        return;
    }
    let (lo, hi) = (mu[n - 1], mu[0]);
    let base = prefix_sum(slopes);
    for m in 1..=n - used {
        let mi = m as i64;
        for k in (mi * lo..=mi * hi).rev() {
            let slope = q_frac(k, mi);
            if last.as_ref().is_some_and(|l| slope >= *l) {
                continue;
            }
            // partial sums along the block are linear, the bound is concave
            let ok = (1..=m).all(|t| &base + &slope * q(t as i64) <= prefix[used + t]);
            if !ok {
                continue;
            }
            slopes.extend(std::iter::repeat_n(slope.clone(), m));
            search_compositions(mu, prefix, slopes, Some(slope), out);
            slopes.truncate(used);
        }
    }
}

fn prefix_sum(v: &[Q]) -> Q {
    v.iter().fold(Q::zero(), |acc, x| acc + x)
}

/// Covering pairs `(lower, upper)` of the dominance order on `points`.
pub fn hasse_edges(points: &[KottwitzPointGln]) -> Vec<(usize, usize)> {
    let leq = |a: usize, b: usize| {
        dominance_leq_slices(&points[a].newton.values, &points[b].newton.values)
    };
    let k = points.len();
    let mut edges = Vec::new();
    for lower in 0..k {
        for upper in 0..k {
            if lower == upper || !leq(lower, upper) {
                continue;
            }
            let covered = (0..k).any(|mid| {
                mid != lower && mid != upper && leq(lower, mid) && leq(mid, upper)
            });
            if !covered {
                edges.push((lower, upper));
            }
        }
    }
    edges
}

/// `nu <= mu^diamond`: the difference is a nonnegative combination of
/// simple coroots (so in particular has no central component).
pub fn is_acceptable(
    datum: &RootDatum,
    nu: &NewtonVector,
    mu: &[i64],
    tau: &DiagramAutomorphism,
) -> Result<bool> {
    if !nu.is_basic() {
        return Err(Error::NotBasic);
    }
    let n = datum.ambient_rank();
    if nu.len() != n || mu.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: if nu.len() != n { nu.len() } else { mu.len() },
        });
    }
    if tau.apply_q(&nu.values) != nu.values {
        return Err(Error::GaloisIncompatible("tau does not fix nu".into()));
    }
    let diamond = galois_average(&linalg::to_q(mu), tau);
    let d = linalg::sub(&diamond, &nu.values);
    Ok(coroot_cone_coefficients(datum, &d).is_some_and(|c| c.iter().all(|x| !x.is_negative())))
}

/// Coefficients `c` with `d = sum c_i alpha_i^vee`, if `d` lies in the
/// coroot span.
pub fn coroot_cone_coefficients(datum: &RootDatum, d: &[Q]) -> Option<Vec<Q>> {
    let r = datum.rank();
    let cartan = datum.cartan_matrix();
    let rhs: Vec<Q> = datum
        .simple_roots()
        .iter()
        .map(|a| linalg::dot(&linalg::to_q(a), d))
        .collect();
    let c = if r == 0 {
        vec![]
    } else {
        let ct: QMat = (0..r)
            .map(|j| (0..r).map(|i| q(cartan[i][j])).collect())
            .collect();
        linalg::solve(&ct, &rhs)?
    };
    let mut rest = d.to_vec();
    for (ci, cor) in c.iter().zip(datum.simple_coroots()) {
        rest = linalg::sub(&rest, &linalg::scale(ci, &linalg::to_q(cor)));
    }
    linalg::is_zero(&rest).then_some(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{build_root_datum, FormNormalization};

    fn nv(v: &[(i64, i64)]) -> NewtonVector {
        NewtonVector::gln(v.iter().map(|&(a, b)| q_frac(a, b)).collect()).unwrap()
    }

    #[test]
    fn dominance_examples() {
        let half = nv(&[(1, 2), (1, 2)]);
        let one = nv(&[(1, 1), (0, 1)]);
        assert!(dominance_leq(&half, &one).unwrap());
        assert!(dominance_leq(&one, &one).unwrap());
        assert!(!dominance_leq(&one, &half).unwrap());
        assert_eq!(
            dominance_leq(&one, &nv(&[(1, 1)])),
            Err(Error::FrameMismatch)
        );
    }

    #[test]
    fn basic_and_integral() {
        assert!(nv(&[(1, 2), (1, 2)]).is_basic());
        assert!(!nv(&[(1, 1), (0, 1)]).is_basic());
        assert!(nv(&[(0, 1), (0, 1)]).is_basic());
        assert!(nv(&[(1, 2), (1, 2)]).is_integral());
        assert!(!nv(&[(1, 2), (0, 1)]).is_integral());
        assert!(NewtonVector::gln(vec![q(0), q(1)]).is_err());
    }

    #[test]
    fn acceptable_sets_small() {
        let s = acceptable_set_gln(2, &[1, 0]).unwrap();
        let vals: Vec<_> = s.iter().map(|p| p.newton.values.clone()).collect();
        assert_eq!(vals, vec![vec![q(1), q(0)], vec![q_frac(1, 2), q_frac(1, 2)]]);
        let s = acceptable_set_gln(3, &[1, 0, 0]).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s[1].newton.values, vec![q_frac(1, 2), q_frac(1, 2), q(0)]);
        let s = acceptable_set_gln(3, &[2, 2, 2]).unwrap();
        assert_eq!(s.len(), 1);
        assert!(acceptable_set_gln(2, &[0, 1]).is_err());
        assert!(acceptable_set_gln(3, &[1, 0]).is_err());
    }

    #[test]
    fn hasse_chain() {
        let s = acceptable_set_gln(3, &[1, 0, 0]).unwrap();
        assert_eq!(hasse_edges(&s), vec![(1, 0), (2, 1)]);
    }

    #[test]
    fn average_and_acceptability() {
        let torus = build_root_datum(&"Torus2".parse().unwrap(), &FormNormalization::default()).unwrap();
        let swap = DiagramAutomorphism::from_lattice(&torus, vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(galois_average(&linalg::to_q(&[1, 0]), &swap), vec![q_frac(1, 2), q_frac(1, 2)]);

        let gl2 = build_root_datum(&"GL2".parse().unwrap(), &FormNormalization::default()).unwrap();
        let id = DiagramAutomorphism::identity(&gl2);
        let half = NewtonVector::general(&gl2, vec![q_frac(1, 2), q_frac(1, 2)]).unwrap();
        assert!(is_acceptable(&gl2, &half, &[1, 0], &id).unwrap());
        let one = NewtonVector::general(&gl2, vec![q(1), q(1)]).unwrap();
        assert!(!is_acceptable(&gl2, &one, &[1, 0], &id).unwrap());
        let central = NewtonVector::general(&gl2, vec![q(1), q(1)]).unwrap();
        assert!(is_acceptable(&gl2, &central, &[1, 1], &id).unwrap());
        let nb = NewtonVector::general(&gl2, vec![q(1), q(0)]).unwrap();
        assert_eq!(is_acceptable(&gl2, &nb, &[1, 0], &id), Err(Error::NotBasic));
    }
}
