//! Based root data in explicit integer realizations.
//!
//! Every datum is a block-diagonal product of factors. Characters and
//! cocharacters are both stored as vectors in `Q^N` for the same ambient
//! `N`, with the canonical pairing given by the dot product.
//!
//! Realizations:
//!
//! * `GL_n`: `X_*(T) = Z^n`, simple roots `e_i - e_{i+1}`.
//! * `B_n`, `C_n`, `D_n`: the standard Euclidean lattices `Z^n` (so `SO_{2n+1}`,
//!   `Sp_{2n}`, `SO_{2n}`).
//! * `A_n`, `E_6`, `E_7`, `E_8`, `F_4`, `G_2`: simply connected form, with
//!   the simple coroots as the standard basis of `Z^r`; simple roots are the
//!   columns of the Cartan matrix.
//! * `Torus_n`: `Z^n` without roots.
//!
//! The Cartan matrix convention is `cartan[i][j] = <alpha_j, alpha_i^vee>`.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, q, IMat, QMat, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    G2,
    Gl(usize),
    Torus(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Realization {
    Euclidean,
    CorootBasis,
}

impl Factor {
    fn validate(self) -> Result<()> {
        let ok = match self {
            Factor::A(n) | Factor::Gl(n) | Factor::Torus(n) => n >= 1,
            Factor::B(n) | Factor::C(n) => n >= 2,
            Factor::D(n) => n >= 3,
            _ => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidCartanSpec(format!("rank not admissible for {self}")))
        }
    }

    /// Number of simple roots.
    pub fn semisimple_rank(self) -> usize {
        match self {
            Factor::A(n) | Factor::B(n) | Factor::C(n) | Factor::D(n) => n,
            Factor::E6 => 6,
            Factor::E7 => 7,
            Factor::E8 => 8,
            Factor::F4 => 4,
            Factor::G2 => 2,
            Factor::Gl(n) => n - 1,
            Factor::Torus(_) => 0,
        }
    }

    /// Dimension of the cocharacter lattice of this factor.
    pub fn ambient_rank(self) -> usize {
        match self {
            Factor::Gl(n) | Factor::Torus(n) => n,
            other => other.semisimple_rank(),
        }
    }

    pub fn weyl_order(self) -> u128 {
        let fact = |n: usize| (1..=n as u128).product::<u128>();
        match self {
            Factor::A(n) => fact(n + 1),
            Factor::B(n) | Factor::C(n) => (1u128 << n) * fact(n),
            Factor::D(n) => (1u128 << (n - 1)) * fact(n),
            Factor::E6 => 51_840,
            Factor::E7 => 2_903_040,
            Factor::E8 => 696_729_600,
            Factor::F4 => 1152,
            Factor::G2 => 12,
            Factor::Gl(n) => fact(n),
            Factor::Torus(_) => 1,
        }
    }

    pub fn is_irreducible(self) -> bool {
        !matches!(self, Factor::Torus(_))
    }

    fn realization(self) -> Realization {
        match self {
            Factor::Gl(_) | Factor::B(_) | Factor::C(_) | Factor::D(_) | Factor::Torus(_) => {
                Realization::Euclidean
            }
            _ => Realization::CorootBasis,
        }
    }

    /// Cartan matrix of a factor realized in the coroot basis.
    fn coroot_basis_cartan(self) -> Vec<Vec<i64>> {
        let r = self.semisimple_rank();
        let mut c = vec![vec![0i64; r]; r];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            c[i][j] = -1;
            c[j][i] = -1;
        };
        match self {
            Factor::A(n) => (0..n - 1).for_each(|i| link(i, i + 1)),
            Factor::E6 | Factor::E7 | Factor::E8 => {
                link(0, 2);
                link(1, 3);
                (2..r - 1).for_each(|i| link(i, i + 1));
            }
            Factor::F4 => {
                link(0, 1);
                link(1, 2);
                link(2, 3);
            }
            Factor::G2 => link(0, 1),
            _ => unreachable!("not a coroot-basis factor"),
        }
        match self {
            Factor::F4 => c[2][1] = -2,
            Factor::G2 => c[0][1] = -3,
            _ => {}
        }
        c
    }

    /// Local simple roots, simple coroots and default invariant form.
    fn local_data(self) -> (Vec<Vec<i64>>, Vec<Vec<i64>>, QMat) {
        let n = self.ambient_rank();
        let e = |i: usize| -> Vec<i64> { (0..n).map(|k| i64::from(k == i)).collect() };
        let diff = |i: usize, j: usize| -> Vec<i64> {
            (0..n).map(|k| i64::from(k == i) - i64::from(k == j)).collect()
        };
        let scalar_form = |s: i64| -> QMat {
            (0..n)
                .map(|i| (0..n).map(|j| if i == j { q(s) } else { Q::zero() }).collect())
                .collect()
        };
        match self {
            Factor::Gl(m) => {
                let roots: Vec<_> = (0..m - 1).map(|i| diff(i, i + 1)).collect();
                (roots.clone(), roots, scalar_form(1))
            }
            Factor::Torus(_) => (vec![], vec![], scalar_form(1)),
            Factor::B(m) => {
                let mut roots: Vec<_> = (0..m - 1).map(|i| diff(i, i + 1)).collect();
                let mut coroots = roots.clone();
                roots.push(e(m - 1));
                coroots.push(e(m - 1).into_iter().map(|x| 2 * x).collect());
                (roots, coroots, scalar_form(1))
            }
            Factor::C(m) => {
                let mut roots: Vec<_> = (0..m - 1).map(|i| diff(i, i + 1)).collect();
                let mut coroots = roots.clone();
                roots.push(e(m - 1).into_iter().map(|x| 2 * x).collect());
                coroots.push(e(m - 1));
                // short coroots are the e_i
                (roots, coroots, scalar_form(2))
            }
            Factor::D(m) => {
                let mut roots: Vec<_> = (0..m - 1).map(|i| diff(i, i + 1)).collect();
                roots.push((0..n).map(|k| i64::from(k >= m - 2)).collect());
                (roots.clone(), roots, scalar_form(1))
            }
            _ => {
                let cartan = self.coroot_basis_cartan();
                let r = n;
                let coroots: Vec<_> = (0..r).map(e).collect();
                let roots: Vec<_> = (0..r).map(|j| (0..r).map(|i| cartan[i][j]).collect()).collect();
                let c = symmetrizer(&cartan);
                let form = (0..r)
                    .map(|i| (0..r).map(|j| q(cartan[i][j]) * &c[j]).collect())
                    .collect();
                (roots, coroots, form)
            }
        }
    }
}

/// Half squared coroot lengths `c_j` making `cartan[i][j] * c_j` symmetric,
/// normalized so the smallest is 1.
fn symmetrizer(cartan: &[Vec<i64>]) -> Vec<Q> {
    let r = cartan.len();
    let mut c: Vec<Option<Q>> = vec![None; r];
    for start in 0..r {
        if c[start].is_some() {
            continue;
        }
        c[start] = Some(Q::one());
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for j in 0..r {
                if i != j && cartan[i][j] != 0 && c[j].is_none() {
                    let ci = c[i].clone().unwrap();
                    c[j] = Some(ci * q(cartan[j][i]) / q(cartan[i][j]));
                    queue.push_back(j);
                }
            }
        }
    }
    let c: Vec<Q> = c.into_iter().map(Option::unwrap).collect();
    let min = c.iter().min().cloned().unwrap_or_else(Q::one);
    c.into_iter().map(|x| x / &min).collect()
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::A(n) => write!(f, "A{n}"),
            Factor::B(n) => write!(f, "B{n}"),
            Factor::C(n) => write!(f, "C{n}"),
            Factor::D(n) => write!(f, "D{n}"),
            Factor::E6 => write!(f, "E6"),
            Factor::E7 => write!(f, "E7"),
            Factor::E8 => write!(f, "E8"),
            Factor::F4 => write!(f, "F4"),
            Factor::G2 => write!(f, "G2"),
            Factor::Gl(n) => write!(f, "GL{n}"),
            Factor::Torus(n) => write!(f, "Torus{n}"),
        }
    }
}

impl FromStr for Factor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let split = s.find(|c: char| c.is_ascii_digit()).ok_or_else(|| {
            Error::InvalidCartanSpec(format!("factor {s:?} has no rank"))
        })?;
        let (name, rank) = s.split_at(split);
        let rank: usize = rank
            .parse()
            .map_err(|_| Error::InvalidCartanSpec(format!("bad rank in {s:?}")))?;
        let factor = match (name.to_ascii_uppercase().as_str(), rank) {
            ("A", n) => Factor::A(n),
            ("B", n) => Factor::B(n),
            ("C", n) => Factor::C(n),
            ("D", n) => Factor::D(n),
            ("E", 6) => Factor::E6,
            ("E", 7) => Factor::E7,
            ("E", 8) => Factor::E8,
            ("F", 4) => Factor::F4,
            ("G", 2) => Factor::G2,
            ("GL", n) => Factor::Gl(n),
            ("TORUS", n) | ("T", n) => Factor::Torus(n),
            _ => return Err(Error::InvalidCartanSpec(format!("unknown factor {s:?}"))),
        };
        factor.validate()?;
        Ok(factor)
    }
}

/// A product of Cartan-type factors, e.g. `A2xA1` or `GL3xTorus1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CartanSpec {
    pub factors: Vec<Factor>,
}

impl CartanSpec {
    pub fn new(factors: Vec<Factor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidCartanSpec("at least one factor is required".into()));
        }
        for f in &factors {
            f.validate()?;
        }
        Ok(CartanSpec { factors })
    }

    pub fn single(factor: Factor) -> Result<Self> {
        Self::new(vec![factor])
    }

    pub fn weyl_order(&self) -> u128 {
        self.factors
            .iter()
            .fold(1u128, |acc, f| acc.saturating_mul(f.weyl_order()))
    }
}

impl FromStr for CartanSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let factors = s
            .split(['x', 'X', '*'])
            .map(str::parse)
            .collect::<Result<Vec<Factor>>>()?;
        CartanSpec::new(factors)
    }
}

impl fmt::Display for CartanSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

/// How the invariant form is normalized on each factor.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum FormNormalization {
    /// Short coroots have squared length 2; tori get the identity form.
    #[default]
    ShortCorootLengthTwo,
    /// The default form multiplied by a positive rational per factor.
    PerFactorScale(Vec<Q>),
}

/// Placement of one factor inside the global datum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorBlock {
    pub factor: Factor,
    pub coords: std::ops::Range<usize>,
    pub simple: std::ops::Range<usize>,
}

/// A positive root, in simple-root coordinates and as a character vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Root {
    pub coeffs: Vec<i64>,
    pub character: Vec<i64>,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    spec: CartanSpec,
    blocks: Vec<FactorBlock>,
    ambient_rank: usize,
    simple_roots: Vec<Vec<i64>>,
    simple_coroots: Vec<Vec<i64>>,
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Root>,
    fundamental_coweights: Vec<Vec<Q>>,
    central_basis: Vec<Vec<Q>>,
    form: QMat,
    reflections: Vec<IMat>,
}

pub fn build_root_datum(spec: &CartanSpec, normalization: &FormNormalization) -> Result<RootDatum> {
    for f in &spec.factors {
        f.validate()?;
    }
    if let FormNormalization::PerFactorScale(scales) = normalization {
        if scales.len() != spec.factors.len() {
            return Err(Error::DimensionMismatch {
                expected: spec.factors.len(),
                found: scales.len(),
            });
        }
        if scales.iter().any(|s| !s.is_positive()) {
            return Err(Error::InvalidCartanSpec("form scales must be positive".into()));
        }
    }

    let ambient_rank: usize = spec.factors.iter().map(|f| f.ambient_rank()).sum();
    let mut blocks = Vec::new();
    let mut simple_roots = Vec::new();
    let mut simple_coroots = Vec::new();
    let mut form = vec![vec![Q::zero(); ambient_rank]; ambient_rank];
    let (mut coord, mut simple) = (0, 0);
    for (fi, &factor) in spec.factors.iter().enumerate() {
        let (roots, coroots, local_form) = factor.local_data();
        let n = factor.ambient_rank();
        let pad = |v: Vec<i64>| -> Vec<i64> {
            let mut out = vec![0; ambient_rank];
            out[coord..coord + n].copy_from_slice(&v);
            out
        };
        let s = match normalization {
            FormNormalization::ShortCorootLengthTwo => Q::one(),
            FormNormalization::PerFactorScale(scales) => scales[fi].clone(),
        };
        for i in 0..n {
            for j in 0..n {
                form[coord + i][coord + j] = &local_form[i][j] * &s;
            }
        }
        let r = roots.len();
        simple_roots.extend(roots.into_iter().map(pad));
        simple_coroots.extend(coroots.into_iter().map(pad));
        blocks.push(FactorBlock {
            factor,
            coords: coord..coord + n,
            simple: simple..simple + r,
        });
        coord += n;
        simple += r;
    }

    let rank = simple_roots.len();
    let cartan: Vec<Vec<i64>> = (0..rank)
        .map(|i| (0..rank).map(|j| linalg::dot_i(&simple_roots[j], &simple_coroots[i])).collect())
        .collect();
    validate_cartan(&cartan)?;

    let positive_roots = generate_positive_roots(&cartan, &simple_roots);

    // omega_j = sum_k x_k alpha_k^vee with sum_k x_k cartan[k][i] = delta_ij
    let cartan_t: QMat = (0..rank)
        .map(|i| (0..rank).map(|k| q(cartan[k][i])).collect())
        .collect();
    let mut fundamental_coweights = Vec::with_capacity(rank);
    for j in 0..rank {
        let rhs: Vec<Q> = (0..rank).map(|i| if i == j { Q::one() } else { Q::zero() }).collect();
        let x = linalg::solve(&cartan_t, &rhs)
            .ok_or_else(|| Error::InvalidCartanSpec("Cartan matrix is singular".into()))?;
        let mut w = vec![Q::zero(); ambient_rank];
        for (xk, cor) in x.iter().zip(&simple_coroots) {
            for (wa, &c) in w.iter_mut().zip(cor) {
                if c != 0 {
                    *wa += xk * q(c);
                }
            }
        }
        fundamental_coweights.push(w);
    }

    let root_rows: QMat = simple_roots.iter().map(|r| linalg::to_q(r)).collect();
    let central_basis = linalg::nullspace(&root_rows, ambient_rank);

    let reflections = (0..rank)
        .map(|i| {
            (0..ambient_rank)
                .map(|a| {
                    (0..ambient_rank)
                        .map(|b| i64::from(a == b) - simple_coroots[i][a] * simple_roots[i][b])
                        .collect()
                })
                .collect()
        })
        .collect();

    let datum = RootDatum {
        spec: spec.clone(),
        blocks,
        ambient_rank,
        simple_roots,
        simple_coroots,
        cartan,
        positive_roots,
        fundamental_coweights,
        central_basis,
        form,
        reflections,
    };
    if !linalg::is_positive_definite(&datum.form) {
        return Err(Error::InvalidCartanSpec("invariant form is not positive definite".into()));
    }
    Ok(datum)
}

/// Checks that `cartan` is a generalized Cartan matrix of finite type.
fn validate_cartan(cartan: &[Vec<i64>]) -> Result<()> {
    let r = cartan.len();
    for i in 0..r {
        if cartan[i][i] != 2 {
            return Err(Error::InvalidCartanSpec("Cartan diagonal must be 2".into()));
        }
        for j in 0..r {
            if i != j && (cartan[i][j] > 0 || (cartan[i][j] == 0) != (cartan[j][i] == 0)) {
                return Err(Error::InvalidCartanSpec("not a generalized Cartan matrix".into()));
            }
        }
    }
    if r == 0 {
        return Ok(());
    }
    let c = symmetrizer(cartan);
    let sym: QMat = (0..r)
        .map(|i| (0..r).map(|j| q(cartan[i][j]) * &c[j]).collect())
        .collect();
    for i in 0..r {
        for j in 0..r {
            if sym[i][j] != sym[j][i] {
                return Err(Error::InvalidCartanSpec("Cartan matrix is not symmetrizable".into()));
            }
        }
    }
    if !linalg::is_positive_definite(&sym) {
        return Err(Error::InvalidCartanSpec("Cartan matrix is not of finite type".into()));
    }
    Ok(())
}

/// Closure of the simple roots under simple reflections, staying positive.
fn generate_positive_roots(cartan: &[Vec<i64>], simple_roots: &[Vec<i64>]) -> Vec<Root> {
    let r = cartan.len();
    let unit = |i: usize| -> Vec<i64> { (0..r).map(|k| i64::from(k == i)).collect() };
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue = VecDeque::new();
    for i in 0..r {
        seen.insert(unit(i));
        queue.push_back(unit(i));
    }
    while let Some(beta) = queue.pop_front() {
        for i in 0..r {
            if beta == unit(i) {
                continue;
            }
            let c: i64 = (0..r).map(|j| beta[j] * cartan[i][j]).sum();
            if c == 0 {
                continue;
            }
            let mut gamma = beta.clone();
            gamma[i] -= c;
            if seen.insert(gamma.clone()) {
                queue.push_back(gamma);
            }
        }
    }
    let ambient = simple_roots.first().map_or(0, Vec::len);
    let mut roots: Vec<Root> = seen
        .into_iter()
        .map(|coeffs| {
            let mut character = vec![0; ambient];
            for (c, alpha) in coeffs.iter().zip(simple_roots) {
                for (x, a) in character.iter_mut().zip(alpha) {
                    *x += c * a;
                }
            }
            Root { coeffs, character }
        })
        .collect();
    roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.coeffs.cmp(&a.coeffs)));
    roots
}

impl RootDatum {
    pub fn spec(&self) -> &CartanSpec {
        &self.spec
    }

    pub fn blocks(&self) -> &[FactorBlock] {
        &self.blocks
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    /// Number of absolute simple roots.
    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Vec<i64>] {
        &self.simple_coroots
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn fundamental_coweights(&self) -> &[Vec<Q>] {
        &self.fundamental_coweights
    }

    /// Basis of the central cocharacters `{lambda : <alpha, lambda> = 0}`.
    pub fn central_basis(&self) -> &[Vec<Q>] {
        &self.central_basis
    }

    pub fn form(&self) -> &QMat {
        &self.form
    }

    /// Matrix of the simple reflection `s_i` on the cocharacter lattice.
    pub fn reflection(&self, i: usize) -> &IMat {
        &self.reflections[i]
    }

    pub fn weyl_order(&self) -> u128 {
        self.spec.weyl_order()
    }

    /// Block index owning simple root `i`.
    pub fn block_of_simple(&self, i: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.simple.contains(&i))
            .expect("simple root index in range")
    }

    fn check_dim(&self, v: usize) -> Result<()> {
        if v == self.ambient_rank {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.ambient_rank,
                found: v,
            })
        }
    }

    /// Canonical pairing between a character and a cocharacter.
    pub fn pairing(&self, chi: &[Q], lambda: &[Q]) -> Result<Q> {
        self.check_dim(chi.len())?;
        self.check_dim(lambda.len())?;
        Ok(linalg::dot(chi, lambda))
    }

    /// The invariant inner product on `X_*(T) ⊗ Q`.
    pub fn inner_product(&self, lambda: &[Q], other: &[Q]) -> Result<Q> {
        self.check_dim(lambda.len())?;
        self.check_dim(other.len())?;
        Ok(linalg::form(&self.form, lambda, other))
    }

    /// `<alpha_i, lambda>` for an integral cocharacter.
    pub fn simple_pairing(&self, i: usize, lambda: &[i64]) -> i64 {
        linalg::dot_i(&self.simple_roots[i], lambda)
    }

    /// `s_i(lambda) = lambda - <alpha_i, lambda> alpha_i^vee`.
    pub fn reflect(&self, i: usize, lambda: &[i64]) -> Vec<i64> {
        let c = self.simple_pairing(i, lambda);
        lambda
            .iter()
            .zip(&self.simple_coroots[i])
            .map(|(x, a)| x - c * a)
            .collect()
    }

    pub fn is_dominant(&self, lambda: &[i64]) -> bool {
        (0..self.rank()).all(|i| self.simple_pairing(i, lambda) >= 0)
    }

    pub fn is_dominant_q(&self, lambda: &[Q]) -> bool {
        self.simple_roots
            .iter()
            .all(|a| !linalg::dot(&linalg::to_q(a), lambda).is_negative())
    }

    /// Dominant representative of the Weyl orbit of `lambda`.
    pub fn dominant_representative(&self, lambda: &[i64]) -> Vec<i64> {
        let mut v = lambda.to_vec();
        while let Some(i) = (0..self.rank()).find(|&i| self.simple_pairing(i, &v) < 0) {
            v = self.reflect(i, &v);
        }
        v
    }

    /// Component of `lambda` in the central subspace, orthogonal for the form.
    pub fn central_projection(&self, lambda: &[Q]) -> Vec<Q> {
        linalg::project(&self.form, &self.central_basis, lambda)
    }

    /// Simple reflection `s_i` applied to a root in simple-root coordinates.
    pub fn reflect_root_coeffs(&self, i: usize, coeffs: &[i64]) -> Vec<i64> {
        let c: i64 = coeffs.iter().zip(&self.cartan[i]).map(|(b, a)| b * a).sum();
        let mut out = coeffs.to_vec();
        out[i] -= c;
        out
    }

    /// Number of positive roots fixed by the stabilizer of `mu`, i.e. with
    /// `<beta, mu> = 0`.
    pub fn count_roots_orthogonal_to(&self, mu: &[i64]) -> usize {
        self.positive_roots
            .iter()
            .filter(|b| linalg::dot_i(&b.character, mu) == 0)
            .count()
    }
}

/// A pinned automorphism of the based root datum, acting on the index set
/// of simple roots and on the cocharacter lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramAutomorphism {
    perm: Vec<usize>,
    order: usize,
    lattice: IMat,
}

impl DiagramAutomorphism {
    pub fn identity(datum: &RootDatum) -> Self {
        DiagramAutomorphism {
            perm: (0..datum.rank()).collect(),
            order: 1,
            lattice: linalg::identity(datum.ambient_rank()),
        }
    }

    /// Lifts a Cartan-preserving permutation of the simple roots to the
    /// lattice, using the pinned realization of each factor.
    pub fn from_simple_perm(datum: &RootDatum, perm: &[usize]) -> Result<Self> {
        let r = datum.rank();
        if perm.len() != r {
            return Err(Error::InvalidAutomorphism(format!(
                "permutation has {} entries, datum has {r} simple roots",
                perm.len()
            )));
        }
        let mut seen = vec![false; r];
        for &p in perm {
            if p >= r || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidAutomorphism("not a permutation".into()));
            }
        }
        let n = datum.ambient_rank();
        let mut lattice = vec![vec![0i64; n]; n];
        for block in datum.blocks() {
            let target = if block.simple.is_empty() {
                block.clone()
            } else {
                let image = perm[block.simple.start];
                datum.blocks()[datum.block_of_simple(image)].clone()
            };
            if target.factor != block.factor {
                return Err(Error::InvalidAutomorphism(
                    "permutation mixes non-isomorphic factors".into(),
                ));
            }
            let local: Vec<usize> = block
                .simple
                .clone()
                .map(|i| perm[i].checked_sub(target.simple.start).unwrap_or(usize::MAX))
                .collect();
            if local.iter().any(|&x| x >= block.simple.len()) {
                return Err(Error::InvalidAutomorphism(
                    "permutation splits a factor".into(),
                ));
            }
            let local_matrix = local_lattice_action(block.factor, &local)?;
            for (a, row) in local_matrix.iter().enumerate() {
                for (b, &x) in row.iter().enumerate() {
                    lattice[target.coords.start + a][block.coords.start + b] = x;
                }
            }
        }
        Self::from_parts(datum, perm.to_vec(), lattice)
    }

    /// Builds an automorphism from its lattice action, reading off the
    /// permutation of simple coroots.
    pub fn from_lattice(datum: &RootDatum, lattice: IMat) -> Result<Self> {
        let n = datum.ambient_rank();
        if lattice.len() != n || lattice.iter().any(|row| row.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: lattice.len(),
            });
        }
        let perm = datum
            .simple_coroots()
            .iter()
            .map(|c| {
                let image = linalg::mat_vec(&lattice, c);
                datum
                    .simple_coroots()
                    .iter()
                    .position(|d| *d == image)
                    .ok_or_else(|| {
                        Error::InvalidAutomorphism("simple coroot not mapped to a simple coroot".into())
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_parts(datum, perm, lattice)
    }

    fn from_parts(datum: &RootDatum, perm: Vec<usize>, lattice: IMat) -> Result<Self> {
        let n = datum.ambient_rank();
        let id = linalg::identity(n);
        let mut power = lattice.clone();
        let mut order = 1;
        while power != id {
            power = linalg::mat_mul(&power, &lattice);
            order += 1;
            if order > 64 {
                return Err(Error::InvalidAutomorphism("lattice action has no finite order".into()));
            }
        }
        let aut = DiagramAutomorphism { perm, order, lattice };
        aut.validate(datum)?;
        Ok(aut)
    }

    pub fn validate(&self, datum: &RootDatum) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidAutomorphism(m.into()));
        let cartan = datum.cartan_matrix();
        let r = datum.rank();
        for i in 0..r {
            for j in 0..r {
                if cartan[self.perm[i]][self.perm[j]] != cartan[i][j] {
                    return bad("permutation does not preserve the Cartan matrix");
                }
            }
        }
        let lt = linalg::transpose(&self.lattice);
        for i in 0..r {
            let p = self.perm[i];
            if linalg::mat_vec(&self.lattice, &datum.simple_coroots()[i]) != datum.simple_coroots()[p] {
                return bad("lattice action does not match the permutation on coroots");
            }
            if linalg::mat_vec(&lt, &datum.simple_roots()[p]) != datum.simple_roots()[i] {
                return bad("lattice action does not match the permutation on roots");
            }
        }
        let n = datum.ambient_rank();
        let form = datum.form();
        for a in 0..n {
            let la: Vec<Q> = self.lattice.iter().map(|row| q(row[a])).collect();
            for b in 0..n {
                let lb: Vec<Q> = self.lattice.iter().map(|row| q(row[b])).collect();
                if linalg::form(form, &la, &lb) != form[a][b] {
                    return bad("lattice action does not preserve the invariant form");
                }
            }
        }
        let mut p: Vec<usize> = (0..r).collect();
        for _ in 0..self.order {
            p = p.iter().map(|&i| self.perm[i]).collect();
        }
        if p.iter().enumerate().any(|(i, &x)| i != x) {
            return bad("permutation order does not divide the lattice order");
        }
        Ok(())
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn lattice(&self) -> &IMat {
        &self.lattice
    }

    pub fn is_identity(&self) -> bool {
        self.order == 1
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        linalg::mat_vec(&self.lattice, v)
    }

    pub fn apply_q(&self, v: &[Q]) -> Vec<Q> {
        linalg::mat_vec_q(&self.lattice, v)
    }

    /// The cycles of the permutation of simple roots (fixed points omitted).
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.perm.len()];
        let mut out = Vec::new();
        for start in 0..self.perm.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut i = self.perm[start];
            while i != start {
                seen[i] = true;
                cycle.push(i);
                i = self.perm[i];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Orbits of the permutation on simple roots, including fixed points,
    /// ordered by smallest member.
    pub fn simple_orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.perm.len()];
        let mut out = Vec::new();
        for start in 0..self.perm.len() {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![];
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                orbit.push(i);
                i = self.perm[i];
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }
}

/// Lattice block realizing a local permutation of one factor's simple roots.
fn local_lattice_action(factor: Factor, local: &[usize]) -> Result<IMat> {
    let n = factor.ambient_rank();
    if local.iter().enumerate().all(|(i, &p)| i == p) {
        return Ok(linalg::identity(n));
    }
    let unsupported = || {
        Err(Error::InvalidAutomorphism(format!(
            "no pinned lattice action for permutation {local:?} on {factor}"
        )))
    };
    match (factor.realization(), factor) {
        (Realization::CorootBasis, _) => {
            let mut m = vec![vec![0; n]; n];
            for (k, &p) in local.iter().enumerate() {
                m[p][k] = 1;
            }
            Ok(m)
        }
        (_, Factor::Gl(m)) => {
            if local.iter().enumerate().any(|(i, &p)| p != m - 2 - i) {
                return unsupported();
            }
            let mut out = vec![vec![0; n]; n];
            for a in 0..n {
                out[n - 1 - a][a] = -1;
            }
            Ok(out)
        }
        (_, Factor::D(m)) => {
            let swap = local
                .iter()
                .enumerate()
                .all(|(i, &p)| if i + 2 < m { p == i } else { p == 2 * m - 3 - i });
            if !swap {
                return unsupported();
            }
            let mut out = linalg::identity(n);
            out[n - 1][n - 1] = -1;
            Ok(out)
        }
        _ => unsupported(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::to_q;

    fn datum(s: &str) -> RootDatum {
        build_root_datum(&s.parse().unwrap(), &FormNormalization::default()).unwrap()
    }

    #[test]
    fn parse_specs() {
        assert_eq!("GL4".parse::<CartanSpec>().unwrap().factors, vec![Factor::Gl(4)]);
        assert_eq!(
            "A2xA1".parse::<CartanSpec>().unwrap().factors,
            vec![Factor::A(2), Factor::A(1)]
        );
        assert_eq!(
            "GL3xTorus1".parse::<CartanSpec>().unwrap().to_string(),
            "GL3xTorus1"
        );
        assert_eq!("B10".parse::<CartanSpec>().unwrap().factors, vec![Factor::B(10)]);
        assert!("D2".parse::<CartanSpec>().is_err());
        assert!("E5".parse::<CartanSpec>().is_err());
        assert!("B1".parse::<CartanSpec>().is_err());
        assert!("".parse::<CartanSpec>().is_err());
        assert!("Q3".parse::<CartanSpec>().is_err());
    }

    #[test]
    fn gl3_standard_realization() {
        let d = datum("GL3");
        assert_eq!(d.simple_roots(), &[vec![1, -1, 0], vec![0, 1, -1]]);
        assert_eq!(d.positive_roots().len(), 3);
        assert_eq!(d.central_basis(), &[to_q(&[1, 1, 1])]);
        let chi = to_q(&[1, -1, 0]);
        assert_eq!(d.pairing(&chi, &to_q(&[1, 0, 0])).unwrap(), q(1));
        assert_eq!(
            d.inner_product(&to_q(&[1, 0, 0]), &to_q(&[0, 1, 0])).unwrap(),
            q(0)
        );
        assert_eq!(
            d.pairing(&chi, &to_q(&[1, 0])),
            Err(Error::DimensionMismatch { expected: 3, found: 2 })
        );
    }

    #[test]
    fn g2_cartan_and_roots() {
        let d = datum("G2");
        let c = d.cartan_matrix();
        let t: Vec<Vec<i64>> = linalg::transpose(c);
        assert!(c == [vec![2, -3], vec![-1, 2]] || t == [vec![2, -3], vec![-1, 2]]);
        assert_eq!(d.positive_roots().len(), 6);
    }

    #[test]
    fn root_counts_per_family() {
        for (s, n) in [
            ("A1", 1),
            ("A4", 10),
            ("B3", 9),
            ("C4", 16),
            ("D4", 12),
            ("D5", 20),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
            ("F4", 24),
            ("GL5", 10),
            ("Torus2", 0),
            ("A2xB2", 7),
        ] {
            assert_eq!(datum(s).positive_roots().len(), n, "{s}");
        }
    }

    #[test]
    fn coweights_are_dual_to_simple_roots() {
        for s in ["B2", "C3", "G2", "F4", "E6", "GL4", "D4xTorus1"] {
            let d = datum(s);
            for (i, a) in d.simple_roots().iter().enumerate() {
                for (j, w) in d.fundamental_coweights().iter().enumerate() {
                    let expect = if i == j { q(1) } else { q(0) };
                    assert_eq!(d.pairing(&to_q(a), w).unwrap(), expect, "{s}");
                }
            }
        }
    }

    #[test]
    fn a1_coroot_has_length_two() {
        let d = datum("A1");
        let c = to_q(&d.simple_coroots()[0]);
        assert_eq!(d.inner_product(&c, &c).unwrap(), q(2));
        for (i, a) in d.simple_roots().iter().enumerate() {
            assert_eq!(linalg::dot_i(a, &d.simple_coroots()[i]), 2);
        }
    }

    #[test]
    fn short_coroots_normalized() {
        for s in ["B3", "C3", "F4", "G2", "E7", "D5"] {
            let d = datum(s);
            let lengths: Vec<Q> = d
                .simple_coroots()
                .iter()
                .map(|c| d.inner_product(&to_q(c), &to_q(c)).unwrap())
                .collect();
            assert_eq!(lengths.iter().min().unwrap(), &q(2), "{s}");
        }
    }

    #[test]
    fn diagram_automorphisms() {
        let gl4 = datum("GL4");
        let flip = DiagramAutomorphism::from_simple_perm(&gl4, &[2, 1, 0]).unwrap();
        assert_eq!(flip.order(), 2);
        assert_eq!(flip.apply(&[1, 0, 0, -1]), vec![1, 0, 0, -1]);
        assert_eq!(flip.apply(&[1, 0, 0, 0]), vec![0, 0, 0, -1]);
        assert!(DiagramAutomorphism::from_simple_perm(&gl4, &[1, 0, 2]).is_err());

        let d4 = datum("D4");
        assert!(DiagramAutomorphism::from_simple_perm(&d4, &[0, 1, 3, 2]).is_ok());
        assert!(DiagramAutomorphism::from_simple_perm(&d4, &[3, 1, 0, 2]).is_err());

        let e6 = datum("E6");
        let t = DiagramAutomorphism::from_simple_perm(&e6, &[5, 1, 4, 3, 2, 0]).unwrap();
        assert_eq!(t.order(), 2);

        let a2a2 = datum("A2xA2");
        let swap = DiagramAutomorphism::from_simple_perm(&a2a2, &[2, 3, 0, 1]).unwrap();
        assert_eq!(swap.apply(&[1, 2, 3, 4]), vec![3, 4, 1, 2]);

        let torus = datum("Torus2");
        let s = DiagramAutomorphism::from_lattice(&torus, vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(s.order(), 2);
        assert!(s.perm().is_empty());
    }
}
