//! Local Shtuka data `(G, [b], {mu})` with basic `b`, the relative root data
//! of `J = J_b`, and the per-orbit invariants `I_[w]`, `n_[w]`.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::isocrystal::{self, NewtonVector};
use crate::linalg::{self, q, q_frac, IMat, Q};
use crate::rootdata::{build_root_datum, CartanSpec, DiagramAutomorphism, Factor, FormNormalization, RootDatum};
use crate::steinberg::GroupClass;
use crate::subset::Subset;
use crate::weyl::{self, GaloisOrbit, KostantSet};

/// Relative simple roots of `J` as characters of `T`, with the dual
/// cocharacters `omega_alpha`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeRootData {
    pub delta: Vec<Vec<Q>>,
    pub omega: Vec<Vec<Q>>,
    pub labels: Vec<String>,
}

impl RelativeRootData {
    pub fn new(delta: Vec<Vec<Q>>, omega: Vec<Vec<Q>>) -> Result<Self> {
        if delta.len() != omega.len() {
            return Err(Error::DualBasisViolation(format!(
                "{} roots but {} coweights",
                delta.len(),
                omega.len()
            )));
        }
        if delta.len() >= Subset::MAX_SIZE {
            return Err(Error::InvalidDatum("too many relative simple roots".into()));
        }
        let labels = (1..=delta.len()).map(|k| format!("a{k}")).collect();
        Ok(RelativeRootData { delta, omega, labels })
    }

    pub fn len(&self) -> usize {
        self.delta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.delta.is_empty()
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn subset_labels(&self, s: Subset) -> Vec<String> {
        s.indices().map(|i| self.labels[i].clone()).collect()
    }

    /// Replaces each `omega` by its component orthogonal to the center.
    fn project_off_center(&mut self, g: &RootDatum) {
        for w in &mut self.omega {
            let c = g.central_projection(w);
            *w = linalg::sub(w, &c);
        }
    }

    fn validate(&self, g: &RootDatum, tau: &DiagramAutomorphism) -> Result<()> {
        let n = g.ambient_rank();
        if self.delta.iter().chain(&self.omega).any(|v| v.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self
                    .delta
                    .iter()
                    .chain(&self.omega)
                    .map(Vec::len)
                    .find(|&l| l != n)
                    .unwrap_or(n),
            });
        }
        for (i, a) in self.delta.iter().enumerate() {
            for (j, w) in self.omega.iter().enumerate() {
                let expect = if i == j { q(1) } else { q(0) };
                if linalg::dot(a, w) != expect {
                    return Err(Error::DualBasisViolation(format!(
                        "<{}, omega_{}> = {}",
                        self.labels[i],
                        self.labels[j],
                        linalg::fmt_q(&linalg::dot(a, w))
                    )));
                }
            }
        }
        for (label, w) in self.labels.iter().zip(&self.omega) {
            if tau.apply_q(w) != *w {
                return Err(Error::GaloisIncompatible(format!("tau moves omega_{label}")));
            }
            for z in g.central_basis() {
                if !linalg::form(g.form(), w, z).is_zero() {
                    return Err(Error::DualBasisViolation(format!(
                        "omega_{label} is not orthogonal to the center"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `J` for basic `b` in `GL_n` with slope `k/m`: `GL_{n/m}(D)`, relative
/// type `A_{n/m-1}`, with roots supported on consecutive blocks of size `m`.
pub fn derive_j_gln(n: usize, nu: &NewtonVector) -> Result<RelativeRootData> {
    if !nu.is_basic() {
        return Err(Error::NotBasic);
    }
    if nu.len() != n || n == 0 {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: nu.len(),
        });
    }
    let lambda = &nu.values[0];
    let m = usize::try_from(lambda.denom().clone()).map_err(|_| {
        Error::InvalidNewtonVector("slope denominator out of range".into())
    })?;
    if !n.is_multiple_of(m) {
        return Err(Error::DenominatorNotDividing {
            denominator: lambda.denom().to_string(),
            n,
        });
    }
    let blocks = n / m;
    let inv = q_frac(1, m as i64);
    let delta = (0..blocks.saturating_sub(1))
        .map(|j| {
            (0..n)
                .map(|x| match x / m {
                    b if b == j => inv.clone(),
                    b if b == j + 1 => -inv.clone(),
                    _ => Q::zero(),
                })
                .collect()
        })
        .collect();
    let omega = (1..blocks)
        .map(|j| {
            let mean = q_frac((j * m) as i64, n as i64);
            (0..n)
                .map(|x| if x < j * m { q(1) - &mean } else { -mean.clone() })
                .collect()
        })
        .collect();
    RelativeRootData::new(delta, omega)
}

/// Relative roots of the quasi-split group itself: Galois averages of the
/// absolute simple roots over each `tau`-orbit, with `omega` the orbit sums
/// of fundamental coweights.
pub fn quasi_split_relative_roots(g: &RootDatum, tau: &DiagramAutomorphism) -> Result<RelativeRootData> {
    let mut delta = Vec::new();
    let mut omega = Vec::new();
    for orbit in tau.simple_orbits() {
        let k = q_frac(1, orbit.len() as i64);
        let mut a = vec![Q::zero(); g.ambient_rank()];
        let mut w = vec![Q::zero(); g.ambient_rank()];
        for &i in &orbit {
            a = linalg::add(&a, &linalg::to_q(&g.simple_roots()[i]));
            w = linalg::add(&w, &g.fundamental_coweights()[i]);
        }
        delta.push(linalg::scale(&k, &a));
        omega.push(w);
    }
    let mut j = RelativeRootData::new(delta, omega)?;
    j.project_off_center(g);
    Ok(j)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TauSpec {
    Identity,
    /// Permutation of absolute simple roots, lifted through the pinning.
    SimplePerm(Vec<usize>),
    Lattice(IMat),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JSource {
    /// `J` is the quasi-split group itself (requires `nu` central).
    QuasiSplit,
    /// `J = GL_{n/m}(D)` for a single `GL_n` factor.
    GlnBlocks,
    Explicit(RelativeRootData),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Preset(String),
    Explicit,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Preset(p) => write!(f, "preset {p}"),
            Provenance::Explicit => write!(f, "explicit"),
        }
    }
}

/// Everything needed to (re)build a datum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DatumSpec {
    pub group: CartanSpec,
    pub normalization: FormNormalization,
    pub tau: TauSpec,
    pub s: u32,
    pub mu: Vec<i64>,
    pub nu: Vec<Q>,
    pub j: JSource,
    pub provenance: Provenance,
    pub class: GroupClass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitInvariant {
    pub orbit: GaloisOrbit,
    pub i_set: Subset,
    pub n: usize,
}

impl OrbitInvariant {
    pub fn length(&self) -> usize {
        self.orbit.length
    }

    pub fn size(&self) -> usize {
        self.orbit.size()
    }
}

#[derive(Clone, Debug)]
pub struct LocalShtukaDatum {
    spec: DatumSpec,
    g: RootDatum,
    tau: DiagramAutomorphism,
    j: RelativeRootData,
    kostant: KostantSet,
    invariants: Vec<OrbitInvariant>,
}

impl LocalShtukaDatum {
    pub fn build(spec: DatumSpec) -> Result<Self> {
        Self::build_bounded(spec, weyl::DEFAULT_ORBIT_BOUND)
    }

    /// As [`LocalShtukaDatum::build`], failing with `OrbitTooLarge` once
    /// `W mu` exceeds `orbit_bound` elements.
    pub fn build_bounded(spec: DatumSpec, orbit_bound: usize) -> Result<Self> {
        let g = build_root_datum(&spec.group, &spec.normalization)?;
        let n = g.ambient_rank();
        let tau = match &spec.tau {
            TauSpec::Identity => DiagramAutomorphism::identity(&g),
            TauSpec::SimplePerm(p) => DiagramAutomorphism::from_simple_perm(&g, p)?,
            TauSpec::Lattice(m) => DiagramAutomorphism::from_lattice(&g, m.clone())?,
        };
        if spec.s == 0 {
            return Err(Error::InvalidDatum("s must be positive".into()));
        }
        for v in [spec.mu.len(), spec.nu.len()] {
            if v != n {
                return Err(Error::DimensionMismatch { expected: n, found: v });
            }
        }
        weyl::check_dominant(&g, &spec.mu)?;
        if tau.apply(&spec.mu) != spec.mu {
            return Err(Error::GaloisIncompatible("tau moves mu".into()));
        }
        let nu_pairings_zero = g
            .simple_roots()
            .iter()
            .all(|a| linalg::dot(&linalg::to_q(a), &spec.nu).is_zero());
        if !nu_pairings_zero {
            return Err(Error::NotBasic);
        }
        let nu = NewtonVector::general(&g, spec.nu.clone())?;
        if tau.apply_q(&spec.nu) != spec.nu {
            return Err(Error::GaloisIncompatible("tau moves nu".into()));
        }
        if !isocrystal::is_acceptable(&g, &nu, &spec.mu, &tau)? {
            return Err(Error::EmptyPeriodDomain(
                "[b] is not acceptable for {mu}: nu_b is not below the Galois average of mu".into(),
            ));
        }

        let j = match &spec.j {
            JSource::QuasiSplit => {
                if !linalg::is_zero(&spec.nu) {
                    return Err(Error::InvalidDatum(
                        "J = G requires nu = 0; supply J explicitly".into(),
                    ));
                }
                quasi_split_relative_roots(&g, &tau)?
            }
            JSource::GlnBlocks => {
                let [Factor::Gl(m)] = spec.group.factors[..] else {
                    return Err(Error::InvalidDatum("block J needs a single GL_n factor".into()));
                };
                let mut j = derive_j_gln(m, &NewtonVector::constant(m, spec.nu[0].clone()))?;
                j.project_off_center(&g);
                j
            }
            JSource::Explicit(raw) => {
                let mut j = raw.clone();
                j.project_off_center(&g);
                j
            }
        };
        j.validate(&g, &tau)?;

        let kostant = weyl::kostant_representatives_bounded(&g, &spec.mu, orbit_bound)?;
        let orbits = weyl::galois_orbits(&kostant, &tau)?;
        let invariants = compute_orbit_invariants(&kostant, &orbits, &spec.nu, &g, &j.omega)?;
        Ok(LocalShtukaDatum {
            spec,
            g,
            tau,
            j,
            kostant,
            invariants,
        })
    }

    pub fn spec(&self) -> &DatumSpec {
        &self.spec
    }

    pub fn group(&self) -> &RootDatum {
        &self.g
    }

    pub fn tau(&self) -> &DiagramAutomorphism {
        &self.tau
    }

    pub fn j(&self) -> &RelativeRootData {
        &self.j
    }

    pub fn mu(&self) -> &[i64] {
        &self.spec.mu
    }

    pub fn nu(&self) -> &[Q] {
        &self.spec.nu
    }

    pub fn s(&self) -> u32 {
        self.spec.s
    }

    pub fn class(&self) -> GroupClass {
        self.spec.class
    }

    pub fn provenance(&self) -> &Provenance {
        &self.spec.provenance
    }

    pub fn kostant(&self) -> &KostantSet {
        &self.kostant
    }

    /// Orbits with `I_[w]` and `n_[w]`, ordered by first member.
    pub fn orbit_invariants(&self) -> &[OrbitInvariant] {
        &self.invariants
    }

    /// `|Δ_J|`.
    pub fn relative_rank(&self) -> usize {
        self.j.len()
    }

    /// `dim F = max_w l(w)` over the Kostant set.
    pub fn dim_flag(&self) -> usize {
        self.kostant.max_length()
    }

    /// Same datum with the invariant form scaled per factor.
    pub fn with_rescaled_form(&self, scales: Vec<Q>) -> Result<Self> {
        let mut spec = self.spec.clone();
        spec.normalization = FormNormalization::PerFactorScale(scales);
        Self::build(spec)
    }

    /// `P(w mu - nu, omega_alpha)` for Kostant entry `k`.
    pub fn pairing(&self, k: usize, alpha: usize) -> Q {
        let x = linalg::sub(&linalg::to_q(&self.kostant.entries[k].image), &self.spec.nu);
        linalg::form(self.g.form(), &x, &self.j.omega[alpha])
    }
}

/// `I_[w] = {alpha : P(w mu - nu, omega_alpha) <= 0}` for every orbit,
/// checked on every member.
pub fn compute_orbit_invariants(
    kostant: &KostantSet,
    orbits: &[GaloisOrbit],
    nu: &[Q],
    g: &RootDatum,
    omega: &[Vec<Q>],
) -> Result<Vec<OrbitInvariant>> {
    let i_of = |k: usize| {
        let x = linalg::sub(&linalg::to_q(&kostant.entries[k].image), nu);
        Subset::from_indices(
            omega
                .iter()
                .enumerate()
                .filter(|(_, w)| !linalg::form(g.form(), &x, w).is_positive())
                .map(|(a, _)| a),
        )
    };
    orbits
        .iter()
        .enumerate()
        .map(|(id, orbit)| {
            let i_set = i_of(orbit.representative());
            if orbit.members.iter().any(|&m| i_of(m) != i_set) {
                return Err(Error::OrbitInconsistency { orbit: id });
            }
            let n = 2 * orbit.length + (omega.len() - i_set.len());
            Ok(OrbitInvariant {
                orbit: orbit.clone(),
                i_set,
                n,
            })
        })
        .collect()
}

/// Named families of data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Preset {
    /// `GL_{d+1}`, `mu = (d, -1, .., -1)`, `b = 1`.
    Drinfeld(usize),
    /// `GL_n` with basic `b` of slope `lambda`.
    GlnBasic { n: usize, mu: Vec<i64>, lambda: Q },
    /// Split `SO_n`, `mu` the minuscule cocharacter `e_1`, `b = 1`.
    Quadric(usize),
    /// Any split group with `b = 1`.
    Split { group: CartanSpec, mu: Vec<i64> },
}

fn parse_int<T: FromStr>(s: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::InvalidDatum(format!("expected an integer, got {s:?}")))
}

impl FromStr for Preset {
    type Err = Error;

    /// `drinfeld:d`, `gln_basic:n,mu_1,..,mu_n,lambda` (any mix of `,` and
    /// `:` as separators), `quadric:n`, `split:GROUP:mu_1,..`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = s.split_once(':').unwrap_or((s, ""));
        let tokens: Vec<&str> = args
            .split([',', ':'])
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .collect();
        match name.trim().to_ascii_lowercase().as_str() {
            "drinfeld" => match tokens[..] {
                [d] => Ok(Preset::Drinfeld(parse_int(d)?)),
                _ => Err(Error::InvalidDatum("drinfeld takes one argument".into())),
            },
            "quadric" => match tokens[..] {
                [n] => Ok(Preset::Quadric(parse_int(n)?)),
                _ => Err(Error::InvalidDatum("quadric takes one argument".into())),
            },
            "gln_basic" => {
                let n: usize = parse_int(
                    tokens
                        .first()
                        .ok_or_else(|| Error::InvalidDatum("gln_basic needs n".into()))?,
                )?;
                if tokens.len() != n + 2 {
                    return Err(Error::InvalidDatum(format!(
                        "gln_basic:{n} expects {n} entries of mu and a slope"
                    )));
                }
                let mu = tokens[1..=n].iter().map(|t| parse_int(t)).collect::<Result<_>>()?;
                let lambda = linalg::parse_q(tokens[n + 1])
                    .ok_or_else(|| Error::InvalidDatum(format!("bad slope {:?}", tokens[n + 1])))?;
                Ok(Preset::GlnBasic { n, mu, lambda })
            }
            "split" => {
                let (group, mu) = args
                    .split_once(':')
                    .ok_or_else(|| Error::InvalidDatum("split:GROUP:mu".into()))?;
                let mu = mu.split(',').map(parse_int).collect::<Result<_>>()?;
                Ok(Preset::Split {
                    group: group.parse()?,
                    mu,
                })
            }
            other => Err(Error::InvalidDatum(format!("unknown preset {other:?}"))),
        }
    }
}

fn join<T: fmt::Display>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::Drinfeld(d) => write!(f, "drinfeld:{d}"),
            Preset::GlnBasic { n, mu, lambda } => {
                write!(f, "gln_basic:{n},{}:{}", join(mu), lambda)
            }
            Preset::Quadric(n) => write!(f, "quadric:{n}"),
            Preset::Split { group, mu } => write!(f, "split:{group}:{}", join(mu)),
        }
    }
}

impl Preset {
    pub fn spec(&self) -> Result<DatumSpec> {
        let provenance = Provenance::Preset(self.to_string());
        let base = |group: CartanSpec, mu: Vec<i64>, class| {
            let n = mu.len();
            DatumSpec {
                group,
                normalization: FormNormalization::default(),
                tau: TauSpec::Identity,
                s: 1,
                mu,
                nu: vec![Q::zero(); n],
                j: JSource::QuasiSplit,
                provenance: provenance.clone(),
                class,
            }
        };
        let gl = GroupClass::GlnD { division_degree: 1 };
        match self {
            Preset::Drinfeld(d) => {
                if *d == 0 {
                    return Err(Error::InvalidDatum("drinfeld needs d >= 1".into()));
                }
                let mut mu = vec![-1; d + 1];
                mu[0] = *d as i64;
                Ok(base(CartanSpec::single(Factor::Gl(d + 1))?, mu, gl))
            }
            Preset::GlnBasic { n, mu, lambda } => {
                if mu.len() != *n {
                    return Err(Error::InvalidMu(format!("expected {n} entries")));
                }
                let m = u32::try_from(lambda.denom().clone())
                    .map_err(|_| Error::InvalidNewtonVector("slope denominator too large".into()))?;
                let mut spec = base(
                    CartanSpec::single(Factor::Gl(*n))?,
                    mu.clone(),
                    GroupClass::GlnD { division_degree: m },
                );
                spec.nu = vec![lambda.clone(); *n];
                spec.j = JSource::GlnBlocks;
                if !(*n as u32).is_multiple_of(m) {
                    return Err(Error::DenominatorNotDividing {
                        denominator: lambda.denom().to_string(),
                        n: *n,
                    });
                }
                Ok(spec)
            }
            Preset::Quadric(n) => {
                let factor = match (n % 2, n / 2) {
                    (1, m) if m >= 2 => Factor::B(m),
                    (0, m) if m >= 3 => Factor::D(m),
                    _ => {
                        return Err(Error::InvalidDatum(
                            "quadric needs n >= 5 (SO_n of semisimple type B or D)".into(),
                        ))
                    }
                };
                let mut mu = vec![0; factor.ambient_rank()];
                mu[0] = 1;
                Ok(base(CartanSpec::single(factor)?, mu, GroupClass::GeneralQuasiSplit))
            }
            Preset::Split { group, mu } => {
                let class = match group.factors[..] {
                    [Factor::Gl(_)] => gl,
                    _ => GroupClass::GeneralQuasiSplit,
                };
                Ok(base(group.clone(), mu.clone(), class))
            }
        }
    }

    pub fn build(&self) -> Result<LocalShtukaDatum> {
        LocalShtukaDatum::build(self.spec()?)
    }
}

pub fn build_datum(preset: &str) -> Result<LocalShtukaDatum> {
    preset.parse::<Preset>()?.build()
}
