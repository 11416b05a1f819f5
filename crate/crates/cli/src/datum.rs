//! Datum files (JSON) and their conversion to [`DatumSpec`].

use std::path::Path;

use perdom_core::linalg::{self, Q};
use perdom_core::rootdata::{build_root_datum, CartanSpec, Factor, FormNormalization};
use perdom_core::shtuka::{DatumSpec, JSource, LocalShtukaDatum, Preset, Provenance, RelativeRootData, TauSpec};
use perdom_core::steinberg::GroupClass;
use perdom_core::weyl::DEFAULT_ORBIT_BOUND;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// Overrides the bound on `|W mu|` during Kostant enumeration.
pub const BOUND_ENV: &str = "PERDOM_WEYL_BOUND";

/// A rational given either as a JSON integer or as a `"num/den"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalInput {
    Int(i64),
    Text(String),
}

impl RationalInput {
    pub fn to_q(&self) -> CliResult<Q> {
        match self {
            RationalInput::Int(n) => Ok(linalg::q(*n)),
            RationalInput::Text(s) => {
                linalg::parse_q(s).ok_or_else(|| CliError::Parse(format!("bad rational {s:?}")))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NuInput {
    Vector(Vec<RationalInput>),
    /// Basic slope `lambda`, expanded to `(lambda, .., lambda)`.
    Slope(RationalInput),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaloisInput {
    /// Cycles on absolute simple-root labels `a1, a2, ..`.
    #[serde(default)]
    pub cycles: Vec<Vec<String>>,
    #[serde(default)]
    pub order: Option<usize>,
    /// Explicit action on `X_*(T)`, overriding `cycles`.
    #[serde(default)]
    pub lattice: Option<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JInput {
    pub delta: Vec<Vec<RationalInput>>,
    pub omega: Vec<Vec<RationalInput>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumFile {
    #[serde(default)]
    pub preset: Option<String>,
    #[serde(default)]
    pub group: Option<String>,
    #[serde(default)]
    pub galois: Option<GaloisInput>,
    #[serde(default)]
    pub s: Option<u32>,
    #[serde(default)]
    pub mu: Option<Vec<i64>>,
    #[serde(default)]
    pub nu: Option<NuInput>,
    #[serde(default)]
    pub j: Option<JInput>,
    /// `general`, `gln` or `gln_d:<degree>`.
    #[serde(default)]
    pub class: Option<String>,
    /// Per-factor positive scales of the invariant form.
    #[serde(default)]
    pub normalization: Option<Vec<RationalInput>>,
}

pub fn parse_label(label: &str, max: usize) -> CliResult<usize> {
    let idx = label
        .trim()
        .strip_prefix('a')
        .and_then(|n| n.parse::<usize>().ok())
        .filter(|&n| n >= 1 && n <= max)
        .ok_or_else(|| CliError::Parse(format!("bad simple-root label {label:?} (a1..a{max})")))?;
    Ok(idx - 1)
}

pub fn parse_class(s: &str) -> CliResult<GroupClass> {
    let s = s.trim().to_ascii_lowercase();
    match s.as_str() {
        "general" => Ok(GroupClass::GeneralQuasiSplit),
        "gln" => Ok(GroupClass::GlnD { division_degree: 1 }),
        _ => s
            .strip_prefix("gln_d:")
            .and_then(|d| d.parse().ok())
            .filter(|&d: &u32| d >= 1)
            .map(|division_degree| GroupClass::GlnD { division_degree })
            .ok_or_else(|| CliError::Parse(format!("unknown group class {s:?}"))),
    }
}

fn rationals(v: &[RationalInput]) -> CliResult<Vec<Q>> {
    v.iter().map(RationalInput::to_q).collect()
}

fn permutation_from_cycles(cycles: &[Vec<String>], rank: usize) -> CliResult<Vec<usize>> {
    let mut perm: Vec<usize> = (0..rank).collect();
    let mut seen = vec![false; rank];
    for cycle in cycles {
        let idx: Vec<usize> = cycle.iter().map(|l| parse_label(l, rank)).collect::<CliResult<_>>()?;
        for (k, &a) in idx.iter().enumerate() {
            if std::mem::replace(&mut seen[a], true) {
                return Err(CliError::Parse(format!("label a{} occurs twice in galois cycles", a + 1)));
            }
            perm[a] = idx[(k + 1) % idx.len()];
        }
    }
    Ok(perm)
}

fn permutation_order(perm: &[usize]) -> usize {
    let gcd = |mut a: usize, mut b: usize| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    let mut order = 1;
    for start in 0..perm.len() {
        let mut len = 1;
        let mut x = perm[start];
        while x != start {
            x = perm[x];
            len += 1;
        }
        order = order / gcd(order, len) * len;
    }
    order
}

impl DatumFile {
    pub fn from_json(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("datum file: {e}")))
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn to_spec(&self) -> CliResult<DatumSpec> {
        if let Some(p) = &self.preset {
            return preset_spec(p);
        }
        let (Some(group), Some(mu), Some(nu)) = (&self.group, &self.mu, &self.nu) else {
            return Err(CliError::Parse("datum needs either preset, or group, mu and nu".into()));
        };
        let group: CartanSpec = group.parse().map_err(|e| CliError::Parse(format!("{e}")))?;
        let normalization = match &self.normalization {
            Some(v) => FormNormalization::PerFactorScale(rationals(v)?),
            None => FormNormalization::default(),
        };
        let g = build_root_datum(&group, &normalization)?;
        let nu = match nu {
            NuInput::Vector(v) => rationals(v)?,
            NuInput::Slope(x) => vec![x.to_q()?; g.ambient_rank()],
        };
        let tau = match &self.galois {
            None => TauSpec::Identity,
            Some(GaloisInput { lattice: Some(m), .. }) => TauSpec::Lattice(m.clone()),
            Some(GaloisInput { cycles, order, .. }) => {
                let perm = permutation_from_cycles(cycles, g.rank())?;
                let actual = permutation_order(&perm);
                if order.is_some_and(|o| o != actual) {
                    return Err(CliError::Validation(perdom_core::Error::InvalidAutomorphism(
                        format!("cycles have order {actual}, file says {}", order.unwrap()),
                    )));
                }
                if perm.iter().enumerate().all(|(i, &p)| i == p) {
                    TauSpec::Identity
                } else {
                    TauSpec::SimplePerm(perm)
                }
            }
        };
        let single_gl = matches!(group.factors[..], [Factor::Gl(_)]);
        let j = match &self.j {
            Some(j) => JSource::Explicit(RelativeRootData::new(
                j.delta.iter().map(|v| rationals(v)).collect::<CliResult<_>>()?,
                j.omega.iter().map(|v| rationals(v)).collect::<CliResult<_>>()?,
            )?),
            None if linalg::is_zero(&nu) => JSource::QuasiSplit,
            None if single_gl => JSource::GlnBlocks,
            None => {
                return Err(CliError::Validation(perdom_core::Error::InvalidDatum(
                    "an explicit j block is required when nu != 0 and the group is not GL_n".into(),
                )))
            }
        };
        let class = match &self.class {
            Some(c) => parse_class(c)?,
            None if single_gl && tau == TauSpec::Identity => {
                let m = nu.first().map(|x| x.denom().clone()).unwrap_or_else(|| 1.into());
                GroupClass::GlnD {
                    division_degree: u32::try_from(m).unwrap_or(u32::MAX),
                }
            }
            None => GroupClass::GeneralQuasiSplit,
        };
        Ok(DatumSpec {
            group,
            normalization,
            tau,
            s: self.s.unwrap_or(1),
            mu: mu.clone(),
            nu,
            j,
            provenance: Provenance::Explicit,
            class,
        })
    }
}

pub fn preset_spec(p: &str) -> CliResult<DatumSpec> {
    let preset: Preset = p.parse().map_err(|e| CliError::Parse(format!("{e}")))?;
    Ok(preset.spec()?)
}

/// Orbit bound from [`BOUND_ENV`], if set.
pub fn orbit_bound() -> CliResult<usize> {
    match std::env::var(BOUND_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Parse(format!("{BOUND_ENV}={v:?} is not a positive integer"))),
        Err(_) => Ok(DEFAULT_ORBIT_BOUND),
    }
}

pub fn build(spec: DatumSpec) -> CliResult<LocalShtukaDatum> {
    Ok(LocalShtukaDatum::build_bounded(spec, orbit_bound()?)?)
}

pub fn build_preset(p: &str) -> CliResult<LocalShtukaDatum> {
    build(preset_spec(p)?)
}
