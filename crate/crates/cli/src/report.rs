//! Serializable reports. Field order is fixed by declaration order; all
//! rationals are `"num/den"` strings.

use perdom_core::cohomology::{
    CohomologySummand, EulerReport, GradedRepSum, SpectralPage, SplittingReport, SplittingVerdict,
};
use perdom_core::invariants::InvariantCheck;
use perdom_core::linalg::{fmt_q, Q};
use perdom_core::shtuka::LocalShtukaDatum;
use perdom_core::steinberg::{ExtAnswer, ExtVerdict, GroupClass};
use perdom_core::Subset;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const ENGINE: &str = concat!("perdom ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub engine: String,
    pub command: String,
    pub provenance: Option<String>,
    pub datum: Option<DatumEcho>,
    pub result: CommandResult,
    /// Splitting-hypothesis verdicts, when a prime was given.
    pub verdicts: Vec<SplittingOut>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisEcho {
    pub cycles: Vec<Vec<String>>,
    pub order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JEcho {
    pub labels: Vec<String>,
    pub delta: Vec<Vec<String>>,
    pub omega: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumEcho {
    pub group: String,
    pub galois: GaloisEcho,
    pub s: u32,
    pub mu: Vec<i64>,
    pub nu: Vec<String>,
    pub j: JEcho,
    pub class: String,
    pub dim_flag: usize,
    pub kostant_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepOut {
    pub kind: String,
    #[serde(rename = "I")]
    pub set: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisOut {
    pub rank: usize,
    pub twist: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitRef {
    pub id: usize,
    pub size: usize,
    pub length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandOut {
    pub degree: usize,
    pub rep: RepOut,
    pub galois: GaloisOut,
    pub orbit: OrbitRef,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitOut {
    pub id: usize,
    pub size: usize,
    pub length: usize,
    pub words: Vec<Vec<usize>>,
    pub images: Vec<Vec<i64>>,
    #[serde(rename = "I")]
    pub i_set: Vec<String>,
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellOut {
    pub i: usize,
    pub j: usize,
    pub rep: RepOut,
    pub galois: GaloisOut,
    pub orbit: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchubertOut {
    #[serde(rename = "I")]
    pub set: Vec<String>,
    pub omega: Vec<usize>,
    pub summands: Vec<SummandOut>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumOut {
    #[serde(rename = "I")]
    pub set: Vec<String>,
    pub nonempty: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KottwitzPointOut {
    pub id: usize,
    pub newton: Vec<String>,
    pub kappa: i64,
    pub basic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerOut {
    pub p: u64,
    pub n: i64,
    pub passed: bool,
    pub residual: Vec<ResidualOut>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualOut {
    #[serde(rename = "K")]
    pub set: Vec<String>,
    pub twist: i64,
    pub multiplicity: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtOut {
    pub answer: String,
    pub torsion_bound: Option<u32>,
    pub hypothesis: String,
    pub proven: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairOut {
    pub j: usize,
    pub from: Vec<String>,
    pub to: Vec<String>,
    pub from_orbit: Option<usize>,
    pub to_orbit: usize,
    pub ext: ExtOut,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingOut {
    pub p: u64,
    pub verdict: String,
    pub pairs: Vec<PairOut>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantOut {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionOut {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenOut {
    pub file: String,
    pub status: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CommandResult {
    Cohomology {
        coefficients: String,
        p: Option<u64>,
        n: Option<u32>,
        summands: Vec<SummandOut>,
        orbits: Vec<OrbitOut>,
    },
    Boundary {
        boundary_empty: bool,
        summands: Vec<SummandOut>,
        e1: Vec<CellOut>,
        e2: Vec<CellOut>,
    },
    Schubert {
        subsets: Vec<SchubertOut>,
    },
    Strata {
        i: usize,
        strata: Vec<StratumOut>,
    },
    Kottwitz {
        n: usize,
        mu: Vec<i64>,
        points: Vec<KottwitzPointOut>,
        edges: Vec<[usize; 2]>,
    },
    Ext {
        size: usize,
        #[serde(rename = "I")]
        i_set: Vec<String>,
        #[serde(rename = "J")]
        j_set: Vec<String>,
        p: u64,
        class: String,
        ext: ExtOut,
    },
    Check {
        passed: bool,
        euler: Vec<EulerOut>,
        splitting: Vec<SplittingOut>,
        invariants: Vec<InvariantOut>,
    },
    Selftest {
        passed: bool,
        criteria: Vec<CriterionOut>,
        golden: Vec<GoldenOut>,
    },
}

pub fn labels(s: Subset) -> Vec<String> {
    s.indices().map(|i| format!("a{}", i + 1)).collect()
}

fn qs(v: &[Q]) -> Vec<String> {
    v.iter().map(fmt_q).collect()
}

pub fn class_label(c: GroupClass) -> String {
    match c {
        GroupClass::GlnD { division_degree: 1 } => "gln".into(),
        GroupClass::GlnD { division_degree } => format!("gln_d:{division_degree}"),
        GroupClass::GeneralQuasiSplit => "general".into(),
    }
}

pub fn echo(d: &LocalShtukaDatum) -> DatumEcho {
    let spec = d.spec();
    let cycles = d
        .tau()
        .cycles()
        .into_iter()
        .filter(|c| c.len() > 1)
        .map(|c| c.into_iter().map(|i| format!("a{}", i + 1)).collect())
        .collect();
    DatumEcho {
        group: spec.group.to_string(),
        galois: GaloisEcho {
            cycles,
            order: d.tau().order(),
        },
        s: d.s(),
        mu: d.mu().to_vec(),
        nu: qs(d.nu()),
        j: JEcho {
            labels: d.j().labels.clone(),
            delta: d.j().delta.iter().map(|v| qs(v)).collect(),
            omega: d.j().omega.iter().map(|v| qs(v)).collect(),
        },
        class: class_label(d.class()),
        dim_flag: d.dim_flag(),
        kostant_size: d.kostant().len(),
    }
}

pub fn summands(d: &LocalShtukaDatum, sum: &GradedRepSum) -> Vec<SummandOut> {
    sum.summands.iter().map(|s| summand(d, s)).collect()
}

fn rep_out(kind: &str, set: Subset) -> RepOut {
    RepOut {
        kind: kind.to_string(),
        set: labels(set),
    }
}

fn summand(d: &LocalShtukaDatum, s: &CohomologySummand) -> SummandOut {
    let o = &d.orbit_invariants()[s.orbit];
    SummandOut {
        degree: s.degree,
        rep: rep_out(s.rep.kind_label(), s.rep.set),
        galois: GaloisOut {
            rank: s.galois.rank,
            twist: s.galois.twist,
        },
        orbit: OrbitRef {
            id: s.orbit,
            size: o.size(),
            length: o.length(),
        },
    }
}

pub fn orbits(d: &LocalShtukaDatum) -> Vec<OrbitOut> {
    let k = d.kostant();
    d.orbit_invariants()
        .iter()
        .enumerate()
        .map(|(id, o)| OrbitOut {
            id,
            size: o.size(),
            length: o.length(),
            words: o
                .orbit
                .members
                .iter()
                .map(|&m| k.entries[m].representative.reduced_word.iter().map(|i| i + 1).collect())
                .collect(),
            images: o.orbit.members.iter().map(|&m| k.entries[m].image.clone()).collect(),
            i_set: labels(o.i_set),
            n: o.n,
        })
        .collect()
}

pub fn cells(page: &SpectralPage) -> Vec<CellOut> {
    page.cells
        .iter()
        .flat_map(|(&(i, j), entries)| {
            entries.iter().map(move |e| CellOut {
                i,
                j,
                rep: rep_out(e.rep.kind_label(), e.rep.set),
                galois: GaloisOut {
                    rank: e.galois.rank,
                    twist: e.galois.twist,
                },
                orbit: e.orbit,
            })
        })
        .collect()
}

pub fn ext_out(v: &ExtVerdict) -> ExtOut {
    let (answer, torsion_bound) = match v.answer {
        ExtAnswer::Zero => ("Zero", None),
        ExtAnswer::FreeRankOne => ("FreeRankOne", None),
        ExtAnswer::HomUnitsOfF => ("HomUnitsOfF", None),
        ExtAnswer::SelfCase => ("SelfCase", None),
        ExtAnswer::OutsideTheorem { torsion_bound } => ("OutsideTheorem", torsion_bound),
    };
    ExtOut {
        answer: answer.into(),
        torsion_bound,
        hypothesis: v.hypothesis.describe().into(),
        proven: v.hypothesis.is_proven(),
    }
}

pub fn splitting_out(r: &SplittingReport) -> SplittingOut {
    SplittingOut {
        p: r.p,
        verdict: match r.verdict {
            SplittingVerdict::ProvenByTheorem => "ProvenByTheorem",
            SplittingVerdict::ConjecturalForThisP => "ConjecturalForThisP",
        }
        .into(),
        pairs: r
            .pairs
            .iter()
            .map(|p| PairOut {
                j: p.j,
                from: labels(p.from),
                to: labels(p.to),
                from_orbit: p.from_orbit,
                to_orbit: p.to_orbit,
                ext: ext_out(&p.ext),
            })
            .collect(),
    }
}

pub fn euler_out(r: &EulerReport) -> EulerOut {
    EulerOut {
        p: r.p,
        n: r.n,
        passed: r.passed(),
        residual: r
            .residual
            .iter()
            .map(|(&(k, twist), &multiplicity)| ResidualOut {
                set: labels(k),
                twist,
                multiplicity,
            })
            .collect(),
    }
}

pub fn invariant_out(c: &InvariantCheck) -> InvariantOut {
    InvariantOut {
        name: c.name.into(),
        passed: c.passed,
        detail: c.detail.clone(),
    }
}

impl Report {
    pub fn to_machine(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }

    pub fn from_machine(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("report: {e}")))
    }

    pub fn to_human(&self) -> String {
        crate::human::render(self)
    }
}
