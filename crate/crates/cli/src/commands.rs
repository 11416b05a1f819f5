//! One function per subcommand, each producing a [`Report`].

use std::path::PathBuf;

use perdom_core::cohomology::{self, Coefficients};
use perdom_core::invariants::invariant_suite;
use perdom_core::isocrystal;
use perdom_core::linalg::fmt_q;
use perdom_core::shtuka::LocalShtukaDatum;
use perdom_core::steinberg::{self, GroupClass};
use perdom_core::Subset;

use crate::datum::{self, parse_label, DatumFile};
use crate::error::{CliError, CliResult};
use crate::report::{self, CommandResult, Report, SchubertOut, StratumOut};

#[derive(Clone, Debug)]
pub enum DatumSource {
    Preset(String),
    File(PathBuf),
    Json(String),
}

pub fn load_datum(src: &DatumSource) -> CliResult<LocalShtukaDatum> {
    let spec = match src {
        DatumSource::Preset(p) => datum::preset_spec(p)?,
        DatumSource::File(path) => DatumFile::load(path)?.to_spec()?,
        DatumSource::Json(text) => DatumFile::from_json(text)?.to_spec()?,
    };
    datum::build(spec)
}

/// `a1,a3` (or empty, `-`, `{}`) as a subset of `{a1..a_size}`.
pub fn parse_subset(s: &str, size: usize) -> CliResult<Subset> {
    let s = s.trim().trim_start_matches('{').trim_end_matches('}');
    if s.is_empty() || s == "-" {
        return Ok(Subset::default());
    }
    let idx = s
        .split(',')
        .map(|l| parse_label(l, size))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Subset::from_indices(idx))
}

fn report(command: &str, d: Option<&LocalShtukaDatum>, result: CommandResult) -> Report {
    Report {
        engine: report::ENGINE.into(),
        command: command.into(),
        provenance: d.map(|d| d.provenance().to_string()),
        datum: d.map(report::echo),
        result,
        verdicts: vec![],
    }
}

fn checked_prime(p: u64) -> CliResult<u64> {
    if steinberg::is_prime(p) {
        Ok(p)
    } else {
        Err(perdom_core::Error::NotPrime(p).into())
    }
}

pub fn cohomology(
    d: &LocalShtukaDatum,
    coefficients: Coefficients,
    p: Option<u64>,
    n: Option<u32>,
) -> CliResult<Report> {
    let hc = cohomology::compactly_supported_cohomology(d, coefficients);
    let mut r = report(
        "cohomology",
        Some(d),
        CommandResult::Cohomology {
            coefficients: match coefficients {
                Coefficients::ModPn => "modp",
                Coefficients::Zp => "zp",
            }
            .into(),
            p,
            n,
            summands: report::summands(d, &hc),
            orbits: report::orbits(d),
        },
    );
    if let Some(p) = p {
        let split = cohomology::splitting_hypothesis_check(d, checked_prime(p)?)?;
        r.verdicts.push(report::splitting_out(&split));
    }
    Ok(r)
}

pub fn boundary(d: &LocalShtukaDatum) -> CliResult<Report> {
    let (sum, empty) = cohomology::boundary_cohomology(d);
    let (e1, e2) = if d.relative_rank() == 0 {
        (vec![], vec![])
    } else {
        let (e1, e2) = cohomology::spectral_pages(d)?;
        (report::cells(&e1), report::cells(&e2))
    };
    Ok(report(
        "boundary",
        Some(d),
        CommandResult::Boundary {
            boundary_empty: empty,
            summands: report::summands(d, &sum),
            e1,
            e2,
        },
    ))
}

pub fn schubert(d: &LocalShtukaDatum, only: Option<Subset>) -> CliResult<Report> {
    let size = d.relative_rank();
    let mut sets: Vec<Subset> = match only {
        Some(s) => vec![s],
        None => Subset::all(size).collect(),
    };
    sets.sort_by(Subset::canonical_cmp);
    let subsets = sets
        .into_iter()
        .map(|s| {
            Ok(SchubertOut {
                set: report::labels(s),
                omega: cohomology::omega_set(d, s)?,
                summands: report::summands(d, &cohomology::schubert_cohomology(d, s)?),
            })
        })
        .collect::<CliResult<_>>()?;
    Ok(report("schubert", Some(d), CommandResult::Schubert { subsets }))
}

pub fn strata(d: &LocalShtukaDatum, i: usize) -> CliResult<Report> {
    let strata = cohomology::strata(d, i)?
        .into_iter()
        .map(|(s, nonempty)| StratumOut {
            set: report::labels(s),
            nonempty,
        })
        .collect();
    Ok(report("strata", Some(d), CommandResult::Strata { i, strata }))
}

pub fn kottwitz(n: usize, mu: &[i64]) -> CliResult<Report> {
    let points = isocrystal::acceptable_set_gln(n, mu)?;
    let edges = isocrystal::hasse_edges(&points)
        .into_iter()
        .map(|(a, b)| [a, b])
        .collect();
    let points = points
        .iter()
        .enumerate()
        .map(|(id, p)| report::KottwitzPointOut {
            id,
            newton: p.newton.values.iter().map(fmt_q).collect(),
            kappa: p.kappa,
            basic: p.newton.is_basic(),
        })
        .collect();
    Ok(report(
        "kottwitz",
        None,
        CommandResult::Kottwitz {
            n,
            mu: mu.to_vec(),
            points,
            edges,
        },
    ))
}

pub fn ext(size: usize, i: Subset, j: Subset, p: u64, class: GroupClass) -> CliResult<Report> {
    let full = Subset::full(size);
    if !i.is_subset(full) || !j.is_subset(full) {
        return Err(perdom_core::Error::BadSubset { size }.into());
    }
    let v = steinberg::ext1(i, j, p, class)?;
    Ok(report(
        "ext",
        None,
        CommandResult::Ext {
            size,
            i_set: report::labels(i),
            j_set: report::labels(j),
            p,
            class: report::class_label(class),
            ext: report::ext_out(&v),
        },
    ))
}

pub fn check(d: &LocalShtukaDatum, primes: &[u64], ns: &[i64]) -> CliResult<Report> {
    let mut euler = vec![];
    let mut splitting = vec![];
    for &p in primes {
        checked_prime(p)?;
        for &n in ns {
            euler.push(report::euler_out(&cohomology::euler_consistency_check(d, p, n)?));
        }
        splitting.push(report::splitting_out(&cohomology::splitting_hypothesis_check(d, p)?));
    }
    let invariants: Vec<_> = invariant_suite(d)?.iter().map(report::invariant_out).collect();
    let passed = euler.iter().all(|e| e.passed) && invariants.iter().all(|c| c.passed);
    Ok(report(
        "check",
        Some(d),
        CommandResult::Check {
            passed,
            euler,
            splitting,
            invariants,
        },
    ))
}

/// Fails with exit code 3 when a `check` or `selftest` report did not pass.
pub fn require_passed(r: &Report) -> CliResult<()> {
    let passed = match &r.result {
        CommandResult::Check { passed, .. } | CommandResult::Selftest { passed, .. } => *passed,
        _ => true,
    };
    if passed {
        Ok(())
    } else {
        Err(CliError::Consistency(format!("{} reported failures", r.command)))
    }
}
