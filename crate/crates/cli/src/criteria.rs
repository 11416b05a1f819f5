//! The acceptance criteria, runnable from tests and from `selftest`.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use perdom_core::cohomology::{
    self, Coefficients, RepKind, SplittingVerdict,
};
use perdom_core::invariants::invariant_suite;
use perdom_core::isocrystal::acceptable_set_gln;
use perdom_core::linalg::Q;
use perdom_core::rootdata::{build_root_datum, FormNormalization};
use perdom_core::shtuka::LocalShtukaDatum;
use perdom_core::steinberg::{ext1, resolution_euler_check};
use perdom_core::weyl::kostant_representatives;
use perdom_core::Subset;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::commands::{self, DatumSource};
use crate::error::CliResult;
use crate::oracle::{self, ExtGroup};
use crate::report::CriterionOut;

pub const EXPLICIT_DATUM: &str = include_str!("../data/gl3_unitary.json");

/// Named data used by the Euler, invariant and golden-file checks.
pub fn suite() -> Vec<(&'static str, DatumSource)> {
    let preset = |p: &'static str| (p, DatumSource::Preset(p.into()));
    vec![
        preset("drinfeld:1"),
        preset("drinfeld:2"),
        preset("drinfeld:3"),
        preset("drinfeld:4"),
        preset("gln_basic:3,1,0,-1:0"),
        preset("gln_basic:2,1,0:1/2"),
        preset("gln_basic:4,1,1,0,0:1/2"),
        preset("gln_basic:3,1,0,0:1/3"),
        preset("quadric:7"),
        preset("quadric:9"),
        preset("split:A2xB2:2,1,1,0"),
        ("explicit:gl3_unitary", DatumSource::Json(EXPLICIT_DATUM.into())),
    ]
}

pub fn suite_data() -> CliResult<Vec<(&'static str, LocalShtukaDatum)>> {
    suite()
        .into_iter()
        .map(|(name, src)| Ok((name, commands::load_datum(&src)?)))
        .collect()
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub result: CriterionOut,
    pub elapsed: Duration,
    pub limit: Option<Duration>,
}

impl Outcome {
    pub fn within_limit(&self) -> bool {
        self.limit.is_none_or(|l| self.elapsed <= l)
    }
}

fn timed(id: u8, name: &str, limit: Option<u64>, f: impl FnOnce() -> Result<String, String>) -> Outcome {
    let start = Instant::now();
    let (passed, detail) = match f() {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Outcome {
        result: CriterionOut {
            id,
            name: name.into(),
            passed,
            detail,
        },
        elapsed: start.elapsed(),
        limit: limit.map(Duration::from_secs),
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

pub fn drinfeld_reproduction() -> Outcome {
    timed(1, "Drinfeld reproduction", Some(5), || {
        for d in 1..=5usize {
            let datum = commands::load_datum(&DatumSource::Preset(format!("drinfeld:{d}"))).map_err(err)?;
            let hc = cohomology::compactly_supported_cohomology(&datum, Coefficients::ModPn);
            ensure(hc.len() == d + 1, || format!("d={d}: {} summands", hc.len()))?;
            for i in 0..=d {
                let s: Vec<_> = hc.in_degree(d + i).collect();
                ensure(s.len() == 1, || format!("d={d}: degree {} has {} summands", d + i, s.len()))?;
                let s = s[0];
                let expected_set = Subset::from_indices(0..i);
                let kind_ok = if i == d { s.rep.kind == RepKind::I } else { s.rep.kind == RepKind::V };
                ensure(
                    s.rep.set == expected_set && kind_ok && d - s.rep.set.len() == d - i,
                    || format!("d={d}: degree {} carries {} instead of Sp_{}", d + i, s.rep.set, d - i),
                )?;
                ensure(s.galois.rank == 1 && s.galois.twist == -(i as i64), || {
                    format!("d={d}: degree {} has Galois factor {:?}", d + i, s.galois)
                })?;
            }
            for p in [2, 3, 5] {
                let v = cohomology::splitting_hypothesis_check(&datum, p).map_err(err)?.verdict;
                ensure(v == SplittingVerdict::ProvenByTheorem, || format!("d={d}, p={p}: {v:?}"))?;
            }
        }
        Ok("d = 1..5 exact".into())
    })
}

pub const KOSTANT_TYPES: [&str; 13] = [
    "A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "F4", "G2",
];

pub fn kostant_oracle() -> Outcome {
    timed(2, "Kostant oracle", Some(60), || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut cases = 0;
        for ty in KOSTANT_TYPES {
            let d = build_root_datum(&ty.parse().map_err(err)?, &FormNormalization::default()).map_err(err)?;
            for _ in 0..20 {
                let mu = oracle::random_dominant(&d, &mut rng, 3);
                let bfs: std::collections::BTreeMap<Vec<i64>, usize> = kostant_representatives(&d, &mu)
                    .map_err(err)?
                    .entries
                    .into_iter()
                    .map(|e| (e.image, e.representative.length))
                    .collect();
                ensure(bfs == oracle::kostant_brute_force(&d, &mu), || {
                    format!("{ty}, mu = {mu:?}: BFS and brute force disagree")
                })?;
                cases += 1;
            }
        }
        Ok(format!("{cases} cases over {} types", KOSTANT_TYPES.len()))
    })
}

pub fn euler_consistency() -> Outcome {
    timed(3, "Euler/cone consistency", Some(30), || {
        let data = suite_data().map_err(err)?;
        for (name, d) in &data {
            for p in [3, 5] {
                for n in [1, 2] {
                    let r = cohomology::euler_consistency_check(d, p, n).map_err(err)?;
                    ensure(r.passed(), || format!("{name}, p={p}, n={n}: residual {:?}", r.residual))?;
                }
            }
            let mut hc = cohomology::compactly_supported_cohomology(d, Coefficients::ModPn);
            let (boundary, _) = cohomology::boundary_cohomology(d);
            let flag = cohomology::flag_cohomology(d);
            hc.summands.remove(hc.summands.len() / 2);
            let residual = cohomology::euler_residual(&hc, &boundary, &flag, 1).map_err(err)?;
            ensure(!residual.is_empty(), || format!("{name}: corrupted table not detected"))?;
        }
        Ok(format!("{} data, 4 coefficient rings each, corruption detected", data.len()))
    })
}

pub fn kottwitz_oracle() -> Outcome {
    timed(4, "Kottwitz oracle", Some(60), || {
        let mut cases = 0;
        for n in 1..=5usize {
            for mu in dominant_vectors(n, -2, 2) {
                let got: Vec<Vec<Q>> = acceptable_set_gln(n, &mu)
                    .map_err(err)?
                    .into_iter()
                    .map(|p| p.newton.values)
                    .collect();
                let as_set: BTreeSet<Vec<Q>> = got.iter().cloned().collect();
                ensure(as_set.len() == got.len(), || format!("mu = {mu:?}: duplicate points"))?;
                ensure(as_set == oracle::acceptable_polygons(&mu), || {
                    format!("mu = {mu:?}: enumeration disagrees with polygon oracle")
                })?;
                let basic = got.iter().filter(|v| v.windows(2).all(|w| w[0] == w[1])).count();
                ensure(basic == 1, || format!("mu = {mu:?}: {basic} basic points"))?;
                cases += 1;
            }
        }
        Ok(format!("{cases} cocharacters"))
    })
}

/// Nonincreasing integer vectors of length `n` with entries in `[lo, hi]`.
pub fn dominant_vectors(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    fn go(n: usize, lo: i64, hi: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let top = cur.last().copied().unwrap_or(hi);
        for x in (lo..=top).rev() {
            cur.push(x);
            go(n, lo, hi, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    go(n, lo, hi, &mut vec![], &mut out);
    out
}

pub fn ext_table() -> Outcome {
    timed(5, "Ext table", None, || {
        let mut cases = 0;
        for size in 0..=5 {
            for i in Subset::all(size) {
                for j in Subset::all(size) {
                    for p in [2, 3, 5] {
                        for g in ExtGroup::ALL {
                            let v = ext1(i, j, p, g.class()).map_err(err)?;
                            let want = oracle::ext_golden(oracle::relation(i, j), p, g);
                            ensure((v.answer, v.hypothesis) == want, || {
                                format!("I={i}, J={j}, p={p}, {g:?}: got {:?}, table {want:?}", (v.answer, v.hypothesis))
                            })?;
                            cases += 1;
                        }
                    }
                }
            }
        }
        Ok(format!("{cases} entries"))
    })
}

pub fn resolution_identity() -> Outcome {
    timed(6, "Resolution identity", Some(10), || {
        let mut cases = 0;
        for size in 0..=6 {
            for i in Subset::all(size) {
                for n in 1..=3 {
                    ensure(resolution_euler_check(size, i, n), || {
                        format!("|Delta| = {size}, I = {i}, n = {n}")
                    })?;
                    cases += 1;
                }
            }
        }
        Ok(format!("{cases} cases"))
    })
}

pub fn invariant_suite_criterion() -> Outcome {
    timed(7, "Invariant suite", None, || {
        let data = suite_data().map_err(err)?;
        let mut checks = 0;
        for (name, d) in &data {
            for c in invariant_suite(d).map_err(err)? {
                ensure(c.passed, || format!("{name}: {} ({})", c.name, c.detail))?;
                checks += 1;
            }
        }
        Ok(format!("{checks} checks on {} data", data.len()))
    })
}

/// `H^i(d) = (H_c^{2d-i})^*`, compared on labels `(degree, k, dual, twist)`
/// with `Sp_k = v_I`, `k = |Delta \ I|`.
pub fn drinfeld_duality() -> Outcome {
    timed(8, "Duality label check", None, || {
        for d in 1..=4usize {
            let datum = commands::load_datum(&DatumSource::Preset(format!("drinfeld:{d}"))).map_err(err)?;
            let hc = cohomology::compactly_supported_cohomology(&datum, Coefficients::ModPn);
            let dualized: BTreeSet<(usize, usize, bool, i64)> = hc
                .summands
                .iter()
                .map(|s| (2 * d - s.degree, d - s.rep.set.len(), true, -s.galois.twist))
                .collect();
            ensure(dualized.len() == hc.len(), || format!("d={d}: repeated labels"))?;
            ensure(dualized == oracle::drinfeld_cited_twisted(d), || {
                format!("d={d}: dual of H_c does not match H(d)")
            })?;
        }
        Ok("d = 1..4".into())
    })
}

/// Renders every golden report twice and compares bytes.
pub fn determinism() -> Outcome {
    timed(9, "Determinism", None, || {
        let a = crate::selftest::golden_reports().map_err(err)?;
        let b = crate::selftest::golden_reports().map_err(err)?;
        ensure(a == b, || "reports differ between runs".into())?;
        Ok(format!("{} reports byte-identical", a.len()))
    })
}

pub fn all() -> Vec<Outcome> {
    vec![
        drinfeld_reproduction(),
        kostant_oracle(),
        euler_consistency(),
        kottwitz_oracle(),
        ext_table(),
        resolution_identity(),
        invariant_suite_criterion(),
        drinfeld_duality(),
        determinism(),
    ]
}
