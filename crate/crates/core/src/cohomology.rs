//! Cohomology of the period domain `F^wa`, its boundary and the flag
//! variety, as graded sums of `(J-representation) ⊗ (Galois factor)`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::shtuka::LocalShtukaDatum;
use crate::steinberg::{self, ConstituentVector, ExtAnswer, ExtVerdict};
use crate::subset::Subset;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coefficients {
    /// `Z/p^n`.
    #[default]
    ModPn,
    /// `Z_p`, as the limit over `n`.
    Zp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RepKind {
    /// Generalized Steinberg representation `v_I`.
    V,
    /// Smooth induction `i_I` of the trivial representation from `P_I`.
    I,
}

/// `v_I` or `i_I`; the trivial representation is always stored as `i_Δ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RepSymbol {
    pub kind: RepKind,
    pub set: Subset,
    pub coefficients: Coefficients,
}

impl RepSymbol {
    pub fn v(set: Subset, size: usize) -> Self {
        let kind = if set == Subset::full(size) {
            RepKind::I
        } else {
            RepKind::V
        };
        RepSymbol {
            kind,
            set,
            coefficients: Coefficients::ModPn,
        }
    }

    pub fn i(set: Subset) -> Self {
        RepSymbol {
            kind: RepKind::I,
            set,
            coefficients: Coefficients::ModPn,
        }
    }

    pub fn trivial(size: usize) -> Self {
        Self::i(Subset::full(size))
    }

    pub fn is_trivial(&self, size: usize) -> bool {
        self.kind == RepKind::I && self.set == Subset::full(size)
    }

    pub fn with_coefficients(mut self, coefficients: Coefficients) -> Self {
        self.coefficients = coefficients;
        self
    }

    /// Constituents over `Z/p^n` in the Grothendieck group.
    pub fn constituents(&self, size: usize, n: i64) -> Result<ConstituentVector> {
        match self.kind {
            RepKind::V => steinberg::constituents_v(size, self.set, n),
            RepKind::I => steinberg::constituents_i(size, self.set, n),
        }
    }

    /// Kind label: `v`, `i`, or their continuous variants.
    pub fn kind_label(&self) -> &'static str {
        match (self.kind, self.coefficients) {
            (RepKind::V, Coefficients::ModPn) => "v",
            (RepKind::I, Coefficients::ModPn) => "i",
            (RepKind::V, Coefficients::Zp) => "v_cont",
            (RepKind::I, Coefficients::Zp) => "i_cont",
        }
    }
}

/// `rho_[w]`: the permutation module on an orbit of size `rank`, twisted by
/// `twist`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GaloisFactor {
    pub rank: usize,
    pub twist: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CohomologySummand {
    pub degree: usize,
    pub rep: RepSymbol,
    pub galois: GaloisFactor,
    pub orbit: usize,
}

impl CohomologySummand {
    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.rep.set.canonical_cmp(&other.rep.set))
            .then_with(|| self.galois.twist.cmp(&other.galois.twist))
            .then_with(|| self.galois.rank.cmp(&other.galois.rank))
            .then_with(|| self.rep.kind.cmp(&other.rep.kind))
            .then_with(|| self.orbit.cmp(&other.orbit))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRepSum {
    /// `|Δ_J|`.
    pub size: usize,
    pub summands: Vec<CohomologySummand>,
}

impl GradedRepSum {
    pub fn new(size: usize, mut summands: Vec<CohomologySummand>) -> Self {
        summands.sort_by(CohomologySummand::canonical_cmp);
        GradedRepSum { size, summands }
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn degrees(&self) -> BTreeSet<usize> {
        self.summands.iter().map(|s| s.degree).collect()
    }

    pub fn in_degree(&self, degree: usize) -> impl Iterator<Item = &CohomologySummand> {
        self.summands.iter().filter(move |s| s.degree == degree)
    }

    /// `sum_j (-1)^j [H^j]` over `Z/p^n`, keyed by `(v_K, twist)`.
    pub fn euler_characteristic(&self, n: i64) -> Result<BTreeMap<(Subset, i64), i64>> {
        let mut acc = BTreeMap::new();
        for s in &self.summands {
            let sign = if s.degree % 2 == 0 { 1 } else { -1 };
            for (k, m) in s.rep.constituents(self.size, n)?.iter() {
                *acc.entry((k, s.galois.twist)).or_insert(0) += sign * m * s.galois.rank as i64;
            }
        }
        acc.retain(|_, v| *v != 0);
        Ok(acc)
    }
}

fn check_subset(datum: &LocalShtukaDatum, i: Subset) -> Result<()> {
    let size = datum.relative_rank();
    if i.is_subset(Subset::full(size)) {
        Ok(())
    } else {
        Err(Error::BadSubset { size })
    }
}

fn rho(datum: &LocalShtukaDatum, orbit: usize) -> GaloisFactor {
    let o = &datum.orbit_invariants()[orbit];
    GaloisFactor {
        rank: o.size(),
        twist: -(o.length() as i64),
    }
}

/// `Ω_I = {[w] : P(w mu - nu, omega_alpha) > 0 for all alpha not in I}`,
/// as orbit ids.
pub fn omega_set(datum: &LocalShtukaDatum, i: Subset) -> Result<Vec<usize>> {
    check_subset(datum, i)?;
    let outside: Vec<usize> = i.complement(datum.relative_rank()).indices().collect();
    Ok(datum
        .orbit_invariants()
        .iter()
        .enumerate()
        .filter(|(_, o)| {
            let k = o.orbit.representative();
            outside.iter().all(|&a| datum.pairing(k, a).is_positive())
        })
        .map(|(id, _)| id)
        .collect())
}

/// Cohomology of the closed Schubert-type union `Y_I`: `rho_[w]` in degree
/// `2 l_[w]` for each `[w]` in `Ω_I`.
pub fn schubert_cohomology(datum: &LocalShtukaDatum, i: Subset) -> Result<GradedRepSum> {
    let size = datum.relative_rank();
    let summands = omega_set(datum, i)?
        .into_iter()
        .map(|id| CohomologySummand {
            degree: 2 * datum.orbit_invariants()[id].length(),
            rep: RepSymbol::trivial(size),
            galois: rho(datum, id),
            orbit: id,
        })
        .collect();
    Ok(GradedRepSum::new(size, summands))
}

/// Cohomology of `∂F^wa`; the flag is set when it is empty.
pub fn boundary_cohomology(datum: &LocalShtukaDatum) -> (GradedRepSum, bool) {
    let size = datum.relative_rank();
    let mut summands = Vec::new();
    for (id, o) in datum.orbit_invariants().iter().enumerate() {
        let k = size - o.i_set.len();
        let base = 2 * o.length();
        let galois = rho(datum, id);
        match k {
            0 => {}
            1 => summands.push(CohomologySummand {
                degree: base,
                rep: RepSymbol::i(o.i_set),
                galois,
                orbit: id,
            }),
            _ => {
                summands.push(CohomologySummand {
                    degree: base,
                    rep: RepSymbol::trivial(size),
                    galois,
                    orbit: id,
                });
                summands.push(CohomologySummand {
                    degree: base + k - 1,
                    rep: RepSymbol::v(o.i_set, size),
                    galois,
                    orbit: id,
                });
            }
        }
    }
    let sum = GradedRepSum::new(size, summands);
    let empty = sum.is_empty();
    (sum, empty)
}

/// `H^*_c(F^wa)`: `v_{I_[w]} ⊗ rho_[w]` in degree `n_[w]`.
pub fn compactly_supported_cohomology(
    datum: &LocalShtukaDatum,
    coefficients: Coefficients,
) -> GradedRepSum {
    let size = datum.relative_rank();
    let summands = datum
        .orbit_invariants()
        .iter()
        .enumerate()
        .map(|(id, o)| CohomologySummand {
            degree: o.n,
            rep: RepSymbol::v(o.i_set, size).with_coefficients(coefficients),
            galois: rho(datum, id),
            orbit: id,
        })
        .collect();
    GradedRepSum::new(size, summands)
}

/// Cohomology of the flag variety: every orbit, trivial rep, degree `2l`.
pub fn flag_cohomology(datum: &LocalShtukaDatum) -> GradedRepSum {
    let size = datum.relative_rank();
    schubert_cohomology(datum, Subset::full(size)).expect("Δ_J is a subset of itself")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CellEntry {
    pub rep: RepSymbol,
    pub galois: GaloisFactor,
    pub orbit: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralPage {
    pub page: u8,
    pub cells: BTreeMap<(usize, usize), Vec<CellEntry>>,
}

impl SpectralPage {
    /// All entries regraded by total degree `i + j`.
    pub fn total(&self, size: usize) -> GradedRepSum {
        let summands = self
            .cells
            .iter()
            .flat_map(|(&(i, j), entries)| {
                entries.iter().map(move |e| CohomologySummand {
                    degree: i + j,
                    rep: e.rep,
                    galois: e.galois,
                    orbit: e.orbit,
                })
            })
            .collect();
        GradedRepSum::new(size, summands)
    }
}

/// `E_1^{i,j} = ⊕_{|Δ \ I| = i+1} i_I ⊗ H^j(Y_I)` and the `E_2` page read off
/// from the rows of `E_1`.
pub fn spectral_pages(datum: &LocalShtukaDatum) -> Result<(SpectralPage, SpectralPage)> {
    let size = datum.relative_rank();
    let full = Subset::full(size);
    let mut e1: BTreeMap<(usize, usize), Vec<CellEntry>> = BTreeMap::new();
    for i_set in Subset::all(size).filter(|s| *s != full) {
        let col = size - i_set.len() - 1;
        for s in schubert_cohomology(datum, i_set)?.summands {
            e1.entry((col, s.degree)).or_default().push(CellEntry {
                rep: RepSymbol::i(i_set),
                galois: s.galois,
                orbit: s.orbit,
            });
        }
    }
    for entries in e1.values_mut() {
        entries.sort_by(|a, b| {
            a.rep
                .set
                .canonical_cmp(&b.rep.set)
                .then_with(|| a.orbit.cmp(&b.orbit))
        });
    }

    // Row of one orbit: i_I for all I_w ⊆ I ⊊ Δ. Its cohomology is the
    // standard resolution of v_{I_w} with the i_Δ term removed.
    let mut rows: BTreeMap<usize, (usize, GaloisFactor, Vec<Subset>)> = BTreeMap::new();
    for (&(_, j), entries) in &e1 {
        for e in entries {
            rows.entry(e.orbit)
                .or_insert_with(|| (j, e.galois, vec![]))
                .2
                .push(e.rep.set);
        }
    }
    let mut e2: BTreeMap<(usize, usize), Vec<CellEntry>> = BTreeMap::new();
    for (orbit, (j, galois, sets)) in rows {
        let bottom = sets.iter().fold(full, |acc, s| acc.intersection(*s));
        let expected: BTreeSet<Subset> = bottom.supersets(size).filter(|s| *s != full).collect();
        if sets.iter().copied().collect::<BTreeSet<_>>() != expected {
            return Err(Error::OrbitInconsistency { orbit });
        }
        let k = size - bottom.len();
        let mut put = |i: usize, rep: RepSymbol| {
            e2.entry((i, j)).or_default().push(CellEntry { rep, galois, orbit });
        };
        if k == 1 {
            put(0, RepSymbol::i(bottom));
        } else {
            put(0, RepSymbol::trivial(size));
            put(k - 1, RepSymbol::v(bottom, size));
        }
    }
    Ok((
        SpectralPage { page: 1, cells: e1 },
        SpectralPage { page: 2, cells: e2 },
    ))
}

/// All `I` with `|Δ_J \ I| = i`, flagged by `Ω_I != ∅`.
pub fn strata(datum: &LocalShtukaDatum, i: usize) -> Result<Vec<(Subset, bool)>> {
    let size = datum.relative_rank();
    if i == 0 || i > size {
        return Err(Error::BadIndex { index: i, max: size });
    }
    let mut out: Vec<(Subset, bool)> = Subset::all(size)
        .filter(|s| size - s.len() == i)
        .map(|s| Ok((s, !omega_set(datum, s)?.is_empty())))
        .collect::<Result<_>>()?;
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerReport {
    pub p: u64,
    pub n: i64,
    /// Nonzero entries of `χ(H_c) + χ(∂) - χ(F)`.
    pub residual: BTreeMap<(Subset, i64), i64>,
}

impl EulerReport {
    pub fn passed(&self) -> bool {
        self.residual.is_empty()
    }
}

/// `χ(hc) + χ(boundary) - χ(flag)` in the Grothendieck group of
/// `(constituent, twist)` pairs.
pub fn euler_residual(
    hc: &GradedRepSum,
    boundary: &GradedRepSum,
    flag: &GradedRepSum,
    n: i64,
) -> Result<BTreeMap<(Subset, i64), i64>> {
    let mut acc = hc.euler_characteristic(n)?;
    for (key, v) in boundary.euler_characteristic(n)? {
        *acc.entry(key).or_insert(0) += v;
    }
    for (key, v) in flag.euler_characteristic(n)? {
        *acc.entry(key).or_insert(0) -= v;
    }
    acc.retain(|_, v| *v != 0);
    Ok(acc)
}

/// Checks the long exact sequence of `(F^wa, F, ∂F^wa)` on Euler
/// characteristics over `Z/p^n`.
pub fn euler_consistency_check(datum: &LocalShtukaDatum, p: u64, n: i64) -> Result<EulerReport> {
    if !steinberg::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n < 1 {
        return Err(Error::InvalidDatum("n must be at least 1".into()));
    }
    let hc = compactly_supported_cohomology(datum, Coefficients::ModPn);
    let (boundary, _) = boundary_cohomology(datum);
    let flag = flag_cohomology(datum);
    Ok(EulerReport {
        p,
        n,
        residual: euler_residual(&hc, &boundary, &flag, n)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplittingVerdict {
    ProvenByTheorem,
    ConjecturalForThisP,
}

/// One `Ext^1` that must vanish for the filtration on `H^j` to split.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingPair {
    pub j: usize,
    pub from: Subset,
    pub to: Subset,
    pub from_orbit: Option<usize>,
    pub to_orbit: usize,
    pub ext: ExtVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingReport {
    pub p: u64,
    pub verdict: SplittingVerdict,
    pub pairs: Vec<SplittingPair>,
}

impl SplittingReport {
    pub fn failing(&self) -> impl Iterator<Item = &SplittingPair> {
        self.pairs.iter().filter(|p| p.ext.answer != ExtAnswer::Zero)
    }
}

/// Enumerates the `Ext^1` groups whose vanishing splits the filtration of
/// `H^j(Y)` coming from the spectral sequence, and decides them.
pub fn splitting_hypothesis_check(datum: &LocalShtukaDatum, p: u64) -> Result<SplittingReport> {
    if !steinberg::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let size = datum.relative_rank();
    let full = Subset::full(size);
    let class = datum.class();
    let inv = datum.orbit_invariants();
    let k_of = |o: usize| size - inv[o].i_set.len();

    let mut pairs: Vec<SplittingPair> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut push = |j: usize, from: Subset, from_orbit: Option<usize>, to: Subset, to_orbit: usize| -> Result<()> {
        if seen.insert((j, from, from_orbit, to, to_orbit)) {
            pairs.push(SplittingPair {
                j,
                from,
                to,
                from_orbit,
                to_orbit,
                ext: steinberg::ext1(from, to, p, class)?,
            });
        }
        Ok(())
    };

    let max_j = inv.iter().map(|o| 2 * o.length() + size).max().unwrap_or(0);
    for j in 0..=max_j {
        let t1: Vec<usize> = (0..inv.len()).filter(|&o| k_of(o) == 1 && 2 * inv[o].length() == j).collect();
        let t2: Vec<usize> = (0..inv.len()).filter(|&o| k_of(o) > 1 && 2 * inv[o].length() == j).collect();
        let t3: Vec<usize> = (0..inv.len())
            .filter(|&o| k_of(o) >= 2 && 2 * inv[o].length() + k_of(o) - 1 == j)
            .collect();
        for &a in &t3 {
            for &b in &t3 {
                if a != b && inv[a].length() != inv[b].length() {
                    push(j, inv[a].i_set, Some(a), inv[b].i_set, b)?;
                }
            }
        }
        for &b in &t3 {
            for &a in &t1 {
                push(j, inv[a].i_set, Some(a), inv[b].i_set, b)?;
                push(j, full, None, inv[b].i_set, b)?;
            }
            if !t2.is_empty() {
                push(j, full, None, inv[b].i_set, b)?;
            }
        }
    }

    let gl_type = matches!(class, steinberg::GroupClass::GlnD { .. });
    let all_zero = pairs.iter().all(|p| p.ext.answer == ExtAnswer::Zero);
    let verdict = if (p != 2 || gl_type) && all_zero {
        SplittingVerdict::ProvenByTheorem
    } else {
        SplittingVerdict::ConjecturalForThisP
    };
    Ok(SplittingReport { p, verdict, pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shtuka::build_datum;

    fn s(v: &[usize]) -> Subset {
        Subset::from_indices(v.iter().copied())
    }

    fn triples(sum: &GradedRepSum) -> Vec<(usize, RepKind, Subset, usize, i64)> {
        sum.summands
            .iter()
            .map(|x| (x.degree, x.rep.kind, x.rep.set, x.galois.rank, x.galois.twist))
            .collect()
    }

    #[test]
    fn drinfeld_one() {
        let d = build_datum("drinfeld:1").unwrap();
        let hc = compactly_supported_cohomology(&d, Coefficients::ModPn);
        assert_eq!(
            triples(&hc),
            vec![(1, RepKind::V, s(&[]), 1, 0), (2, RepKind::I, s(&[0]), 1, -1)]
        );
        let (b, empty) = boundary_cohomology(&d);
        assert!(!empty);
        assert_eq!(triples(&b), vec![(0, RepKind::I, s(&[]), 1, 0)]);
        assert_eq!(omega_set(&d, Subset::empty()).unwrap(), vec![0]);
        let sch = schubert_cohomology(&d, Subset::empty()).unwrap();
        assert_eq!(triples(&sch), vec![(0, RepKind::I, s(&[0]), 1, 0)]);
        let (e1, e2) = spectral_pages(&d).unwrap();
        assert_eq!(e1.cells.keys().collect::<Vec<_>>(), vec![&(0, 0)]);
        assert_eq!((e1.page, e2.page), (1, 2));
        assert_eq!(e2.total(1), b);
    }

    #[test]
    fn drinfeld_two() {
        let d = build_datum("drinfeld:2").unwrap();
        let hc = compactly_supported_cohomology(&d, Coefficients::ModPn);
        assert_eq!(
            triples(&hc),
            vec![
                (2, RepKind::V, s(&[]), 1, 0),
                (3, RepKind::V, s(&[0]), 1, -1),
                (4, RepKind::I, s(&[0, 1]), 1, -2)
            ]
        );
        let (b, _) = boundary_cohomology(&d);
        assert_eq!(
            triples(&b),
            vec![
                (0, RepKind::I, s(&[0, 1]), 1, 0),
                (1, RepKind::V, s(&[]), 1, 0),
                (2, RepKind::I, s(&[0]), 1, -1)
            ]
        );
        assert_eq!(omega_set(&d, s(&[0])).unwrap(), vec![0, 1]);
        let st = strata(&d, 1).unwrap();
        assert_eq!(st.iter().map(|x| x.0).collect::<Vec<_>>(), vec![s(&[0]), s(&[1])]);
        assert!(strata(&d, 3).is_err());
        assert!(euler_consistency_check(&d, 3, 1).unwrap().passed());
    }

    #[test]
    fn anisotropic_j() {
        let d = build_datum("gln_basic:2,1,0:1/2").unwrap();
        let hc = compactly_supported_cohomology(&d, Coefficients::ModPn);
        assert_eq!(
            triples(&hc),
            vec![(0, RepKind::I, s(&[]), 1, 0), (2, RepKind::I, s(&[]), 1, -1)]
        );
        let (b, empty) = boundary_cohomology(&d);
        assert!(empty && b.is_empty());
        assert!(euler_consistency_check(&d, 5, 2).unwrap().passed());
    }

    #[test]
    fn splitting_verdicts() {
        let d = build_datum("drinfeld:3").unwrap();
        for p in [2, 3, 5] {
            assert_eq!(
                splitting_hypothesis_check(&d, p).unwrap().verdict,
                SplittingVerdict::ProvenByTheorem
            );
        }
        let q = build_datum("quadric:7").unwrap();
        assert_eq!(
            splitting_hypothesis_check(&q, 5).unwrap().verdict,
            SplittingVerdict::ProvenByTheorem
        );
        assert_eq!(
            splitting_hypothesis_check(&q, 2).unwrap().verdict,
            SplittingVerdict::ConjecturalForThisP
        );
    }
}
