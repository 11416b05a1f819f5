//! Grothendieck-group bookkeeping for generalized Steinberg representations
//! `v_I`, `i_I`, and the known Hom/Ext^1 answers between them.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::subset::Subset;

/// An element of the free abelian group on `{[v_K] : K ⊆ Δ}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstituentVector {
    size: usize,
    mult: BTreeMap<Subset, i64>,
}

impl ConstituentVector {
    pub fn zero(size: usize) -> Self {
        ConstituentVector {
            size,
            mult: BTreeMap::new(),
        }
    }

    /// `m [v_K]`.
    pub fn single(size: usize, k: Subset, m: i64) -> Result<Self> {
        check_subset(size, k)?;
        let mut out = Self::zero(size);
        out.add_term(k, m);
        Ok(out)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, k: Subset) -> i64 {
        self.mult.get(&k).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, k: Subset, m: i64) {
        let e = self.mult.entry(k).or_insert(0);
        *e += m;
        if *e == 0 {
            self.mult.remove(&k);
        }
    }

    pub fn add_scaled(&mut self, other: &ConstituentVector, c: i64) {
        for (&k, &m) in &other.mult {
            self.add_term(k, c * m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mult.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = Subset> + '_ {
        self.mult.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Subset, i64)> + '_ {
        self.mult.iter().map(|(&k, &m)| (k, m))
    }
}

fn check_subset(size: usize, s: Subset) -> Result<()> {
    if size < Subset::MAX_SIZE && s.is_subset(Subset::full(size)) {
        Ok(())
    } else {
        Err(Error::BadSubset { size })
    }
}

/// Constituents of `i_I` over `Z/p^n`: each `v_K` with `I ⊆ K ⊆ Δ`, with
/// multiplicity `n`.
pub fn constituents_i(size: usize, i: Subset, n: i64) -> Result<ConstituentVector> {
    check_subset(size, i)?;
    let mut out = ConstituentVector::zero(size);
    for k in i.supersets(size) {
        out.add_term(k, n);
    }
    Ok(out)
}

/// Constituents of `v_I` over `Z/p^n`.
pub fn constituents_v(size: usize, i: Subset, n: i64) -> Result<ConstituentVector> {
    ConstituentVector::single(size, i, n)
}

/// `sum_{K ⊇ I} (-1)^{|K \ I|} f(K) - n [v_I]`, with `f` standing in for
/// [`constituents_i`].
pub fn resolution_residual<F>(size: usize, i: Subset, n: i64, f: F) -> Result<ConstituentVector>
where
    F: Fn(Subset) -> Result<ConstituentVector>,
{
    check_subset(size, i)?;
    let mut acc = ConstituentVector::zero(size);
    for k in i.supersets(size) {
        let sign = if k.difference(i).len() % 2 == 0 { 1 } else { -1 };
        acc.add_scaled(&f(k)?, sign);
    }
    acc.add_term(i, -n);
    Ok(acc)
}

/// Euler characteristic of the resolution `0 -> i_Δ -> .. -> i_I -> v_I -> 0`.
pub fn resolution_euler_check(size: usize, i: Subset, n: i64) -> bool {
    resolution_residual(size, i, n, |k| constituents_i(size, k, n)).is_ok_and(|r| r.is_zero())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomAnswer {
    RankOne,
    Zero,
}

pub fn hom(i: Subset, j: Subset) -> HomAnswer {
    if i == j {
        HomAnswer::RankOne
    } else {
        HomAnswer::Zero
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupClass {
    /// `GL_n(D)` for a central division algebra `D` of the given reduced
    /// degree over `Q_p` (`1` means `GL_n(Q_p)`).
    GlnD { division_degree: u32 },
    GeneralQuasiSplit,
}

impl fmt::Display for GroupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupClass::GlnD { division_degree } => write!(f, "GLnD(deg {division_degree})"),
            GroupClass::GeneralQuasiSplit => write!(f, "general"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtAnswer {
    Zero,
    FreeRankOne,
    HomUnitsOfF,
    SelfCase,
    OutsideTheorem { torsion_bound: Option<u32> },
}

impl fmt::Display for ExtAnswer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtAnswer::Zero => write!(f, "0"),
            ExtAnswer::FreeRankOne => write!(f, "free of rank 1"),
            ExtAnswer::HomUnitsOfF => write!(f, "Hom(F^*, R)"),
            ExtAnswer::SelfCase => write!(f, "self-extension"),
            ExtAnswer::OutsideTheorem { torsion_bound: None } => write!(f, "unknown"),
            ExtAnswer::OutsideTheorem {
                torsion_bound: Some(b),
            } => write!(f, "unknown ({b}-torsion)"),
        }
    }
}

/// Which hypothesis licensed an [`ExtAnswer`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Hypothesis {
    /// `I = J`: the self-extension module is computed separately.
    SelfExtension,
    /// `GL_n(D)` with `D != Q_2`.
    GlnDivisionAlgebra,
    /// `p >= 5`.
    PrimeAtLeastFive,
    /// `p = 3` and `||I| - |J|| >= 2`.
    PrimeThreeWideGap,
    /// `p = 2`, an inner form of `GL_n`, and `||I| - |J|| >= 2`.
    GlnEvenPrimeWideGap,
    /// `p != 2`, reducing `I = J ⊔ {α}` to the rank one Levi.
    OddPrimeRankOneReduction,
    /// None of the known results apply.
    NotCovered,
}

impl Hypothesis {
    pub fn is_proven(self) -> bool {
        !matches!(self, Hypothesis::NotCovered)
    }

    pub fn describe(self) -> &'static str {
        match self {
            Hypothesis::SelfExtension => "I = J: self-extensions are computed separately",
            Hypothesis::GlnDivisionAlgebra => "G = GL_n(D) with D != Q_2",
            Hypothesis::PrimeAtLeastFive => "p >= 5",
            Hypothesis::PrimeThreeWideGap => "p = 3 and ||I| - |J|| >= 2",
            Hypothesis::GlnEvenPrimeWideGap => {
                "p = 2, inner form of GL_n and ||I| - |J|| >= 2"
            }
            Hypothesis::OddPrimeRankOneReduction => "p != 2, reduction to the rank one Levi",
            Hypothesis::NotCovered => "outside all known vanishing results",
        }
    }
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.describe())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExtVerdict {
    pub answer: ExtAnswer,
    pub hypothesis: Hypothesis,
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// `Ext^1(v_I, v_J)` in smooth `R`-representations, `R = Z/p^n`, as far as
/// it is known.
pub fn ext1(i: Subset, j: Subset, p: u64, class: GroupClass) -> Result<ExtVerdict> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let verdict = |answer, hypothesis| Ok(ExtVerdict { answer, hypothesis });
    let gln_known = matches!(class, GroupClass::GlnD { division_degree } if !(p == 2 && division_degree == 1));
    let is_gln = matches!(class, GroupClass::GlnD { .. });
    let outside = |torsion_bound| {
        verdict(
            ExtAnswer::OutsideTheorem { torsion_bound },
            Hypothesis::NotCovered,
        )
    };

    if i == j {
        return verdict(ExtAnswer::SelfCase, Hypothesis::SelfExtension);
    }
    let diff = i.symmetric_difference(j);
    if diff.len() == 1 {
        if i.is_subset(j) {
            return if gln_known {
                verdict(ExtAnswer::FreeRankOne, Hypothesis::GlnDivisionAlgebra)
            } else if p >= 5 {
                verdict(ExtAnswer::FreeRankOne, Hypothesis::PrimeAtLeastFive)
            } else {
                outside(None)
            };
        }
        return if gln_known {
            verdict(ExtAnswer::HomUnitsOfF, Hypothesis::GlnDivisionAlgebra)
        } else if p != 2 {
            verdict(ExtAnswer::HomUnitsOfF, Hypothesis::OddPrimeRankOneReduction)
        } else {
            outside(None)
        };
    }

    let gap = i.len().abs_diff(j.len());
    if p >= 5 {
        verdict(ExtAnswer::Zero, Hypothesis::PrimeAtLeastFive)
    } else if p == 3 && gap >= 2 {
        verdict(ExtAnswer::Zero, Hypothesis::PrimeThreeWideGap)
    } else if gln_known {
        verdict(ExtAnswer::Zero, Hypothesis::GlnDivisionAlgebra)
    } else if is_gln && p == 2 && gap >= 2 {
        verdict(ExtAnswer::Zero, Hypothesis::GlnEvenPrimeWideGap)
    } else {
        outside(Some(if p == 3 { 3 } else { 8 }))
    }
}

/// `|Hom(Q_p^*, Z/p^n)|` for odd `p`.
///
/// `Q_p^* = Z x Z/(p-1) x Z_p`; the torsion factor maps to zero and each of
/// the two procyclic factors contributes `p^n` choices.
pub fn hom_units_count(p: u64, n: u32) -> Result<BigUint> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::EvenPrimeUnsupported);
    }
    Ok(BigUint::from(p).pow(2 * n))
}

/// Order of a cyclic factor `mu_k`, possibly depending on the parameter `d`
/// of a family of indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CyclicOrder {
    Fixed(u32),
    TimesD(u32),
}

impl CyclicOrder {
    pub fn at(self, d: u32) -> u32 {
        match self {
            CyclicOrder::Fixed(k) => k,
            CyclicOrder::TimesD(k) => k * d,
        }
    }
}

/// A finite abelian group written as a product of `mu_k`; empty means trivial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup(pub Vec<CyclicOrder>);

impl AbelianGroup {
    fn fixed(orders: &[u32]) -> Self {
        AbelianGroup(orders.iter().map(|&k| CyclicOrder::Fixed(k)).collect())
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }

    /// Substitutes the family parameter.
    pub fn instantiate(&self, d: u32) -> Self {
        AbelianGroup(self.0.iter().map(|c| CyclicOrder::Fixed(c.at(d))).collect())
    }

    /// Group order, if no parameter is left.
    pub fn order(&self) -> Option<u64> {
        self.0.iter().try_fold(1u64, |acc, c| match c {
            CyclicOrder::Fixed(k) => Some(acc * u64::from(*k)),
            CyclicOrder::TimesD(_) => None,
        })
    }

    /// Exponent (lcm of the cyclic orders), if no parameter is left.
    pub fn exponent(&self) -> Option<u64> {
        self.0.iter().try_fold(1u64, |acc, c| match c {
            CyclicOrder::Fixed(k) => Some(num_integer::lcm(acc, u64::from(*k))),
            CyclicOrder::TimesD(_) => None,
        })
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (n, c) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, " x ")?;
            }
            match c {
                CyclicOrder::Fixed(k) => write!(f, "mu_{k}")?,
                CyclicOrder::TimesD(1) => write!(f, "mu_d")?,
                CyclicOrder::TimesD(k) => write!(f, "mu_{k}d")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TitsRow {
    /// Row label, with aliases separated by `/`.
    pub name: &'static str,
    pub center_gsc: AbelianGroup,
    pub center_zsc: AbelianGroup,
}

/// Tits indices of absolutely almost simple groups of relative rank 2 over a
/// non-archimedean local field, with the geometric centers of `G_sc` and of
/// the simply connected cover of the anisotropic kernel.
pub fn tits_table() -> Vec<TitsRow> {
    use CyclicOrder::TimesD;
    let row = |name, g: AbelianGroup, z: AbelianGroup| TitsRow {
        name,
        center_gsc: g,
        center_zsc: z,
    };
    let f = AbelianGroup::fixed;
    vec![
        row(
            "1A_{3d-1,2}^{(d)}",
            AbelianGroup(vec![TimesD(3)]),
            AbelianGroup(vec![TimesD(1); 3]),
        ),
        row("2A_{3,2}^{(1)}/2D_{3,2}^{(1)}", f(&[4]), f(&[])),
        row("2A_{4,2}^{(1)}", f(&[5]), f(&[])),
        row("2A_{5,2}^{(1)}", f(&[6]), f(&[2])),
        row("B_{2,2}/C_{2,2}^{(1)}", f(&[2]), f(&[])),
        row("B_{3,2}", f(&[2]), f(&[2])),
        row("C_{4,2}^{(2)}", f(&[2]), f(&[2, 2])),
        row("C_{5,2}^{(2)}", f(&[2]), f(&[2, 2, 2])),
        row("1D_{4,2}^{(1)}/1D_{4,2}^{(2)}", f(&[2, 2]), f(&[2, 2])),
        row("1D_{7,2}^{(2)}", f(&[4]), f(&[2, 2, 4])),
        row("2D_{5,2}^{(2)}", f(&[4]), f(&[2, 2])),
        row("2D_{6,2}^{(2)}", f(&[2, 2]), f(&[2, 2, 2, 2])),
        row("3D_{4,2}^2/6D_{4,2}^2", f(&[2, 2]), f(&[])),
        row("1E_{6,2}^{16}", f(&[3]), f(&[3, 3])),
        row("G_{2,2}^0", f(&[]), f(&[])),
    ]
}

fn normalize_index(s: &str) -> String {
    s.chars()
        .filter(|c| !c.is_whitespace() && !matches!(c, '{' | '}' | '$' | '\\'))
        .map(|c| c.to_ascii_uppercase())
        .collect()
}

/// Looks up a row by name (or alias). Members `1A_{3d-1,2}^{(d)}` of the
/// type `A` family may also be named with explicit numbers, e.g.
/// `1A_{5,2}^{(2)}`.
pub fn tits_table_lookup(name: &str) -> Result<(AbelianGroup, AbelianGroup)> {
    let key = normalize_index(name);
    for row in tits_table() {
        if row.name.split('/').any(|alias| normalize_index(alias) == key) {
            return Ok((row.center_gsc, row.center_zsc));
        }
    }
    if let Some(d) = type_a_family_parameter(&key) {
        let row = &tits_table()[0];
        return Ok((row.center_gsc.instantiate(d), row.center_zsc.instantiate(d)));
    }
    Err(Error::UnknownIndex(name.to_string()))
}

/// Parses `1A_N,2^(D)` (normalized) with `N = 3D - 1`.
fn type_a_family_parameter(key: &str) -> Option<u32> {
    let rest = key.strip_prefix("1A_")?;
    let (n, rest) = rest.split_once(",2^(")?;
    let d: u32 = rest.strip_suffix(')')?.parse().ok()?;
    let n: u32 = n.parse().ok()?;
    (d >= 1 && n == 3 * d - 1).then_some(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[usize]) -> Subset {
        Subset::from_indices(v.iter().copied())
    }

    #[test]
    fn constituents_examples() {
        let c = constituents_i(1, Subset::empty(), 1).unwrap();
        assert_eq!(c.iter().collect::<Vec<_>>(), vec![(s(&[]), 1), (s(&[0]), 1)]);
        let c = constituents_i(3, Subset::full(3), 2).unwrap();
        assert_eq!(c.iter().collect::<Vec<_>>(), vec![(Subset::full(3), 2)]);
        assert_eq!(constituents_i(4, s(&[1]), 1).unwrap().support().count(), 8);
        assert_eq!(constituents_i(2, s(&[3]), 1), Err(Error::BadSubset { size: 2 }));
    }

    #[test]
    fn resolution_identity_and_mutation() {
        assert!(resolution_euler_check(3, s(&[1]), 2));
        assert!(resolution_euler_check(2, Subset::full(2), 1));
        let broken = resolution_residual(3, Subset::empty(), 1, |k| {
            let mut c = constituents_i(3, k, 1)?;
            if k == s(&[0]) {
                c.add_term(Subset::full(3), 1);
            }
            Ok(c)
        })
        .unwrap();
        assert!(!broken.is_zero());
    }

    #[test]
    fn ext_examples() {
        let gl = GroupClass::GlnD { division_degree: 1 };
        let gen = GroupClass::GeneralQuasiSplit;
        assert_eq!(ext1(s(&[0]), s(&[1]), 5, gen).unwrap().answer, ExtAnswer::Zero);
        assert_eq!(ext1(s(&[]), s(&[0]), 3, gl).unwrap().answer, ExtAnswer::FreeRankOne);
        assert_eq!(
            ext1(s(&[0]), s(&[1]), 3, gen).unwrap().answer,
            ExtAnswer::OutsideTheorem {
                torsion_bound: Some(3)
            }
        );
        assert_eq!(ext1(s(&[0]), s(&[]), 3, gen).unwrap().answer, ExtAnswer::HomUnitsOfF);
        assert_eq!(
            ext1(s(&[0]), s(&[]), 2, gl).unwrap().answer,
            ExtAnswer::OutsideTheorem { torsion_bound: None }
        );
        assert_eq!(ext1(s(&[0]), s(&[0]), 7, gl).unwrap().answer, ExtAnswer::SelfCase);
        assert_eq!(ext1(s(&[]), s(&[]), 4, gl), Err(Error::NotPrime(4)));
    }

    #[test]
    fn hom_units() {
        assert_eq!(hom_units_count(3, 1).unwrap(), BigUint::from(9u32));
        assert_eq!(hom_units_count(5, 2).unwrap(), BigUint::from(625u32));
        assert_eq!(hom_units_count(2, 1), Err(Error::EvenPrimeUnsupported));
        assert_eq!(hom_units_count(9, 1), Err(Error::NotPrime(9)));
    }

    #[test]
    fn tits_lookup() {
        let (g, z) = tits_table_lookup("2A_{5,2}^{(1)}").unwrap();
        assert_eq!((g.to_string(), z.to_string()), ("mu_6".into(), "mu_2".into()));
        let (g, z) = tits_table_lookup("G_{2,2}^0").unwrap();
        assert!(g.is_trivial() && z.is_trivial());
        let (g, z) = tits_table_lookup("1E_{6,2}^{16}").unwrap();
        assert_eq!((g.to_string(), z.to_string()), ("mu_3".into(), "mu_3 x mu_3".into()));
        let (g, z) = tits_table_lookup("C_{2,2}^{(1)}").unwrap();
        assert_eq!((g.order(), z.order()), (Some(2), Some(1)));
        let (g, z) = tits_table_lookup("1A_{5,2}^{(2)}").unwrap();
        assert_eq!((g.order(), z.exponent()), (Some(6), Some(2)));
        assert_eq!(tits_table().len(), 15);
        assert!(tits_table_lookup("E_8").is_err());
        assert!(tits_table_lookup("1A_{4,2}^{(2)}").is_err());
    }
}
