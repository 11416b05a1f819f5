//! Brute-force and hand-transcribed references that share no code path with
//! the engine they check.

use std::collections::{BTreeMap, BTreeSet};

use perdom_core::linalg::{q_frac, Q};
use perdom_core::rootdata::RootDatum;
use perdom_core::steinberg::{ExtAnswer, GroupClass, Hypothesis};
use perdom_core::weyl::enumerate_weyl_group;
use perdom_core::Subset;
use rand::Rng;

/// `w(mu) -> l(w)` over the minimal coset representatives of the fully
/// enumerated Weyl group: `w(alpha) > 0` for every simple `alpha` fixing `mu`.
pub fn kostant_brute_force(d: &RootDatum, mu: &[i64]) -> BTreeMap<Vec<i64>, usize> {
    let r = d.rank();
    let stabilizer: Vec<usize> = (0..r).filter(|&i| d.simple_pairing(i, mu) == 0).collect();
    let mut out = BTreeMap::new();
    for w in enumerate_weyl_group(d).expect("rank at most 4") {
        let minimal = stabilizer.iter().all(|&i| {
            let unit: Vec<i64> = (0..r).map(|k| i64::from(k == i)).collect();
            w.act_on_root(d, &unit).iter().all(|&c| c >= 0)
        });
        if minimal {
            out.insert(w.apply(mu), w.length);
        }
    }
    out
}

/// A dominant cocharacter: the dominant conjugate of a random vector with
/// entries in `[-range, range]`.
pub fn random_dominant<R: Rng>(d: &RootDatum, rng: &mut R, range: i64) -> Vec<i64> {
    let v: Vec<i64> = (0..d.ambient_rank()).map(|_| rng.gen_range(-range..=range)).collect();
    d.dominant_representative(&v)
}

/// Newton polygons below the Hodge polygon of `mu` with integral
/// breakpoints, as slope vectors.
///
/// A concave polygon lies below the (concave) polygon of `mu` exactly when
/// its vertices do, so only vertices are tested.
pub fn acceptable_polygons(mu: &[i64]) -> BTreeSet<Vec<Q>> {
    let n = mu.len();
    let hodge: Vec<i64> = std::iter::once(0)
        .chain(mu.iter().scan(0, |s, x| {
            *s += x;
            Some(*s)
        }))
        .collect();
    let mut out = BTreeSet::new();
    let mut vertices = vec![(0usize, 0i64)];
    walk(mu, &hodge, &mut vertices, &mut out);
    debug_assert!(out.iter().all(|v| v.len() == n));
    out
}

fn walk(mu: &[i64], hodge: &[i64], vertices: &mut Vec<(usize, i64)>, out: &mut BTreeSet<Vec<Q>>) {
    let n = mu.len();
    let &(x0, y0) = vertices.last().unwrap();
    if x0 == n {
        if y0 == hodge[n] {
            let mut slopes = vec![];
            for w in vertices.windows(2) {
                let (dx, dy) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
                slopes.extend(std::iter::repeat_n(q_frac(dy, dx as i64), dx));
            }
            out.insert(slopes);
        }
        return;
    }
    let previous = (vertices.len() >= 2).then(|| {
        let (xa, ya) = vertices[vertices.len() - 2];
        q_frac(y0 - ya, (x0 - xa) as i64)
    });
    for x in x0 + 1..=n {
        let dx = (x - x0) as i64;
        let lowest = y0 + dx * mu[n - 1];
        for y in lowest..=hodge[x] {
            let slope = q_frac(y - y0, dx);
            if previous.as_ref().is_some_and(|p| slope >= *p) {
                continue;
            }
            vertices.push((x, y));
            walk(mu, hodge, vertices, out);
            vertices.pop();
        }
    }
}

/// How `J` sits relative to `I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Equal,
    /// `J = I ⊔ {alpha}`.
    AddOne,
    /// `I = J ⊔ {alpha}`.
    RemoveOne,
    /// `|I Δ J| >= 2` and `||I| - |J|| >= 2`.
    FarWide,
    /// `|I Δ J| >= 2` and `||I| - |J|| < 2`.
    FarNarrow,
}

pub fn relation(i: Subset, j: Subset) -> Relation {
    let diff = i.symmetric_difference(j).len();
    match diff {
        0 => Relation::Equal,
        1 if i.is_subset(j) => Relation::AddOne,
        1 => Relation::RemoveOne,
        _ if i.len().abs_diff(j.len()) >= 2 => Relation::FarWide,
        _ => Relation::FarNarrow,
    }
}

/// Which group: `GL_n(Q_p)`, `GL_n(D)` with `D` a proper division algebra,
/// or a general quasi-split group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtGroup {
    GlnQp,
    GlnDivision,
    General,
}

impl ExtGroup {
    pub const ALL: [ExtGroup; 3] = [ExtGroup::GlnQp, ExtGroup::GlnDivision, ExtGroup::General];

    pub fn class(self) -> GroupClass {
        match self {
            ExtGroup::GlnQp => GroupClass::GlnD { division_degree: 1 },
            ExtGroup::GlnDivision => GroupClass::GlnD { division_degree: 2 },
            ExtGroup::General => GroupClass::GeneralQuasiSplit,
        }
    }
}

/// The Ext^1 table, one row per (relation, p, group), written out by hand.
pub fn ext_golden(rel: Relation, p: u64, g: ExtGroup) -> (ExtAnswer, Hypothesis) {
    use ExtAnswer::*;
    use ExtGroup::*;
    use Hypothesis::*;
    use Relation::*;
    let outside = |b| (OutsideTheorem { torsion_bound: b }, NotCovered);
    match (rel, p, g) {
        (Equal, _, _) => (SelfCase, SelfExtension),

        (AddOne, 2, GlnQp) => outside(None),
        (AddOne, 2, GlnDivision) => (FreeRankOne, GlnDivisionAlgebra),
        (AddOne, 2, General) => outside(None),
        (AddOne, 3, GlnQp | GlnDivision) => (FreeRankOne, GlnDivisionAlgebra),
        (AddOne, 3, General) => outside(None),
        (AddOne, 5, GlnQp | GlnDivision) => (FreeRankOne, GlnDivisionAlgebra),
        (AddOne, 5, General) => (FreeRankOne, PrimeAtLeastFive),

        (RemoveOne, 2, GlnQp) => outside(None),
        (RemoveOne, 2, GlnDivision) => (HomUnitsOfF, GlnDivisionAlgebra),
        (RemoveOne, 2, General) => outside(None),
        (RemoveOne, 3 | 5, GlnQp | GlnDivision) => (HomUnitsOfF, GlnDivisionAlgebra),
        (RemoveOne, 3 | 5, General) => (HomUnitsOfF, OddPrimeRankOneReduction),

        (FarWide, 2, GlnQp) => (Zero, GlnEvenPrimeWideGap),
        (FarWide, 2, GlnDivision) => (Zero, GlnDivisionAlgebra),
        (FarWide, 2, General) => outside(Some(8)),
        (FarWide, 3, _) => (Zero, PrimeThreeWideGap),
        (FarWide, 5, _) => (Zero, PrimeAtLeastFive),

        (FarNarrow, 2, GlnQp) => outside(Some(8)),
        (FarNarrow, 2, GlnDivision) => (Zero, GlnDivisionAlgebra),
        (FarNarrow, 2, General) => outside(Some(8)),
        (FarNarrow, 3, GlnQp | GlnDivision) => (Zero, GlnDivisionAlgebra),
        (FarNarrow, 3, General) => outside(Some(3)),
        (FarNarrow, 5, _) => (Zero, PrimeAtLeastFive),

        (_, p, _) => panic!("no golden row for p = {p}"),
    }
}

/// Labels of the cited cohomology of the Drinfeld space twisted by `d`:
/// `H^i(d) = Sp_i^*(d - i)`, as `(degree, k, dual, twist)`.
pub fn drinfeld_cited_twisted(d: usize) -> BTreeSet<(usize, usize, bool, i64)> {
    (0..=d)
        .map(|i| (i, i, true, d as i64 - i as i64))
        .collect()
}


#[cfg(test)]
mod tests {
    use super::*;
    use perdom_core::linalg::to_q;

    #[test]
    fn polygons_for_gl2() {
        let got = acceptable_polygons(&[1, 0]);
        let want: BTreeSet<Vec<Q>> = [to_q(&[1, 0]), vec![q_frac(1, 2); 2]].into_iter().collect();
        assert_eq!(got, want);
        assert_eq!(acceptable_polygons(&[0, 0, 0]).len(), 1);
    }

    #[test]
    fn relations() {
        let s = |v: &[usize]| Subset::from_indices(v.iter().copied());
        assert_eq!(relation(s(&[0]), s(&[0, 1])), Relation::AddOne);
        assert_eq!(relation(s(&[0, 1]), s(&[1])), Relation::RemoveOne);
        assert_eq!(relation(s(&[0]), s(&[1])), Relation::FarNarrow);
        assert_eq!(relation(s(&[]), s(&[0, 1])), Relation::FarWide);
    }
}
