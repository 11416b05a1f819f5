//! Weyl group elements, minimal coset representatives and Galois orbits.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::linalg::{self, IMat, Q};
use crate::rootdata::{DiagramAutomorphism, RootDatum};

/// Default cap on `|W|` for full enumeration.
pub const DEFAULT_WEYL_BOUND: u128 = 51_840;

/// Default cap on `|W mu|` for the Kostant search.
pub const DEFAULT_ORBIT_BOUND: usize = 500_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    pub matrix: IMat,
    pub reduced_word: Vec<usize>,
    pub length: usize,
}

impl WeylElement {
    pub fn identity(datum: &RootDatum) -> Self {
        WeylElement {
            matrix: linalg::identity(datum.ambient_rank()),
            reduced_word: vec![],
            length: 0,
        }
    }

    /// The product `s_{w_1} ... s_{w_k}`; `length` is taken from the word, so
    /// callers must pass a reduced word.
    pub fn from_word(datum: &RootDatum, word: &[usize]) -> Self {
        let mut matrix = linalg::identity(datum.ambient_rank());
        for &i in word {
            matrix = linalg::mat_mul(&matrix, datum.reflection(i));
        }
        WeylElement {
            matrix,
            reduced_word: word.to_vec(),
            length: word.len(),
        }
    }

    pub fn apply(&self, lambda: &[i64]) -> Vec<i64> {
        linalg::mat_vec(&self.matrix, lambda)
    }

    pub fn apply_q(&self, lambda: &[Q]) -> Vec<Q> {
        linalg::mat_vec_q(&self.matrix, lambda)
    }

    /// `w(beta)` for a root given in simple-root coordinates.
    pub fn act_on_root(&self, datum: &RootDatum, coeffs: &[i64]) -> Vec<i64> {
        self.reduced_word
            .iter()
            .rev()
            .fold(coeffs.to_vec(), |b, &i| datum.reflect_root_coeffs(i, &b))
    }

    /// `|{beta > 0 : w(beta) < 0}|`.
    pub fn inversion_count(&self, datum: &RootDatum) -> usize {
        datum
            .positive_roots()
            .iter()
            .filter(|b| self.act_on_root(datum, &b.coeffs).iter().all(|&c| c <= 0))
            .count()
    }
}

pub fn enumerate_weyl_group(datum: &RootDatum) -> Result<Vec<WeylElement>> {
    enumerate_weyl_group_bounded(datum, DEFAULT_WEYL_BOUND)
}

/// Breadth-first enumeration by right multiplication; every element carries
/// its lexicographically least reduced word.
pub fn enumerate_weyl_group_bounded(datum: &RootDatum, bound: u128) -> Result<Vec<WeylElement>> {
    let order = datum.weyl_order();
    if order > bound {
        return Err(Error::GroupTooLarge { order, bound });
    }
    let mut seen: HashSet<IMat> = HashSet::new();
    let id = WeylElement::identity(datum);
    seen.insert(id.matrix.clone());
    let mut all = vec![id];
    let mut level_start = 0;
    while level_start < all.len() {
        let level_end = all.len();
        for k in level_start..level_end {
            for i in 0..datum.rank() {
                let matrix = linalg::mat_mul(&all[k].matrix, datum.reflection(i));
                if seen.contains(&matrix) {
                    continue;
                }
                seen.insert(matrix.clone());
                let mut reduced_word = all[k].reduced_word.clone();
                reduced_word.push(i);
                let length = reduced_word.len();
                all.push(WeylElement {
                    matrix,
                    reduced_word,
                    length,
                });
            }
        }
        level_start = level_end;
    }
    debug_assert_eq!(all.len() as u128, order);
    Ok(all)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KostantEntry {
    pub representative: WeylElement,
    pub image: Vec<i64>,
}

/// Minimal length representatives of `W / W_mu`, keyed by `w(mu)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KostantSet {
    pub mu: Vec<i64>,
    pub entries: Vec<KostantEntry>,
}

impl KostantSet {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn position(&self, image: &[i64]) -> Option<usize> {
        self.entries.iter().position(|e| e.image == image)
    }

    pub fn max_length(&self) -> usize {
        self.entries
            .iter()
            .map(|e| e.representative.length)
            .max()
            .unwrap_or(0)
    }

    /// Coefficients of the Poincaré polynomial `sum_w t^{l(w)}`.
    pub fn poincare_coefficients(&self) -> Vec<usize> {
        let mut out = vec![0; self.max_length() + 1];
        for e in &self.entries {
            out[e.representative.length] += 1;
        }
        out
    }
}

pub fn check_dominant(datum: &RootDatum, mu: &[i64]) -> Result<()> {
    if mu.len() != datum.ambient_rank() {
        return Err(Error::DimensionMismatch {
            expected: datum.ambient_rank(),
            found: mu.len(),
        });
    }
    for i in 0..datum.rank() {
        let v = datum.simple_pairing(i, mu);
        if v < 0 {
            return Err(Error::NotDominant {
                index: i + 1,
                value: v.to_string(),
            });
        }
    }
    Ok(())
}

pub fn kostant_representatives(datum: &RootDatum, mu: &[i64]) -> Result<KostantSet> {
    kostant_representatives_bounded(datum, mu, DEFAULT_ORBIT_BOUND)
}

/// Breadth-first search on the orbit `W mu`, one level per length.
///
/// A representative `w` of length `l` has images `s_i w(mu)` of length `l+1`
/// exactly when `<alpha_i, w(mu)> > 0`. Each new image keeps the least word
/// `[i] ++ word(w)`, which is its lexicographically least reduced word.
pub fn kostant_representatives_bounded(
    datum: &RootDatum,
    mu: &[i64],
    bound: usize,
) -> Result<KostantSet> {
    check_dominant(datum, mu)?;
    let mut entries = vec![KostantEntry {
        representative: WeylElement::identity(datum),
        image: mu.to_vec(),
    }];
    let mut level: Vec<usize> = vec![0];
    while !level.is_empty() {
        let mut next: BTreeMap<Vec<i64>, (Vec<usize>, usize, usize)> = BTreeMap::new();
        for &k in &level {
            let x = &entries[k].image;
            for i in 0..datum.rank() {
                if datum.simple_pairing(i, x) <= 0 {
                    continue;
                }
                let y = datum.reflect(i, x);
                let mut word = Vec::with_capacity(entries[k].representative.length + 1);
                word.push(i);
                word.extend_from_slice(&entries[k].representative.reduced_word);
                match next.get(&y) {
                    Some((w, _, _)) if *w <= word => {}
                    _ => {
                        next.insert(y, (word, k, i));
                    }
                }
            }
        }
        if entries.len() + next.len() > bound {
            return Err(Error::OrbitTooLarge { bound });
        }
        let mut fresh: Vec<(Vec<usize>, Vec<i64>, usize, usize)> = next
            .into_iter()
            .map(|(y, (w, k, i))| (w, y, k, i))
            .collect();
        fresh.sort();
        level = Vec::with_capacity(fresh.len());
        for (word, image, k, i) in fresh {
            let matrix = linalg::mat_mul(datum.reflection(i), &entries[k].representative.matrix);
            let length = word.len();
            level.push(entries.len());
            entries.push(KostantEntry {
                representative: WeylElement {
                    matrix,
                    reduced_word: word,
                    length,
                },
                image,
            });
        }
    }
    Ok(KostantSet {
        mu: mu.to_vec(),
        entries,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisOrbit {
    /// Indices into the Kostant set, ascending.
    pub members: Vec<usize>,
    pub length: usize,
}

impl GaloisOrbit {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn representative(&self) -> usize {
        self.members[0]
    }
}

/// Orbits of `w(mu) -> tau(w(mu))` on the Kostant set, ordered by first member.
pub fn galois_orbits(kset: &KostantSet, tau: &DiagramAutomorphism) -> Result<Vec<GaloisOrbit>> {
    if tau.apply(&kset.mu) != kset.mu {
        return Err(Error::MuNotGaloisStable);
    }
    let index: HashMap<&[i64], usize> = kset
        .entries
        .iter()
        .enumerate()
        .map(|(k, e)| (e.image.as_slice(), k))
        .collect();
    let mut seen = vec![false; kset.len()];
    let mut orbits = Vec::new();
    for start in 0..kset.len() {
        if seen[start] {
            continue;
        }
        let mut members = vec![];
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            members.push(k);
            let image = tau.apply(&kset.entries[k].image);
            k = *index.get(image.as_slice()).ok_or_else(|| {
                Error::GaloisIncompatible("tau does not preserve the orbit of mu".into())
            })?;
        }
        members.sort_unstable();
        let length = kset.entries[members[0]].representative.length;
        if members
            .iter()
            .any(|&m| kset.entries[m].representative.length != length)
        {
            return Err(Error::LengthNotPreserved);
        }
        orbits.push(GaloisOrbit { members, length });
    }
    Ok(orbits)
}
