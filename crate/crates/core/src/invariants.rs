//! Structural identities every valid datum must satisfy. Each check is
//! recomputed through a path independent of the main pipeline where one
//! exists.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::cohomology::{self, Coefficients};
use crate::error::Result;
use crate::linalg::{self, q, q_frac, Q};
use crate::shtuka::{compute_orbit_invariants, LocalShtukaDatum};
use crate::subset::Subset;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, passed: bool, detail: impl Into<String>) -> InvariantCheck {
    InvariantCheck {
        name,
        passed,
        detail: detail.into(),
    }
}

/// Largest `|Δ_J|` for which all pairs of subsets are compared.
const PAIRWISE_LIMIT: usize = 10;

pub fn invariant_suite(datum: &LocalShtukaDatum) -> Result<Vec<InvariantCheck>> {
    Ok(vec![
        orbit_lengths(datum),
        i_set_constancy(datum),
        central_shift(datum)?,
        rescaling(datum)?,
        omega_lattice(datum)?,
        top_degree(datum),
        galois_ranks(datum),
        e2_matches_boundary(datum)?,
        n_range(datum),
    ])
}

pub fn orbit_lengths(datum: &LocalShtukaDatum) -> InvariantCheck {
    let g = datum.group();
    let k = datum.kostant();
    let inversions_ok = k.entries.iter().all(|e| {
        let neg = g
            .positive_roots()
            .iter()
            .filter(|b| linalg::dot_i(&b.character, &e.image) < 0)
            .count();
        neg == e.representative.length
    });
    let constant = datum.orbit_invariants().iter().all(|o| {
        o.orbit
            .members
            .iter()
            .all(|&m| k.entries[m].representative.length == o.length())
    });
    check(
        "orbit length constancy",
        inversions_ok && constant,
        format!("{} representatives", k.len()),
    )
}

pub fn i_set_constancy(datum: &LocalShtukaDatum) -> InvariantCheck {
    let omega = &datum.j().omega;
    let k = datum.kostant();
    let ok = datum.orbit_invariants().iter().all(|o| {
        o.orbit.members.iter().all(|&m| {
            let set = Subset::from_indices((0..omega.len()).filter(|&a| {
                let x = linalg::sub(&linalg::to_q(&k.entries[m].image), datum.nu());
                linalg::form(datum.group().form(), &x, &omega[a]) <= Q::zero()
            }));
            set == o.i_set
        })
    });
    check("I_[w] orbit constancy", ok, format!("{} orbits", datum.orbit_invariants().len()))
}

/// `I_[w]` does not move when each `omega_alpha` is shifted centrally.
pub fn central_shift(datum: &LocalShtukaDatum) -> Result<InvariantCheck> {
    let g = datum.group();
    let omega = &datum.j().omega;
    let k = datum.kostant();
    let orbits: Vec<_> = datum.orbit_invariants().iter().map(|o| o.orbit.clone()).collect();
    let mut ok = true;
    let mut tried = 0;
    for z in g.central_basis() {
        for c in [q(1), q(-2), q_frac(1, 3)] {
            let shifted: Vec<Vec<Q>> = omega
                .iter()
                .enumerate()
                .map(|(a, w)| linalg::add(w, &linalg::scale(&(&c * q(a as i64 + 1)), z)))
                .collect();
            let inv = compute_orbit_invariants(k, &orbits, datum.nu(), g, &shifted)?;
            ok &= inv
                .iter()
                .zip(datum.orbit_invariants())
                .all(|(a, b)| a.i_set == b.i_set);
            tried += 1;
        }
    }
    Ok(check(
        "central shift invariance",
        ok,
        format!("{tried} shifts"),
    ))
}

/// Per-factor scales constant on the factors permuted by `tau`.
fn tau_compatible_scales(datum: &LocalShtukaDatum) -> Vec<Q> {
    let g = datum.group();
    let blocks = g.blocks();
    let lattice = datum.tau().lattice();
    let image_block = |b: usize| {
        let col = blocks[b].coords.start;
        let row = (0..g.ambient_rank())
            .find(|&r| lattice[r][col] != 0)
            .expect("invertible lattice action");
        blocks.iter().position(|x| x.coords.contains(&row)).unwrap()
    };
    (0..blocks.len())
        .map(|b| {
            let mut least = b;
            let mut c = image_block(b);
            while c != b {
                least = least.min(c);
                c = image_block(c);
            }
            q_frac(2 * least as i64 + 3, 2)
        })
        .collect()
}

pub fn rescaling(datum: &LocalShtukaDatum) -> Result<InvariantCheck> {
    let scaled = datum.with_rescaled_form(tau_compatible_scales(datum))?;
    let same_i = scaled
        .orbit_invariants()
        .iter()
        .zip(datum.orbit_invariants())
        .all(|(a, b)| a.i_set == b.i_set && a.n == b.n);
    let same_hc = cohomology::compactly_supported_cohomology(&scaled, Coefficients::ModPn)
        == cohomology::compactly_supported_cohomology(datum, Coefficients::ModPn);
    let same_boundary = cohomology::boundary_cohomology(&scaled) == cohomology::boundary_cohomology(datum);
    Ok(check(
        "per-factor rescaling invariance",
        same_i && same_hc && same_boundary,
        "",
    ))
}

/// Monotonicity, `Ω_{I∩J} = Ω_I ∩ Ω_J`, and `[w] ∈ Ω_I ⟺ I_[w] ⊆ I`.
pub fn omega_lattice(datum: &LocalShtukaDatum) -> Result<InvariantCheck> {
    let size = datum.relative_rank();
    if size > PAIRWISE_LIMIT {
        return Ok(check("Omega monotonicity and intersections", true, "skipped: rank too large"));
    }
    let omegas: Vec<BTreeSet<usize>> = Subset::all(size)
        .map(|s| Ok(cohomology::omega_set(datum, s)?.into_iter().collect()))
        .collect::<Result<_>>()?;
    let inv = datum.orbit_invariants();
    let mut ok = true;
    for a in Subset::all(size) {
        let oa = &omegas[a.bits() as usize];
        ok &= (0..inv.len()).all(|w| oa.contains(&w) == inv[w].i_set.is_subset(a));
        for b in Subset::all(size) {
            let ob = &omegas[b.bits() as usize];
            let meet = &omegas[a.intersection(b).bits() as usize];
            ok &= *meet == oa.intersection(ob).copied().collect::<BTreeSet<_>>();
            if a.is_subset(b) {
                ok &= oa.is_subset(ob);
            }
        }
    }
    Ok(check(
        "Omega monotonicity and intersections",
        ok,
        format!("{} subsets", omegas.len()),
    ))
}

/// Degree support of `H_c` is `[min 2l, 2 dim F]`, and the top degree is one
/// trivial summand of rank 1 and twist `-dim F`.
pub fn top_degree(datum: &LocalShtukaDatum) -> InvariantCheck {
    let hc = cohomology::compactly_supported_cohomology(datum, Coefficients::ModPn);
    let dim = datum.dim_flag();
    let size = datum.relative_rank();
    let top: Vec<_> = hc.in_degree(2 * dim).collect();
    let top_ok = top.len() == 1
        && top[0].rep.is_trivial(size)
        && top[0].galois.rank == 1
        && top[0].galois.twist == -(dim as i64);
    let min = datum
        .orbit_invariants()
        .iter()
        .map(|o| 2 * o.length())
        .min()
        .unwrap_or(0);
    let support_ok = hc.summands.iter().all(|s| (min..=2 * dim).contains(&s.degree));
    check(
        "top degree summand",
        top_ok && support_ok,
        format!("dim F = {dim}"),
    )
}

pub fn galois_ranks(datum: &LocalShtukaDatum) -> InvariantCheck {
    let hc = cohomology::compactly_supported_cohomology(datum, Coefficients::ModPn);
    let total: usize = hc.summands.iter().map(|s| s.galois.rank).sum();
    let per_orbit = hc
        .summands
        .iter()
        .all(|s| s.galois.rank == datum.orbit_invariants()[s.orbit].size());
    let expected = datum.kostant().len();
    let stab = datum.group().count_roots_orthogonal_to(datum.mu());
    let poincare = datum.kostant().max_length() == datum.group().positive_roots().len() - stab;
    check(
        "Galois ranks sum to |W^mu|",
        total == expected && per_orbit && poincare,
        format!("{total} of {expected}"),
    )
}

pub fn e2_matches_boundary(datum: &LocalShtukaDatum) -> Result<InvariantCheck> {
    let (boundary, _) = cohomology::boundary_cohomology(datum);
    let size = datum.relative_rank();
    let ok = if size == 0 {
        boundary.is_empty()
    } else {
        let (e1, e2) = cohomology::spectral_pages(datum)?;
        e2.total(size) == boundary && e1.cells.keys().all(|&(i, _)| i < size)
    };
    Ok(check("E2 total equals boundary", ok, ""))
}

pub fn n_range(datum: &LocalShtukaDatum) -> InvariantCheck {
    let dim = datum.dim_flag();
    let ok = datum.orbit_invariants().iter().all(|o| o.n <= 2 * dim);
    check("n_[w] within [0, 2 dim F]", ok, "")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shtuka::build_datum;

    #[test]
    fn presets_satisfy_every_invariant() {
        for p in ["drinfeld:3", "gln_basic:4,1,1,0,0:1/2", "quadric:7", "split:A2xB2:2,1,1,0", "split:G2:2,3"] {
            let d = build_datum(p).unwrap();
            for c in invariant_suite(&d).unwrap() {
                assert!(c.passed, "{p}: {} ({})", c.name, c.detail);
            }
        }
    }
}
