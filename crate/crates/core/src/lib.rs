//! Exact combinatorial engine for the compactly supported p-torsion and
//! p-adic étale cohomology of p-adic period domains attached to a basic
//! local Shtuka datum over a quasi-split group.
//!
//! The crate is layered bottom-up:
//!
//! * [`rootdata`]: based root data in explicit lattice realizations, exact
//!   invariant forms and pinned diagram automorphisms.
//! * [`weyl`]: Weyl group elements, Kostant (minimal coset) representatives
//!   and their Galois orbits.
//! * [`isocrystal`]: Newton vectors, the dominance order, Galois averages and
//!   the acceptable set for `GL_n`.
//! * [`shtuka`]: assembling and validating a local Shtuka datum, together with
//!   the per-orbit invariants `I_[w]` and `n_[w]`.
//! * [`steinberg`]: Grothendieck-group calculus of generalized Steinberg
//!   representations and the Hom/Ext decision table.
//! * [`cohomology`]: Schubert and boundary cohomology, the spectral sequence
//!   pages, the final graded decomposition and its consistency checks.
//! * [`invariants`]: structural identities re-derived on a given datum.
//!
//! All arithmetic is exact: integers for lattice data and arbitrary precision
//! rationals everywhere else.

pub mod cohomology;
pub mod error;
pub mod invariants;
pub mod isocrystal;
pub mod linalg;
pub mod rootdata;
pub mod shtuka;
pub mod steinberg;
pub mod subset;
pub mod weyl;

pub use error::{Error, Result};
pub use linalg::Q;
pub use subset::Subset;
