//! Exact computations in the numerical Grothendieck group of Hirzebruch
//! surfaces.
//!
//! Everything here is integer arithmetic. Classes live in the lattice
//! `K₀(𝔽ₙ) ≅ ℤ⁴` with coordinates `(rank, c₁ = xF + yC, 2·ch₂)`, and the
//! Euler pairing is evaluated in closed form by Hirzebruch–Riemann–Roch.
//!
//! - [`surface`]: intersection form, canonical class, line-bundle cohomology.
//! - [`k0`]: the lattice, the Euler form and exceptional classes.
//! - [`twist`]: reflections induced by the spherical objects `O_C(a)` on 𝔽₂.
//! - [`tower`]: the family `E_i` of exceptional objects sharing one class.
//! - [`collections`]: 4-term exceptional collections, mutations, orbit search.
//! - [`cli`]: request decoding and the `verify` suite behind the binary.

pub mod cli;
pub mod collections;
mod error;
pub mod k0;
pub mod surface;
pub mod tower;
pub mod twist;

pub use collections::{BraidLetter, BraidWord, Collection4, GroupElement};
pub use error::{Error, Result};
pub use k0::K0Class;
pub use surface::{CohomologyDims, DivisorClass, SurfaceParams};
pub use tower::{ExtTable, RestrictionProfile, TowerEntry, TowerKind};
pub use twist::SphericalClass;
