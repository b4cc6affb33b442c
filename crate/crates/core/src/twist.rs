//! Spherical twists along `O_C(a)` on 𝔽₂, seen on `K₀`.
//!
//! The twist triangle gives `[T_α β] = [β] − χ(α, β)[α]`; the inverse twist
//! gives `[T'_α β] = [β] − χ(β, α)[α]`. On a surface `χ(α, α) = 2`, so both
//! are reflections of the lattice. They agree on 𝔽₂ because `K·C = 0` makes
//! pairings against `O_C(a)` symmetric, but both are kept so callers can
//! follow the triangle they actually mean.

use crate::error::Result;
use crate::k0::{euler_form, tensor_line_bundle, torsion_class_oc, K0Class};
use crate::surface::{DivisorClass, SurfaceParams};
use serde::{Deserialize, Serialize};

/// The spherical object `O_C(a)` on the (−2)-curve of 𝔽₂.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SphericalClass {
    pub a: i64,
}

impl SphericalClass {
    pub const fn new(a: i64) -> Self {
        SphericalClass { a }
    }

    pub fn class(self) -> K0Class {
        torsion_class_oc(self.a)
    }

    /// `v − χ(u, v)·u`.
    pub fn twist(self, v: K0Class) -> Result<K0Class> {
        let u = self.class();
        let chi = euler_form(SurfaceParams::F2, u, v)?;
        v.checked_add_scaled(-chi, u)
    }

    /// `v − χ(v, u)·u`.
    pub fn inverse_twist(self, v: K0Class) -> Result<K0Class> {
        let u = self.class();
        let chi = euler_form(SurfaceParams::F2, v, u)?;
        v.checked_add_scaled(-chi, u)
    }
}

impl From<i64> for SphericalClass {
    fn from(a: i64) -> Self {
        SphericalClass::new(a)
    }
}

pub fn twist_class(a: SphericalClass, v: K0Class) -> Result<K0Class> {
    a.twist(v)
}

pub fn inverse_twist_class(a: SphericalClass, v: K0Class) -> Result<K0Class> {
    a.inverse_twist(v)
}

/// `T_{O_C(a−1)} ∘ T_{O_C(a)}` applied to `v`. As functors this composite is
/// `⊗ O(C)`, see [`tensor_by_c`].
pub fn compose_adjacent_twists(a: SphericalClass, v: K0Class) -> Result<K0Class> {
    SphericalClass::new(a.a - 1).twist(a.twist(v)?)
}

/// `v ⊗ O(C)` on 𝔽₂.
pub fn tensor_by_c(v: K0Class) -> Result<K0Class> {
    tensor_line_bundle(SurfaceParams::F2, v, DivisorClass::C)
}
