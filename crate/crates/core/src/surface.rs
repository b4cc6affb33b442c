//! Intersection theory and line-bundle cohomology on the Hirzebruch surface 𝔽ₙ.
//!
//! `Pic(𝔽ₙ)` is spanned by the fiber class `F` and the negative section `C`,
//! with `F² = 0`, `F·C = 1` and `C² = −n`. Divisors are written `xF + yC` and
//! this `(F, C)` order is used everywhere, including the JSON encoding
//! `{"f": x, "c": y}`.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Selects the surface 𝔽ₙ. The self-intersection of the negative curve is `−n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SurfaceParams {
    pub n: u32,
}

impl SurfaceParams {
    pub const F0: SurfaceParams = SurfaceParams { n: 0 };
    pub const F2: SurfaceParams = SurfaceParams { n: 2 };

    pub const fn new(n: u32) -> Self {
        SurfaceParams { n }
    }

    fn n_i64(self) -> i64 {
        i64::from(self.n)
    }

    /// Intersection number `D·D' = x·y' + x'·y − n·y·y'`.
    pub fn intersect(self, d: DivisorClass, e: DivisorClass) -> i64 {
        d.x * e.y + e.x * d.y - self.n_i64() * d.y * e.y
    }

    /// `K = −2C − (n+2)F`.
    pub fn canonical_class(self) -> DivisorClass {
        DivisorClass::new(-(self.n_i64() + 2), -2)
    }

    /// `χ(O(D)) = 1 + ½·D·(D − K)`.
    pub fn euler_char_line_bundle(self, d: DivisorClass) -> i64 {
        let k = self.canonical_class();
        let twice = self.intersect(d, d) - self.intersect(d, k);
        // D·(D − K) is even on any smooth surface (Wu's formula).
        debug_assert_eq!(twice.rem_euclid(2), 0);
        1 + twice / 2
    }

    /// Dimensions `hⁱ(𝔽ₙ, O(D))`.
    ///
    /// For `y ≥ 0` this pushes forward to ℙ¹, where `π_*O(xF + yC)` splits as
    /// `⊕_{j=0..y} O(x − n·j)` and the higher direct image vanishes. Both
    /// direct images vanish for `y = −1`, and `y ≤ −2` is reduced to the first
    /// case by Serre duality.
    pub fn line_bundle_cohomology(self, d: DivisorClass) -> CohomologyDims {
        match d.y {
            y if y >= 0 => pushforward_sums(self.n_i64(), d.x, y),
            -1 => CohomologyDims::default(),
            _ => self
                .line_bundle_cohomology(self.canonical_class() - d)
                .reversed(),
        }
    }
}

impl Default for SurfaceParams {
    fn default() -> Self {
        SurfaceParams::F2
    }
}

impl fmt::Display for SurfaceParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.n)
    }
}

/// Closed-form sums of `h⁰` and `h¹` of `O(x − n·j)` on ℙ¹ over `j = 0..=y`.
fn pushforward_sums(n: i64, x: i64, y: i64) -> CohomologyDims {
    debug_assert!(y >= 0);
    // h⁰(O(d)) = max(d + 1, 0) and h¹(O(d)) = max(−d − 1, 0); with m = x + 1
    // the j-th summand contributes max(m − n·j, 0) and max(n·j − m, 0).
    let m = x + 1;
    let tri = |k: i64| k * (k + 1) / 2;
    if n == 0 {
        return CohomologyDims {
            h0: (y + 1) * m.max(0),
            h1: (y + 1) * (-m).max(0),
            h2: 0,
        };
    }
    let h0 = if m > 0 {
        let last = y.min((m - 1).div_euclid(n));
        (last + 1) * m - n * tri(last)
    } else {
        0
    };
    let first = (m.div_euclid(n) + 1).max(0);
    let h1 = if first <= y {
        n * (tri(y) - tri(first - 1)) - m * (y - first + 1)
    } else {
        0
    };
    CohomologyDims { h0, h1, h2: 0 }
}

/// Divisor class `xF + yC`.
#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(deny_unknown_fields)]
pub struct DivisorClass {
    /// Coefficient of the fiber class `F`.
    #[serde(rename = "f")]
    pub x: i64,
    /// Coefficient of the negative section `C`.
    #[serde(rename = "c")]
    pub y: i64,
}

impl DivisorClass {
    pub const ZERO: DivisorClass = DivisorClass { x: 0, y: 0 };
    pub const F: DivisorClass = DivisorClass { x: 1, y: 0 };
    pub const C: DivisorClass = DivisorClass { x: 0, y: 1 };

    pub const fn new(x: i64, y: i64) -> Self {
        DivisorClass { x, y }
    }

    pub(crate) fn checked_scale(self, k: i64) -> Option<Self> {
        Some(DivisorClass::new(
            self.x.checked_mul(k)?,
            self.y.checked_mul(k)?,
        ))
    }

    pub(crate) fn checked_add(self, o: Self) -> Option<Self> {
        Some(DivisorClass::new(
            self.x.checked_add(o.x)?,
            self.y.checked_add(o.y)?,
        ))
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, o: Self) -> Self {
        DivisorClass::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, o: Self) -> Self {
        DivisorClass::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> Self {
        DivisorClass::new(-self.x, -self.y)
    }
}

impl Mul<DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, d: DivisorClass) -> DivisorClass {
        DivisorClass::new(self * d.x, self * d.y)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}F{:+}C", self.x, self.y)
    }
}

/// Cohomology dimensions `(h⁰, h¹, h²)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CohomologyDims {
    pub h0: i64,
    pub h1: i64,
    pub h2: i64,
}

impl CohomologyDims {
    pub const fn new(h0: i64, h1: i64, h2: i64) -> Self {
        CohomologyDims { h0, h1, h2 }
    }

    pub fn euler_char(&self) -> i64 {
        self.h0 - self.h1 + self.h2
    }

    /// `(h², h¹, h⁰)`, the shape Serre duality produces.
    pub fn reversed(self) -> Self {
        CohomologyDims::new(self.h2, self.h1, self.h0)
    }
}

impl fmt::Display for CohomologyDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.h0, self.h1, self.h2)
    }
}
