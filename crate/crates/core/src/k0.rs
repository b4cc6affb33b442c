//! The numerical Grothendieck lattice `K₀(𝔽ₙ) ≅ ℤ⁴`.
//!
//! A class is stored as `(rank, c₁, 2·ch₂)`. Keeping `ch₂` doubled makes
//! every coordinate an integer; the price is the parity constraint
//! `ch2_x2 ≡ c₁·c₁ (mod 2)`, which is exactly integrality of `c₂`. Negation
//! models the shift `[1]`.
//!
//! The Euler pairing comes from Hirzebruch–Riemann–Roch with `td = 1 − K/2 + pt`:
//!
//! ```text
//! χ(v, w) = r·r' + r·s' + r'·s − c·c' − ½·K·(r·c' − r'·c),   s = ch₂
//! ```
//!
//! It is evaluated in 128-bit arithmetic; the numerator is even whenever
//! both inputs satisfy the parity constraint.

use crate::error::{Error, Result};
use crate::surface::{DivisorClass, SurfaceParams};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// An element of `K₀(𝔽ₙ)`: `(rank, c₁, 2·ch₂)`.
#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(deny_unknown_fields)]
pub struct K0Class {
    pub rank: i64,
    pub c1: DivisorClass,
    /// Twice the second Chern character.
    pub ch2_x2: i64,
}

impl K0Class {
    pub const ZERO: K0Class = K0Class::new(0, DivisorClass::ZERO, 0);
    /// `[O]`.
    pub const STRUCTURE_SHEAF: K0Class = K0Class::new(1, DivisorClass::ZERO, 0);

    pub const fn new(rank: i64, c1: DivisorClass, ch2_x2: i64) -> Self {
        K0Class { rank, c1, ch2_x2 }
    }

    /// `[O(D)] = (1, D, D²)`.
    pub fn line_bundle(s: SurfaceParams, d: DivisorClass) -> Self {
        K0Class::new(1, d, s.intersect(d, d))
    }

    /// Whether `ch2_x2 ≡ c₁·c₁ (mod 2)` holds on `s`.
    pub fn satisfies_parity(&self, s: SurfaceParams) -> bool {
        // c₁·c₁ = 2xy − n·y² ≡ n·y (mod 2).
        self.ch2_x2.rem_euclid(2) == i64::from(s.n % 2) * self.c1.y.rem_euclid(2)
    }

    pub fn check_parity(&self, s: SurfaceParams) -> Result<()> {
        if self.satisfies_parity(s) {
            Ok(())
        } else {
            Err(Error::ParityViolation(*self))
        }
    }

    pub fn checked_add(self, o: Self) -> Result<Self> {
        self.checked_add_scaled(1, o)
    }

    pub fn checked_sub(self, o: Self) -> Result<Self> {
        self.checked_add_scaled(-1, o)
    }

    /// `self + k·o`, failing on overflow.
    pub fn checked_add_scaled(self, k: i64, o: Self) -> Result<Self> {
        let go = || -> Option<K0Class> {
            Some(K0Class::new(
                self.rank.checked_add(o.rank.checked_mul(k)?)?,
                self.c1.checked_add(o.c1.checked_scale(k)?)?,
                self.ch2_x2.checked_add(o.ch2_x2.checked_mul(k)?)?,
            ))
        };
        go().ok_or(Error::Overflow("lattice combination"))
    }

    pub fn checked_neg(self) -> Result<Self> {
        K0Class::ZERO.checked_sub(self)
    }

    /// The class with its first nonzero coordinate (in `rank, x, y, ch2_x2`
    /// order) made positive. `canonical_sign(v) == canonical_sign(−v)`.
    pub fn canonical_sign(self) -> Self {
        if self.sign() < 0 {
            -self
        } else {
            self
        }
    }

    /// Sign of the first nonzero coordinate, or 0 for the zero class.
    pub fn sign(&self) -> i64 {
        [self.rank, self.c1.x, self.c1.y, self.ch2_x2]
            .into_iter()
            .find(|&c| c != 0)
            .map_or(0, i64::signum)
    }
}

impl Add for K0Class {
    type Output = K0Class;
    fn add(self, o: Self) -> Self {
        K0Class::new(self.rank + o.rank, self.c1 + o.c1, self.ch2_x2 + o.ch2_x2)
    }
}

impl Sub for K0Class {
    type Output = K0Class;
    fn sub(self, o: Self) -> Self {
        K0Class::new(self.rank - o.rank, self.c1 - o.c1, self.ch2_x2 - o.ch2_x2)
    }
}

impl Neg for K0Class {
    type Output = K0Class;
    fn neg(self) -> Self {
        K0Class::new(-self.rank, -self.c1, -self.ch2_x2)
    }
}

impl fmt::Display for K0Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(r={}, c1={}, 2ch2={})", self.rank, self.c1, self.ch2_x2)
    }
}

fn intersect_wide(s: SurfaceParams, d: DivisorClass, e: DivisorClass) -> Result<i128> {
    let (dx, dy, ex, ey) = (
        i128::from(d.x),
        i128::from(d.y),
        i128::from(e.x),
        i128::from(e.y),
    );
    (dx * ey)
        .checked_add(ex * dy)
        .and_then(|t| t.checked_sub(i128::from(s.n).checked_mul(dy * ey)?))
        .ok_or(Error::Overflow("intersection"))
}

fn narrow(v: i128, what: &'static str) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow(what))
}

/// Euler pairing `χ(v, w) = Σ (−1)ⁱ dim Extⁱ(v, w)` on `K₀(𝔽ₙ)`.
pub fn euler_form(s: SurfaceParams, v: K0Class, w: K0Class) -> Result<i64> {
    v.check_parity(s)?;
    w.check_parity(s)?;
    let k = s.canonical_class();
    let (r, r2) = (i128::from(v.rank), i128::from(w.rank));
    let wide = || -> Option<i128> {
        let cc = intersect_wide(s, v.c1, w.c1).ok()?;
        let kw = intersect_wide(s, k, w.c1).ok()?;
        let kv = intersect_wide(s, k, v.c1).ok()?;
        (2 * r)
            .checked_mul(r2)?
            .checked_add(r * i128::from(w.ch2_x2))?
            .checked_add(r2 * i128::from(v.ch2_x2))?
            .checked_sub(cc.checked_mul(2)?)?
            .checked_sub(r.checked_mul(kw)?.checked_sub(r2.checked_mul(kv)?)?)
    };
    let numerator = wide().ok_or(Error::Overflow("euler form"))?;
    if numerator.rem_euclid(2) != 0 {
        // Unreachable for parity-respecting inputs: c² + K·c is always even.
        return Err(Error::ParityViolation(v));
    }
    narrow(numerator / 2, "euler form")
}

/// `v ⊗ O(D)`: rank fixed, `c₁ += r·D`, `ch₂ += c₁·D + r·D²/2`.
pub fn tensor_line_bundle(s: SurfaceParams, v: K0Class, d: DivisorClass) -> Result<K0Class> {
    let r = i128::from(v.rank);
    let c1 = DivisorClass::new(
        narrow(i128::from(v.c1.x) + r * i128::from(d.x), "tensor product")?,
        narrow(i128::from(v.c1.y) + r * i128::from(d.y), "tensor product")?,
    );
    let cd = intersect_wide(s, v.c1, d)?;
    let dd = intersect_wide(s, d, d)?;
    let ch2_x2 = r
        .checked_mul(dd)
        .and_then(|t| t.checked_add(cd.checked_mul(2)?))
        .and_then(|t| t.checked_add(i128::from(v.ch2_x2)))
        .ok_or(Error::Overflow("tensor product"))?;
    Ok(K0Class::new(v.rank, c1, narrow(ch2_x2, "tensor product")?))
}

/// `v ⊗ ω`, the Serre functor up to shift on classes.
pub fn serre_twist(s: SurfaceParams, v: K0Class) -> Result<K0Class> {
    tensor_line_bundle(s, v, s.canonical_class())
}

/// `[O_C(a)]` on 𝔽₂: `(0, C, a + 1)` with `ch₂` undoubled.
pub fn torsion_class_oc(a: i64) -> K0Class {
    K0Class::new(0, DivisorClass::C, 2 * (a + 1))
}

/// `χ(v, v) = 1`. Classes breaking the parity constraint are never exceptional.
pub fn is_numerically_exceptional(s: SurfaceParams, v: K0Class) -> bool {
    matches!(euler_form(s, v, v), Ok(1))
}

/// Solves `χ(v, v) = 1` for `ch₂` given rank and `c₁`.
///
/// On any 𝔽ₙ the canonical-class terms cancel in `χ(v, v)`, leaving
/// `r² + r·(2ch₂) − c² = 1`, so `2ch₂ = (1 + c² − r²)/r`.
pub fn exceptional_class_from_slope(
    s: SurfaceParams,
    rank: i64,
    c1: DivisorClass,
) -> Result<K0Class> {
    if rank <= 0 {
        return Err(Error::NonpositiveRank(K0Class::new(rank, c1, 0)));
    }
    let r = i128::from(rank);
    let numerator = intersect_wide(s, c1, c1)?
        .checked_add(1)
        .and_then(|t| t.checked_sub(r * r))
        .ok_or(Error::Overflow("slope solve"))?;
    if numerator % r != 0 {
        return Err(Error::NonIntegral { rank, c1 });
    }
    let ch2_x2 = narrow(numerator / r, "slope solve")?;
    let v = K0Class::new(rank, c1, ch2_x2);
    if !v.satisfies_parity(s) {
        return Err(Error::NonIntegral { rank, c1 });
    }
    Ok(v)
}

/// The positive-rank member of `{v, −v}` for an exceptional class `v`.
pub fn bundle_representative(s: SurfaceParams, v: K0Class) -> Result<K0Class> {
    let chi = euler_form(s, v, v)?;
    if chi != 1 {
        return Err(Error::NotExceptional { class: v, chi });
    }
    match v.rank.signum() {
        1 => Ok(v),
        -1 => v.checked_neg(),
        _ => Err(Error::ZeroRank(v)),
    }
}

/// Inclusive search box for [`enumerate_exceptional_classes`].
///
/// Rank-zero exceptional classes leave `ch₂` unconstrained (they occur only
/// when `c₁² = −1`, i.e. on odd `n`); they are listed only for `ch2_x2`
/// inside the optional window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnumerationBox {
    pub rank: (i64, i64),
    pub x: (i64, i64),
    pub y: (i64, i64),
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ch2_x2: Option<(i64, i64)>,
}

impl EnumerationBox {
    pub fn symmetric(rank: (i64, i64), radius: i64) -> Self {
        EnumerationBox {
            rank,
            x: (-radius, radius),
            y: (-radius, radius),
            ch2_x2: None,
        }
    }

    pub fn contains(&self, v: &K0Class) -> bool {
        let inside = |(lo, hi): (i64, i64), t: i64| lo <= t && t <= hi;
        inside(self.rank, v.rank)
            && inside(self.x, v.c1.x)
            && inside(self.y, v.c1.y)
            && (v.rank != 0 || self.ch2_x2.is_some_and(|w| inside(w, v.ch2_x2)))
    }
}

/// Every exceptional class inside `bounds`, sorted lexicographically.
///
/// Iterates `(rank, x, y)` and solves for `ch₂`; negative ranks use the
/// solution for `−v`.
pub fn enumerate_exceptional_classes(s: SurfaceParams, bounds: &EnumerationBox) -> Vec<K0Class> {
    let (r_lo, r_hi) = bounds.rank;
    let mut out: Vec<K0Class> = (r_lo..=r_hi)
        .into_par_iter()
        .flat_map_iter(|rank| {
            let (x_lo, x_hi) = bounds.x;
            let (y_lo, y_hi) = bounds.y;
            (x_lo..=x_hi)
                .flat_map(move |x| (y_lo..=y_hi).map(move |y| DivisorClass::new(x, y)))
                .flat_map(move |c1| solutions_at(s, rank, c1, bounds.ch2_x2))
        })
        .filter(|v| is_numerically_exceptional(s, *v))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn solutions_at(
    s: SurfaceParams,
    rank: i64,
    c1: DivisorClass,
    window: Option<(i64, i64)>,
) -> Vec<K0Class> {
    match rank.signum() {
        1 => exceptional_class_from_slope(s, rank, c1)
            .into_iter()
            .collect(),
        // −v has rank −r and c₁ = −c1; χ(−v, −v) = χ(v, v).
        -1 => exceptional_class_from_slope(s, -rank, -c1)
            .into_iter()
            .map(|v| -v)
            .collect(),
        _ => match window {
            Some((lo, hi)) if intersect_wide(s, c1, c1) == Ok(-1) => (lo..=hi)
                .map(|ch2_x2| K0Class::new(0, c1, ch2_x2))
                .collect(),
            _ => Vec::new(),
        },
    }
}
