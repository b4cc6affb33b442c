//! The tower `{E_i}` of exceptional objects on 𝔽₂ sharing the class of an
//! exceptional bundle `E = E_{−1}`.
//!
//! Write `R = rank E` and `d = c₁(E)·C`. The restriction of a rigid bundle to
//! the (−2)-curve splits into two adjacent degrees,
//! `E|_C ≅ O_C(b₀−1)^{R−s} ⊕ O_C(b₀)^{s}` with `0 < s ≤ R`, so `(b₀, s)` is
//! forced by `b₀R − R < d ≤ b₀R`. From there:
//!
//! ```text
//! F₀  = E − (R − s)·O_C(b₀−1)            F_i = F₀(−iC)
//! r_i = (i + 1)·R − s
//! i ≥ 0 : 0 → O_C(b₀+i−1)^{r_i} → E_i → F_i → 0
//! i ≤ −2: H⁰(E_i) = F_{i+1},  H¹(E_i) = O_C(b₀+i)^{−r_{i+1}}
//! ```
//!
//! The sheaf-level splitting cannot be checked from a class alone; every
//! report here carries "numerical" semantics: the profile is derived from
//! `(R, d)` under that splitting assumption.

use crate::error::{Error, Result};
use crate::k0::{bundle_representative, euler_form, tensor_line_bundle, torsion_class_oc, K0Class};
use crate::surface::{DivisorClass, SurfaceParams};
use serde::{Deserialize, Serialize};
use std::fmt;

const F2: SurfaceParams = SurfaceParams::F2;

/// Default upper index for truncated tower reports.
pub const DEFAULT_TOWER_MAX: i64 = 8;

/// Splitting type `(b₀, s)` of the restriction to `C` of a rank-`R` bundle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RestrictionProfile {
    pub b0: i64,
    pub s: i64,
    #[serde(rename = "R")]
    pub rank: i64,
}

impl RestrictionProfile {
    /// `r_i = (i + 1)·R − s`.
    pub fn r(&self, i: i64) -> i64 {
        (i + 1) * self.rank - self.s
    }

    /// `c₁·C` of the bundle: `(b₀−1)(R−s) + b₀·s`.
    pub fn degree(&self) -> i64 {
        (self.b0 - 1) * (self.rank - self.s) + self.b0 * self.s
    }
}

/// Shape of `E_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TowerKind {
    Bundle,
    SheafWithTorsion,
    /// A two-term complex with cohomology in degrees 0 and 1.
    Complex,
}

impl TowerKind {
    pub fn name(self) -> &'static str {
        match self {
            TowerKind::Bundle => "bundle",
            TowerKind::SheafWithTorsion => "sheaf_with_torsion",
            TowerKind::Complex => "complex",
        }
    }
}

impl fmt::Display for TowerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Decomposition of one `E_i` into a locally free part and torsion on `C`.
///
/// For sheaves the torsion `O_C(torsion_degree)^{torsion_mult}` is a
/// subsheaf and `total = free_part + mult·[O_C(deg)]`. For complexes
/// `free_part` is `H⁰`, the torsion is `H¹`, and the torsion class enters
/// with a minus sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerEntry {
    pub i: i64,
    pub kind: TowerKind,
    pub torsion_degree: i64,
    pub torsion_mult: i64,
    pub free_part: K0Class,
    pub total: K0Class,
}

impl TowerEntry {
    /// The torsion part as a class, `mult·[O_C(deg)]` (before the sign).
    pub fn torsion_class(&self) -> Result<K0Class> {
        K0Class::ZERO.checked_add_scaled(self.torsion_mult, torsion_class_oc(self.torsion_degree))
    }
}

fn require_exceptional_positive(v: K0Class) -> Result<()> {
    let chi = euler_form(F2, v, v)?;
    if chi != 1 {
        return Err(Error::NotExceptional { class: v, chi });
    }
    if v.rank <= 0 {
        return Err(Error::NonpositiveRank(v));
    }
    Ok(())
}

/// `(b₀, s)` from `R = rank v` and `d = c₁(v)·C`: `b₀ = ⌈d/R⌉`, `s = d − R(b₀−1)`.
pub fn restriction_profile(v: K0Class) -> Result<RestrictionProfile> {
    require_exceptional_positive(v)?;
    let rank = v.rank;
    let d = F2.intersect(v.c1, DivisorClass::C);
    let b0 = -(-d).div_euclid(rank);
    let s = d - rank * (b0 - 1);
    debug_assert!(0 < s && s <= rank);
    Ok(RestrictionProfile { b0, s, rank })
}

/// `[F₀] = v − (R − s)·[O_C(b₀−1)]`.
pub fn f0_class(v: K0Class) -> Result<K0Class> {
    let p = restriction_profile(v)?;
    v.checked_add_scaled(-(p.rank - p.s), torsion_class_oc(p.b0 - 1))
}

/// `[F_i] = [F₀(−iC)]`.
pub fn f_i_class(v: K0Class, i: i64) -> Result<K0Class> {
    let shift = DivisorClass::C
        .checked_scale(-i)
        .ok_or(Error::Overflow("tower index"))?;
    tensor_line_bundle(F2, f0_class(v)?, shift)
}

/// The entry `E_i` of the tower rooted at the exceptional bundle class `v`.
pub fn tower_entry(v: K0Class, i: i64) -> Result<TowerEntry> {
    let p = restriction_profile(v)?;
    let f0 = f0_class(v)?;
    let f = |j: i64| -> Result<K0Class> {
        let shift = DivisorClass::C
            .checked_scale(-j)
            .ok_or(Error::Overflow("tower index"))?;
        tensor_line_bundle(F2, f0, shift)
    };
    let entry = if i == -1 || (i == 0 && p.s == p.rank) {
        TowerEntry {
            i,
            kind: TowerKind::Bundle,
            torsion_degree: p.b0 + i - 1,
            torsion_mult: 0,
            free_part: v,
            total: v,
        }
    } else if i >= 0 {
        let (degree, mult) = (p.b0 + i - 1, p.r(i));
        let free_part = f(i)?;
        TowerEntry {
            i,
            kind: TowerKind::SheafWithTorsion,
            torsion_degree: degree,
            torsion_mult: mult,
            free_part,
            total: free_part.checked_add_scaled(mult, torsion_class_oc(degree))?,
        }
    } else {
        let (degree, mult) = (p.b0 + i, -p.r(i + 1));
        let free_part = f(i + 1)?;
        TowerEntry {
            i,
            kind: TowerKind::Complex,
            torsion_degree: degree,
            torsion_mult: mult,
            free_part,
            total: free_part.checked_add_scaled(-mult, torsion_class_oc(degree))?,
        }
    };
    Ok(entry)
}

/// Objects of a torsion/free decomposition `0 → T → E → F → 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TefObject {
    T,
    E,
    F,
}

impl TefObject {
    pub const ALL: [TefObject; 3] = [TefObject::T, TefObject::E, TefObject::F];

    fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            TefObject::T => "T",
            TefObject::E => "E",
            TefObject::F => "F",
        }
    }
}

/// `dim Extᵏ(X, Y)` for `X, Y ∈ {T, E, F}` and `k = 0, 1, 2`, in terms of
/// `t = hom(T, T)` and `f = hom(F, F)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtTable {
    pub t: i64,
    pub f: i64,
    dims: [[[i64; 3]; 3]; 3],
}

impl ExtTable {
    pub fn ext(&self, from: TefObject, to: TefObject) -> [i64; 3] {
        self.dims[from.index()][to.index()]
    }

    /// Alternating sum `ext⁰ − ext¹ + ext²`.
    pub fn chi(&self, from: TefObject, to: TefObject) -> i64 {
        let [e0, e1, e2] = self.ext(from, to);
        e0 - e1 + e2
    }

    /// `(from, to, [ext⁰, ext¹, ext²])` in row-major `T, E, F` order.
    pub fn rows(&self) -> impl Iterator<Item = (TefObject, TefObject, [i64; 3])> + '_ {
        TefObject::ALL.into_iter().flat_map(move |x| {
            TefObject::ALL
                .into_iter()
                .map(move |y| (x, y, self.ext(x, y)))
        })
    }
}

pub fn ext_table(t: i64, f: i64) -> Result<ExtTable> {
    if t < 1 || f < 1 {
        return Err(Error::InvalidTableParams { t, f });
    }
    let dims = [
        // T → T, E, F
        [[t, 0, t], [t, f - 1, 0], [0, f + t - 1, 0]],
        // E → T, E, F
        [[0, f - 1, t], [1, 0, 0], [f, t, 0]],
        // F → T, E, F
        [[0, f + t - 1, 0], [0, t - 1, f - 1], [f, 0, f - 1]],
    ];
    Ok(ExtTable { t, f, dims })
}

/// Cross-checks the ext table against the Euler form on the tower entry
/// `E_i`, using `T = O_C(b₀+i−1)^{r}`, `t = r²` and `f = 1`.
pub fn check_table_consistency(v: K0Class, i: i64) -> Result<()> {
    let entry = tower_entry(v, i)?;
    if entry.kind != TowerKind::SheafWithTorsion {
        return Err(Error::NotSheafWithTorsion {
            i,
            kind: entry.kind.name(),
        });
    }
    let r = entry.torsion_mult;
    let t = r.checked_mul(r).ok_or(Error::Overflow("ext table"))?;
    let table = ext_table(t, 1)?;
    let class_of = |o: TefObject| -> Result<K0Class> {
        match o {
            TefObject::T => entry.torsion_class(),
            TefObject::E => Ok(entry.total),
            TefObject::F => Ok(entry.free_part),
        }
    };
    for (x, y, _) in table.rows() {
        let form = euler_form(F2, class_of(x)?, class_of(y)?)?;
        let expected = table.chi(x, y);
        if form != expected {
            return Err(Error::Mismatch {
                pair: pair_name(x, y),
                table: expected,
                form,
            });
        }
    }
    Ok(())
}

fn pair_name(x: TefObject, y: TefObject) -> &'static str {
    use TefObject::*;
    match (x, y) {
        (T, T) => "T,T",
        (T, E) => "T,E",
        (T, F) => "T,F",
        (E, T) => "E,T",
        (E, E) => "E,E",
        (E, F) => "E,F",
        (F, T) => "F,T",
        (F, E) => "F,E",
        (F, F) => "F,F",
    }
}

/// Root class of a tower together with its restriction profile; JSON
/// `{"root": .., "b0": .., "s": .., "R": ..}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerHeader {
    pub root: K0Class,
    #[serde(flatten)]
    pub profile: RestrictionProfile,
}

/// Entries `E_i` for `i ∈ range` of the tower rooted at the bundle class `v`.
pub fn tower_report(
    v: K0Class,
    range: std::ops::RangeInclusive<i64>,
) -> Result<(TowerHeader, Vec<TowerEntry>)> {
    let profile = restriction_profile(v)?;
    let entries = range
        .map(|i| tower_entry(v, i))
        .collect::<Result<Vec<_>>>()?;
    Ok((TowerHeader { root: v, profile }, entries))
}

/// Exceptional sheaves sharing a class: `{E_i | −1 ≤ i ≤ max_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    /// The class as given.
    pub input: K0Class,
    /// `root` is the positive-rank representative, the class of the unique
    /// bundle `E_{−1}`.
    pub header: TowerHeader,
    /// `E_{−1} ≅ E₀`, which happens exactly when `s = R`.
    pub bundle_coincides_with_e0: bool,
    pub entries: Vec<TowerEntry>,
    pub semantics: String,
}

/// The tower entries `i = −1..=max_i` of the bundle representative of `v`.
pub fn classify_sheaves_sharing_class(v: K0Class, max_i: i64) -> Result<Classification> {
    let root = bundle_representative(F2, v)?;
    let (header, entries) = tower_report(root, -1..=max_i)?;
    Ok(Classification {
        input: v,
        header,
        bundle_coincides_with_e0: header.profile.s == header.profile.rank,
        entries,
        semantics: "numerical".to_string(),
    })
}
