//! Four-term exceptional collections on 𝔽ₙ at the level of classes, the
//! action of `G₄ = ℤ⁴ ⋊ B₄` by shifts and mutations, and a bounded orbit
//! search producing checkable certificates.
//!
//! A braid letter `(k, +1)` is the left mutation of the pair at positions
//! `k, k+1` (1-based), `(k, −1)` the right mutation:
//!
//! ```text
//! left : (a, b) ↦ (b − χ(a, b)·a, a)
//! right: (a, b) ↦ (b, a − χ(a, b)·b)
//! ```
//!
//! Shifts only survive on `K₀` as signs, so a group element carries a sign
//! pattern mod 2 and a braid word. The word is applied first.

use crate::error::{Error, Result};
use crate::k0::{euler_form, K0Class};
use crate::surface::{DivisorClass, SurfaceParams};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize};
use std::collections::HashMap;
use std::fmt;

pub type Gram = [[i64; 4]; 4];

/// An ordered quadruple of classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Collection4 {
    pub classes: [K0Class; 4],
}

impl Collection4 {
    pub const fn new(classes: [K0Class; 4]) -> Self {
        Collection4 { classes }
    }

    /// Each entry replaced by its sign-canonical representative.
    pub fn canonical_signs(&self) -> Collection4 {
        Collection4::new(self.classes.map(K0Class::canonical_sign))
    }
}

impl fmt::Display for Collection4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.classes;
        write!(f, "[{a}, {b}, {c}, {d}]")
    }
}

/// A generator `σ_k^{±1}` of `B₄`; JSON `[k, sign]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "(i64, i64)", into = "(i64, i64)")]
pub struct BraidLetter {
    position: u8,
    left: bool,
}

impl BraidLetter {
    pub fn new(position: u8, sign: i8) -> Result<Self> {
        if !(1..=3).contains(&position) {
            return Err(Error::InvalidPosition(position));
        }
        Ok(BraidLetter {
            position,
            left: sign >= 0,
        })
    }

    pub fn left(position: u8) -> Result<Self> {
        BraidLetter::new(position, 1)
    }

    pub fn right(position: u8) -> Result<Self> {
        BraidLetter::new(position, -1)
    }

    pub fn position(&self) -> u8 {
        self.position
    }

    pub fn sign(&self) -> i8 {
        if self.left {
            1
        } else {
            -1
        }
    }

    pub fn inverse(self) -> Self {
        BraidLetter {
            left: !self.left,
            ..self
        }
    }

    /// All six generators and their inverses.
    pub fn all() -> [BraidLetter; 6] {
        let l = |position, left| BraidLetter { position, left };
        [
            l(1, true),
            l(1, false),
            l(2, true),
            l(2, false),
            l(3, true),
            l(3, false),
        ]
    }
}

impl TryFrom<(i64, i64)> for BraidLetter {
    type Error = String;

    fn try_from((k, sign): (i64, i64)) -> std::result::Result<Self, String> {
        let position = u8::try_from(k)
            .ok()
            .filter(|p| (1..=3).contains(p))
            .ok_or_else(|| format!("braid position {k} out of range 1..=3"))?;
        match sign {
            1 | -1 => Ok(BraidLetter {
                position,
                left: sign == 1,
            }),
            _ => Err(format!("braid sign must be +1 or -1, got {sign}")),
        }
    }
}

impl From<BraidLetter> for (i64, i64) {
    fn from(l: BraidLetter) -> Self {
        (i64::from(l.position), i64::from(l.sign()))
    }
}

impl fmt::Display for BraidLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.left {
            write!(f, "σ{}", self.position)
        } else {
            write!(f, "σ{}⁻¹", self.position)
        }
    }
}

/// A word in the braid generators, applied left to right.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BraidWord {
    pub letters: Vec<BraidLetter>,
}

impl BraidWord {
    pub fn new(letters: Vec<BraidLetter>) -> Self {
        BraidWord { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord::new(self.letters.iter().rev().map(|l| l.inverse()).collect())
    }
}

impl FromIterator<BraidLetter> for BraidWord {
    fn from_iter<I: IntoIterator<Item = BraidLetter>>(iter: I) -> Self {
        BraidWord::new(iter.into_iter().collect())
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// An element of `ℤ⁴ ⋊ B₄` as seen on `K₀`: shift parities and a braid word.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupElement {
    /// Shift of each entry mod 2; 1 negates the class.
    #[serde(deserialize_with = "shifts_mod_two")]
    pub signs: [u8; 4],
    pub word: BraidWord,
}

fn shifts_mod_two<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<[u8; 4], D::Error> {
    let raw = <[i64; 4]>::deserialize(d)?;
    Ok(raw.map(|s| s.rem_euclid(2) as u8))
}

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement::default()
    }

    pub fn from_word(word: BraidWord) -> Self {
        GroupElement {
            signs: [0; 4],
            word,
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.signs;
        write!(f, "signs ({a},{b},{c},{d}) word {}", self.word)
    }
}

/// `G[i][j] = χ(v_i, v_j)`.
pub fn gram(s: SurfaceParams, coll: &Collection4) -> Result<Gram> {
    let mut g = [[0; 4]; 4];
    for (i, row) in g.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = euler_form(s, coll.classes[i], coll.classes[j])?;
        }
    }
    Ok(g)
}

/// Unit diagonal and vanishing lower triangle of the Gram matrix.
pub fn is_exceptional_collection(s: SurfaceParams, coll: &Collection4) -> bool {
    let Ok(g) = gram(s, coll) else {
        return false;
    };
    (0..4).all(|i| g[i][i] == 1 && (0..i).all(|j| g[i][j] == 0))
}

/// `(O, O(F), O(C+2F), O(C+3F))` on 𝔽₂.
pub fn standard_collection() -> Collection4 {
    let s = SurfaceParams::F2;
    let (f, c) = (DivisorClass::F, DivisorClass::C);
    Collection4::new([
        K0Class::line_bundle(s, DivisorClass::ZERO),
        K0Class::line_bundle(s, f),
        K0Class::line_bundle(s, c + 2 * f),
        K0Class::line_bundle(s, c + 3 * f),
    ])
}

fn mutate_unchecked(
    s: SurfaceParams,
    classes: &[K0Class; 4],
    letter: BraidLetter,
) -> Result<[K0Class; 4]> {
    let k = usize::from(letter.position) - 1;
    let (a, b) = (classes[k], classes[k + 1]);
    let chi = euler_form(s, a, b)?;
    let mut out = *classes;
    if letter.left {
        out[k] = b.checked_add_scaled(-chi, a)?;
        out[k + 1] = a;
    } else {
        out[k] = b;
        out[k + 1] = a.checked_add_scaled(-chi, b)?;
    }
    Ok(out)
}

/// Mutation of the pair at positions `k, k+1` (1-based); `sign = +1` is
/// left, `−1` right.
pub fn mutate(s: SurfaceParams, coll: &Collection4, k: u8, sign: i8) -> Result<Collection4> {
    let letter = BraidLetter::new(k, sign)?;
    if !is_exceptional_collection(s, coll) {
        return Err(Error::NotExceptionalCollection);
    }
    mutate_unchecked(s, &coll.classes, letter).map(Collection4::new)
}

pub fn apply_word(s: SurfaceParams, coll: &Collection4, word: &BraidWord) -> Result<Collection4> {
    word.letters
        .iter()
        .try_fold(*coll, |c, l| mutate(s, &c, l.position, l.sign()))
}

/// Applies the braid word, then negates entries with odd shift.
pub fn apply_group_element(
    s: SurfaceParams,
    coll: &Collection4,
    g: &GroupElement,
) -> Result<Collection4> {
    let mut out = apply_word(s, coll, &g.word)?;
    for (v, &shift) in out.classes.iter_mut().zip(&g.signs) {
        if shift % 2 == 1 {
            *v = v.checked_neg()?;
        }
    }
    Ok(out)
}

type State = [K0Class; 4];

fn canonical(c: &State) -> State {
    c.map(K0Class::canonical_sign)
}

/// Breadth-first search for `g` with `apply_group_element(source, g) == target`.
///
/// Mutations commute with sign changes up to moving the signs around, so
/// the search runs on sign-canonical quadruples and only recovers the
/// signs once a braid word is found. Each level is expanded in parallel and
/// merged into the visited map in frontier order, so results are
/// deterministic. [`Error::NotFound`] means only that nothing turned up
/// within `max_depth` braid letters.
pub fn orbit_search(
    s: SurfaceParams,
    source: &Collection4,
    target: &Collection4,
    max_depth: usize,
) -> Result<GroupElement> {
    if !is_exceptional_collection(s, source) || !is_exceptional_collection(s, target) {
        return Err(Error::NotExceptionalCollection);
    }
    let goal = canonical(&target.classes);
    let start = canonical(&source.classes);
    // state -> (parent, letter) ; the root has no parent.
    let mut visited: HashMap<State, Option<(State, BraidLetter)>> = HashMap::new();
    visited.insert(start, None);
    if start == goal {
        if let Some(g) = certificate(s, source, target, &visited, start) {
            return Ok(g);
        }
    }
    let mut frontier = vec![start];
    for _ in 0..max_depth {
        let children: Vec<Vec<(State, State, BraidLetter)>> = frontier
            .par_iter()
            .map(|parent| {
                BraidLetter::all()
                    .into_iter()
                    .filter_map(|l| {
                        let child = mutate_unchecked(s, parent, l).ok()?;
                        Some((canonical(&child), *parent, l))
                    })
                    .collect()
            })
            .collect();
        let mut next = Vec::new();
        for (child, parent, letter) in children.into_iter().flatten() {
            if visited.contains_key(&child) {
                continue;
            }
            visited.insert(child, Some((parent, letter)));
            if child == goal {
                if let Some(g) = certificate(s, source, target, &visited, child) {
                    return Ok(g);
                }
            }
            next.push(child);
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Err(Error::NotFound(max_depth))
}

fn certificate(
    s: SurfaceParams,
    source: &Collection4,
    target: &Collection4,
    visited: &HashMap<State, Option<(State, BraidLetter)>>,
    end: State,
) -> Option<GroupElement> {
    let mut letters = Vec::new();
    let mut cur = end;
    while let Some(Some((parent, letter))) = visited.get(&cur) {
        letters.push(*letter);
        cur = *parent;
    }
    letters.reverse();
    let word = BraidWord::new(letters);
    let reached = apply_word(s, source, &word).ok()?;
    let mut signs = [0u8; 4];
    for (j, (got, want)) in reached.classes.iter().zip(&target.classes).enumerate() {
        if got != want {
            signs[j] = 1;
        }
    }
    let g = GroupElement { signs, word };
    (apply_group_element(s, source, &g).ok()? == *target).then_some(g)
}

/// Outcome of the `σ₂²` stabilizer check for `(O, O(0,1), O(1,0), O(1,1))` on 𝔽₀.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sigma23Report {
    pub collection: Collection4,
    pub collection_is_exceptional: bool,
    /// `χ(O(0,1), O(1,0))` and `χ(O(1,0), O(0,1))`.
    pub chi_forward: i64,
    pub chi_backward: i64,
    /// Cohomology of `O(F − C)` and `O(C − F)`.
    pub cohomology_forward: crate::surface::CohomologyDims,
    pub cohomology_backward: crate::surface::CohomologyDims,
    pub double_mutation: Collection4,
    pub fixed: bool,
    pub passed: bool,
}

/// On 𝔽₀ = ℙ¹ × ℙ¹, `O(a, b)` is `O(aF + bC)`.
pub fn sigma23_square_check() -> Result<Sigma23Report> {
    let s = SurfaceParams::F0;
    let (f, c) = (DivisorClass::F, DivisorClass::C);
    let lb = |d| K0Class::line_bundle(s, d);
    let collection = Collection4::new([lb(DivisorClass::ZERO), lb(c), lb(f), lb(f + c)]);
    let (mid_a, mid_b) = (collection.classes[1], collection.classes[2]);
    let chi_forward = euler_form(s, mid_a, mid_b)?;
    let chi_backward = euler_form(s, mid_b, mid_a)?;
    let cohomology_forward = s.line_bundle_cohomology(f - c);
    let cohomology_backward = s.line_bundle_cohomology(c - f);
    let once = mutate(s, &collection, 2, 1)?;
    let double_mutation = mutate(s, &once, 2, 1)?;
    let fixed = double_mutation == collection;
    let vanishes =
        |h: crate::surface::CohomologyDims| h.h0 == 0 && h.h2 == 0 && h.euler_char() == 0;
    let collection_is_exceptional = is_exceptional_collection(s, &collection);
    let passed = collection_is_exceptional
        && chi_forward == 0
        && chi_backward == 0
        && vanishes(cohomology_forward)
        && vanishes(cohomology_backward)
        && fixed;
    Ok(Sigma23Report {
        collection,
        collection_is_exceptional,
        chi_forward,
        chi_backward,
        cohomology_forward,
        cohomology_backward,
        double_mutation,
        fixed,
        passed,
    })
}
