//! JSON request payloads accepted on stdin, and their decoders.
//!
//! Every decoder validates magnitudes so that downstream arithmetic stays
//! inside `i64`; anything outside the documented ranges is an input error
//! (exit code 1), not a domain error.

use crate::collections::{BraidWord, Collection4, GroupElement};
use crate::k0::{EnumerationBox, K0Class};
use crate::surface::DivisorClass;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest accepted absolute value of any class or divisor coordinate.
pub const MAX_COORD: i64 = 1_000_000;
/// Largest accepted surface index `n`.
pub const MAX_N: u32 = 10_000;
/// Largest accepted orbit-search depth.
pub const MAX_DEPTH: usize = 8;
/// Largest accepted `--tower-max`.
pub const MAX_TOWER: i64 = 10_000;
/// Largest accepted `t`, `f` in `ext-table`.
pub const MAX_TABLE_PARAM: i64 = 1_000_000_000_000;
/// Largest accepted braid word length in `mutate`.
pub const MAX_WORD: usize = 64;
/// Largest accepted number of lattice cells scanned by `enumerate`.
pub const MAX_CELLS: i128 = 200_000;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("invalid JSON payload: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    OutOfRange(String),
}

impl InputError {
    pub fn kind(&self) -> &'static str {
        match self {
            InputError::Json(_) => "ParseError",
            InputError::OutOfRange(_) => "OutOfRange",
        }
    }
}

fn check_coord(what: &str, v: i64) -> Result<(), InputError> {
    if v.unsigned_abs() > MAX_COORD as u64 {
        return Err(InputError::OutOfRange(format!(
            "{what} = {v} exceeds the supported magnitude {MAX_COORD}"
        )));
    }
    Ok(())
}

pub fn validate_divisor(d: &DivisorClass) -> Result<(), InputError> {
    check_coord("f", d.x)?;
    check_coord("c", d.y)
}

pub fn validate_class(v: &K0Class) -> Result<(), InputError> {
    check_coord("rank", v.rank)?;
    validate_divisor(&v.c1)?;
    check_coord("ch2_x2", v.ch2_x2)
}

pub fn validate_collection(c: &Collection4) -> Result<(), InputError> {
    c.classes.iter().try_for_each(validate_class)
}

pub fn validate_n(n: u32) -> Result<(), InputError> {
    if n > MAX_N {
        return Err(InputError::OutOfRange(format!("n = {n} exceeds {MAX_N}")));
    }
    Ok(())
}

pub fn decode_divisor(input: &str) -> Result<DivisorClass, InputError> {
    let d: DivisorClass = serde_json::from_str(input)?;
    validate_divisor(&d)?;
    Ok(d)
}

pub fn decode_class(input: &str) -> Result<K0Class, InputError> {
    let v: K0Class = serde_json::from_str(input)?;
    validate_class(&v)?;
    Ok(v)
}

pub fn decode_collection(input: &str) -> Result<Collection4, InputError> {
    let c: Collection4 = serde_json::from_str(input)?;
    validate_collection(&c)?;
    Ok(c)
}

pub fn decode_group_element(input: &str) -> Result<GroupElement, InputError> {
    let g: GroupElement = serde_json::from_str(input)?;
    validate_word(&g.word)?;
    Ok(g)
}

fn validate_word(w: &BraidWord) -> Result<(), InputError> {
    if w.len() > MAX_WORD {
        return Err(InputError::OutOfRange(format!(
            "braid word of length {} exceeds {MAX_WORD}",
            w.len()
        )));
    }
    Ok(())
}

/// `euler`: `{"v": K0Class, "w": K0Class}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EulerRequest {
    pub v: K0Class,
    pub w: K0Class,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TwistDirection {
    #[default]
    Twist,
    Inverse,
}

/// `twist`: `{"a": int, "class": K0Class, "direction": "twist" | "inverse"}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistRequest {
    pub a: i64,
    pub class: K0Class,
    #[serde(default)]
    pub direction: TwistDirection,
}

/// `ext-table`: `{"t": int, "f": int}`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtTableRequest {
    pub t: i64,
    pub f: i64,
}

/// `mutate`: `{"collection": [4 × K0Class], "word": [[k, ±1], ...], "signs": [4 ints]?}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MutateRequest {
    pub collection: Collection4,
    pub word: BraidWord,
    #[serde(default)]
    pub signs: [i64; 4],
}

impl MutateRequest {
    pub fn element(&self) -> GroupElement {
        GroupElement {
            signs: self.signs.map(|s| s.rem_euclid(2) as u8),
            word: self.word.clone(),
        }
    }
}

/// `orbit-search`: `{"source": [...], "target": [...]?}`; the target
/// defaults to the standard collection on 𝔽₂.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitSearchRequest {
    pub source: Collection4,
    #[serde(default)]
    pub target: Option<Collection4>,
}

/// Parsed stdin payload, one variant per subcommand that reads input.
#[derive(Debug, Clone)]
pub enum Request {
    Euler(EulerRequest),
    Cohom(DivisorClass),
    Twist(TwistRequest),
    Tower(K0Class),
    Classify(K0Class),
    Profile(K0Class),
    ExtTable(ExtTableRequest),
    Mutate(MutateRequest),
    OrbitSearch(OrbitSearchRequest),
    Enumerate(EnumerationBox),
    Verify,
}

fn validate_box(b: &EnumerationBox) -> Result<(), InputError> {
    let ranges = [Some(b.rank), Some(b.x), Some(b.y), b.ch2_x2];
    let mut cells: i128 = 1;
    for (lo, hi) in ranges.into_iter().flatten() {
        check_coord("bound", lo)?;
        check_coord("bound", hi)?;
        if lo > hi {
            return Err(InputError::OutOfRange(format!("empty range [{lo}, {hi}]")));
        }
        cells *= i128::from(hi - lo + 1);
    }
    if cells > MAX_CELLS {
        return Err(InputError::OutOfRange(format!(
            "enumeration box has {cells} cells, limit is {MAX_CELLS}"
        )));
    }
    Ok(())
}

/// Decodes the stdin payload for `sub`.
pub fn decode_request(sub: super::Subcommand, input: &str) -> Result<Request, InputError> {
    use super::Subcommand as S;
    Ok(match sub {
        S::Euler => {
            let r: EulerRequest = serde_json::from_str(input)?;
            validate_class(&r.v)?;
            validate_class(&r.w)?;
            Request::Euler(r)
        }
        S::Cohom => Request::Cohom(decode_divisor(input)?),
        S::Twist => {
            let r: TwistRequest = serde_json::from_str(input)?;
            check_coord("a", r.a)?;
            validate_class(&r.class)?;
            Request::Twist(r)
        }
        S::Tower => Request::Tower(decode_class(input)?),
        S::Classify => Request::Classify(decode_class(input)?),
        S::Profile => Request::Profile(decode_class(input)?),
        S::ExtTable => {
            let r: ExtTableRequest = serde_json::from_str(input)?;
            for (name, v) in [("t", r.t), ("f", r.f)] {
                if v.unsigned_abs() > MAX_TABLE_PARAM as u64 {
                    return Err(InputError::OutOfRange(format!(
                        "{name} = {v} exceeds {MAX_TABLE_PARAM}"
                    )));
                }
            }
            Request::ExtTable(r)
        }
        S::Mutate => {
            let r: MutateRequest = serde_json::from_str(input)?;
            validate_collection(&r.collection)?;
            validate_word(&r.word)?;
            Request::Mutate(r)
        }
        S::OrbitSearch => {
            let r: OrbitSearchRequest = serde_json::from_str(input)?;
            validate_collection(&r.source)?;
            if let Some(t) = &r.target {
                validate_collection(t)?;
            }
            Request::OrbitSearch(r)
        }
        S::Enumerate => {
            let b: EnumerationBox = serde_json::from_str(input)?;
            validate_box(&b)?;
            Request::Enumerate(b)
        }
        S::Verify => Request::Verify,
    })
}
