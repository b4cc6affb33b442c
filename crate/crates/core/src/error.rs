use crate::k0::K0Class;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Domain errors. Every variant corresponds to a mathematical obstruction
/// or a violated precondition; none of them indicate malformed input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("class {0} violates ch2_x2 ≡ c1·c1 (mod 2)")]
    ParityViolation(K0Class),

    #[error("integer overflow while evaluating {0}")]
    Overflow(&'static str),

    #[error("no integral exceptional class with rank {rank} and c1 = {c1}")]
    NonIntegral { rank: i64, c1: crate::DivisorClass },

    #[error("class {class} is not numerically exceptional (χ(v,v) = {chi})")]
    NotExceptional { class: K0Class, chi: i64 },

    #[error("class {0} has rank zero")]
    ZeroRank(K0Class),

    #[error("class {0} has non-positive rank")]
    NonpositiveRank(K0Class),

    #[error("operation requires n = 2, got n = {0}")]
    RequiresF2(u32),

    #[error("ext table needs t ≥ 1 and f ≥ 1, got t = {t}, f = {f}")]
    InvalidTableParams { t: i64, f: i64 },

    #[error("tower entry at i = {i} is {kind}, expected a sheaf with torsion")]
    NotSheafWithTorsion { i: i64, kind: &'static str },

    #[error("ext table and Euler form disagree on χ({pair}): table {table}, form {form}")]
    Mismatch {
        pair: &'static str,
        table: i64,
        form: i64,
    },

    #[error("collection is not numerically exceptional")]
    NotExceptionalCollection,

    #[error("braid position {0} out of range 1..=3")]
    InvalidPosition(u8),

    #[error("no group element found within depth {0} (inconclusive)")]
    NotFound(usize),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ParityViolation(_) => "ParityViolation",
            Error::Overflow(_) => "Overflow",
            Error::NonIntegral { .. } => "NonIntegral",
            Error::NotExceptional { .. } => "NotExceptional",
            Error::ZeroRank(_) => "ZeroRank",
            Error::NonpositiveRank(_) => "NonpositiveRank",
            Error::RequiresF2(_) => "RequiresF2",
            Error::InvalidTableParams { .. } => "InvalidTableParams",
            Error::NotSheafWithTorsion { .. } => "NotSheafWithTorsion",
            Error::Mismatch { .. } => "Mismatch",
            Error::NotExceptionalCollection => "NotExceptionalCollection",
            Error::InvalidPosition(_) => "InvalidPosition",
            Error::NotFound(_) => "NotFound",
        }
    }
}
