use alloc::string::String;
use core::fmt;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two sign vectors (or a vector and a ground set) disagree in length.
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    /// Packed sign vectors hold at most 64 coordinates.
    GroundSetTooLarge(usize),
    DuplicateLabel(String),
    UnknownLabel(String),
    InvalidSign(char),
    /// A sign vector that is required to be a tope of the matroid is not.
    NotATope(String),
    /// The input does not satisfy the oriented matroid axioms.
    Axiom(String),
    /// Matrix does not have full row rank.
    RankDeficient {
        rows: usize,
        rank: usize,
    },
    /// A poset relation failed reflexivity, antisymmetry or transitivity.
    NotAPoset(String),
    NoUniqueMaximum,
    NoUniqueMinimum,
    /// An element map is not order-preserving.
    NotOrderPreserving(String),
    /// A vertex map does not send simplices to simplices.
    NotSimplicial(String),
    Disconnected,
    EmptyInput(&'static str),
    /// The chosen element is a loop (zero in every covector).
    Loop(String),
    /// The join is only defined for the argument shapes that arise in the product map.
    JoinUndefined,
    /// Input outside the supported size regime.
    Unsupported(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected} coordinates, found {found}")
            }
            Error::GroundSetTooLarge(n) => {
                write!(f, "ground set has {n} elements; at most 64 are supported")
            }
            Error::DuplicateLabel(l) => write!(f, "duplicate ground-set label {l:?}"),
            Error::UnknownLabel(l) => write!(f, "unknown ground-set label {l:?}"),
            Error::InvalidSign(c) => write!(f, "invalid sign character {c:?} (expected '+', '-' or '0')"),
            Error::NotATope(v) => write!(f, "{v} is not a tope"),
            Error::Axiom(msg) => write!(f, "axiom violation: {msg}"),
            Error::RankDeficient { rows, rank } => {
                write!(f, "matrix with {rows} rows has rank {rank}")
            }
            Error::NotAPoset(msg) => write!(f, "relation is not a partial order: {msg}"),
            Error::NoUniqueMaximum => f.write_str("poset has no unique maximal element"),
            Error::NoUniqueMinimum => f.write_str("poset has no unique minimal element"),
            Error::NotOrderPreserving(msg) => write!(f, "map is not order-preserving: {msg}"),
            Error::NotSimplicial(msg) => write!(f, "vertex map is not simplicial: {msg}"),
            Error::Disconnected => f.write_str("complex is disconnected"),
            Error::EmptyInput(what) => write!(f, "empty input: {what}"),
            Error::Loop(l) => write!(f, "element {l:?} is a loop"),
            Error::JoinUndefined => f.write_str("join undefined outside the product map's cases"),
            Error::Unsupported(msg) => write!(f, "unsupported input: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
