use thiserror::Error;

/// Errors produced while building rings or running the deciders.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("{line}:{col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },

    #[error("{line}:{col}: unknown constructor `{kind}`")]
    UnknownKind {
        line: usize,
        col: usize,
        kind: String,
    },

    #[error("{line}:{col}: unknown identifier `{name}`")]
    UnknownIdentifier {
        line: usize,
        col: usize,
        name: String,
    },

    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(i64),

    #[error("gf characteristic {0} is not prime")]
    NotPrime(u32),

    #[error("gf polynomial {poly:?} is not irreducible of degree {degree} over F_{p}")]
    Reducible { p: u32, degree: u32, poly: Vec<u32> },

    #[error("invalid element literal `{literal}`: {reason}")]
    BadLiteral { literal: String, reason: String },

    #[error("module is over a different ring than the extension base")]
    ModuleBaseMismatch,

    #[error("rings do not match")]
    RingMismatch,

    #[error("the ideal is the whole ring")]
    UnitIdeal,

    #[error("ideal is not maximal")]
    NotMaximal,

    #[error("ring is not local")]
    NotLocal,

    #[error("a nonzero module is required here")]
    ZeroModule,

    #[error("ring of order {order} exceeds the bound {bound}")]
    BoundExceeded { order: usize, bound: usize },

    #[error("search space of {candidates} candidates exceeds the cap {cap}")]
    SearchCapExceeded { candidates: u128, cap: u64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
