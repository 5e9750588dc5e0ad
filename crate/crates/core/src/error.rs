use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{what} of size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("multiplication rule does not define a group: {0}")]
    NonGroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("not a {p}-group: element of order {order}")]
    NotPGroup { p: u64, order: usize },
    #[error("group is not nilpotent")]
    NotNilpotent,
    #[error("map is not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("map is not a group action: {0}")]
    NotAction(String),
    #[error("syntax error at {location}: {message}")]
    Syntax { location: String, message: String },
    #[error("index discipline violated in {relation}: {message}")]
    IndexDiscipline { relation: String, message: String },
    #[error("relative order of {generator} is {order}; must be at least 2")]
    BadOrder { generator: String, order: i64 },
    #[error("collection exceeded {0} steps")]
    NonTermination(usize),
    #[error("presentation is inconsistent ({0} failing overlaps)")]
    Inconsistent(usize),
    #[error("tails module has free rank {found}, expected {expected}")]
    RankMismatch { expected: usize, found: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("no complement: {0}")]
    NoComplement(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
