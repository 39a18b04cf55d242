use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("not a permutation: {0}")]
    InvalidPermutation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("empty generating set")]
    EmptyGenerators,

    #[error("group closure exceeds the size cap of {cap} elements")]
    SizeCapExceeded { cap: usize },

    #[error("operands belong to different parent groups")]
    ParentMismatch,

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("p must be prime (got {0})")]
    NotPrime(usize),

    #[error("p = 2 is the Klein case; use the klein model instead")]
    KleinCase,

    #[error("p = {p} exceeds the configured maximum {max}")]
    PrimeTooLarge { p: usize, max: usize },

    #[error("beta = {beta} outside the supported range {min}..={max}")]
    BetaOutOfRange { beta: usize, min: usize, max: usize },

    #[error("no valid branch datum for p = {p}, beta = {beta}")]
    NoBranchDatum { p: usize, beta: usize },

    #[error("degenerate Klein datum: beta_r = {beta_r}, beta_rs = {beta_rs}")]
    DegenerateKlein { beta_r: usize, beta_rs: usize },

    #[error("parameters outside the admissible range: {0}")]
    NegativeGenus(String),

    #[error("P-orbit of size {size} on maximal subgroups of N (expected {p})")]
    OrbitSize { size: usize, p: usize },

    #[error("induction of the trivial character is reducible")]
    TrivialInduction,

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by bad user input rather than a broken computation.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Parse(_)
                | Error::InvalidPermutation(_)
                | Error::DegreeMismatch { .. }
                | Error::NotPrime(_)
                | Error::KleinCase
                | Error::PrimeTooLarge { .. }
                | Error::BetaOutOfRange { .. }
                | Error::DegenerateKlein { .. }
                | Error::NegativeGenus(_)
                | Error::NoBranchDatum { .. }
                | Error::IndexOutOfRange { .. }
        )
    }
}
