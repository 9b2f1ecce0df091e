use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the workbench can report. Each variant maps to a stable
/// numeric code shared by the CLI exit status and the C ABI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not full rank: {0}")]
    NotFullRank(String),
    #[error("kernel complement is trivial")]
    TrivialComplement,
    #[error("A is not allowed to have a zero column (column {0})")]
    ZeroColumn(usize),
    #[error("columns do not lie in an open half-space")]
    NotPointed,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not a theta operator: term x^{mu:?} d^{nu:?} has mu != nu")]
    NotThetaOperator { mu: Vec<u32>, nu: Vec<u32> },
    #[error("inadmissible term order: {0}")]
    InadmissibleOrder(String),
    #[error("span of B is not mixed")]
    NotMixed,
    #[error("decomposition is not toral")]
    NotToral,
    #[error("unsupported character: sat(ZB_J) != ZB_J (index {0})")]
    UnsupportedCharacter(String),
    #[error("recurrence denominator vanished: {0}")]
    DenominatorVanished(String),
    #[error("recurrence is not path independent: {0}")]
    CycleInconsistent(String),
    #[error("falling factorial vanished at exponent {0}")]
    ZeroFactorial(String),
    #[error("incompatible recurrences: {0}")]
    IncompatibleRecurrences(String),
    #[error("lattice collision: {0}")]
    LatticeCollision(String),
    #[error("inconsistent coefficients on M-subgraph: {0}")]
    Inconsistent(String),
    #[error("component is not bounded")]
    Unbounded,
    #[error("operator terms fall into several cosets of the series lattice")]
    MixedShiftClasses,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Stable numeric code (never 0, never 1; 1 is reserved for failed verdicts).
    pub fn code(&self) -> i32 {
        match self {
            Error::Json(_) | Error::Parse(_) | Error::Io(_) => 3,
            Error::DimensionMismatch(_) => 4,
            Error::UnsupportedCharacter(_) => 5,
            Error::NotFullRank(_) | Error::TrivialComplement => 6,
            Error::ZeroColumn(_) | Error::NotPointed | Error::NotMixed => 7,
            Error::NotThetaOperator { .. } | Error::InadmissibleOrder(_) | Error::MixedShiftClasses => 8,
            Error::NotToral | Error::Unbounded | Error::Inconsistent(_) => 9,
            Error::DenominatorVanished(_)
            | Error::CycleInconsistent(_)
            | Error::ZeroFactorial(_)
            | Error::IncompatibleRecurrences(_)
            | Error::LatticeCollision(_) => 10,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
