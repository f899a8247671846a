use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("precision must be at least 64 bits (got {0})")]
    PrecisionTooLow(u32),
    #[error("divisor enclosure straddles zero")]
    DivisorStraddlesZero,
    #[error("fractional power of a base that is not certainly positive")]
    NegativeBaseEvenRoot,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported argument: {0}")]
    UnsupportedArgument(String),

    #[error("nome enclosure is not strictly inside the unit disc")]
    NotConvergent,
    #[error("a product factor encloses zero")]
    FactorNearZero,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("division by an enclosure of zero")]
    DivisionByZeroEnclosure,
    #[error("fractional power of an enclosure that is not certainly positive")]
    NegativeEvenRootEnclosure,
    #[error("gamma argument outside (0, 2]: {0}")]
    UnsupportedGammaArgument(String),
    #[error("unknown catalog id `{0}`")]
    UnknownId(String),
    #[error("evaluating `{id}`: {source}")]
    Evaluation { id: String, source: Box<Error> },

    #[error("neither quadratic root matches the series ratio")]
    NoRootMatches,
    #[error("both quadratic roots match the series ratio")]
    BothRootsMatch,
    #[error("cubic root enclosures are not separated")]
    RootsNotSeparable,
    #[error("cubic has non-real roots")]
    ComplexRootsDetected,
    #[error("no root permutation reproduces u, v, w")]
    NoPermutationMatches,
    #[error("more than one root permutation reproduces u, v, w")]
    MultiplePermutationsMatch,

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
