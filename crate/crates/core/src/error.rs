use num_bigint::BigInt;
use thiserror::Error;

/// Everything that can go wrong in the exact constructions.
///
/// Each variant carries a stable identifier (see [`Error::id`]) that the
/// command-line front end emits in its machine-readable error objects.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("inverted enclosure: lower bound {lo} exceeds upper bound {hi}")]
    InvertedEnclosure { lo: String, hi: String },
    #[error("sequence is empty")]
    EmptySequence,
    #[error("term n_1 = {value} is not a positive integer")]
    NonPositiveTerm { value: BigInt },
    #[error("growth law fails at k = {k}: n_k = {term} is not greater than 2^{k} * n_(k-1) = {bound}")]
    GrowthViolation { k: usize, term: BigInt, bound: BigInt },
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("depth {depth} is below the required minimum {required}")]
    InsufficientDepth { depth: usize, required: usize },
    #[error("index s = {s} lies outside the certified range 2..={max} for depth {depth}")]
    InsufficientDepthForS { s: usize, depth: usize, max: usize },
    #[error("target mu = {mu}, nu = {nu} is not a subdivision 1 <= mu <= 2*nu of [0, 2]")]
    BadTarget { mu: u64, nu: u64 },
    #[error("no term of the prefix exceeds 6*nu = {bound}")]
    PrefixTooShort { bound: BigInt },
    #[error("no odd multiple of 1/{nu1} falls in the middle third")]
    NoOddInThird { nu1: BigInt },
    #[error("size at index {index} is not positive")]
    NonPositiveSize { index: usize },
    #[error("ladder is not strictly decreasing and positive at level {level}")]
    BadLadder { level: usize },
    #[error("requested {requested} sieve levels but the ladder has {available}")]
    LadderTooShort { requested: usize, available: usize },
    #[error("selector is invalid at position {position}: {reason}")]
    BadSelector { position: usize, reason: String },
    #[error("frequency {n} appears more than once in the series")]
    DuplicateFrequency { n: u64 },
    #[error("frequency must be at least 1")]
    ZeroFrequency,
    #[error("grid of {points} points is below the anti-aliasing floor of {required}")]
    GridTooCoarse { points: usize, required: usize },
    #[error("interval ({alpha}, {beta}) is empty or not finite")]
    BadInterval { alpha: f64, beta: f64 },
    #[error("cannot parse {input:?} as a rational number")]
    ParseRational { input: String },
}

impl Error {
    /// Stable kebab-case identifier of the error kind.
    pub fn id(&self) -> &'static str {
        match self {
            Error::ZeroDenominator => "zero-denominator",
            Error::InvertedEnclosure { .. } => "inverted-enclosure",
            Error::EmptySequence => "empty-sequence",
            Error::NonPositiveTerm { .. } => "non-positive-term",
            Error::GrowthViolation { .. } => "growth-violation",
            Error::InvalidParameter { .. } => "invalid-parameter",
            Error::InsufficientDepth { .. } => "insufficient-depth",
            Error::InsufficientDepthForS { .. } => "insufficient-depth-for-s",
            Error::BadTarget { .. } => "bad-target",
            Error::PrefixTooShort { .. } => "prefix-too-short",
            Error::NoOddInThird { .. } => "no-odd-in-third",
            Error::NonPositiveSize { .. } => "non-positive-size",
            Error::BadLadder { .. } => "bad-ladder",
            Error::LadderTooShort { .. } => "ladder-too-short",
            Error::BadSelector { .. } => "bad-selector",
            Error::DuplicateFrequency { .. } => "duplicate-frequency",
            Error::ZeroFrequency => "zero-frequency",
            Error::GridTooCoarse { .. } => "grid-too-coarse",
            Error::BadInterval { .. } => "bad-interval",
            Error::ParseRational { .. } => "parse-rational",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
