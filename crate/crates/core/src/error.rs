use thiserror::Error;

/// Errors raised by the algebra engine and the scenario checks.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("rank mismatch: expected rank {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("variable count mismatch: expected {expected}, found {found}")]
    VariableMismatch { expected: usize, found: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid monomial order: {0}")]
    InvalidOrder(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("free resolution did not terminate within {0} steps")]
    ResolutionTooLong(usize),

    #[error("schema violation at {location}: {message}")]
    Schema { location: String, message: String },

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("perversity undefined at dimension {0}")]
    MissingPerversity(i64),

    #[error("perversity hypothesis violated: {0}")]
    PerversityHypothesis(String),

    #[error("cohomology in degree {degree} of `{complex}` has non-stratified support")]
    NonStratified { complex: String, degree: i64 },

    #[error("missing cutting data for stratum `{stratum}`: need {needed} functions, have {have}")]
    MissingCutting {
        stratum: String,
        needed: usize,
        have: usize,
    },

    #[error("family coverage violation: no member meets the support of H^{degree}")]
    CoverageViolation { degree: i64 },

    #[error("internal consistency failure: {0}")]
    RouteDisagreement(String),

    #[error("construction failed at step {step}: {condition}")]
    ConstructionFailed { step: i64, condition: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
