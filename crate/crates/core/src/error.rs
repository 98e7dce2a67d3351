use thiserror::Error;

/// Errors produced by the library.
///
/// `InvariantViolation` is the only variant that signals a bug in this crate
/// rather than bad input; the CLI maps it to exit code 1.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degree k[{index}] = {value} is negative")]
    NegativeDegree { index: usize, value: i64 },

    #[error("edge size r = {0} is invalid (need r >= 2)")]
    InvalidR(i64),

    #[error("r = {r} does not divide the degree sum M = {total}")]
    NotDivisible { total: u64, r: u64 },

    #[error("degree sum M = {0} is too small for threshold quantities (need M >= 2)")]
    DegenerateM(u64),

    #[error("right vertex e{vertex} has degree {degree}, expected r = {r}")]
    WrongRightDegree { vertex: usize, degree: usize, r: usize },

    #[error("edge {edge} contains a repeated vertex (loop)")]
    LoopPresent { edge: usize },

    #[error("graph does not conform to the degree sequence: {0}")]
    NonConforming(String),

    #[error("instance exceeds the search guard: {0}")]
    TooLarge(String),

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),

    #[error("precondition failed: {}", .0.join("; "))]
    PreconditionFailed(Vec<String>),

    #[error("not a valid switching: {0}")]
    NotASwitching(String),

    #[error("graph has no 4-cycle")]
    NoFourCycle,

    #[error("pairing sampler gave up after {0} rejected pairings")]
    RetryLimitExceeded(u64),

    #[error("switching sampler exhausted its step budget ({0} steps)")]
    StepLimit(u64),

    #[error("no conforming graph exists for this degree sequence")]
    EmptyClass,

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
