use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("width mismatch: expected {expected}, found {found}")]
    WidthMismatch { expected: usize, found: usize },
    #[error("binary vectors must have at least one coordinate")]
    ZeroWidth,
    #[error("bad bit string: {0}")]
    BadBits(String),
    #[error("switch times must be strictly increasing ({previous} then {next})")]
    NonIncreasingTimes { previous: Rat, next: Rat },
    #[error("bad cycle pattern: {0}")]
    BadPattern(String),
    #[error("T must be positive (got {0})")]
    NonPositivePeriod(Rat),
    #[error("value is not in the orbit of the signal")]
    NotInOrbit,
    #[error("the signal is constant")]
    ConstantSignal,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("empty word")]
    EmptyWord,
}
