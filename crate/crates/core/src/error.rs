use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero has no primitive part")]
    ZeroPrimitive,
    #[error("specialization pole")]
    SpecializationPole,
    #[error("division by zero")]
    DivisionByZero,
    #[error("incompatible cyclotomic fields: conductors {0} and {1}")]
    IncompatibleFields(u8, u8),
    #[error("invalid composition: {0}")]
    InvalidComposition(String),
    #[error("negative index {0}")]
    NegativeIndex(i64),
    #[error("invalid exponent vector: {0}")]
    InvalidEps(String),
    #[error("invalid sequence spec: {0}")]
    InvalidSpec(String),
    #[error("zero weight unsupported")]
    ZeroWeight,
    #[error("dimension bound violated: no kernel up to order {0}")]
    DimensionBound(usize),
    #[error("resource guard: {0}")]
    ResourceGuard(String),
    #[error("verification requires numeric weights")]
    SymbolicVerification,
    #[error("need more terms: have {have}, need {need}")]
    NeedMoreTerms { have: usize, need: usize },
    #[error("divisor does not divide combination (coefficient of a(n-{index}))")]
    InexactDivision { index: usize },
    #[error("series too short: have {have}, need {need}")]
    SeriesTooShort { have: usize, need: usize },
    #[error("invalid stage {stage} for k = {k}")]
    InvalidStage { stage: usize, k: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
