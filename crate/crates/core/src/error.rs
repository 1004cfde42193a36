use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("position {position} is outside the period 0..{period}")]
    PositionOutOfRange { position: usize, period: usize },

    #[error("position {0} appears more than once")]
    DuplicatePosition(usize),

    #[error("sequence length {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("period exponent {0} is too large")]
    PeriodTooLarge(u32),

    #[error("sequences have different periods ({left} vs {right})")]
    PeriodMismatch { left: usize, right: usize },

    #[error("k = {k} is outside 0..={max}")]
    KOutOfRange { k: usize, max: usize },

    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("brute-force enumeration needs {required} pattern evaluations, above the budget of {budget}")]
    EnumerationBudget { required: u128, budget: u64 },

    #[error("sequence has odd Hamming weight; strip one impulse before decomposing")]
    OddWeight,

    #[error("operation is undefined for the zero sequence")]
    ZeroSequence,

    #[error("invalid cube: {0}")]
    InvalidCube(String),

    #[error("cube peeling found no subset reaching complexity {lc}")]
    DecompositionFailed { lc: usize },

    #[error("superposed sequence has complexity {added} which is not below {base}")]
    ComplexityNotBelow { added: usize, base: usize },

    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("element {value} is not reduced modulo {p}")]
    ElementOutOfField { value: u32, p: u32 },

    #[error("sequences are over different fields or periods")]
    FieldMismatch,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("cannot parse {what}: {detail}")]
    Parse { what: &'static str, detail: String },
}
