use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid span: {0}")]
    InvalidSpan(String),

    #[error("section length N = {n} is too small; need N >= {need}")]
    SectionLength { n: usize, need: usize },

    #[error("operation exceeds the section length: {0}")]
    BudgetExceeded(String),

    #[error("column {column} has no factor D^{power}")]
    NotDivisible { column: usize, power: usize },

    #[error("invalid row operation: {0}")]
    InvalidRowOp(String),

    #[error("encoder is not canonical: {0}")]
    NonCanonical(String),

    #[error("encoder is rank deficient: {0}")]
    RankDeficient(String),

    #[error("tail-biting generator matrix has rank {rank}, expected {expected}")]
    DegenerateTailBiting { rank: usize, expected: usize },

    #[error("code does not have full support; positions {0:?} are always zero")]
    NotFullSupport(Vec<usize>),

    #[error("rows are not shift-structured: {0}")]
    NotShiftStructured(String),

    #[error("span structure violated: {0}")]
    StructureViolation(String),

    #[error("enumeration budget exceeded: {0}")]
    EnumerationBudget(String),

    #[error("trellis state budget exceeded: {0}")]
    StateBudget(String),

    #[error("orthogonality lost: {0}")]
    Orthogonality(String),
}

pub type Result<T> = std::result::Result<T, Error>;
