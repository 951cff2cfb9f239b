use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("division by a non-constant polynomial at position {pos}")]
    NonConstantDivisor { pos: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("degree must be 3 (got {0})")]
    Degree(usize),

    #[error("missing monomial {0}")]
    MissingMonomial(String),

    #[error("duplicate monomial {0}")]
    DuplicateMonomial(String),

    #[error("overlap inconsistency for {monomial}: {first} vs {second}")]
    OverlapMismatch {
        monomial: String,
        first: String,
        second: String,
    },

    #[error("table line {line}: {msg}")]
    Table { line: usize, msg: String },

    #[error("root-of-unity sum is not rational")]
    NotRational,

    #[error("cyclotomic order {0} exceeds the supported maximum")]
    OrderOverflow(u64),

    #[error("pole: 1 - {0} vanishes")]
    Pole(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("wrong codimension: expected {expected}, record has {found}")]
    WrongCodim { expected: u8, found: u8 },

    #[error("unknown hypersurface {0}")]
    UnknownSurface(String),

    #[error("matrix is not symplectic")]
    NotSymplectic,

    #[error("point is not in Siegel space: {0}")]
    NotSiegel(String),

    #[error("C*tau + D is numerically singular (condition number {0:e})")]
    Singular(f64),

    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
