use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed rational literal `{0}`")]
    BadRational(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("unknown token `{token}` at column {column}")]
    Lex { token: String, column: usize },
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("exponent at column {column} must be a nonnegative integer literal")]
    BadExponent { column: usize },
    #[error("jet order {0} unsupported (expansions are available through t^2)")]
    UnsupportedOrder(usize),
    #[error("degenerate CR structure at t = {0}: 1 - t^2|phi|^2 vanishes")]
    DegenerateStructure(String),
    #[error("matrix is not Hermitian: entry ({0}, {1}) differs from the conjugate of its transpose")]
    NotHermitian(usize, usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
}
