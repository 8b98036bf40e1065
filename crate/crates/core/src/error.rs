use thiserror::Error;

/// Errors raised by the spectral, algebraic and analytic layers.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    /// Parameters that cannot describe a valid setup (grid too small, bad class, ...).
    #[error("configuration error: {0}")]
    Configuration(String),

    /// A call that is malformed for the given inputs (empty lists, missing keys, ...).
    #[error("usage error: {0}")]
    Usage(String),

    #[error("grid mismatch: {left} vs {right}")]
    GridMismatch { left: String, right: String },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),

    /// A word or basis element whose homogeneity lies outside the truncated structure.
    #[error("out of structure: {0}")]
    OutOfStructure(String),

    #[error("out of scope: {0}")]
    OutOfScope(String),

    #[error("not a character: value on the unit is {0}, expected 1")]
    NotACharacter(f64),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
