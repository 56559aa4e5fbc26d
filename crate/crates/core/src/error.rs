use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("argument `{name}` = {value} is outside its domain: {expected}")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("order m = {order} is out of range for degree j = {degree}")]
    OrderOutOfRange { degree: usize, order: i64 },

    #[error("exact value of {what} overflows 64-bit integers")]
    Overflow { what: &'static str },

    #[error("quadrature rule too coarse: {nodes} nodes, need at least {required}")]
    RuleTooCoarse { nodes: usize, required: usize },

    #[error("wrong quadrature kind: expected {expected}")]
    WrongRule { expected: &'static str },

    #[error("unknown {what} `{value}`")]
    Unknown { what: &'static str, value: String },

    #[error("invalid spectrum: {0}")]
    Spectrum(String),

    #[error("divergent series: {0}")]
    Divergent(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// I/O failure, kept as text so the enum stays `Clone + PartialEq`.
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_domain(
    name: &'static str,
    value: f64,
    ok: bool,
    expected: &'static str,
) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value,
            expected,
        })
    }
}
