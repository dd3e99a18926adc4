use thiserror::Error;

/// Errors raised by the library.
///
/// `Domain` covers inputs outside the mathematical hypotheses (even or
/// non-squarefree moduli, parity mismatches, wrong residue classes).
/// `Usage` covers programming-level misuse such as combining elements of
/// different cyclotomic fields.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("parity violation: {0}")]
    ParityViolation(String),
    #[error("normalization undefined: a(1) = 0")]
    NormalizationUndefined,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}
