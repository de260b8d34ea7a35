use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("atom `{0}` has no derivative rule")]
    UnknownAtomDerivative(String),
    #[error("composition of `{atom}` with the coordinate map leaves the differential field")]
    NonRepresentableComposition { atom: String },
    #[error("pole at point: denominator vanishes")]
    PoleAtPoint,
    #[error("atom `{0}` has no numeric binding")]
    UnboundAtom(String),
    #[error("division by zero expression")]
    DivisionByZero,
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("connection is not reduced (nonzero trace)")]
    NotReduced,
    #[error("affine connection has torsion")]
    HasTorsion,
    #[error("coordinate map is not invertible: {0}")]
    NotInvertible(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("deck map is numeric-only; symbolic pullback is unavailable")]
    NumericOnly,
    #[error("path not found: {0}")]
    PathNotFound(String),
    #[error("pole on path near {0}")]
    PoleOnPath(String),
    #[error("integration did not converge: last estimate {estimate:e} > tolerance {tol:e}")]
    NoConvergence { estimate: f64, tol: f64 },
    #[error("pencil is not in normal presentation (dx, u dy): {0}")]
    NotNormalized(String),
    #[error("degenerate web: slopes {0} and {1} coincide")]
    DegenerateWeb(usize, usize),
    #[error("pencil generators are not transverse")]
    NotTransverse,
    #[error("group classification inconclusive within word bound {0}")]
    Inconclusive(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
