use thiserror::Error;

/// Failure to evaluate a word or build a map at a given genus.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("genus must be at least {min}, got {genus}")]
    GenusTooSmall { genus: usize, min: usize },
    #[error("index {index} out of range for `{symbol}` at genus {genus}")]
    IndexOutOfRange { symbol: String, index: usize, genus: usize },
    #[error("dihedral symbol `{0}` cannot be evaluated at a genus")]
    DihedralSymbol(String),
    #[error("lens classes {a} and {b} are not orthogonal (pairing {pairing})")]
    NonOrthogonalLenses { a: String, b: String, pairing: String },
    #[error("genus mismatch: expected {expected}, got {got}")]
    GenusMismatch { expected: usize, got: usize },
    #[error("matrix is not symplectic")]
    NotSymplectic,
    #[error("invalid exchange pair ({i}, {j}) at genus {genus}")]
    InvalidExchange { i: usize, j: usize, genus: usize },
}
