pub mod braid;
pub mod dihedral;
pub mod error;
pub mod modp;
pub mod realization;
pub mod sampling;
pub mod scenario;
pub mod symplectic;
pub mod words;

pub use error::EvalError;
pub use words::{GeneratorSymbol, Word};
