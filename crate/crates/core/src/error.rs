//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by structure validation, interpolation and operator
/// construction. Most signal defective input data rather than internal
/// failures; `SingularSystem` doubles as the diagnostic for a failed
/// uniqueness axiom at the given ρ.
#[derive(Debug, Error)]
pub enum Error {
    /// Exact elimination hit a zero pivot column: the linear system has
    /// no unique solution.
    #[error("singular linear system: {0}")]
    SingularSystem(String),

    /// Group closure exceeded the configured bound.
    #[error("group closure exceeded bound {bound}")]
    GroupTooLarge { bound: usize },

    /// An element supplied as a reflection has fixed space of
    /// codimension ≠ 1 or order ≠ 2.
    #[error("not a reflection: {0}")]
    NotAReflection(String),

    /// Case parameters violate the size constraints of the family.
    #[error("invalid case parameters: {0}")]
    InvalidCaseParams(String),

    /// Derived orbit data disagrees with the stored table row.
    #[error("orbit mismatch: {0}")]
    OrbitMismatch(String),

    /// Structure data fails one of its construction invariants.
    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    /// Denominators failed to cancel when applying an operator.
    #[error("operator result is not a polynomial: {0}")]
    NonPolynomialResult(String),

    /// The nilpotency self-test failed one step beyond deg h.
    #[error("nonzero tail term: {0}")]
    NonzeroTailTerm(String),

    /// A normalizing value f_λ(ρ+λ) is undefined or zero.
    #[error("undefined normalizer: {0}")]
    UndefinedNormalizer(String),

    /// A polynomial expected to be W-invariant is not.
    #[error("not W-invariant: {0}")]
    NotInvariant(String),

    /// Evaluation of a rational function at a point met a vanishing
    /// denominator.
    #[error("evaluation undefined: {0}")]
    Undefined(String),
}

pub type Result<T> = std::result::Result<T, Error>;
