use thiserror::Error;

/// Errors surfaced by the exact-algebra operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A nonzero scalar was required (square classes are defined on k^×).
    #[error("scalar is zero")]
    ZeroScalar,

    /// A nonsingular form was required but an entry is zero.
    #[error("form is singular (zero diagonal entry)")]
    SingularForm,

    /// Two operands live over different base fields or rings.
    #[error("field descriptors do not match")]
    FieldMismatch,

    /// The zero Laurent element has no leading unit.
    #[error("element is zero")]
    ZeroElement,

    /// A unit of R_n must be a nonzero scalar times a single monomial.
    #[error("element is not a monomial unit")]
    NonMonomialEntry,

    /// Variable index outside 1..=n.
    #[error("variable index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    /// The requested operation is not defined for this base field.
    #[error("unsupported base field: {0}")]
    UnsupportedField(String),

    /// A toral descriptor violates one of its defining constraints.
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),

    /// Matrix dimensions do not agree.
    #[error("matrix sizes do not match")]
    SizeMismatch,

    /// The integer matrix does not have determinant ±1.
    #[error("matrix is not unimodular (det must be ±1)")]
    NotUnimodular,

    /// A Brauer matrix must be skew-symmetric with zero diagonal.
    #[error("matrix is not skew-symmetric over ℚ/ℤ")]
    NotSkewSymmetric,

    /// The index computed from the matrix does not divide the stated degree.
    #[error("index {index} does not divide degree {degree}")]
    DegreeIncompatible { index: u64, degree: u64 },

    /// More variables than the subset bookkeeping supports.
    #[error("too many variables: {n} (at most {max} supported)")]
    TooManyVariables { n: usize, max: usize },

    /// Text or JSON input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}
