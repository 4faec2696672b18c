use thiserror::Error;

/// Errors raised by the exact-algebra routines and the verification layer.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("vector is not in the column lattice")]
    NotInLattice,
    #[error("d1 * d2 != 0: the maps do not form a complex")]
    ComplexNotExact,
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("the chain is not a cycle")]
    NotACycle,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("matrix is not symplectic")]
    NotSymplectic,
    #[error("matrix has a nonzero lower-left block")]
    NotUpperTriangularBlockForm,
    #[error("fiber-product compatibility violated: {0}")]
    CompatibilityViolation(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("genus {genus} is outside the supported range {min}..={max}")]
    UnsupportedGenus { genus: usize, min: usize, max: usize },
    #[error("unknown job id `{0}`")]
    UnknownJob(String),
    #[error("refusing to split an extension with torsion quotient without an external fact")]
    UnjustifiedSplitting,
    #[error("external constant `{0}` is not in the registry")]
    MissingExternal(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
