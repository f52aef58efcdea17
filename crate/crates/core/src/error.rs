use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("basis size {requested} exceeds the configured ceiling of {ceiling} elements")]
    CeilingExceeded { requested: u128, ceiling: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("length window {start}..{end} lies outside the truncation at length {max_length}")]
    WindowOutOfRange {
        start: usize,
        end: usize,
        max_length: usize,
    },

    #[error("operands belong to different free Lie algebras")]
    MixedAlgebras,

    #[error("Jacobi identity fails on basis triple (x{0}, x{1}, x{2})")]
    JacobiViolation(usize, usize, usize),

    #[error("algebra is not nilpotent: lower central series stabilizes at dimension {stable_dim}")]
    NotNilpotent { stable_dim: usize },

    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),

    #[error("malformed algebra description: {0}")]
    Parse(String),

    #[error("subspace is not central")]
    NotCentral,

    #[error("subspace is not contained in the derived subalgebra")]
    NotInDerived,

    #[error("expected a one-dimensional subspace, got dimension {0}")]
    NotOneDimensional(usize),

    #[error("invariant is undefined for an abelian algebra")]
    Abelian,

    #[error(
        "s2 = {0} contradicts the classification (no nilpotent Lie algebra has s2 in {{1, 2, 4}})"
    )]
    ImpossibleValue(i64),

    #[error("invalid free presentation: {0}")]
    InvalidPresentation(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Errors that indicate a defect in the computation rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::ImpossibleValue(_) | Error::Internal(_) | Error::InvalidPresentation(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
