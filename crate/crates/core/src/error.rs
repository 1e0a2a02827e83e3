use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("zero element has no support")]
    ZeroElement,
    #[error("matrix is not antisymmetric at ({row}, {col})")]
    NotAntisymmetric { row: usize, col: usize },
    #[error("sublattices are linearly dependent")]
    DependentParts,
    #[error("relator support {0:?} lies outside the sublattice")]
    SupportOutsideSublattice(Vec<i64>),
    #[error("character is not in Delta*(M)")]
    NotInDeltaStar,
    #[error("character is not in the subspace")]
    CharacterNotInSubspace,
    #[error("cone index {index} out of range for fan with {len} cones")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("subspace is not abelian")]
    NotAbelian,
    #[error("abelian subspace has dimension {found}, need at least {needed}")]
    AbelianTooSmall { found: usize, needed: usize },
    #[error("form has nontrivial centre of dimension {0}; quotient by it first")]
    NontrivialCenter(usize),
    #[error("symplectic base failed verification")]
    InvalidBase,
    #[error("malformed family of abelian subspaces: {0}")]
    MalformedFamily(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
