use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("simply-laced only: series {0} is not supported")]
    UnsupportedSeries(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("{0} is not a root of this system")]
    NotARoot(String),
    #[error("reflection index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("roots lie in different components; not Weyl-conjugate")]
    NotConjugate,
    #[error("roots are not orthogonal")]
    NotOrthogonal,
    #[error("root is not nice")]
    NotNice,
    #[error("root is not a Heisenberg root")]
    NotHeisenberg,
    #[error("root is not an extreme node")]
    NotExtreme,
    #[error("covector support is not pairwise orthogonal")]
    NotOrthogonalSupport,
    #[error("element is not nilpotent on the dual")]
    NonNilpotent,
    #[error("covector is not minimal")]
    NotMinimal,
    #[error("covector is not next-to-minimal")]
    NotNtm,
    #[error("covector is not concentrated in level -2 of the grading")]
    NotInLevel2,
    #[error("support roots not of weight -2 under S: {0}")]
    NotWeightMinusTwo(String),
    #[error("(H, phi) does not dominate (S, phi)")]
    NotDominating,
    #[error("covector level mismatch: {0}")]
    LevelMismatch(String),
    #[error("enumeration is not quasi-abelian: {0}")]
    NotQuasiAbelian(String),
    #[error("not a permutation of the simple roots")]
    NotAPermutation,
    #[error("enumeration violates the theorem's constraint: {0}")]
    EnumerationViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown format: {0}")]
    UnknownFormat(String),
    #[error("malformed descriptor data: {0}")]
    MalformedDescriptor(String),
    #[error("linear system has no solution")]
    NoSolution,
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
