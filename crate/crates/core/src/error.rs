use thiserror::Error;

use crate::exprparse::ParseError;

/// Errors raised by the algebraic operations of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a left-normed commutator needs at least one element")]
    EmptyCommutator,
    #[error("the Engel index must be at least 1")]
    ZeroEngelIndex,
    #[error("the Leibniz expansion needs at least one factor")]
    NoFactors,
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("dimension {n} exceeds the cap of {cap} (set NCCH_MAX_N to raise it)")]
    DimensionCap { n: usize, cap: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix rows are ragged or the grid is not square")]
    NotSquare,
    #[error("index ({row}, {col}) is out of range for a {n}x{n} matrix")]
    IndexOutOfRange { row: usize, col: usize, n: usize },
    #[error("generator id {0} is not declared in this algebra")]
    UnknownGenerator(u32),
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("no value assigned to generator `{0}`")]
    MissingAssignment(String),
    #[error("Grassmann rank mismatch: {0} vs {1}")]
    RankMismatch(u32, u32),
    #[error("Grassmann rank {0} is outside the supported range 0..=64")]
    RankTooLarge(u32),
    #[error("generator v{index} does not exist in a rank-{rank} Grassmann algebra")]
    GeneratorOutOfRank { index: u32, rank: u32 },
    #[error("blade indices must be strictly increasing and within rank")]
    InvalidBlade,
    #[error("matrix is singular")]
    Singular,
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
