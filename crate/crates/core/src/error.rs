use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("amplitude count {amplitudes} does not match subsystem dimensions {dims:?}")]
    ShapeMismatch { amplitudes: usize, dims: Vec<usize> },
    #[error("subsystem dimensions must be positive, got {0:?}")]
    InvalidDims(Vec<usize>),
    #[error("total dimension {total} exceeds the supported maximum {max}")]
    DimensionOverflow { total: usize, max: usize },
    #[error("vector has zero norm")]
    ZeroNorm,
    #[error("state is not normalized: squared norm {0}")]
    NotNormalized(f64),
    #[error("invalid subsystem selection {keep:?} for {count} subsystems")]
    InvalidSubsystems { keep: Vec<usize>, count: usize },
    #[error("matrix is not square: {entries} entries for dimension {dim}")]
    NotSquare { entries: usize, dim: usize },
    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),
    #[error("matrix is not a density matrix: {0}")]
    NotDensityMatrix(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("ensemble parameter beta = {0} outside [-1, 1]")]
    BetaOutOfRange(f64),
    #[error("formal state has no terms")]
    EmptyFormalState,
    #[error("label {label} is not valid on a subsystem of dimension {dim}")]
    InvalidLabel { label: String, dim: usize },
    #[error("subsystem {0} is outside the machine domain")]
    OutsideMachineDomain(usize),
    #[error("degenerate resource: the antisymmetric branch vanishes (|b| = {0:e})")]
    DegenerateResource(f64),
    #[error("degenerate normalization N = {0:e}")]
    DegenerateNormalization(f64),
    #[error("closed-form and numeric routes disagree: {0}")]
    Inconsistent(String),
    #[error("seed outside refinement basin: constraint residual {0} >= {1}")]
    OutsideBasin(f64, f64),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("grid of {0} points exceeds the limit of {1}")]
    GridTooLarge(u64, u64),
}
