//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the survey core.
#[derive(Debug, Error)]
pub enum Error {
    /// Action would leave the plan grid.
    #[error("action (axis {axis}, dir {dir:+}) leaves the grid from plan index {from}")]
    RejectedAction { axis: usize, dir: i8, from: usize },

    /// Robot has no planning steps left.
    #[error("budget exhausted: {taken} of {budget} steps already taken")]
    BudgetExhausted { taken: usize, budget: usize },

    /// Position or pose outside the grid.
    #[error("invalid position: {0}")]
    InvalidPosition(String),

    /// Grid construction parameters are inconsistent.
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    /// Gram matrix stayed non-positive-definite through jitter escalation.
    #[error("gram matrix not positive definite (max jitter tried: {max_jitter:e})")]
    SingularGram { max_jitter: f64 },

    /// Mismatched training inputs.
    #[error("training mismatch: {0} locations vs {1} values")]
    TrainingMismatch(usize, usize),

    /// Non-finite value where a finite one is required.
    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    /// Empty input to an operation that needs at least one value.
    #[error("empty input: {0}")]
    EmptyInput(String),

    /// Quantile fractions outside (0,1) or not strictly increasing.
    #[error("invalid quantile fractions: {0}")]
    InvalidFractions(String),

    /// Too few distinct values to estimate a density.
    #[error("degenerate sample: need at least 2 distinct values, got {distinct}")]
    DegenerateSample { distinct: usize },

    /// Raster file did not parse or disagrees with the grid.
    #[error("malformed raster: {0}")]
    MalformedRaster(String),

    /// Requested more seed locations than the grid has.
    #[error("seed count {requested} exceeds measurable locations {available}")]
    SeedCountExceedsGrid { requested: usize, available: usize },

    /// Planner found no legal action.
    #[error("no legal actions from plan index {0}")]
    NoLegalActions(usize),

    /// Candidate set size does not match the quantile targets.
    #[error("candidate count {candidates} != target count {targets}")]
    CandidateCountMismatch { candidates: usize, targets: usize },

    /// Selection over an empty survey history.
    #[error("selection requires a non-empty survey history")]
    EmptyHistory,

    /// Empty measurement proposal where at least one location is required.
    #[error("measurement proposal must be non-empty")]
    EmptyProposal,

    /// I/O failure while reading or writing an artifact.
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
