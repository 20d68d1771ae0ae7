//! Error type shared by all library modules.

/// Errors raised by point-set validation, grid construction, and the
/// diameter methods.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("point has no coordinates")]
    EmptyPoint,

    #[error("non-finite coordinate on axis {axis}")]
    NonFinite { axis: usize },

    #[error("point set is empty")]
    EmptyPointSet,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("epsilon must lie in (0, 1], got {eps}")]
    InvalidEpsilon { eps: f64 },

    #[error("box extent must be positive and finite, got {extent}")]
    InvalidExtent { extent: f64 },

    #[error("grid cell size must be positive and finite, got {cell}")]
    InvalidCell { cell: f64 },

    #[error("grid mode {expected} required for this rounding, got {got}")]
    WrongGridMode {
        expected: &'static str,
        got: &'static str,
    },

    #[error("target grid cell {cell} must not be finer than source cell {parent_cell}")]
    CellNotCoarser { cell: f64, parent_cell: f64 },

    #[error("dimension must be at least {needed}, got {got}")]
    DimensionTooSmall { needed: usize, got: usize },

    #[error("pair-list cap must be at least 1")]
    InvalidCap,

    #[error("direction net would hold about {estimated} vectors, above the limit of {limit}")]
    NetTooLarge { estimated: u128, limit: u128 },

    #[error("refinement cube around grid point {index} is empty; rounding provenance is broken")]
    EmptyRefinementCube { index: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
