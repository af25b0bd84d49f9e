use thiserror::Error;

/// Which continued-fraction sequence hit a zero pivot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sweep {
    /// The forward pivots `c`.
    Leading,
    /// The backward pivots `e`.
    Trailing,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid band lengths: n = {n}, diagonal {d}, superdiagonal {a}, subdiagonal {b}")]
    InvalidDimensions {
        n: usize,
        d: usize,
        a: usize,
        b: usize,
    },

    #[error("matrix is not symmetric (superdiagonal differs from subdiagonal at {index})")]
    NotSymmetric { index: usize },

    #[error("singular matrix")]
    Singular,

    #[error("{sweep:?} pivot {index} vanished; use the breakdown-free inverse instead")]
    BreakdownEncountered { sweep: Sweep, index: usize },

    #[error("index ({i}, {j}) out of range for order {n}")]
    IndexOutOfRange { i: usize, j: usize, n: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
