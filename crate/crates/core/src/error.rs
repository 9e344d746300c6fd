use thiserror::Error;

use crate::lifting::GeneratingSquare;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("invalid simplicial map: {0}")]
    InvalidMap(String),

    #[error("invalid cell structure: {0}")]
    InvalidCells(String),

    #[error("not composable: {0}")]
    NotComposable(String),

    #[error("square does not commute: {0}")]
    NotCommuting(String),

    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),

    #[error("safety cap of {cap} strata reached; cells per stage so far: {stage_counts:?}")]
    CapExceeded { cap: usize, stage_counts: Vec<usize> },

    #[error("no valid filler for generating square {square}")]
    NoFiller { square: GeneratingSquare },

    #[error("filler {filler} does not solve generating square {square}")]
    BadFiller { square: GeneratingSquare, filler: crate::deltacx::SimplexId },

    /// A construction broke one of its own invariants. Never expected on valid input.
    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

macro_rules! bail {
    ($variant:ident, $($arg:tt)*) => {
        return Err($crate::error::Error::$variant(format!($($arg)*)))
    };
}

pub(crate) use bail;
