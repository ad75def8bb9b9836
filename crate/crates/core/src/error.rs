use thiserror::Error;

use crate::expr::ParseError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Poisson structure: {0}")]
    InvalidPoissonStructure(String),

    #[error("star engine cannot handle this input: {0}")]
    UnsupportedEngine(String),

    #[error("classical limit {0} is not a unit in the chart algebra")]
    NonUnitClassicalLimit(String),

    #[error("classical limit of the matrix is not invertible: {0}")]
    NonInvertibleClassicalLimit(String),

    #[error("classical limit is not filtered: {0}")]
    NotClassicallyFiltered(String),

    #[error("restricted determinant {0} is not a nonzero constant")]
    NonUnitDeterminant(String),

    #[error("Poisson structure {0} is not tangent to the fibre at infinity")]
    NotQuantizable(String),

    #[error("extension window W(k={k}, j={j}) is empty")]
    WindowEmpty { k: i64, j: i64 },

    #[error("{quantity} did not stabilise before the window cap (last values {history:?})")]
    NonStabilized {
        quantity: &'static str,
        history: Vec<usize>,
    },

    #[error("oracle answer changed when the degree bound grew from {bound} to {bound_plus}")]
    DegenerateBoundWarning { bound: usize, bound_plus: usize },

    #[error("dimension mismatch: {0}")]
    Shape(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl Error {
    /// Usage errors (bad input) versus domain errors (valid input, negative mathematical outcome).
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Parse(_) | Error::InvalidArgument(_) | Error::Shape(_)
        )
    }
}
