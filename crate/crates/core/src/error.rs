use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A configured resource cap would be exceeded.
    #[error("{what} size {size} exceeds cap {cap}")]
    Size {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("index {index} out of range for {len} elements")]
    IndexOutOfRange { index: usize, len: usize },

    /// The caller violated an operation's precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The algebraic object does not have the structure the operation needs,
    /// e.g. a missing meet or a non-unique relative complement.
    #[error("structure error: {0}")]
    Structure(String),

    #[error("arrows are not composable: {0}")]
    NotComposable(String),

    /// Malformed user input (shapes, indices, JSON).
    #[error("invalid input: {0}")]
    Input(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
