use crate::series::SeriesError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// A division by p that the theory says must be exact was not.
    #[error("p-divisibility violated at t^{exp}: {witness}")]
    PDivisibility { exp: i32, witness: String },
    #[error("integrality failure: {0}")]
    Integrality(String),
    #[error("input is not invariant: {0}")]
    NotInvariant(String),
    #[error("divisibility certificate failed: {0}")]
    Certificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
