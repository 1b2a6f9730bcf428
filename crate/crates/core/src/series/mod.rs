//! Sparse exact truncated multivariate Laurent/power series.

mod algo;
mod graded;
mod json;
mod render;
mod ring;
mod scalar;

pub use graded::GradedSeries;
pub use json::{SeriesJson, TermJson};
pub use ring::{Monomial, SeriesRing, Variable, VariableTable};
pub use scalar::{mod_inverse, ParseScalarError, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("series belong to different rings")]
    MismatchedRings,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("invalid variable table: {0}")]
    InvalidTable(String),
    #[error("exponent {exp} of `{var}` is below its laurent floor {floor}")]
    LaurentUnderflow { var: String, exp: i32, floor: i32 },
    #[error("negative exponent {exp} of non-laurent variable `{var}`")]
    NegativeExponent { var: String, exp: i32 },
    #[error("substituting a series with nonzero constant term {constant} for `{var}`")]
    OrderZeroSubstitution { var: String, constant: String },
    #[error("not invertible: {0}")]
    NonInvertible(String),
    #[error("iteration did not converge: {0}")]
    NonConvergent(String),
    #[error("not divisible at monomial {monomial}")]
    NotDivisible { monomial: String },
    #[error("series is not univariate in `{0}`")]
    NotUnivariate(String),
    #[error("malformed series json: {0}")]
    Json(String),
}
