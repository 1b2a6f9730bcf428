//! Exact computer algebra for operations on algebraic cobordism: the
//! universal formal group law, Steenrod and symmetric operations, and the
//! verifiers for their integrality and divisibility properties.

pub mod error;
pub mod fgl;
pub mod group_actions;
pub mod operations;
pub mod quotient;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use series::{GradedSeries, Scalar, SeriesError, SeriesRing, Variable, VariableTable};
