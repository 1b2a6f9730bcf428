//! Continuous automorphisms of B[[x]], confluent Vandermonde matrices, and
//! invariants of the shift action x ↦ F(x, t).

mod automorphism;
mod invariants;
mod law;
mod matrix;

pub use automorphism::ContinuousAutomorphism;
pub use invariants::{
    invariant_decompose, prop_xy_series, random_invariant, twisted_fgl_alpha, AlphaResult, CoefficientVerdict,
    Decomposition, StripCertificate, XyResult,
};
pub use law::{FormalLaw, LawKind};
pub use matrix::{
    bareiss_determinant, check_minor_determinant, check_minors, compositions, poly_ring, subsets, ConfluentMatrix,
    MinorReport,
};
