//! Multiplicative operations on L[[z1, z2, z3]]: Landweber-Novikov,
//! Steenrod St(ī), tom Dieck Sq, symmetric operations Φ(ī) and slices.

mod descriptor;
mod element;
mod symmetric;

pub use descriptor::{OpKind, OperationDescriptor};
pub use element::{parse_element, parse_series};
pub use symmetric::{chow_trace, omega_che, residue_slice, tom_dieck_sq, PhiResult, SymmetricOperation};
