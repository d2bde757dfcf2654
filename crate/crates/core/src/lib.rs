//! Finite group actions on shifts of finite type: reduced shifts, strong
//! shift equivalence certificates, orbit counts of periodic points,
//! expansivity of quotients and representation shifts of knot groups.
//!
//! All arithmetic is exact. Matrices use unbounded integers.

pub mod action;
pub mod error;
pub mod fixtures;
pub mod matrix;
pub mod poly;
pub mod quotient;
pub mod reduce;
pub mod repshift;
pub mod sft;
pub mod snf;
pub mod sse;

pub use action::{group_from_generators, validate_action, PermGroup, Permutation, PermutationAction};
pub use error::{Error, ErrorCategory, Result};
pub use matrix::{IntMatrix, RectMatrix};
pub use poly::IntPolynomial;
pub use sft::{Edge, SftPresentation};
