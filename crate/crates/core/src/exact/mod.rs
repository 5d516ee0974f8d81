//! Exact scalars, matrices and linear algebra.

pub mod lie;
pub mod linalg;
pub mod matrix;
pub mod scalar;

pub use lie::{bracket, jordan_type, killing, trace_pair};
pub use linalg::{kernel_basis, rank, Subspace};
pub use matrix::Mat;
pub use scalar::{frac, int, parse_rational, Dual, Rational, Scalar};
