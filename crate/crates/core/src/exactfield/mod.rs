//! Exact scalars, dense matrices and sparse linear algebra.

mod linmap;
mod matrix;
mod scalar;
mod sparse;

pub use linmap::{pair_index, tensor_vec, LinMap};
pub use matrix::{Matrix, Rref};
pub use scalar::{Field, Scalar};
pub use sparse::{kernel, solve_affine, Acc, Echelon, SVec, Subspace};
