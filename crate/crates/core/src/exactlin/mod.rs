//! Exact dense linear algebra over a [`Scalar`](crate::Scalar) field.

mod elimination;
mod matrix;
mod quotient;
mod span;

pub use elimination::{
    cokernel, column_space, inverse, left_inverse, nullspace, rank, right_inverse, rref, solve, tensor_product,
    Cokernel, Rref,
};
pub use matrix::FieldMatrix;
pub use quotient::QuotientSpace;
pub use span::{invariant_closure, IncrementalSpan};
