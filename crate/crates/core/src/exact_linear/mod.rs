//! Exact rational scalars, dense matrices and echelon-form subspaces.

mod matrix;
mod rational;
mod subspace;

pub use matrix::MatrixQ;
pub use rational::{parse_rational, Rational};
pub use subspace::Subspace;

/// Free-function forms of the matrix routines.
pub fn rref(m: &MatrixQ) -> (MatrixQ, usize) {
    m.rref()
}

pub fn nullspace(m: &MatrixQ) -> Subspace {
    m.nullspace()
}
