//! Exact computations on finite-dimensional nilpotent evolution algebras
//! whose index of nilpotency is maximal (`2^(n-1) + 1`).
//!
//! All arithmetic is over the rationals with arbitrary-precision integers.
//! Linear maps are matrices acting on the right: row `i` of a map holds the
//! coordinates of the image of `e_i`.

pub mod automorphisms;
pub mod derivations;
pub mod error;
pub mod evolution;
pub mod exact_linear;
pub mod local_maps;

pub use error::{Error, Result};
pub use evolution::{AlgebraElement, EvolutionAlgebra, Nilindex, PowerChain};
pub use exact_linear::{parse_rational, MatrixQ, Rational, Subspace};
