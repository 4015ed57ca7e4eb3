//! Exact arithmetic for representation-theoretic computations.
//!
//! Everything here is exact: rational numbers, Laurent polynomials in `q`
//! with integer coefficients, multivariate rational functions over `Q`, and
//! dense/sparse linear algebra over any type implementing [`Field`].

pub mod field;
pub mod laurent;
pub mod matrix;
pub mod poly;
pub mod rat;
pub mod ratfunc;
pub mod sparse;
pub mod vector;

pub use field::Field;
pub use laurent::LaurentPoly;
pub use matrix::{Matrix, Solution};
pub use poly::{Mono, Poly};
pub use rat::Rat;
pub use ratfunc::{RatFunc, SubstError};
pub use sparse::SparseMatrix;
pub use vector::{SparseVec, Subspace};
