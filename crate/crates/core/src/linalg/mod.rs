//! Exact dense linear algebra on the right column space `D^n`.

mod echelon;
mod matrix;
mod poly;
mod roots;
mod spectrum;
mod subspace;

pub use echelon::{column_echelon, inverse, null_space_vectors, rank, rref, solve, Rref};
pub use matrix::{Matrix, MatrixRing};
pub use poly::{char_poly, Polynomial};
pub use roots::{rational_roots, roots_with_multiplicity, RootSearch};
pub use spectrum::{
    central_spectrum_quaternion, eigenvalues_in_field, has_noncentral_scalar_part, realify, singleton_spectrum,
    Eigenvalues, Spectral,
};
pub use subspace::{
    common_kernel, extend_to_basis, kernel, quotient, quotient_complement, restrict, Chain, ChainError, NotInvariant,
    Subspace,
};
