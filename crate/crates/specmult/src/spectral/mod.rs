//! Normalized-Laplacian spectra along two independent routes.
//!
//! The floating route builds the symmetric form and runs cyclic Jacobi; the
//! exact route takes the characteristic polynomial of the similar rational
//! random-walk form and reads multiplicities off its square-free
//! decomposition. Multiplicity claims are always settled by the exact
//! route; floats are advisory and flag themselves when clustering becomes
//! ambiguous.

mod poly;
mod rational;
mod spectrum;
mod sym;

pub use poly::{cmp_poly, RatPoly};
pub use rational::{
    cospectral, exact_eigenvalue_factors, laplacian_char_poly, random_walk_laplacian,
    rho_second_least_is_one, CharPoly, RationalMatrix,
};
pub use spectrum::{
    cluster_values, exact_multiplicity_multiset, float_exact_agree, Spectrum, DEFAULT_TOL,
};
pub use sym::{
    eigenvector_residual, interlacing_check, normalized_laplacian, rank_shifted, EigenPair,
    SymMatrix,
};
