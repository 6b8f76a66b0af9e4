//! Exact multivariate polynomials over `Q` and `F_p`.

pub mod linalg;
mod monomial;
mod ops;
mod parse;
mod poly;
pub mod univariate;

pub use monomial::Monomial;
pub use ops::{
    affine_substitute, combinations, initial_form, jacobian_at, jacobian_matrix, jacobian_minors,
    jacobian_rank_at, linear_substitute, multiplicity_at_origin, translate,
};
pub use parse::parse_poly;
pub use poly::{same_ring, Ideal, Polynomial, Ring};
