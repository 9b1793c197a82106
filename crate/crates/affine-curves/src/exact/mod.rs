//! Exact arithmetic: Gaussian rationals, sparse polynomials, rational functions,
//! matrices and root finding.

pub mod gaussian;
pub mod gcd;
pub mod matrix;
pub mod modular;
pub mod poly;
pub mod ratfunc;
pub mod roots;

pub use gaussian::{Gr, GaussianRational, ParseGrError};
pub use gcd::{content_in, poly_gcd, poly_gcd_prs};
pub use matrix::{det, solve_linear, Matrix};
pub use poly::{Mono, MultiPoly, Var};
pub use ratfunc::{Derivation, RatFunc};
pub use roots::{gaussian_roots, poly_roots};
