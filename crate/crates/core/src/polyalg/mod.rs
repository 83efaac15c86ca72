//! Exact sparse multivariate polynomial arithmetic over the rationals and
//! Gaussian rationals: ring operations, differentiation, composition, jet
//! truncation, rewriting into the planar invariants, complexification, and
//! exact dense linear algebra.
//!
//! Every operation here is a deterministic pure function; values are
//! immutable and freely shareable across threads.

mod coeff;
mod complexify;
mod invariant;
mod matrix;
mod monomial;
mod poly;
pub mod text;

use thiserror::Error;

pub use coeff::{
    gauss, gauss_i, gauss_re, rat, rat_int, rational_to_f64, GaussianRational, Rational, Scalar,
};
pub use complexify::{complexify, complexify_field, promote, realify, realify_field};
pub use invariant::{to_invariant, InvariantKind, InvariantPolynomial};
pub use matrix::{Mat, RatMat};
pub use monomial::{monomials_of_degree, Monomial};
pub use poly::Polynomial;

#[derive(Debug, Error)]
pub enum PolyError {
    #[error("substitution arity mismatch: expected {expected} images, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("not a polynomial in the {kind} invariants (offending monomial exponents {monomial})")]
    NotInvariant { kind: String, monomial: String },
    #[error("polynomial is not real after realification")]
    NotReal,
}
