//! Exact arithmetic for the rest of the workspace: big integers, rationals and
//! multivariate Laurent polynomials with integer coefficients.

mod error;
mod kronecker;
mod laurent;
mod monomial;
mod text;

pub use error::AlgebraError;
pub use laurent::{
    lp_add, lp_div_exact, lp_eval, lp_is_laurent_positive, lp_mul, LaurentPolynomial, Term,
};
pub use monomial::Monomial;

/// Arbitrary precision signed integer.
pub type Integer = num_bigint::BigInt;

/// Exact rational number, always stored in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Rational from an integer pair. Panics on a zero denominator.
pub fn rational(num: impl Into<Integer>, den: impl Into<Integer>) -> Rational {
    Rational::new(num.into(), den.into())
}
