//! Exact sparse polynomial arithmetic over the rationals.

mod exponent;
pub mod gcd;
mod polynomial;

pub use exponent::Exponents;
pub use gcd::{gcd, primitive_tuple};
pub use polynomial::Polynomial;

/// Arbitrary-precision rational, always stored in lowest terms.
pub type Rational = num_rational::BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn integer(v: i64) -> Rational {
    Rational::from_integer(v.into())
}
