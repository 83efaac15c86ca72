//! Coefficient domains: exact rationals and Gaussian rationals.

use std::fmt;
use std::ops::{Div, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator. Zero is the unique `0/1`.
pub type Rational = BigRational;

/// Gaussian rational `a + b i` over [`Rational`]. Internal carrier for the
/// complexified `(z, z̄)` coordinates used by the elliptic spectrum.
pub type GaussianRational = Complex<BigRational>;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as an exact rational.
pub fn rat_int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// `re + im·i` as a Gaussian rational.
pub fn gauss(re: Rational, im: Rational) -> GaussianRational {
    Complex::new(re, im)
}

/// The imaginary unit.
pub fn gauss_i() -> GaussianRational {
    Complex::new(BigRational::zero(), BigRational::one())
}

/// Embed a rational into the Gaussian rationals.
pub fn gauss_re(re: Rational) -> GaussianRational {
    Complex::new(re, BigRational::zero())
}

/// Scalar field usable as a polynomial coefficient domain.
///
/// Both implementations are exact; there is no floating point anywhere in
/// the formal pipeline. Mixing the two domains in one expression is a type
/// error; promotion is always explicit (see [`crate::polyalg::promote`]).
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Embed an exact rational.
    fn from_rational(r: &Rational) -> Self;

    /// Complex conjugation; the identity on the rationals.
    fn conjugate(&self) -> Self;
}

impl Scalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn conjugate(&self) -> Self {
        self.clone()
    }
}

impl Scalar for GaussianRational {
    fn from_rational(r: &Rational) -> Self {
        Complex::new(r.clone(), BigRational::zero())
    }

    fn conjugate(&self) -> Self {
        self.conj()
    }
}

/// Nearest-double conversion, used only at the numerical-harness boundary.
pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
