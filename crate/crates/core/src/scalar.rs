use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, ToPrimitive, Zero};

/// Coefficient field for polynomials, jets and graded linear algebra.
///
/// Exact fields (`BigRational`, Gaussian rationals) test zero exactly.
/// Floating types override [`Scalar::is_negligible`] so that elimination
/// treats round-off residue as zero.
pub trait Scalar:
    Clone + PartialEq + Debug + Display + Num + Neg<Output = Self> + Send + Sync + 'static
{
    /// Embeds an exact rational into the field.
    fn from_rational(q: &BigRational) -> Self;

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    /// Real and negative; used to print `- c` instead of `+ -c`.
    fn is_negative(&self) -> bool {
        false
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }
}

impl Scalar for BigRational {
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }

    fn is_negative(&self) -> bool {
        num_traits::Signed::is_negative(self)
    }
}

impl Scalar for f64 {
    fn from_rational(q: &BigRational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }

    fn is_negligible(&self) -> bool {
        self.abs() < 1e-9
    }

    fn is_negative(&self) -> bool {
        *self < 0.0
    }
}

impl Scalar for f32 {
    fn from_rational(q: &BigRational) -> Self {
        q.to_f32().unwrap_or(f32::NAN)
    }

    fn is_negligible(&self) -> bool {
        self.abs() < 1e-4
    }

    fn is_negative(&self) -> bool {
        *self < 0.0
    }
}

impl Scalar for Complex<BigRational> {
    fn from_rational(q: &BigRational) -> Self {
        Complex::new(q.clone(), BigRational::zero())
    }
}

impl Scalar for Complex<f64> {
    fn from_rational(q: &BigRational) -> Self {
        Complex::new(f64::from_rational(q), 0.0)
    }

    fn is_negligible(&self) -> bool {
        self.norm() < 1e-9
    }
}

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for `n / d`. Panics when `d == 0`.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
