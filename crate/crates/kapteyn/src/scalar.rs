//! Scalar abstraction shared by the exact and floating paths.
//!
//! The transform and series code is generic over [`Scalar`]. The exact path
//! instantiates it at [`Rational`] (arbitrary precision, operations either
//! succeed exactly or fail), the floating path at `f64` or `f32`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Field-like scalar with the extra hooks the coefficient formulas need:
/// powers with integer-valued exponents and the gamma function.
pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    /// Exact scalars reject values they cannot represent instead of rounding.
    const EXACT: bool;

    fn from_int(v: i64) -> Self;

    /// num / den, with den != 0.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn is_integer_valued(&self) -> bool;

    /// self^exp for integer-valued exp >= 0, with 0^0 = 1.
    fn pow_int(&self, exp: &Self) -> Result<Self>;

    /// Gamma(self) for self > 0. Exact scalars require an integer argument.
    fn gamma(&self) -> Result<Self>;

    /// Lossy readout used by evaluation and reporting.
    fn to_f64(&self) -> f64;
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_int(v: i64) -> Self {
        Rational::from_integer(v.into())
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(num.into(), den.into())
    }

    fn is_integer_valued(&self) -> bool {
        self.is_integer()
    }

    fn pow_int(&self, exp: &Self) -> Result<Self> {
        if !exp.is_integer() {
            return Err(Error::Exactness(format!(
                "exponent {exp} is not an integer"
            )));
        }
        let e = exp
            .to_integer()
            .to_i32()
            .filter(|e| *e >= 0)
            .ok_or_else(|| Error::Exactness(format!("exponent {exp} out of range")))?;
        // Ratio::pow keeps 0^0 = 1.
        Ok(num_traits::Pow::pow(self, e))
    }

    fn gamma(&self) -> Result<Self> {
        if !self.is_integer() {
            return Err(Error::Exactness(format!(
                "gamma at non-integer rational {self}"
            )));
        }
        let n = self
            .to_integer()
            .to_u64()
            .filter(|n| *n > 0)
            .ok_or_else(|| Error::Domain(format!("gamma pole or overflow at {self}")))?;
        Ok(Rational::from_integer(factorial(n - 1)))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

macro_rules! impl_scalar_float {
    ($t:ty) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_int(v: i64) -> Self {
                v as $t
            }

            fn from_ratio(num: i64, den: i64) -> Self {
                num as $t / den as $t
            }

            fn is_integer_valued(&self) -> bool {
                self.is_finite() && self.fract() == 0.0
            }

            fn pow_int(&self, exp: &Self) -> Result<Self> {
                // powf already follows the 0^0 = 1 convention.
                Ok(self.powf(*exp))
            }

            fn gamma(&self) -> Result<Self> {
                if *self <= 0.0 && self.fract() == 0.0 {
                    return Err(Error::Domain(format!("gamma pole at {self}")));
                }
                Ok(crate::bessel::gamma(*self))
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }
        }
    };
}

impl_scalar_float!(f64);
impl_scalar_float!(f32);

/// n! as a big integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Binomial coefficient with integer arguments, 0 when k > n.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// n! in the target scalar.
pub fn factorial_scalar<T: Scalar>(n: usize) -> T {
    (1..=n).fold(T::one(), |acc, k| acc * T::from_int(k as i64))
}

/// Rising factorial (x)_n = x (x+1) ... (x+n-1), with (x)_0 = 1.
pub fn pochhammer<T: Scalar>(x: &T, n: usize) -> T {
    (0..n).fold(T::one(), |acc, i| {
        acc * (x.clone() + T::from_int(i as i64))
    })
}

/// Falling product x (x-1) ... (x-n+1).
pub fn falling<T: Scalar>(x: &T, n: usize) -> T {
    (0..n).fold(T::one(), |acc, i| {
        acc * (x.clone() - T::from_int(i as i64))
    })
}

/// Binomial coefficient C(x, m) with arbitrary top and integer lower index.
pub fn binomial_lower<T: Scalar>(x: &T, m: usize) -> T {
    falling(x, m) / factorial_scalar::<T>(m)
}

/// Parse "p/q" or "p" into a rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
}
