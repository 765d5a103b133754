//! Coefficient carriers: binary64, exact rationals and symbolic terms all plug
//! into the same jet and Weil-algebra engines through [`Scalar`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::expr::{Constant, Elementary};

/// A coefficient type for jets and Weil elements.
///
/// Ring operations are infallible; division, named constants and elementary
/// functions report domain errors.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(q: &BigRational) -> Self;

    fn from_integer(n: &BigInt) -> Self {
        Self::from_rational(&BigRational::from_integer(n.clone()))
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self>;

    /// `pi` or `e`; rationals have neither.
    fn constant(c: &Constant) -> Result<Self>;

    fn apply(&self, f: Elementary) -> Result<Self>;

    /// `self ^ exponent` for a non-integer rational exponent.
    fn powf(&self, exponent: &BigRational) -> Result<Self>;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn from_rational(q: &BigRational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if *rhs == 0.0 {
            Err(Error::domain("division by zero"))
        } else {
            Ok(self / rhs)
        }
    }

    fn constant(c: &Constant) -> Result<Self> {
        Ok(match c {
            Constant::Rational(q) => Self::from_rational(q),
            Constant::Pi => std::f64::consts::PI,
            Constant::E => std::f64::consts::E,
        })
    }

    fn apply(&self, f: Elementary) -> Result<Self> {
        let x = *self;
        if let Some(msg) = f.domain_violation(x) {
            return Err(Error::domain(msg));
        }
        Ok(f.eval_f64(x))
    }

    fn powf(&self, exponent: &BigRational) -> Result<Self> {
        let x = *self;
        if x < 0.0 && !exponent.is_integer() {
            return Err(Error::domain(format!(
                "negative base {x} raised to non-integer power {exponent}"
            )));
        }
        if x == 0.0 && exponent.is_negative() {
            return Err(Error::domain("zero raised to a negative power"));
        }
        Ok(x.powf(Self::from_rational(exponent)))
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if Zero::is_zero(rhs) {
            Err(Error::domain("division by zero"))
        } else {
            Ok(self / rhs)
        }
    }

    fn constant(c: &Constant) -> Result<Self> {
        match c {
            Constant::Rational(q) => Ok(q.clone()),
            other => Err(Error::domain(format!(
                "`{other}` has no exact rational value"
            ))),
        }
    }

    fn apply(&self, f: Elementary) -> Result<Self> {
        Err(Error::domain(format!(
            "`{}` is not defined on exact rationals",
            f.name()
        )))
    }

    fn powf(&self, exponent: &BigRational) -> Result<Self> {
        Err(Error::domain(format!(
            "non-integer power {exponent} is not defined on exact rationals"
        )))
    }
}

/// Relative-or-absolute closeness used by float comparisons in tests and tools.
pub fn approx_eq(a: f64, b: f64, rel: f64, abs: f64) -> bool {
    let diff = (a - b).abs();
    diff <= abs || diff <= rel * a.abs().max(b.abs())
}
