//! Exact rational arithmetic for probabilities.
//!
//! Every probability in this crate is a [`Rational`]: an arbitrary-precision
//! fraction kept reduced and sign-normalized at all times. Decimals only ever
//! appear at rendering time, via [`Rational::decimal`].

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact probability value: reduced fraction with positive denominator.
///
/// Zero is represented as `0/1`. All arithmetic is exact and closed;
/// division by zero is rejected (checked) or panics (operator form).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds the reduced, sign-normalized fraction `num/den`.
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(BigInt::from(num), BigInt::from(den))))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// Exact ratio of two unsigned counters (`den` must be nonzero).
    pub fn ratio_u64(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(BigInt::from(num), BigInt::from(den))))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Numerator and denominator as `u64`s, when the value is non-negative
    /// and both parts fit. Used by the simulator's integer sampling.
    pub fn as_u64_ratio(&self) -> Option<(u64, u64)> {
        if self.is_negative() {
            return None;
        }
        Some((self.numer().to_u64()?, self.denom().to_u64()?))
    }

    /// Nearest integer, ties going to the even neighbor.
    pub fn round_half_even(&self) -> BigInt {
        round_half_even_ratio(&self.0)
    }

    /// [`Rational::round_half_even`] narrowed to i64 when it fits.
    pub fn round_half_even_i64(&self) -> Option<i64> {
        self.round_half_even().to_i64()
    }

    /// Renders the value with exactly `sig` significant digits, computed from
    /// the exact fraction with round-half-even at the last digit.
    pub fn decimal(&self, sig: u32) -> String {
        assert!(sig >= 1, "need at least one significant digit");
        if self.is_zero() {
            return "0".to_string();
        }
        let negative = self.is_negative();
        let ten = BigRational::from_integer(BigInt::from(10));
        let one = BigRational::one();
        let mut r = self.0.abs();
        // Normalize into [1, 10), tracking the decimal exponent.
        let mut exp: i64 = 0;
        while r < one {
            r *= &ten;
            exp -= 1;
        }
        while r >= ten {
            r /= &ten;
            exp += 1;
        }
        let scale = BigRational::from_integer(BigInt::from(10).pow(sig - 1));
        let mut digits_int = round_half_even_ratio(&(r * scale));
        // 9.99..9 can round up to the next power of ten.
        if digits_int == BigInt::from(10).pow(sig) {
            digits_int /= 10;
            exp += 1;
        }
        let digits = digits_int.to_string();
        debug_assert_eq!(digits.len(), sig as usize);

        let mut out = String::new();
        if negative {
            out.push('-');
        }
        if exp < 0 {
            out.push_str("0.");
            for _ in 0..(-exp - 1) {
                out.push('0');
            }
            out.push_str(&digits);
        } else {
            let int_len = (exp + 1) as usize;
            if int_len >= digits.len() {
                out.push_str(&digits);
                for _ in 0..(int_len - digits.len()) {
                    out.push('0');
                }
            } else {
                out.push_str(&digits[..int_len]);
                out.push('.');
                out.push_str(&digits[int_len..]);
            }
        }
        out
    }
}

fn round_half_even_ratio(r: &BigRational) -> BigInt {
    let (quot, rem) = r.numer().div_mod_floor(r.denom());
    match (&rem * 2u32).cmp(r.denom()) {
        Ordering::Less => quot,
        Ordering::Greater => quot + 1,
        Ordering::Equal => {
            if quot.is_even() {
                quot
            } else {
                quot + 1
            }
        }
    }
}

impl fmt::Display for Rational {
    /// Always `num/den`, including a unit denominator, so output lines have a
    /// single stable shape.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Parses `num/den` or a plain integer. Decimal notation is rejected so
    /// exactness is preserved end to end.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidRational(s.to_string());
        let parse_int = |t: &str| -> Result<BigInt> {
            let t = t.trim();
            if t.is_empty() {
                return Err(bad());
            }
            BigInt::from_str(t).map_err(|_| bad())
        };
        match s.split_once('/') {
            None => Ok(Rational(BigRational::from_integer(parse_int(s)?))),
            Some((num, den)) => {
                let num = parse_int(num)?;
                let den = parse_int(den)?;
                if den.is_zero() {
                    return Err(Error::ZeroDenominator);
                }
                Ok(Rational(BigRational::new(num, den)))
            }
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div<&Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Div<Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        (&self).div(&rhs)
    }
}

impl Div<&Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        (&self).div(rhs)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign<Rational> for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}
