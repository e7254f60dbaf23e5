//! Exact rational arithmetic and square detection.
//!
//! [`Rat`] wraps a `BigRational` so that every value is kept in lowest terms
//! with a positive denominator. Nothing in this crate touches floating point.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational number in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rat(BigRational);

/// Builds `num/den` in lowest terms.
pub fn rat(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Rat> {
    let den = den.into();
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(Rat(BigRational::new(num.into(), den)))
}

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Rat(BigRational::from_integer(n.into()))
    }

    /// Shorthand for small literals; panics on a zero denominator.
    pub fn frac(num: i64, den: i64) -> Self {
        rat(num, den).expect("nonzero denominator")
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

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i8 {
        match self.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn square(&self) -> Rat {
        Rat(&self.0 * &self.0)
    }

    pub fn pow(&self, exp: u32) -> Rat {
        Rat(num_traits::pow(self.0.clone(), exp as usize))
    }

    pub fn recip(&self) -> Result<Rat> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rat(self.0.recip()))
    }

    /// Division that reports a zero divisor instead of panicking.
    pub fn checked_div(&self, rhs: &Rat) -> Result<Rat> {
        if rhs.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rat(&self.0 / &rhs.0))
    }

    /// `max(|num|, den)`, the naive height.
    pub fn height(&self) -> BigInt {
        let n = self.numer().abs();
        let d = self.denom().clone();
        if n > d {
            n
        } else {
            d
        }
    }

    /// Decimal digits of numerator plus denominator.
    pub fn digits(&self) -> usize {
        self.numer().magnitude().to_string().len() + self.denom().to_string().len()
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

/// Floor of the square root of a nonnegative integer.
pub fn int_isqrt(n: &BigInt) -> Result<BigInt> {
    if n.is_negative() {
        return Err(Error::NegativeSqrt);
    }
    Ok(n.sqrt())
}

// Squares mod 64, 63, 65 and 11; quick rejection before taking a root.
fn residue_ok(n: &BigInt) -> bool {
    const MODS: [u32; 4] = [64, 63, 65, 11];
    let m = BigInt::from(64u32 * 63 * 65 * 11);
    let r = n.mod_floor(&m).to_u64().unwrap_or(0);
    MODS.iter().all(|&k| {
        let v = (r % k as u64) as u32;
        (0..k).any(|s| s * s % k == v)
    })
}

/// Exact integer square root, `None` for negatives and non-squares.
pub fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    if n.bits() > 64 && !residue_ok(n) {
        return None;
    }
    let s = n.sqrt();
    if &s * &s == *n {
        Some(s)
    } else {
        None
    }
}

/// True iff `x` is the square of a rational.
pub fn is_perfect_square(x: &Rat) -> bool {
    sqrt_checked(x).is_some()
}

/// The nonnegative rational square root, if there is one.
pub fn sqrt_checked(x: &Rat) -> Option<Rat> {
    let n = int_sqrt_exact(x.numer())?;
    let d = int_sqrt_exact(x.denom())?;
    Some(Rat(BigRational::new_raw(n, d)))
}

pub fn sqrt_exact(x: &Rat) -> Result<Rat> {
    if x.is_negative() {
        return Err(Error::NotASquare(x.to_string()));
    }
    sqrt_checked(x).ok_or_else(|| Error::NotASquare(x.to_string()))
}

/// Exact `k`-th root of a rational, `None` if it is not a perfect power.
/// Negative inputs are accepted for odd `k`.
pub fn nth_root_exact(x: &Rat, k: u32) -> Option<Rat> {
    if x.is_negative() && k.is_multiple_of(2) {
        return None;
    }
    let root = |n: &BigInt| -> Option<BigInt> {
        let r = n.nth_root(k);
        (num_traits::pow(r.clone(), k as usize) == *n).then_some(r)
    };
    let n = root(x.numer())?;
    let d = root(x.denom())?;
    Some(Rat(BigRational::new_raw(n, d)))
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = Error;

    /// Accepts `p` or `p/q` with base-10 integers; no decimal notation.
    fn from_str(s: &str) -> Result<Rat> {
        let bad = || Error::ParseRational(s.to_string());
        let t = s.trim();
        let parse_int = |p: &str| -> Result<BigInt> {
            let digits = p.strip_prefix(['-', '+']).unwrap_or(p);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            p.parse::<BigInt>().map_err(|_| bad())
        };
        match t.split_once('/') {
            None => Ok(Rat::from_int(parse_int(t)?)),
            Some((n, d)) => {
                let den = parse_int(d)?;
                if den.is_zero() {
                    return Err(Error::ZeroDenominator);
                }
                rat(parse_int(n)?, den)
            }
        }
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n)
    }
}

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Self {
        Rat::from_int(n)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat(&self.0 $op &rhs.0)
            }
        }
        impl $trait<Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0 $op rhs.0)
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat(self.0 $op &rhs.0)
            }
        }
        impl $trait<Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(&self.0 $op rhs.0)
            }
        }
        impl $trait<i64> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: i64) -> Rat {
                Rat(&self.0 $op BigRational::from_integer(rhs.into()))
            }
        }
        impl $trait<i64> for Rat {
            type Output = Rat;
            fn $method(self, rhs: i64) -> Rat {
                Rat(self.0 $op BigRational::from_integer(rhs.into()))
            }
        }
        impl $trait<&Rat> for i64 {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat(BigRational::from_integer(self.into()) $op &rhs.0)
            }
        }
        impl $trait<Rat> for i64 {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(BigRational::from_integer(self.into()) $op rhs.0)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);
// Panics on a zero divisor like the integer types; use `checked_div` when
// the divisor is data-dependent.
binop!(Div, div, /);

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        self.0 *= &rhs.0;
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl PartialEq<i64> for Rat {
    fn eq(&self, other: &i64) -> bool {
        self.denom().is_one() && *self.numer() == BigInt::from(*other)
    }
}

impl PartialOrd<i64> for Rat {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        self.0.partial_cmp(&BigRational::from_integer((*other).into()))
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl<'a> Product<&'a Rat> for Rat {
    fn product<I: Iterator<Item = &'a Rat>>(iter: I) -> Rat {
        iter.fold(Rat::one(), |acc, x| acc * x)
    }
}
