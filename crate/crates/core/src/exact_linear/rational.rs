use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar, always stored as a reduced fraction with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_integer(value: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(value)))
    }

    pub fn from_bigint(value: BigInt) -> Self {
        Rational(BigRational::from_integer(value))
    }

    /// Builds `numer / denom`, reducing and normalizing the sign.
    pub fn new(numer: BigInt, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::ZeroDenominator(format!("{numer}/{denom}")));
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }

    pub fn frac(numer: i64, denom: i64) -> Self {
        Self::new(numer.into(), denom.into()).expect("nonzero denominator")
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

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    pub fn pow(&self, exp: u64) -> Self {
        let numer = Pow::pow(self.numer(), exp);
        let denom = Pow::pow(self.denom(), exp);
        // Powers of a reduced fraction stay reduced.
        Rational(BigRational::new_raw(numer, denom))
    }

    /// `self^(2^k)` by repeated squaring.
    pub fn pow_two_power(&self, k: u32) -> Self {
        let mut acc = self.clone();
        for _ in 0..k {
            acc = &acc * &acc;
        }
        acc
    }

    /// Real `m`-th root if it is rational. For even `m` only the
    /// nonnegative root is returned; negative inputs have none.
    pub fn exact_root(&self, m: u32) -> Option<Self> {
        assert!(m > 0, "root degree must be positive");
        if m == 1 {
            return Some(self.clone());
        }
        let negative = self.is_negative();
        if negative && m % 2 == 0 {
            return None;
        }
        let num_root = exact_integer_root(&self.numer().abs(), m)?;
        let den_root = exact_integer_root(self.denom(), m)?;
        let num_root = if negative { -num_root } else { num_root };
        Some(Rational(BigRational::new_raw(num_root, den_root)))
    }

    /// Every rational `t` with `t^m = self`, in ascending order.
    pub fn rational_roots(&self, m: u32) -> Vec<Self> {
        if self.is_zero() {
            return vec![Rational::zero()];
        }
        match self.exact_root(m) {
            None => Vec::new(),
            Some(r) if m % 2 == 0 => vec![-r.clone(), r],
            Some(r) => vec![r],
        }
    }

    /// `p/q` in lowest terms is a square iff `p >= 0` and both `p` and `q`
    /// are perfect squares.
    pub fn is_square(&self) -> bool {
        self.exact_root(2).is_some()
    }
}

fn exact_integer_root(value: &BigInt, m: u32) -> Option<BigInt> {
    debug_assert!(value.sign() != Sign::Minus);
    let root = value.nth_root(m);
    if Pow::pow(&root, m) == *value {
        Some(root)
    } else {
        None
    }
}

/// Parses `[+-]digits[/digits]` into a reduced fraction.
pub fn parse_rational(text: &str) -> Result<Rational> {
    text.parse()
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let malformed = |reason| Error::MalformedRational {
            text: text.to_string(),
            reason,
        };
        let (negative, body) = match text.as_bytes().first() {
            Some(b'-') => (true, &text[1..]),
            Some(b'+') => (false, &text[1..]),
            Some(_) => (false, text),
            None => return Err(malformed("empty string")),
        };
        let (num_digits, den_digits) = match body.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (body, None),
        };
        let digits = |s: &str| -> Result<BigInt> {
            if s.is_empty() {
                return Err(malformed("missing digits"));
            }
            if !s.bytes().all(|b| b.is_ascii_digit()) {
                return Err(malformed("expected decimal digits"));
            }
            Ok(s.parse::<BigInt>().expect("validated digits"))
        };
        let mut numer = digits(num_digits)?;
        if negative {
            numer = -numer;
        }
        let denom = match den_digits {
            Some(d) => digits(d)?,
            None => BigInt::one(),
        };
        if denom.is_zero() {
            return Err(Error::ZeroDenominator(text.to_string()));
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::from_integer(value)
    }
}

impl From<BigInt> for Rational {
    fn from(value: BigInt) -> Self {
        Rational::from_bigint(value)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $assign_trait:ident, $assign_method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(&self.0, rhs.0))
            }
        }
        impl $assign_trait<&Rational> for Rational {
            fn $assign_method(&mut self, rhs: &Rational) {
                $assign_trait::$assign_method(&mut self.0, &rhs.0);
            }
        }
        impl $assign_trait<Rational> for Rational {
            fn $assign_method(&mut self, rhs: Rational) {
                $assign_trait::$assign_method(&mut self.0, rhs.0);
            }
        }
    };
}

binop!(Add, add, AddAssign, add_assign);
binop!(Sub, sub, SubAssign, sub_assign);
binop!(Mul, mul, MulAssign, mul_assign);
// Division by zero panics, as for the underlying big rationals.
binop!(Div, div, DivAssign, div_assign);

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

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}
