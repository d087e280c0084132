//! Exact Gaussian-rational scalars.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// A complex number `re + im·i` with both parts arbitrary-precision rationals.
///
/// `BigRational` keeps itself in lowest terms, so equality is structural and
/// zero tests are exact.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Scalar(Complex<BigRational>);

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar(Complex::new(re, im))
    }

    pub fn real(re: BigRational) -> Self {
        Scalar(Complex::new(re, BigRational::zero()))
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(BigRational::from_integer(n.into()))
    }

    /// `num / den`; panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(num.into(), den.into()))
    }

    pub fn i() -> Self {
        Scalar(Complex::new(BigRational::zero(), BigRational::one()))
    }

    pub fn zero() -> Self {
        Scalar(Complex::zero())
    }

    pub fn one() -> Self {
        Scalar(Complex::one())
    }

    pub fn re(&self) -> &BigRational {
        &self.0.re
    }

    pub fn im(&self) -> &BigRational {
        &self.0.im
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_real(&self) -> bool {
        self.0.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar(self.0.conj())
    }

    /// `|z|²`, exactly.
    pub fn norm_sqr(&self) -> BigRational {
        self.0.norm_sqr()
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Scalar(self.0.inv()))
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// True when the leading nonzero part is negative; used to pull a sign out when rendering sums.
    pub fn is_negative(&self) -> bool {
        if self.0.re.is_zero() {
            self.0.im.is_negative()
        } else {
            self.0.re.is_negative()
        }
    }

    /// Least common multiple of the denominators of both parts.
    pub fn denominator_lcm(&self) -> BigInt {
        use num_integer::Integer;
        self.0.re.denom().lcm(self.0.im.denom())
    }

    /// Multiplies by `factor` and returns the result as a Gaussian integer.
    ///
    /// Panics if the product is not integral; callers pass a multiple of
    /// [`Scalar::denominator_lcm`].
    pub fn to_gaussian_integer(&self, factor: &BigInt) -> Complex<BigInt> {
        let f = BigRational::from_integer(factor.clone());
        let re = &self.0.re * &f;
        let im = &self.0.im * &f;
        assert!(re.is_integer() && im.is_integer(), "scale does not clear denominators");
        Complex::new(re.to_integer(), im.to_integer())
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        (self.0.re.to_f64().unwrap_or(f64::NAN), self.0.im.to_f64().unwrap_or(f64::NAN))
    }
}

impl From<BigRational> for Scalar {
    fn from(re: BigRational) -> Self {
        Scalar::real(re)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0.$method(rhs.0))
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.0 = &self.0 + &rhs.0;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.0 = &self.0 - &rhs.0;
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0.clone())
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl std::iter::Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| acc * x)
    }
}

impl fmt::Display for Scalar {
    /// `a/b` for reals, `a/b+c/di` otherwise; integers drop the `/1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.im.is_zero() {
            write!(f, "{}", self.0.re)
        } else {
            let sign = if self.0.im.is_negative() { '-' } else { '+' };
            write!(f, "{}{}{}i", self.0.re, sign, self.0.im.abs())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("invalid scalar {text:?}: {reason}")]
pub struct ScalarParseError {
    pub text: String,
    pub reason: &'static str,
}

/// Reads the longest prefix of `s` matching `INT['/'INT][('+'|'-')INT['/'INT]'i']`.
///
/// Returns the scalar and the number of bytes consumed.
pub(crate) fn scan_unsigned_scalar(s: &str) -> Option<Result<(Scalar, usize), &'static str>> {
    let bytes = s.as_bytes();
    // One `INT['/'INT]` starting at `from`; `None` when there are no digits there.
    let scan_ratio = |from: usize| -> Option<Result<(BigRational, usize), &'static str>> {
        let digits = bytes.get(from..)?.iter().take_while(|b| b.is_ascii_digit()).count();
        if digits == 0 {
            return None;
        }
        let mut end = from + digits;
        let num: BigInt = s[from..end].parse().expect("ascii digits");
        let mut den = BigInt::one();
        if bytes.get(end) == Some(&b'/') {
            let d = bytes[end + 1..].iter().take_while(|b| b.is_ascii_digit()).count();
            if d > 0 {
                den = s[end + 1..end + 1 + d].parse().expect("ascii digits");
                end += 1 + d;
            }
        }
        if den.is_zero() {
            return Some(Err("zero denominator"));
        }
        Some(Ok((BigRational::new(num, den), end)))
    };

    let (re, end) = match scan_ratio(0)? {
        Ok(v) => v,
        Err(e) => return Some(Err(e)),
    };
    if let Some(&sign) = bytes.get(end) {
        if sign == b'+' || sign == b'-' {
            match scan_ratio(end + 1) {
                Some(Ok((im, im_end))) if bytes.get(im_end) == Some(&b'i') => {
                    let im = if sign == b'-' { -im } else { im };
                    return Some(Ok((Scalar::new(re, im), im_end + 1)));
                }
                Some(Err(e)) => return Some(Err(e)),
                _ => {}
            }
        }
    }
    Some(Ok((Scalar::real(re), end)))
}

impl FromStr for Scalar {
    type Err = ScalarParseError;

    /// Accepts the rendering produced by `Display`, with an optional leading `-`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = |reason| ScalarParseError { text: text.to_string(), reason };
        let t = text.trim();
        let (negative, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t),
        };
        match scan_unsigned_scalar(body) {
            None => Err(err("expected digits")),
            Some(Err(reason)) => Err(err(reason)),
            Some(Ok((value, used))) if used == body.len() => Ok(if negative { -value } else { value }),
            Some(Ok(_)) => Err(err("trailing characters")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::from_int(3).to_string(), "3");
        assert_eq!(Scalar::ratio(1, 2).to_string(), "1/2");
        assert_eq!(Scalar::ratio(-2, 4).to_string(), "-1/2");
        assert_eq!(Scalar::i().to_string(), "0+1i");
        let z = Scalar::ratio(1, 2) - Scalar::i() * Scalar::ratio(3, 4);
        assert_eq!(z.to_string(), "1/2-3/4i");
    }

    #[test]
    fn parse_forms() {
        assert_eq!("1/2".parse::<Scalar>().unwrap(), Scalar::ratio(1, 2));
        assert_eq!("-3".parse::<Scalar>().unwrap(), Scalar::from_int(-3));
        assert_eq!("1/2-3/4i".parse::<Scalar>().unwrap(), Scalar::ratio(1, 2) - Scalar::i() * Scalar::ratio(3, 4));
        assert_eq!("0+1i".parse::<Scalar>().unwrap(), Scalar::i());
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("1/2x".parse::<Scalar>().is_err());
        assert!("".parse::<Scalar>().is_err());
    }

    #[test]
    fn lowest_terms_and_inverse() {
        assert_eq!(Scalar::ratio(6, 8), Scalar::ratio(3, 4));
        let z = Scalar::from_int(1) + Scalar::i();
        assert_eq!(&z * &z.inv().unwrap(), Scalar::one());
        assert!(Scalar::zero().inv().is_none());
        assert_eq!(z.norm_sqr(), BigRational::from_integer(2.into()));
    }
}
