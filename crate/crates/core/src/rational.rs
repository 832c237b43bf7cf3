//! Exact rational coefficients.
//!
//! `Rational` wraps an arbitrary-precision `BigRational`, which keeps every
//! value in lowest terms with a positive denominator. Zero is always `0/1`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use thiserror::Error;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid digit at byte {0}")]
    InvalidDigit(usize),
    #[error("zero denominator")]
    ZeroDenominator,
}

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    /// Builds `numer/denom` in lowest terms. Returns `None` for a zero denominator.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Option<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return None;
        }
        Some(Rational(BigRational::new(numer.into(), denom)))
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

    pub fn add(&self, other: &Rational) -> Rational {
        Rational(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &Rational) -> Rational {
        Rational(&self.0 - &other.0)
    }

    pub fn mul(&self, other: &Rational) -> Rational {
        Rational(&self.0 * &other.0)
    }

    pub fn neg(&self) -> Rational {
        Rational(-&self.0)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Rational> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    /// `self^e`, with `0^0 = 1`.
    pub fn pow(&self, e: u32) -> Rational {
        if e == 0 {
            return Rational::one();
        }
        Rational(Pow::pow(&self.0, e))
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
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

fn parse_digits(s: &str, base_offset: usize) -> Result<BigInt, ParseRationalError> {
    if s.is_empty() {
        return Err(ParseRationalError::InvalidDigit(base_offset));
    }
    if let Some(pos) = s.bytes().position(|b| !b.is_ascii_digit()) {
        return Err(ParseRationalError::InvalidDigit(base_offset + pos));
    }
    // all ASCII digits, so this cannot fail
    Ok(s.parse::<BigInt>().expect("decimal digits"))
}

/// Accepts `[+-]?digits(/digits)?`, e.g. `-3/4` or `16`.
impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Err(ParseRationalError::Empty);
        }
        let (negative, body, start) = match s.as_bytes()[0] {
            b'-' => (true, &s[1..], 1),
            b'+' => (false, &s[1..], 1),
            _ => (false, s, 0),
        };
        let (num_text, den_text) = match body.find('/') {
            Some(slash) => (
                &body[..slash],
                Some((&body[slash + 1..], start + slash + 1)),
            ),
            None => (body, None),
        };
        let mut numer = parse_digits(num_text, start)?;
        if negative {
            numer = -numer;
        }
        let denom = match den_text {
            Some((text, offset)) => parse_digits(text, offset)?,
            None => BigInt::one(),
        };
        Rational::new(numer, denom).ok_or(ParseRationalError::ZeroDenominator)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(q(1, 2).add(&q(1, 3)), q(5, 6));
        assert_eq!(q(7, 9).add(&Rational::zero()), q(7, 9));
        assert_eq!(q(1, 2).add(&q(-1, 2)), Rational::zero());
    }

    #[test]
    fn mul_examples() {
        assert_eq!(q(2, 3).mul(&q(3, 2)), Rational::one());
        assert_eq!(q(-5, 7).mul(&Rational::one()), q(-5, 7));
        assert_eq!(
            Rational::from(4).mul(&Rational::from(4)),
            Rational::from(16)
        );
    }

    #[test]
    fn pow_examples() {
        assert_eq!(Rational::from(4).pow(2), Rational::from(16));
        assert_eq!(q(3, 5).pow(0), Rational::one());
        assert_eq!(Rational::zero().pow(0), Rational::one());
        assert_eq!(Rational::zero().pow(3), Rational::zero());
        assert_eq!(q(1, 2).pow(3), q(1, 8));
    }

    #[test]
    fn pow_grows_without_overflow() {
        let big = Rational::from(4).pow(200);
        assert_eq!(big.numer().bits(), 401);
    }

    #[test]
    fn canonical_form() {
        let a = q(6, -8);
        assert_eq!(a.numer(), &BigInt::from(-3));
        assert_eq!(a.denom(), &BigInt::from(4));
        let z = q(0, -17);
        assert_eq!(z.numer(), &BigInt::from(0));
        assert_eq!(z.denom(), &BigInt::from(1));
        assert!(Rational::new(1, 0).is_none());
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("-3/4".parse::<Rational>().unwrap(), q(-3, 4));
        assert_eq!("16".parse::<Rational>().unwrap(), Rational::from(16));
        assert_eq!("+6/4".parse::<Rational>().unwrap(), q(3, 2));
        assert_eq!(q(6, 4).to_string(), "3/2");
        assert_eq!(q(-16, 1).to_string(), "-16");
        assert_eq!("".parse::<Rational>(), Err(ParseRationalError::Empty));
        assert_eq!(
            "1/0".parse::<Rational>(),
            Err(ParseRationalError::ZeroDenominator)
        );
        assert_eq!(
            "1/".parse::<Rational>(),
            Err(ParseRationalError::InvalidDigit(2))
        );
        assert_eq!(
            "-".parse::<Rational>(),
            Err(ParseRationalError::InvalidDigit(1))
        );
        assert_eq!(
            "1/-2".parse::<Rational>(),
            Err(ParseRationalError::InvalidDigit(2))
        );
        assert_eq!(
            "12a".parse::<Rational>(),
            Err(ParseRationalError::InvalidDigit(2))
        );
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-1000i64..=1000, 1i64..=200).prop_map(|(n, d)| q(n, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn field_axioms(a in arb_rational(), b in arb_rational(), c in arb_rational()) {
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.add(&a.neg()), Rational::zero());
            if !a.is_zero() {
                prop_assert_eq!(a.mul(&a.recip().unwrap()), Rational::one());
            }
        }

        #[test]
        fn equal_values_normalize_identically(n in -500i64..500, d in 1i64..50, s in 1i64..20) {
            let a = q(n, d);
            let b = q(n * s, d * s);
            prop_assert_eq!(a.numer(), b.numer());
            prop_assert_eq!(a.denom(), b.denom());
            prop_assert_eq!(a.to_string(), b.to_string());
        }

        #[test]
        fn display_parses_back(a in arb_rational()) {
            prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
        }
    }
}
