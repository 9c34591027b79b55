use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{OrderedField, Sign};
use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
///
/// Values whose numerator and denominator fit in an `i64` are stored
/// inline and computed with `i128` intermediates; anything larger moves to
/// a heap-allocated [`BigRational`]. The representation is canonical, so
/// equality and hashing are structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// `n/d` in lowest terms, `d > 0`, `n != i64::MIN`.
    Small(i64, i64),
    /// Never representable as `Small`.
    Big(BigRational),
}

impl Default for Rational {
    fn default() -> Self {
        Rational(Repr::Small(0, 1))
    }
}

fn small_or_big(n: i128, d: i128) -> Rational {
    debug_assert!(d > 0);
    let g = n.gcd(&d);
    let (n, d) = if g > 1 { (n / g, d / g) } else { (n, d) };
    match (i64::try_from(n), i64::try_from(d)) {
        (Ok(n), Ok(d)) if n != i64::MIN => Rational(Repr::Small(n, d)),
        _ => Rational(Repr::Big(BigRational::new_raw(n.into(), d.into()))),
    }
}

impl Rational {
    /// Builds `numer/denom`, reducing to lowest terms.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_big(BigRational::new(numer.into(), denom)))
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => (*n).into(),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => (*d).into(),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn from_big(value: BigRational) -> Self {
        match (value.numer().to_i64(), value.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(value)),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw((*n).into(), (*d).into()),
            Repr::Big(b) => b.clone(),
        }
    }

    pub fn into_big(self) -> BigRational {
        match self.0 {
            Repr::Small(n, d) => BigRational::new_raw(n.into(), d.into()),
            Repr::Big(b) => b,
        }
    }
}

impl From<BigRational> for Rational {
    fn from(value: BigRational) -> Self {
        Self::from_big(value)
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        if value == i64::MIN {
            Rational(Repr::Big(BigRational::from_integer(value.into())))
        } else {
            Rational(Repr::Small(value, 1))
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) if b.denom().is_one() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128)),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

fn parse_err(literal: &str, reason: &str) -> Error {
    Error::ParseScalar {
        literal: literal.to_string(),
        reason: reason.to_string(),
    }
}

fn parse_int(literal: &str, digits: &str) -> Result<BigInt> {
    let body = digits.strip_prefix(['+', '-']).unwrap_or(digits);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_err(literal, "expected an integer"));
    }
    digits
        .parse::<BigInt>()
        .map_err(|_| parse_err(literal, "expected an integer"))
}

/// Parses `<int>` or `<int>/<posint>` with insignificant whitespace.
pub(crate) fn parse_rational(literal: &str) -> Result<BigRational> {
    let compact: String = literal.chars().filter(|c| !c.is_whitespace()).collect();
    match compact.split_once('/') {
        None => Ok(BigRational::from_integer(parse_int(literal, &compact)?)),
        Some((numer, denom)) => {
            if denom.starts_with(['+', '-']) {
                return Err(parse_err(literal, "denominator must be a positive integer"));
            }
            let numer = parse_int(literal, numer)?;
            let denom = parse_int(literal, denom)?;
            if denom.is_zero() {
                return Err(parse_err(literal, "zero denominator"));
            }
            Ok(BigRational::new(numer, denom))
        }
    }
}

impl OrderedField for Rational {
    const TAG: &'static str = "rational";

    fn zero() -> Self {
        Rational(Repr::Small(0, 1))
    }

    fn one() -> Self {
        Rational(Repr::Small(1, 1))
    }

    fn from_i64(value: i64) -> Self {
        value.into()
    }

    fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    fn signum(&self) -> Sign {
        let s = match &self.0 {
            Repr::Small(n, _) => n.signum(),
            Repr::Big(b) if b.is_positive() => 1,
            Repr::Big(_) => -1,
        };
        match s {
            0 => Sign::Zero,
            1 => Sign::Positive,
            _ => Sign::Negative,
        }
    }

    fn inv(&self) -> Result<Self> {
        match &self.0 {
            Repr::Small(0, _) => Err(Error::DivisionByZero),
            Repr::Small(n, d) if *n < 0 => Ok(Rational(Repr::Small(-d, -n))),
            Repr::Small(n, d) => Ok(Rational(Repr::Small(*d, *n))),
            Repr::Big(b) => Ok(Self::from_big(b.recip())),
        }
    }

    fn parse_literal(literal: &str) -> Result<Self> {
        parse_rational(literal).map(Self::from_big)
    }
}

fn add_ref(x: &Rational, y: &Rational) -> Rational {
    match (&x.0, &y.0) {
        (Repr::Small(a, b), Repr::Small(c, d)) => {
            if b == d {
                small_or_big(*a as i128 + *c as i128, *b as i128)
            } else {
                let n = *a as i128 * *d as i128 + *c as i128 * *b as i128;
                small_or_big(n, *b as i128 * *d as i128)
            }
        }
        _ => Rational::from_big(x.to_big() + y.to_big()),
    }
}

fn sub_ref(x: &Rational, y: &Rational) -> Rational {
    match (&x.0, &y.0) {
        (Repr::Small(a, b), Repr::Small(c, d)) => {
            if b == d {
                small_or_big(*a as i128 - *c as i128, *b as i128)
            } else {
                let n = *a as i128 * *d as i128 - *c as i128 * *b as i128;
                small_or_big(n, *b as i128 * *d as i128)
            }
        }
        _ => Rational::from_big(x.to_big() - y.to_big()),
    }
}

fn mul_ref(x: &Rational, y: &Rational) -> Rational {
    match (&x.0, &y.0) {
        (Repr::Small(a, b), Repr::Small(c, d)) => {
            if *a == 0 || *c == 0 {
                return Rational::zero();
            }
            // Cross-cancel first so the product is already in lowest terms.
            let g1 = a.gcd(d);
            let g2 = c.gcd(b);
            let n = (*a / g1) as i128 * (*c / g2) as i128;
            let m = (*b / g2) as i128 * (*d / g1) as i128;
            match (i64::try_from(n), i64::try_from(m)) {
                (Ok(n), Ok(m)) if n != i64::MIN => Rational(Repr::Small(n, m)),
                _ => Rational(Repr::Big(BigRational::new_raw(n.into(), m.into()))),
            }
        }
        _ => Rational::from_big(x.to_big() * y.to_big()),
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $assign_trait:ident, $assign:ident, $imp:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                $imp(&self, &rhs)
            }
        }

        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                $imp(&self, rhs)
            }
        }

        impl<'a> $assign_trait<&'a Rational> for Rational {
            fn $assign(&mut self, rhs: &'a Rational) {
                *self = $imp(self, rhs);
            }
        }
    };
}

forward_binop!(Add, add, AddAssign, add_assign, add_ref);
forward_binop!(Sub, sub, SubAssign, sub_assign, sub_ref);
forward_binop!(Mul, mul, MulAssign, mul_assign, mul_ref);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match self.0 {
            Repr::Small(n, d) => Rational(Repr::Small(-n, d)),
            Repr::Big(b) => Rational::from_big(-b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        Rational::parse_literal(s).unwrap()
    }

    #[test]
    fn sign_of_negative_fraction() {
        assert_eq!(q("-3/4").signum(), Sign::Negative);
        assert_eq!(q("0").signum(), Sign::Zero);
    }

    #[test]
    fn exact_addition() {
        assert_eq!(q("1/2") + q("1/3"), q("5/6"));
    }

    #[test]
    fn normalizes_on_construction() {
        let r = q("2/4");
        assert_eq!(r.to_string(), "1/2");
        assert_eq!(Rational::new(6, -4).unwrap().to_string(), "-3/2");
    }

    #[test]
    fn whitespace_is_insignificant() {
        assert_eq!(q(" -7 / 14 "), q("-1/2"));
    }

    #[test]
    fn rejects_malformed_literals() {
        for bad in ["", "1/0", "1/-2", "abc", "1.5", "1/2/3", "--1", "e"] {
            assert!(Rational::parse_literal(bad).is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(Rational::zero().inv(), Err(Error::DivisionByZero));
        assert_eq!(q("1").checked_div(&q("0")), Err(Error::DivisionByZero));
    }

    #[test]
    fn promotes_and_demotes_across_i64() {
        let big = Rational::from_i64(i64::MAX) + Rational::one();
        assert_eq!(big.to_string(), "9223372036854775808");
        let back = big.clone() - Rational::one();
        assert_eq!(back, Rational::from_i64(i64::MAX));
        let huge = big.clone() * &big;
        assert_eq!(huge.to_string(), "85070591730234615865843651857942052864");
        assert_eq!(huge.clone() * &big.inv().unwrap() * &big.inv().unwrap(), Rational::one());
        assert!(Rational::from_i64(i64::MIN) < -Rational::from_i64(i64::MAX));
        assert_eq!(-Rational::from_i64(i64::MIN), big);
    }

    #[test]
    fn order_matches_big_rational() {
        let vals = ["-7/3", "-2", "0", "1/1000000007", "5/2", "9223372036854775807/2", "9223372036854775809"];
        for a in vals {
            for b in vals {
                assert_eq!(q(a).cmp(&q(b)), q(a).to_big().cmp(&q(b).to_big()), "{a} vs {b}");
            }
        }
    }
}
