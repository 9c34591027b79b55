use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_rational::BigRational;
use num_traits::{One, Signed};

use super::{OrderedField, Poly, Sign};
use crate::error::{Error, Result};

/// Rational function in a positive infinitesimal `e`.
///
/// Stored as `numer/denom` with no common factor and the lowest-degree
/// nonzero coefficient of `denom` equal to one. The order is the order of
/// germs at `0+`: the sign of a value is the sign of the lowest-degree
/// nonzero coefficient of its numerator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    numer: Poly,
    denom: Poly,
}

impl RatFunc {
    /// Builds `numer/denom` and normalizes it.
    pub fn new(numer: Poly, denom: Poly) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(numer, denom))
    }

    fn normalized(numer: Poly, denom: Poly) -> Self {
        if numer.is_zero() {
            return RatFunc {
                numer,
                denom: Poly::one(),
            };
        }
        let (numer, denom) = if denom.degree() == Some(0) {
            (numer, denom)
        } else {
            let g = numer.gcd(&denom);
            if g.is_one() {
                (numer, denom)
            } else {
                (
                    numer.div_rem(&g).expect("gcd is nonzero").0,
                    denom.div_rem(&g).expect("gcd is nonzero").0,
                )
            }
        };
        let low = denom.lowest().expect("nonzero denominator").clone();
        if low.is_one() {
            RatFunc { numer, denom }
        } else {
            let k = low.recip();
            RatFunc {
                numer: numer.scale(&k),
                denom: denom.scale(&k),
            }
        }
    }

    /// The infinitesimal `e` itself.
    pub fn epsilon() -> Self {
        RatFunc {
            numer: Poly::monomial(BigRational::one(), 1),
            denom: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            numer: p,
            denom: Poly::one(),
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.numer
    }

    pub fn denom(&self) -> &Poly {
        &self.denom
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom.is_one() {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "({})/({})", self.numer, self.denom)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl OrderedField for RatFunc {
    const TAG: &'static str = "ratfunc-eps";

    fn zero() -> Self {
        RatFunc::from_poly(Poly::zero())
    }

    fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }

    fn from_i64(value: i64) -> Self {
        RatFunc::from_poly(Poly::constant(BigRational::from_integer(value.into())))
    }

    fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    fn signum(&self) -> Sign {
        match self.numer.lowest() {
            None => Sign::Zero,
            Some(c) if c.is_positive() => Sign::Positive,
            Some(_) => Sign::Negative,
        }
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.denom.clone(), self.numer.clone()))
    }

    fn parse_literal(literal: &str) -> Result<Self> {
        let compact: String = literal.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |reason: &str| Error::ParseScalar {
            literal: literal.to_string(),
            reason: reason.to_string(),
        };
        if let Some(rest) = compact.strip_prefix('(') {
            let close = rest.find(')').ok_or_else(|| err("unbalanced parenthesis"))?;
            let numer = Poly::parse(&rest[..close])?;
            let tail = &rest[close + 1..];
            if tail.is_empty() {
                return Ok(RatFunc::from_poly(numer));
            }
            let denom_src = tail
                .strip_prefix("/(")
                .and_then(|d| d.strip_suffix(')'))
                .ok_or_else(|| err("expected (<poly>)/(<poly>)"))?;
            if denom_src.contains(['(', ')']) {
                return Err(err("nested parentheses"));
            }
            let denom = Poly::parse(denom_src)?;
            RatFunc::new(numer, denom).map_err(|_| err("zero denominator"))
        } else {
            if compact.contains([')', '(']) {
                return Err(err("unbalanced parenthesis"));
            }
            Poly::parse(&compact).map(RatFunc::from_poly)
        }
    }
}

impl PartialOrd for RatFunc {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RatFunc {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        match (self.clone() - other).signum() {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        self + &rhs
    }
}

impl<'a> Add<&'a RatFunc> for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &'a RatFunc) -> RatFunc {
        if self.denom == rhs.denom {
            return Self::normalized(self.numer.add(&rhs.numer), self.denom);
        }
        let numer = self.numer.mul(&rhs.denom).add(&rhs.numer.mul(&self.denom));
        Self::normalized(numer, self.denom.mul(&rhs.denom))
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl<'a> Sub<&'a RatFunc> for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &'a RatFunc) -> RatFunc {
        self + &(-rhs.clone())
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        self * &rhs
    }
}

impl<'a> Mul<&'a RatFunc> for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &'a RatFunc) -> RatFunc {
        Self::normalized(self.numer.mul(&rhs.numer), self.denom.mul(&rhs.denom))
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            numer: self.numer.neg(),
            denom: self.denom,
        }
    }
}

impl<'a> AddAssign<&'a RatFunc> for RatFunc {
    fn add_assign(&mut self, rhs: &'a RatFunc) {
        *self = std::mem::replace(self, RatFunc::zero()) + rhs;
    }
}

impl<'a> SubAssign<&'a RatFunc> for RatFunc {
    fn sub_assign(&mut self, rhs: &'a RatFunc) {
        *self = std::mem::replace(self, RatFunc::zero()) - rhs;
    }
}

impl<'a> MulAssign<&'a RatFunc> for RatFunc {
    fn mul_assign(&mut self, rhs: &'a RatFunc) {
        *self = std::mem::replace(self, RatFunc::zero()) * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> RatFunc {
        RatFunc::parse_literal(s).unwrap()
    }

    #[test]
    fn sign_is_taken_at_zero_plus() {
        assert_eq!(r("e - e^2").signum(), Sign::Positive);
        assert_eq!(r("-e + 1000*e^2").signum(), Sign::Negative);
        assert_eq!(r("(1)/(-e)").signum(), Sign::Negative);
    }

    #[test]
    fn non_archimedean_against_large_integer() {
        let x = r("1 - 1000*e");
        assert!(x.is_positive());
        let shifted = x - RatFunc::epsilon() * RatFunc::from_i64(1_000_000);
        assert!(shifted.is_positive());
        assert_eq!(shifted, r("1 - 1001000*e"));
    }

    #[test]
    fn inverse_cancels() {
        let one_minus_e = r("1 - e");
        let inv = r("(1)/(1 - e)");
        assert_eq!(inv * one_minus_e, RatFunc::one());
    }

    #[test]
    fn normalization_removes_common_factors() {
        let v = r("(e^2 - 1)/(2*e - 2)");
        assert_eq!(v, r("1/2 + 1/2*e"));
        assert!(v.denom().is_one());
        // Denominator's lowest coefficient is scaled to one.
        let w = r("(1)/(2*e)");
        assert_eq!(w.denom(), &Poly::parse("e").unwrap());
        assert_eq!(w.to_string(), "(1/2)/(e)");
    }

    #[test]
    fn render_round_trips() {
        for s in ["0", "3/4", "e", "1 - 1000*e", "(1)/(1 - e)", "(-1/4)/(e)", "(2 + e^3)/(e^2 + e^5)"] {
            let v = r(s);
            assert_eq!(r(&v.render()), v, "{s}");
        }
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["(1", "(1)/(0)", "(1)/2", "((1))", "1)", "(1)(2)"] {
            assert!(RatFunc::parse_literal(bad).is_err(), "{bad:?}");
        }
    }
}
