use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::rational::parse_rational;
use crate::error::{Error, Result};

/// Dense polynomial in `e` with rational coefficients, ascending degree.
///
/// Invariant: the coefficient vector is empty for the zero polynomial and
/// otherwise ends in a nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The monomial `c * e^degree`.
    pub fn monomial(c: BigRational, degree: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); degree + 1];
        coeffs[degree] = c;
        Poly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    /// Lowest-degree nonzero coefficient; it decides the sign as `e -> 0+`.
    pub fn lowest(&self) -> Option<&BigRational> {
        self.coeffs.iter().find(|c| !c.is_zero())
    }

    pub fn scale(&self, k: &BigRational) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }

    /// Euclidean division; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let lead = divisor.leading().ok_or(Error::DivisionByZero)?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for shift in (0..quot.len()).rev() {
            let top = &rem[shift + dd];
            if top.is_zero() {
                continue;
            }
            let factor = top / lead;
            for (k, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + k] -= &factor * d;
            }
            quot[shift] = factor;
        }
        rem.truncate(dd);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Monic greatest common divisor (zero iff both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        match a.leading().cloned() {
            Some(lead) => a.scale(&lead.recip()),
            None => a,
        }
    }

    /// Parses a sum of terms `<rational>`, `<rational>*e`, `<rational>*e^<k>`.
    /// A bare `e` / `e^k` is accepted with coefficient one.
    pub fn parse(literal: &str) -> Result<Poly> {
        let err = |reason: &str| Error::ParseScalar {
            literal: literal.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = literal.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty polynomial"));
        }
        // Split into signed terms at '+'/'-' that do not start the string.
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'+' | b'-') {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);

        let mut acc = Poly::zero();
        for term in terms {
            // An explicit separator may be followed by a signed coefficient,
            // as in `2 + -3*e`.
            let mut negative = false;
            let mut body = term;
            for _ in 0..2 {
                match body.as_bytes().first() {
                    Some(b'+') => body = &body[1..],
                    Some(b'-') => {
                        negative = !negative;
                        body = &body[1..];
                    }
                    _ => break,
                }
            }
            if body.is_empty() || body.starts_with(['+', '-']) {
                return Err(err("dangling sign"));
            }
            let (coeff_part, power_part) = match body.find('e') {
                None => (body, None),
                Some(pos) => {
                    let coeff = &body[..pos];
                    let coeff = if coeff.is_empty() {
                        "1"
                    } else {
                        coeff
                            .strip_suffix('*')
                            .filter(|c| !c.is_empty())
                            .ok_or_else(|| err("expected '*' between coefficient and e"))?
                    };
                    (coeff, Some(&body[pos + 1..]))
                }
            };
            let mut coeff = parse_rational(coeff_part).map_err(|_| err("bad coefficient"))?;
            if negative {
                coeff = -coeff;
            }
            let degree = match power_part {
                None => 0,
                Some("") => 1,
                Some(p) => {
                    let digits = p.strip_prefix('^').ok_or_else(|| err("expected '^'"))?;
                    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                        return Err(err("exponent must be a nonnegative integer"));
                    }
                    digits
                        .parse::<usize>()
                        .map_err(|_| err("exponent too large"))?
                }
            };
            if degree > 4096 {
                return Err(err("exponent too large"));
            }
            acc = acc.add(&Poly::monomial(coeff, degree));
        }
        Ok(acc)
    }
}

fn write_coeff(f: &mut fmt::Formatter<'_>, c: &BigRational) -> fmt::Result {
    if c.denom().is_one() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (degree, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            if degree == 0 {
                write_coeff(f, &magnitude)?;
                continue;
            }
            if !magnitude.is_one() {
                write_coeff(f, &magnitude)?;
                f.write_str("*")?;
            }
            if degree == 1 {
                f.write_str("e")?;
            } else {
                write!(f, "e^{degree}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
