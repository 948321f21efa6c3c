//! Exact arithmetic in `Q(sqrt 2)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `a + b * sqrt(2)` with rational `a`, `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QSqrt2 {
    a: BigRational,
    b: BigRational,
}

impl QSqrt2 {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Self { a, b }
    }

    pub fn from_int(a: i64) -> Self {
        Self::new(BigRational::from_integer(a.into()), BigRational::zero())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn sqrt2() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    /// `sqrt(2) / 2`, the cosine of `pi/4`.
    pub fn half_sqrt2() -> Self {
        Self::new(BigRational::zero(), BigRational::new(1.into(), 2.into()))
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn sqrt2_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// `a^2 - 2 b^2`; non-zero for non-zero elements since `sqrt 2` is irrational.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(2.into()) * &self.b * &self.b
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(Self::new(&self.a / &n, -&self.b / &n))
    }

    /// Parses one rational such as `"-3/4"`.
    pub fn parse_rational(s: &str) -> Result<BigRational> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad rational {s:?}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(n, d))
            }
            None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
        }
    }
}

impl Add for &QSqrt2 {
    type Output = QSqrt2;
    fn add(self, rhs: &QSqrt2) -> QSqrt2 {
        QSqrt2::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &QSqrt2 {
    type Output = QSqrt2;
    fn sub(self, rhs: &QSqrt2) -> QSqrt2 {
        QSqrt2::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Mul for &QSqrt2 {
    type Output = QSqrt2;
    fn mul(self, rhs: &QSqrt2) -> QSqrt2 {
        let two = BigRational::from_integer(2.into());
        QSqrt2::new(&self.a * &rhs.a + two * &self.b * &rhs.b, &self.a * &rhs.b + &self.b * &rhs.a)
    }
}

impl Neg for &QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2::new(-&self.a, -&self.b)
    }
}

impl fmt::Display for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*sqrt2", self.b),
            (false, false) => {
                let sign = if self.b.is_negative() { '-' } else { '+' };
                write!(f, "{} {sign} {}*sqrt2", self.a, self.b.abs())
            }
        }
    }
}

/// Accepts `"a"`, `"b*sqrt2"`, or `"a + b*sqrt2"` / `"a - b*sqrt2"`.
impl FromStr for QSqrt2 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty number".into()));
        }
        // Split into signed terms at a sign that does not follow '/' or '*'.
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'/' | b'*') {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        let mut out = QSqrt2::zero();
        for term in terms {
            let term = term.strip_prefix('+').unwrap_or(term);
            if let Some(coef) = term.strip_suffix("sqrt2") {
                let coef = coef.strip_suffix('*').unwrap_or(coef);
                out.b += match coef {
                    "" => BigRational::one(),
                    "-" => -BigRational::one(),
                    c => QSqrt2::parse_rational(c)?,
                };
            } else {
                out.a += QSqrt2::parse_rational(term)?;
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QSqrt2 {
        s.parse().unwrap()
    }

    #[test]
    fn field_operations() {
        let h = QSqrt2::half_sqrt2();
        assert_eq!(&h * &h, q("1/2"));
        assert_eq!(&(&h + &h) * &(&h + &h), q("2"));
        let x = q("1 + sqrt2");
        assert_eq!(&x * &x.inverse().unwrap(), QSqrt2::one());
        assert!(QSqrt2::zero().inverse().is_none());
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn parsing_and_display() {
        assert_eq!(q("1/2*sqrt2"), QSqrt2::half_sqrt2());
        assert_eq!(q("-sqrt2"), -&QSqrt2::sqrt2());
        assert_eq!(q("3 - 2*sqrt2").to_string(), "3 - 2*sqrt2");
        assert_eq!(q("-1/3").to_string(), "-1/3");
        assert_eq!(
            q("-1/2 + 1/2*sqrt2"),
            QSqrt2::new(QSqrt2::parse_rational("-1/2").unwrap(), QSqrt2::parse_rational("1/2").unwrap())
        );
        assert!("x".parse::<QSqrt2>().is_err());
        assert!("1/0".parse::<QSqrt2>().is_err());
    }
}
