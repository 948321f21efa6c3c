//! Integer polynomials in one variable `t`, rational Poincaré series, and
//! q-nomial coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Expansion bound used for fixture comparisons.
pub const DEFAULT_TRUNCATION: usize = 32;

/// Polynomial in `t` with integer coefficients; index = degree, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_coeffs<T: Into<BigInt> + Copy>(coeffs: &[T]) -> Self {
        Self::new(coeffs.iter().map(|&c| c.into()).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::new(vec![BigInt::from(c)])
    }

    /// `c * t^k`.
    pub fn monomial(c: i64, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::from(c);
        Self::new(coeffs)
    }

    /// `1 - t^k`.
    pub fn one_minus_t_pow(k: usize) -> Self {
        &Self::one() - &Self::monomial(1, k)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `t^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: Self) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: Self) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: Self) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "{mag}t^{k}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for IntPolynomial {
    type Err = Error;

    /// Parses expressions such as `(1+t)(1-t^4) - 3t^2` in the variable `t`.
    fn from_str(s: &str) -> Result<Self> {
        let mut parser = PolyParser { chars: s.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0 };
        let p = parser.expr()?;
        if parser.pos != parser.chars.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(p)
    }
}

struct PolyParser {
    chars: Vec<char>,
    pos: usize,
}

impl PolyParser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn error(&self, msg: &str) -> Error {
        let text: String = self.chars.iter().collect();
        Error::Parse(format!("{msg} at offset {} in `{text}`", self.pos))
    }

    fn expr(&mut self) -> Result<IntPolynomial> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -&self.term()?
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<IntPolynomial> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(c) if c == '(' || c == 't' || c.is_ascii_digit() => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<IntPolynomial> {
        let base = self.primary()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            let e = u32::try_from(e).map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().map_err(|_| self.error("integer too large"))
    }

    fn primary(&mut self) -> Result<IntPolynomial> {
        match self.peek() {
            Some('t') => {
                self.pos += 1;
                Ok(IntPolynomial::monomial(1, 1))
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                Ok(IntPolynomial::new(vec![BigInt::from(v)]))
            }
            _ => Err(self.error("expected `t`, an integer or `(`")),
        }
    }
}

/// Rational function `numerator / denominator` whose denominator has
/// constant term `+1`, so it expands as a power series with integer
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeries {
    numerator: IntPolynomial,
    denominator: IntPolynomial,
}

impl RationalSeries {
    pub fn new(numerator: IntPolynomial, denominator: IntPolynomial) -> Result<Self> {
        let c0 = denominator.coeff(0);
        if c0.is_one() {
            Ok(Self { numerator, denominator })
        } else if (-&c0).is_one() {
            Ok(Self { numerator: -&numerator, denominator: -&denominator })
        } else {
            Err(Error::NonUnitDenominator(c0.to_string()))
        }
    }

    pub fn polynomial(p: IntPolynomial) -> Self {
        Self { numerator: p, denominator: IntPolynomial::one() }
    }

    /// Parses a numerator and a denominator expression.
    pub fn parse(numerator: &str, denominator: &str) -> Result<Self> {
        Self::new(numerator.parse()?, denominator.parse()?)
    }

    pub fn numerator(&self) -> &IntPolynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &IntPolynomial {
        &self.denominator
    }

    /// Power-series coefficients `c_0..=c_bound`.
    pub fn expand(&self, bound: usize) -> Vec<BigInt> {
        // Constant term of the denominator is +1 by construction.
        let den = &self.denominator.coeffs;
        let mut out: Vec<BigInt> = Vec::with_capacity(bound + 1);
        for k in 0..=bound {
            let mut c = self.numerator.coeff(k);
            for i in 1..den.len().min(k + 1) {
                c -= &den[i] * &out[k - i];
            }
            out.push(c);
        }
        out
    }

    /// [`expand`](Self::expand) with coefficients converted to `u64`; panics
    /// on negative or oversized coefficients, which never occur for
    /// Poincaré series of graded vector spaces.
    pub fn expand_dims(&self, bound: usize) -> Vec<u64> {
        self.expand(bound)
            .into_iter()
            .map(|c| u64::try_from(c).expect("dimension series has a negative coefficient"))
            .collect()
    }

    pub fn scale(&self, c: i64) -> Self {
        Self { numerator: self.numerator.scale(&BigInt::from(c)), denominator: self.denominator.clone() }
    }
}

impl Mul for &RationalSeries {
    type Output = RationalSeries;

    fn mul(self, rhs: Self) -> RationalSeries {
        RationalSeries {
            numerator: &self.numerator * &rhs.numerator,
            denominator: &self.denominator * &rhs.denominator,
        }
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.numerator, self.denominator)
    }
}

/// Expands a series whose denominator constant term may be any integer,
/// reporting [`Error::NonUnitDenominator`] unless it is `+-1`.
pub fn expand(numerator: &IntPolynomial, denominator: &IntPolynomial, bound: usize) -> Result<Vec<BigInt>> {
    Ok(RationalSeries::new(numerator.clone(), denominator.clone())?.expand(bound))
}

/// Equality of rational functions by cross-multiplication.
pub fn rational_equal(a: &RationalSeries, b: &RationalSeries) -> bool {
    &a.numerator * &b.denominator == &b.numerator * &a.denominator
}

/// `sum_i c_i * r_i` over the product of the denominators.
pub fn linear_combination(terms: &[(i64, RationalSeries)]) -> RationalSeries {
    let mut num = IntPolynomial::zero();
    let mut den = IntPolynomial::one();
    for (c, r) in terms {
        num = &(&num * &r.denominator) + &(&r.numerator.scale(&BigInt::from(*c)) * &den);
        den = &den * &r.denominator;
    }
    RationalSeries { numerator: num, denominator: den }
}

/// Coefficients of `(1 + t + ... + t^(q-1))^x`, degrees `0..=x(q-1)`.
pub fn qnomial_row(x: u32, q: u32) -> Vec<BigUint> {
    assert!(q >= 1, "q-nomial needs q >= 1");
    let width = q as usize;
    let mut row = vec![BigUint::one()];
    for _ in 0..x {
        let mut next = vec![BigUint::zero(); row.len() + width - 1];
        // Sliding window sum over `width` consecutive entries.
        let mut window = BigUint::zero();
        for (k, slot) in next.iter_mut().enumerate() {
            if k < row.len() {
                window += &row[k];
            }
            if k >= width {
                window -= &row[k - width];
            }
            *slot = window.clone();
        }
        row = next;
    }
    row
}

/// Coefficient of `t^k` in `(1 + t + ... + t^(q-1))^x`; zero outside `0..=x(q-1)`.
pub fn qnomial(x: u32, q: u32, k: i64) -> BigUint {
    if k < 0 {
        return BigUint::zero();
    }
    qnomial_row(x, q).into_iter().nth(k as usize).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    fn series(n: &str, d: &str) -> RationalSeries {
        RationalSeries::parse(n, d).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn parser_handles_implicit_products() {
        assert_eq!(poly("(1-t)(1+t)"), poly("1 - t^2"));
        assert_eq!(poly("3t^2 - t + 2"), IntPolynomial::from_coeffs(&[2, -1, 3]));
        assert_eq!(poly("-t^2"), IntPolynomial::from_coeffs(&[0, 0, -1]));
        assert_eq!(poly("(1-t)^2*(1+t^2)"), poly("1 - 2t + 2t^2 - 2t^3 + t^4"));
        assert!("1 + ".parse::<IntPolynomial>().is_err());
        assert!("(1 + t".parse::<IntPolynomial>().is_err());
        assert!("x".parse::<IntPolynomial>().is_err());
    }

    #[test]
    fn display_round_trips() {
        let p = poly("1 - 2t + 3t^5");
        assert_eq!(p.to_string(), "1 - 2t + 3t^5");
        assert_eq!(poly(&p.to_string()), p);
    }

    #[test]
    fn geometric_series() {
        assert_eq!(series("1", "1-t").expand(4), ints(&[1, 1, 1, 1, 1]));
    }

    #[test]
    fn coinvariant_series() {
        assert_eq!(series("1", "(1-t)(1-t^2)").expand(5), ints(&[1, 1, 2, 2, 3, 3]));
    }

    #[test]
    fn target_ring_series() {
        assert_eq!(series("1+t", "(1-t)(1-t^4)").expand(6), ints(&[1, 2, 2, 2, 3, 4, 4]));
    }

    #[test]
    fn negative_denominator_is_normalized() {
        let r = series("1", "t - 1");
        assert_eq!(r.denominator().coeff(0), BigInt::from(1));
        assert_eq!(r.expand(3), ints(&[-1, -1, -1, -1]));
    }

    #[test]
    fn non_unit_denominator_rejected() {
        assert!(matches!(RationalSeries::parse("1", "t"), Err(Error::NonUnitDenominator(_))));
        assert!(matches!(expand(&poly("1"), &poly("2 - t"), 3), Err(Error::NonUnitDenominator(_))));
    }

    #[test]
    fn equality_examples() {
        assert!(rational_equal(&series("1+t", "(1-t)(1-t^4)"), &series("1", "(1-t)^2(1+t^2)")));
        assert!(rational_equal(&series("1+2t+t^2", "(1-t^2)^2"), &series("1", "(1-t)^2")));
        assert!(!rational_equal(&series("1", "1-t"), &series("1", "1-t^2")));
    }

    #[test]
    fn sd16_line_sum() {
        let total = linear_combination(&[
            (1, series("1+t^3", "(1-t)(1-t^4)")),
            (1, series("t", "1-t^4")),
            (1, series("t^2", "1-t^4")),
        ]);
        assert!(rational_equal(&total, &series("1", "(1-t)^2(1+t^2)")));
    }

    #[test]
    fn difference_with_itself_vanishes() {
        let x = series("1+3t", "(1-t)(1-t^3)");
        let d = linear_combination(&[(1, x.clone()), (-1, x)]);
        assert!(d.numerator().is_zero());
    }

    #[test]
    fn qnomial_examples() {
        let row: Vec<u64> = qnomial_row(3, 3).iter().map(|c| c.try_into().unwrap()).collect();
        assert_eq!(row, vec![1, 3, 6, 7, 6, 3, 1]);
        assert_eq!(qnomial(3, 5, 6), BigUint::from(19u32));
        assert_eq!(qnomial(3, 5, -1), BigUint::zero());
        assert_eq!(qnomial(3, 5, 13), BigUint::zero());
        assert_eq!(qnomial(0, 4, 0), BigUint::one());
        for k in 0..=6 {
            let binom = [1u32, 6, 15, 20, 15, 6, 1][k as usize];
            assert_eq!(qnomial(6, 2, k), BigUint::from(binom));
        }
    }
}
