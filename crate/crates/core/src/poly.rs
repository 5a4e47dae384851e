//! Exact rationals and dense univariate polynomials over them.
//!
//! Coefficients are stored in ascending order: `coeffs[i]` is the coefficient
//! of `x^i`. The zero polynomial is the empty vector, and its degree is `None`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{GfpError, Result};

/// Arbitrary-precision fraction, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p` or `p/q` (optional sign on `p`, `q` nonzero).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = |reason: &str| GfpError::Parse {
        input: s.to_string(),
        reason: reason.to_string(),
    };
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let num: BigInt = num.parse().map_err(|_| err("bad numerator"))?;
    let den: BigInt = match den {
        Some(d) => d.parse().map_err(|_| err("bad denominator"))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Dense polynomial in Q[x], canonical (no trailing zero coefficients).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: Rational, power: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); power + 1];
        coeffs[power] = c;
        Self::from_coeffs(coeffs)
    }

    /// Builds from ascending coefficients, dropping trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    /// Ascending integer coefficients: `from_ints(&[1, 0, 2])` is `2x^2 + 1`.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree_lc(&self) -> (Option<usize>, Rational) {
        (self.degree(), self.lc())
    }

    /// True for nonzero constants and for zero.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    /// Horner evaluation.
    pub fn evaluate(&self, at: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * at + c)
    }

    /// Euclidean division: `self = divisor * quotient + remainder`, with
    /// `deg(remainder) < deg(divisor)` or `remainder = 0`.
    pub fn divrem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let dd = divisor.degree().ok_or(GfpError::DivisionByZero)?;
        let lead = divisor.lc();
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree().filter(|&sd| sd >= dd) else {
            return Ok((Self::zero(), self.clone()));
        };
        let mut quo = vec![Rational::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = &rem[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quo[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(quo), Self::from_coeffs(rem)))
    }

    /// Quotient of a division that must be exact.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Polynomial> {
        let (q, r) = self.divrem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(GfpError::InexactDivision(format!(
                "({self}) / ({divisor}) leaves remainder {r}"
            )))
        }
    }

    /// Scales to leading coefficient 1; zero stays zero.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.lc().recip())
    }

    /// Monic gcd over Q by the Euclidean remainder sequence.
    pub fn gcd(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.is_zero() && other.is_zero() {
            return Err(GfpError::GcdOfZeros);
        }
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b)?;
            a = b;
            b = r.monic();
        }
        Ok(a)
    }

    /// True when both polynomials are equal up to a nonzero constant factor.
    pub fn associate_of(&self, other: &Polynomial) -> bool {
        self.monic() == other.monic()
    }

    /// gcd of the numerators of all coefficients; zero for the zero polynomial.
    pub fn numerator_content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| {
            num_integer::Integer::gcd(&acc, c.numer())
        })
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => {}
                (_, false) => write!(f, "{mag}*")?,
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl FromStr for Polynomial {
    type Err = GfpError;

    fn from_str(s: &str) -> Result<Self> {
        Parser::new(s).parse()
    }
}

struct Parser<'a> {
    input: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Self {
        Parser {
            input,
            chars: input.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
        }
    }

    fn err(&self, reason: impl Into<String>) -> GfpError {
        GfpError::Parse {
            input: self.input.to_string(),
            reason: reason.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn uint(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| {
            self.chars[start..self.pos]
                .iter()
                .collect::<String>()
                .parse()
                .expect("digits")
        })
    }

    fn parse(mut self) -> Result<Polynomial> {
        if self.chars.is_empty() {
            return Err(self.err("empty input"));
        }
        let mut acc: Vec<Rational> = Vec::new();
        let mut first = true;
        while self.pos < self.chars.len() {
            let negative = if self.eat('+') {
                false
            } else if self.eat('-') {
                true
            } else if first {
                false
            } else {
                return Err(self.err(format!("expected '+' or '-' at offset {}", self.pos)));
            };
            first = false;
            let (mut c, power) = self.term()?;
            if negative {
                c = -c;
            }
            if acc.len() <= power {
                acc.resize(power + 1, Rational::zero());
            }
            acc[power] += c;
        }
        Ok(Polynomial::from_coeffs(acc))
    }

    fn term(&mut self) -> Result<(Rational, usize)> {
        let coeff = match self.uint() {
            Some(num) => {
                let den = if self.eat('/') {
                    self.uint()
                        .ok_or_else(|| self.err("expected denominator"))?
                } else {
                    BigInt::one()
                };
                if den.is_zero() {
                    return Err(self.err("zero denominator"));
                }
                let c = Rational::new(num, den);
                if !self.eat('*') {
                    return Ok((c, 0));
                }
                c
            }
            None => Rational::one(),
        };
        if !self.eat('x') {
            return Err(self.err(format!("expected 'x' at offset {}", self.pos)));
        }
        let power = if self.eat('^') {
            let p = self.uint().ok_or_else(|| self.err("expected exponent"))?;
            usize::try_from(p).map_err(|_| self.err("exponent too large"))?
        } else {
            1
        };
        Ok((coeff, power))
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (a, b) in coeffs.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(coeffs)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(p("x^2 + 1") + p("-x^2"), Polynomial::one());
        assert_eq!(Polynomial::zero() + p("x^3 + 2*x"), p("x^3 + 2*x"));
        assert_eq!(p("x") + p("x"), p("2*x"));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(p("x + 1") * p("x - 1"), p("x^2 - 1"));
        assert!((p("x^2 + 1") * Polynomial::zero()).is_zero());
        assert_eq!(p("x^2 + 1") * p("x"), p("x^3 + x"));
    }

    #[test]
    fn degree_and_lc() {
        assert_eq!(p("x^3 + 2*x").degree_lc(), (Some(3), rat(1)));
        assert_eq!(p("7").degree_lc(), (Some(0), rat(7)));
        assert_eq!(Polynomial::zero().degree_lc(), (None, rat(0)));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p("x^2 + 1").derivative(), p("2*x"));
        assert!(p("5").derivative().is_zero());
        assert_eq!(p("x^3 + 2*x").derivative(), p("3*x^2 + 2"));
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(p("x^3 + 2*x").evaluate(&rat(1)), rat(3));
        assert_eq!(p("x^3 + 2*x").evaluate(&rat(2)), rat(12));
        assert_eq!(Polynomial::zero().evaluate(&rat_frac(-3, 7)), rat(0));
    }

    #[test]
    fn divrem_examples() {
        assert_eq!(
            p("x^2 + 1").divrem(&p("x^2 + 4")).unwrap(),
            (p("1"), p("-3"))
        );
        let q = p("3*x^4 - 1/2*x + 2");
        assert_eq!(
            q.divrem(&q).unwrap(),
            (Polynomial::one(), Polynomial::zero())
        );
        assert_eq!(
            p("x^3 + 2*x").divrem(&p("x")).unwrap(),
            (p("x^2 + 2"), Polynomial::zero())
        );
        assert_eq!(
            p("x").divrem(&Polynomial::zero()),
            Err(GfpError::DivisionByZero)
        );
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(
            p("x^2 + 1").gcd(&p("x^3 + 2*x")).unwrap(),
            Polynomial::one()
        );
        assert_eq!(
            p("2*x^2 + 4").gcd(&Polynomial::zero()).unwrap(),
            p("x^2 + 2")
        );
        assert_eq!(p("x").gcd(&p("x^2 + 2*x")).unwrap(), p("x"));
        assert_eq!(
            Polynomial::zero().gcd(&Polynomial::zero()),
            Err(GfpError::GcdOfZeros)
        );
    }

    #[test]
    fn printing() {
        assert_eq!(p("x^3 + 2*x").to_string(), "x^3 + 2*x");
        assert_eq!(p("-1/2*x^2 + 3").to_string(), "-1/2*x^2 + 3");
        assert_eq!(p("4*x^2 - 1").to_string(), "4*x^2 - 1");
        assert_eq!(p("-x + 0*x^5").to_string(), "-x");
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(p("x - x").to_string(), "0");
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "x^", "2*", "1/0", "x x", "3/x", "y"] {
            assert!(bad.parse::<Polynomial>().is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("6/-4").unwrap(), rat_frac(-3, 2));
        assert_eq!(parse_rational(" 0/5 ").unwrap(), rat(0));
        assert_eq!(rat_frac(0, -9).denom(), &BigInt::one());
        assert!(parse_rational("1/0").is_err());
    }
}
