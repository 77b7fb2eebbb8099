use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{invalid, Result};

/// A polynomial in the indeterminate `t` with rational coefficients.
///
/// `coeffs[d]` is the coefficient of `t^d`; trailing zeros are always
/// stripped, so the zero polynomial has no coefficients and equality is
/// structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PolyT {
    coeffs: Vec<BigRational>,
}

impl PolyT {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyT { coeffs }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    /// `c * t^d`.
    pub fn monomial(c: BigRational, d: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); d + 1];
        coeffs[d] = c;
        PolyT { coeffs }
    }

    /// `t^d`.
    pub fn t_pow(d: usize) -> Self {
        Self::monomial(BigRational::one(), d)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, d: usize) -> BigRational {
        self.coeffs.get(d).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Multiplies by `t^d`.
    pub fn shift(&self, d: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); d];
        coeffs.extend(self.coeffs.iter().cloned());
        PolyT { coeffs }
    }

    /// Evaluates at `t = x` by Horner's rule.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Coefficients as `"p/q"` (or `"p"`) strings by increasing degree.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    /// Parses coefficients written as integers or `p/q` fractions.
    pub fn from_strings<S: AsRef<str>>(items: &[S]) -> Result<Self> {
        items
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }
}

/// Parses `"p"` or `"p/q"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .or_else(|_| invalid(format!("cannot parse {t:?} as an integer")))
    };
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return invalid(format!("zero denominator in {s:?}"));
            }
            Ok(BigRational::new(parse_int(n)?, d))
        }
    }
}

impl Zero for PolyT {
    fn zero() -> Self {
        PolyT { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for PolyT {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl AddAssign<&PolyT> for PolyT {
    fn add_assign(&mut self, rhs: &PolyT) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigRational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl Add<&PolyT> for &PolyT {
    type Output = PolyT;
    fn add(self, rhs: &PolyT) -> PolyT {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for PolyT {
    type Output = PolyT;
    fn add(mut self, rhs: PolyT) -> PolyT {
        self += &rhs;
        self
    }
}

impl Neg for &PolyT {
    type Output = PolyT;
    fn neg(self) -> PolyT {
        PolyT {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for PolyT {
    type Output = PolyT;
    fn neg(self) -> PolyT {
        -&self
    }
}

impl Sub<&PolyT> for &PolyT {
    type Output = PolyT;
    fn sub(self, rhs: &PolyT) -> PolyT {
        self + &(-rhs)
    }
}

impl Mul<&PolyT> for &PolyT {
    type Output = PolyT;
    fn mul(self, rhs: &PolyT) -> PolyT {
        if self.is_zero() || rhs.is_zero() {
            return PolyT::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        PolyT::new(coeffs)
    }
}

impl Mul for PolyT {
    type Output = PolyT;
    fn mul(self, rhs: PolyT) -> PolyT {
        &self * &rhs
    }
}

impl fmt::Display for PolyT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match d {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})t")?,
                _ => write!(f, "({c})t^{d}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn canonical_form() {
        let p = PolyT::new(vec![q(1, 1), q(0, 1), q(0, 1)]);
        assert_eq!(p.degree(), Some(0));
        assert!(PolyT::new(vec![q(0, 1)]).is_zero());
        let a = PolyT::new(vec![q(1, 1), q(2, 1)]);
        let b = PolyT::new(vec![q(-1, 1), q(-2, 1)]);
        assert!((&a + &b).is_zero());
    }

    #[test]
    fn ring_ops_and_eval() {
        // (1 + t)(1 - t) = 1 - t^2
        let a = PolyT::new(vec![q(1, 1), q(1, 1)]);
        let b = PolyT::new(vec![q(1, 1), q(-1, 1)]);
        let c = &a * &b;
        assert_eq!(c, PolyT::new(vec![q(1, 1), q(0, 1), q(-1, 1)]));
        assert_eq!(c.eval(&q(3, 2)), q(-5, 4));
        assert_eq!(PolyT::t_pow(3).eval(&q(2, 1)), q(8, 1));
        assert_eq!(a.shift(2), PolyT::new(vec![q(0, 1), q(0, 1), q(1, 1), q(1, 1)]));
    }

    #[test]
    fn string_round_trip() {
        let p = PolyT::new(vec![q(1, 2), q(0, 1), q(-3, 1)]);
        let s = p.to_strings();
        assert_eq!(s, vec!["1/2", "0", "-3"]);
        assert_eq!(PolyT::from_strings(&s).unwrap(), p);
        assert!(PolyT::from_strings(&["1/0"]).is_err());
        assert!(PolyT::from_strings(&["x"]).is_err());
    }
}
