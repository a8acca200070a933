//! Dense polynomials in `q` with arbitrary-precision integer coefficients,
//! q-integers, q-factorials and the closed product formula for the
//! Poincaré polynomial of `X^I`.
//!
//! Rational functions never appear: every identity with a quotient on one
//! side is checked after clearing denominators.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::parabolic::SimpleSubset;

/// `coeffs[k]` is the coefficient of `q^k`; trailing zeros are trimmed, so
/// the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QPolynomial {
    coeffs: Vec<BigInt>,
}

impl QPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    /// `q^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        Self { coeffs }
    }

    /// `1 - q^k`.
    pub fn one_minus_q_pow(k: usize) -> Self {
        if k == 0 {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[0] = BigInt::one();
        coeffs[k] = -BigInt::one();
        Self { coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Adds `c · q^k` in place.
    pub fn add_term(&mut self, k: usize, c: impl Into<BigInt>) {
        if self.coeffs.len() <= k {
            self.coeffs.resize(k + 1, BigInt::zero());
        }
        self.coeffs[k] += c.into();
        self.trim();
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn evaluate_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Returns `c` with `self = divisor · c`, or `InexactDivision` when the
    /// quotient is not a polynomial with integer coefficients.
    pub fn exact_div(&self, divisor: &QPolynomial) -> Result<QPolynomial> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let Some(nd) = self.degree() else {
            return Ok(Self::zero());
        };
        if nd < dd {
            return Err(Error::InexactDivision);
        }
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for shift in (0..=nd - dd).rev() {
            let top = &rem[shift + dd];
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] -= &c * d;
            }
            quot[shift] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision);
        }
        Ok(Self::new(quot))
    }

    /// `coeff(k) == coeff(deg - k)` for all `k`. The zero polynomial counts
    /// as palindromic.
    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    /// Ascending coefficient list as decimal strings.
    pub fn to_decimal_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    pub fn from_decimal_strings<S: AsRef<str>>(coeffs: &[S]) -> Result<Self> {
        coeffs
            .iter()
            .map(|s| {
                s.as_ref()
                    .parse::<BigInt>()
                    .map_err(|e| Error::InvalidInput(format!("coefficient {:?}: {e}", s.as_ref())))
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = abs.is_one();
            match k {
                0 => write!(f, "{abs}")?,
                1 if unit => write!(f, "q")?,
                1 => write!(f, "{abs}q")?,
                _ if unit => write!(f, "q^{k}")?,
                _ => write!(f, "{abs}q^{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for QPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_decimal_strings().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(deserializer)?;
        QPolynomial::from_decimal_strings(&raw).map_err(serde::de::Error::custom)
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;

    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = vec![BigInt::zero(); len];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k] += c;
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            coeffs[k] += c;
        }
        QPolynomial::new(coeffs)
    }
}

impl Add for QPolynomial {
    type Output = QPolynomial;

    fn add(self, rhs: QPolynomial) -> QPolynomial {
        &self + &rhs
    }
}

impl Neg for &QPolynomial {
    type Output = QPolynomial;

    fn neg(self) -> QPolynomial {
        QPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &QPolynomial {
    type Output = QPolynomial;

    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;

    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPolynomial::new(coeffs)
    }
}

impl Mul for QPolynomial {
    type Output = QPolynomial;

    fn mul(self, rhs: QPolynomial) -> QPolynomial {
        &self * &rhs
    }
}

impl Sum for QPolynomial {
    fn sum<I: Iterator<Item = QPolynomial>>(iter: I) -> QPolynomial {
        iter.fold(QPolynomial::zero(), |acc, p| &acc + &p)
    }
}

impl<'a> Sum<&'a QPolynomial> for QPolynomial {
    fn sum<I: Iterator<Item = &'a QPolynomial>>(iter: I) -> QPolynomial {
        iter.fold(QPolynomial::zero(), |acc, p| &acc + p)
    }
}

/// Product of an iterator of polynomials; `1` when empty.
pub fn product<I: IntoIterator<Item = QPolynomial>>(factors: I) -> QPolynomial {
    factors
        .into_iter()
        .fold(QPolynomial::one(), |acc, p| &acc * &p)
}

/// `[k]_q = 1 + q + ... + q^{k-1}`; `[0]_q = 0`.
pub fn q_integer(k: usize) -> QPolynomial {
    QPolynomial::new(vec![BigInt::one(); k])
}

/// `[n]_q! = ∏_{k=1}^n [k]_q`.
pub fn q_factorial(n: usize) -> QPolynomial {
    product((1..=n).map(q_integer))
}

/// `((1-q^3)/(1-q^2))^{|I|} · ∏_{k=1}^n (1-q^k)/(1-q)` for special `I`,
/// with `n = I.n()`.
///
/// The full numerator is formed first and divided once by
/// `(1-q^2)^{|I|} (1-q)^n`; the division must be exact.
pub fn product_formula(subset: &SimpleSubset) -> Result<QPolynomial> {
    subset.ensure_special()?;
    let n = subset.n();
    let l = subset.len() as u32;
    let numerator = &QPolynomial::one_minus_q_pow(3).pow(l)
        * &product((1..=n).map(QPolynomial::one_minus_q_pow));
    let denominator =
        &QPolynomial::one_minus_q_pow(2).pow(l) * &QPolynomial::one_minus_q_pow(1).pow(n as u32);
    numerator.exact_div(&denominator)
}

/// Checks `∏_{i<j} (1-q^{j-i+1})/(1-q^{j-i}) = [n]_q!` after multiplying
/// both sides by `∏_{i<j} (1-q^{j-i}) · (1-q)^n`. No division is performed.
pub fn height_identity_check(n: usize) -> bool {
    let pairs = || (1..=n).flat_map(|i| (i + 1..=n).map(move |j| j - i));
    let shifted = product(pairs().map(|h| QPolynomial::one_minus_q_pow(h + 1)));
    let plain = product(pairs().map(QPolynomial::one_minus_q_pow));
    let clear = QPolynomial::one_minus_q_pow(1).pow(n as u32);
    &shifted * &clear == &(&q_factorial(n) * &plain) * &clear
}

/// Euler characteristic predicted by the product formula,
/// `n! · 3^{|I|} / 2^{|I|}`, as an exact integer.
pub fn euler_closed_form(subset: &SimpleSubset) -> Result<BigInt> {
    let n_fact: BigInt = (1..=subset.n()).map(BigInt::from).product();
    let l = subset.len() as u32;
    let num = n_fact * BigInt::from(3).pow(l);
    let den = BigInt::from(2).pow(l);
    let (quot, rem) = num.div_rem(&den);
    if !rem.is_zero() {
        return Err(Error::InexactDivision);
    }
    Ok(quot)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> QPolynomial {
        QPolynomial::from_i64s(c)
    }

    fn subset(n: usize, m: &[usize]) -> SimpleSubset {
        SimpleSubset::new(n, m.iter().copied()).unwrap()
    }

    #[test]
    fn canonical_form() {
        assert_eq!(p(&[1, 2, 0, 0]).coeffs().len(), 2);
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[0, 0]).degree(), None);
        assert_eq!((&p(&[1, 1]) - &p(&[1, 1])).degree(), None);
    }

    #[test]
    fn q_integers_and_factorials() {
        assert_eq!(q_integer(1), QPolynomial::one());
        assert_eq!(q_factorial(0), QPolynomial::one());
        assert_eq!(q_factorial(2), p(&[1, 1]));
        assert_eq!(q_factorial(3), p(&[1, 2, 2, 1]));
        assert_eq!(q_factorial(3).evaluate_at_one(), BigInt::from(6));
    }

    #[test]
    fn exact_division() {
        // (1 - q^3)(1 + q) / (1 - q^2) = 1 + q + q^2
        let num = &QPolynomial::one_minus_q_pow(3) * &p(&[1, 1]);
        assert_eq!(
            num.exact_div(&QPolynomial::one_minus_q_pow(2)).unwrap(),
            p(&[1, 1, 1])
        );
        assert_eq!(
            p(&[1, 1]).exact_div(&p(&[1, 0, 1])),
            Err(Error::InexactDivision)
        );
        assert_eq!(
            p(&[1, 0, 1]).exact_div(&p(&[1, 1])),
            Err(Error::InexactDivision)
        );
        assert_eq!(
            p(&[1, 2]).exact_div(&p(&[0, 2])),
            Err(Error::InexactDivision)
        );
        assert_eq!(
            p(&[1]).exact_div(&QPolynomial::zero()),
            Err(Error::DivisionByZero)
        );
        assert_eq!(
            QPolynomial::zero().exact_div(&p(&[3])).unwrap(),
            QPolynomial::zero()
        );
        assert_eq!(p(&[2, 4, 6]).exact_div(&p(&[2])).unwrap(), p(&[1, 2, 3]));
    }

    #[test]
    fn product_formula_examples() {
        assert_eq!(
            product_formula(&SimpleSubset::empty(3)).unwrap(),
            p(&[1, 2, 2, 1])
        );
        assert_eq!(
            product_formula(&subset(3, &[1])).unwrap(),
            p(&[1, 2, 3, 2, 1])
        );
        assert_eq!(
            product_formula(&subset(3, &[1])).unwrap(),
            q_integer(3).pow(2)
        );
        assert_eq!(product_formula(&subset(2, &[1])).unwrap(), p(&[1, 1, 1]));
        assert!(matches!(
            product_formula(&subset(3, &[1, 2])),
            Err(Error::NotSpecial(_))
        ));
        assert_eq!(
            product_formula(&SimpleSubset::empty(1)).unwrap(),
            QPolynomial::one()
        );
    }

    #[test]
    fn product_formula_structure() {
        for n in 1..=10 {
            assert_eq!(
                product_formula(&SimpleSubset::empty(n)).unwrap(),
                q_factorial(n)
            );
            for i in crate::parabolic::enumerate_special(n) {
                let poly = product_formula(&i).unwrap();
                assert_eq!(poly.degree(), Some(n * (n - 1) / 2 + i.len()));
                assert_eq!(poly.evaluate_at_one(), euler_closed_form(&i).unwrap());
                assert!(poly.coeffs().iter().all(|c| c.is_positive()));
                if n <= 8 {
                    assert!(poly.is_palindromic(), "n = {n}, I = {i}");
                }
            }
        }
    }

    #[test]
    fn height_identity() {
        for n in 1..=10 {
            assert!(height_identity_check(n), "n = {n}");
        }
    }

    #[test]
    fn palindromes() {
        assert!(p(&[1, 2, 1]).is_palindromic());
        assert!(!p(&[1, 2]).is_palindromic());
        assert!(product_formula(&subset(3, &[1])).unwrap().is_palindromic());
    }

    #[test]
    fn display() {
        assert_eq!(
            p(&[1, 2, 3, 2, 1]).to_string(),
            "1 + 2q + 3q^2 + 2q^3 + q^4"
        );
        assert_eq!(p(&[0, -1, 0, 5]).to_string(), "-q + 5q^3");
        assert_eq!(QPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn decimal_strings() {
        let big = q_factorial(12);
        let back = QPolynomial::from_decimal_strings(&big.to_decimal_strings()).unwrap();
        assert_eq!(back, big);
        assert!(QPolynomial::from_decimal_strings(&["1", "x"]).is_err());
        let json = serde_json::to_string(&p(&[1, 2])).unwrap();
        assert_eq!(json, r#"["1","2"]"#);
        assert_eq!(
            serde_json::from_str::<QPolynomial>(&json).unwrap(),
            p(&[1, 2])
        );
    }
}
