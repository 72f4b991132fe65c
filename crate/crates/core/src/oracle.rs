//! Brute-force `Φ_pq` by exact dense polynomial arithmetic.
//!
//! `Φ_pq = (X^{pq} - 1)(X - 1) / ((X^p - 1)(X^q - 1))`, computed with
//! arbitrary-precision coefficients. Nothing here touches basic words, so
//! it can serve as ground truth for the compressed construction.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::basicwords::is_prime;
use crate::words::TernaryWord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("not an exact divisor: nonzero remainder")]
    NotExactDivisor,
    #[error("coefficient of X^{degree} is outside {{-1, 0, 1}}")]
    CoefficientOutOfAlphabet { degree: usize },
    #[error("zero polynomial has no gapset")]
    ZeroPolynomial,
    #[error("expected distinct primes, got ({p}, {q})")]
    InvalidPrimes { p: u64, q: u64 },
}

/// Dense polynomial with big-integer coefficients in ascending degree.
/// The coefficient vector never ends in a zero; the zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut poly = Self { coeffs };
        poly.normalize();
        poly
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_i64s(&[1])
    }

    /// `X^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = BigInt::from(-1);
        coeffs[n] += BigInt::one();
        Self::new(coeffs)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, degree: usize) -> BigInt {
        self.coeffs.get(degree).cloned().unwrap_or_default()
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// `f(-X)`.
    pub fn negate_variable(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Schoolbook product, skipping zero terms of either factor.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let rhs: Vec<(usize, &BigInt)> = other
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for &(j, b) in &rhs {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Exact quotient by long division; fails unless the remainder is zero.
    pub fn div_exact(&self, den: &Self) -> Result<Self, OracleError> {
        let den_degree = den.degree().ok_or(OracleError::ZeroDivisor)?;
        let Some(num_degree) = self.degree() else {
            return Ok(Self::zero());
        };
        if num_degree < den_degree {
            return Err(OracleError::NotExactDivisor);
        }
        let lead = &den.coeffs[den_degree];
        let lower: Vec<(usize, &BigInt)> = den.coeffs[..den_degree]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut rem = self.coeffs.clone();
        let mut quotient = vec![BigInt::zero(); num_degree - den_degree + 1];
        for k in (0..quotient.len()).rev() {
            let top = std::mem::take(&mut rem[k + den_degree]);
            if top.is_zero() {
                continue;
            }
            if !(&top % lead).is_zero() {
                return Err(OracleError::NotExactDivisor);
            }
            let factor = top / lead;
            for &(j, c) in &lower {
                rem[k + j] -= &factor * c;
            }
            quotient[k] = factor;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(OracleError::NotExactDivisor);
        }
        Ok(Self::new(quotient))
    }
}

pub fn poly_mul(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    a.mul(b)
}

pub fn poly_div_exact(
    num: &IntPolynomial,
    den: &IntPolynomial,
) -> Result<IntPolynomial, OracleError> {
    num.div_exact(den)
}

/// `Φ_n = (X^n - 1) / (X - 1)` for prime `n`.
pub fn cyclotomic_prime(n: u64) -> Result<IntPolynomial, OracleError> {
    if !is_prime(n) {
        return Err(OracleError::InvalidPrimes { p: n, q: n });
    }
    IntPolynomial::x_pow_minus_one(n as usize).div_exact(&IntPolynomial::x_pow_minus_one(1))
}

/// `Φ_pq` for distinct primes `p`, `q` via the division identity.
pub fn cyclotomic_pq(p: u64, q: u64) -> Result<IntPolynomial, OracleError> {
    if p == q || !is_prime(p) || !is_prime(q) {
        return Err(OracleError::InvalidPrimes { p, q });
    }
    let (p, q) = (p as usize, q as usize);
    let num = IntPolynomial::x_pow_minus_one(p * q).mul(&IntPolynomial::x_pow_minus_one(1));
    let den = IntPolynomial::x_pow_minus_one(p).mul(&IntPolynomial::x_pow_minus_one(q));
    num.div_exact(&den)
}

/// Coefficient word: position `j` holds the coefficient of `X^j`.
pub fn word_from_poly(f: &IntPolynomial) -> Result<TernaryWord, OracleError> {
    let letters = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(degree, c)| {
            c.to_i8()
                .filter(|v| v.abs() <= 1)
                .ok_or(OracleError::CoefficientOutOfAlphabet { degree })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TernaryWord::from_letters_unchecked(letters))
}

/// Differences of consecutive exponents of the nonzero terms.
pub fn poly_gapset(f: &IntPolynomial) -> Result<BTreeSet<usize>, OracleError> {
    if f.is_zero() {
        return Err(OracleError::ZeroPolynomial);
    }
    let exponents: Vec<usize> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, _)| e)
        .collect();
    Ok(exponents.windows(2).map(|w| w[1] - w[0]).collect())
}

/// Largest absolute coefficient.
pub fn height(f: &IntPolynomial) -> BigInt {
    f.coeffs().iter().map(|c| c.abs()).max().unwrap_or_default()
}
