//! Dense univariate polynomials over a [`Scalar`].

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// Coefficients in ascending degree order, no trailing zeros.
/// The zero polynomial is the empty sequence and reports degree -1.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial {
            coeffs: vec![T::one()],
        }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Polynomial::new(values.iter().map(|v| T::from_int(*v)).collect())
    }

    /// -1 for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of z^i, zero beyond the stored degree.
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }

    pub fn scale(&self, k: &T) -> Self {
        Polynomial::new(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }

    /// Multiply by z^k.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); k];
        out.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs: out }
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * T::from_int(i as i64))
                .collect(),
        )
    }

    /// Long division that must leave no remainder.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::Domain("division by the zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(Polynomial::zero());
        }
        if self.coeffs.len() < divisor.coeffs.len() {
            return Err(Error::InexactDivision);
        }
        let mut rem = self.coeffs.clone();
        let dlen = divisor.coeffs.len();
        let lead = divisor.coeffs[dlen - 1].clone();
        let qlen = rem.len() - dlen + 1;
        let mut quot = vec![T::zero(); qlen];
        for qi in (0..qlen).rev() {
            let c = rem[qi + dlen - 1].clone() / lead.clone();
            if !c.is_zero() {
                for (di, d) in divisor.coeffs.iter().enumerate() {
                    rem[qi + di] = rem[qi + di].clone() - c.clone() * d.clone();
                }
            }
            quot[qi] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision);
        }
        Ok(Polynomial::new(quot))
    }

    /// Readable form in ascending degree order, e.g. "1 + 9z" or "2 - z".
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = *c < T::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let unit = mag.is_one();
            if !unit || i == 0 {
                out.push_str(&mag.to_string());
            }
            match i {
                0 => {}
                1 => out.push_str(var),
                _ => out.push_str(&format!("{var}^{i}")),
            }
        }
        if out.is_empty() {
            "0".to_string()
        } else {
            out
        }
    }
}

impl Polynomial<Rational> {
    /// Split into `content * primitive` where the primitive part has coprime
    /// integer coefficients and a positive lowest nonzero coefficient.
    pub fn content_split(&self) -> (Rational, Polynomial<Rational>) {
        if self.is_zero() {
            return (Rational::zero(), Polynomial::zero());
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut content = Rational::new(num_gcd, den_lcm);
        let low = self.coeffs.iter().find(|c| !c.is_zero()).unwrap();
        if low.numer().sign() == Sign::Minus {
            content = -content;
        }
        let primitive = self.scale(&(Rational::one() / content.clone()));
        (content, primitive)
    }
}

impl<T: Scalar> std::fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.render("z"))
    }
}
