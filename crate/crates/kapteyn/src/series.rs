//! Truncated power series: the first `order` coefficients of a formal series.

use crate::poly::Polynomial;
use crate::scalar::Scalar;

/// Coefficients of t^0 .. t^(order-1). Unlike [`Polynomial`] trailing zeros
/// are kept, because the truncation order is part of the meaning.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncSeries<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> TruncSeries<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        TruncSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncSeries {
            coeffs: vec![T::zero(); order],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order > 0 {
            s.coeffs[0] = T::one();
        }
        s
    }

    pub fn from_polynomial(p: &Polynomial<T>, order: usize) -> Self {
        TruncSeries {
            coeffs: (0..order).map(|i| p.coeff(i)).collect(),
        }
    }

    /// Number of retained coefficients.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        TruncSeries {
            coeffs: self.coeffs[..order].to_vec(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        TruncSeries {
            coeffs: (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        TruncSeries {
            coeffs: (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect(),
        }
    }

    /// Cauchy product truncated to the shorter order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![T::zero(); n];
        for i in 0..n.min(self.coeffs.len()) {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..(n - i).min(other.coeffs.len()) {
                out[i + j] =
                    out[i + j].clone() + self.coeffs[i].clone() * other.coeffs[j].clone();
            }
        }
        TruncSeries { coeffs: out }
    }

    /// self^exp truncated to `order` (<= self.order()), by binary exponentiation.
    pub fn pow(&self, exp: usize, order: usize) -> Self {
        assert!(order <= self.order(), "pow order exceeds base order");
        let mut result = Self::one(order);
        let mut base = self.truncate(order);
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn scale(&self, k: &T) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| c.clone() * k.clone()).collect(),
        }
    }

    /// Multiply by t^k, keeping the order (top coefficients fall off).
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.order();
        let mut out = vec![T::zero(); n];
        for i in k..n {
            out[i] = self.coeffs[i - k].clone();
        }
        TruncSeries { coeffs: out }
    }

    /// Apply t d/dt: coefficient of t^j picks up a factor j.
    pub fn t_d_dt(&self) -> Self {
        TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| c.clone() * T::from_int(j as i64))
                .collect(),
        }
    }

    /// Substitute t -> scale * t^power, truncated to `order` coefficients.
    pub fn compose_monomial(&self, scale: &T, power: usize, order: usize) -> Self {
        assert!(power >= 1);
        let mut out = vec![T::zero(); order];
        let mut factor = T::one();
        for (j, c) in self.coeffs.iter().enumerate() {
            let idx = j * power;
            if idx >= order {
                break;
            }
            out[idx] = c.clone() * factor.clone();
            factor = factor * scale.clone();
        }
        TruncSeries { coeffs: out }
    }

    /// sinh(t)/t = sum t^(2j) / (2j+1)!
    pub fn sinh_over_t(order: usize) -> Self {
        let mut out = vec![T::zero(); order];
        let mut c = T::one();
        let mut j = 0usize;
        while 2 * j < order {
            out[2 * j] = c.clone();
            c = c / T::from_int((2 * j as i64 + 2) * (2 * j as i64 + 3));
            j += 1;
        }
        TruncSeries { coeffs: out }
    }

    /// sinh(t) = sum t^(2j+1) / (2j+1)!
    pub fn sinh_t(order: usize) -> Self {
        let mut out = vec![T::zero(); order];
        let mut c = T::one();
        let mut j = 0usize;
        while 2 * j + 1 < order {
            out[2 * j + 1] = c.clone();
            c = c / T::from_int((2 * j as i64 + 2) * (2 * j as i64 + 3));
            j += 1;
        }
        TruncSeries { coeffs: out }
    }

    /// (1-t)^q for arbitrary scalar exponent q, by the binomial recurrence.
    pub fn one_minus_pow(q: &T, order: usize) -> Self {
        let mut out = vec![T::zero(); order];
        if order == 0 {
            return TruncSeries { coeffs: out };
        }
        out[0] = T::one();
        for j in 1..order {
            // e_j = e_{j-1} (j - 1 - q) / j
            out[j] = out[j - 1].clone() * (T::from_int(j as i64 - 1) - q.clone())
                / T::from_int(j as i64);
        }
        TruncSeries { coeffs: out }
    }
}
