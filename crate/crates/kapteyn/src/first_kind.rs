//! Coefficient transforms for Kapteyn series of the first kind.
//!
//! With `z^nu f(z) = sum_n a_n J_{nu+n}((nu+n) z)` and
//! `f(z) = sum_m b_m z^m`, the two directions are the triangular sums
//!
//! ```text
//! b_s = sum_{m=0}^{floor(s/2)} u_{s,m} a_{s-2m}
//! a_s = sum_{m=0}^{floor(s/2)} v_{s,m} b_{s-2m}
//! ```
//!
//! whose cell weights are
//!
//! ```text
//! u_{n,k} = (-1)^k / (k! Gamma(nu+n-k+1)) ((nu+n-2k)/2)^(nu+n)
//! v_{n,k} = (1/2) (nu+n-2k)^2 Gamma(nu+n-k)/k! (2/(nu+n))^(nu+n-2k+1)
//! ```
//!
//! with the degenerate cell v_{0,0} = 1 when nu+n = 0. The weights are
//! mutually inverse along each parity chain:
//! `sum_{j=k}^{s} u_{2j,j-k} v_{2s,s-j} = delta_{k,s}`, and the same with
//! indices 2j+1, 2s+1.
//!
//! Truncation is honest: a length N+1 input yields the exact first N+1
//! output coefficients of the infinite relation, because cell (s, m) only
//! reads index s-2m <= s.

use crate::error::{Error, Result};
use crate::scalar::{factorial_scalar, Scalar};

/// Orders must be nonnegative; exact scalars additionally require integers
/// (half-integer or real orders belong to the floating path).
pub(crate) fn check_order<T: Scalar>(name: &str, x: &T) -> Result<()> {
    if *x < T::zero() {
        return Err(Error::Domain(format!("{name} must be >= 0, got {x}")));
    }
    if T::EXACT && !x.is_integer_valued() {
        return Err(Error::Exactness(format!(
            "exact transforms need an integer {name}, got {x}; use the floating path"
        )));
    }
    Ok(())
}

/// Weight taking Kapteyn coefficients to Taylor coefficients.
pub fn coeff_u<T: Scalar>(nu: &T, n: usize, k: usize) -> Result<T> {
    check_order("nu", nu)?;
    if 2 * k > n {
        return Err(Error::Domain(format!("k={k} out of range for n={n}")));
    }
    let order = nu.clone() + T::from_int(n as i64);
    let base = (order.clone() - T::from_int(2 * k as i64)) / T::from_int(2);
    let power = base.pow_int(&order)?;
    let g = (order - T::from_int(k as i64) + T::one()).gamma()?;
    let sign = if k % 2 == 0 { T::one() } else { -T::one() };
    Ok(sign * power / (factorial_scalar::<T>(k) * g))
}

/// Weight taking Taylor coefficients back to Kapteyn coefficients.
pub fn coeff_v<T: Scalar>(nu: &T, n: usize, k: usize) -> Result<T> {
    check_order("nu", nu)?;
    if 2 * k > n {
        return Err(Error::Domain(format!("k={k} out of range for n={n}")));
    }
    let order = nu.clone() + T::from_int(n as i64);
    if order.is_zero() {
        // nu + n = 0 forces n = k = 0; the formula degenerates and the
        // inverse pair pins this cell to 1
        return Ok(T::one());
    }
    let d = order.clone() - T::from_int(2 * k as i64);
    let exp = d.clone() + T::one();
    let power = (T::from_int(2) / order.clone()).pow_int(&exp)?;
    let g = (order - T::from_int(k as i64)).gamma()?;
    Ok(T::from_ratio(1, 2) * d.clone() * d * g * power / factorial_scalar::<T>(k))
}

/// Taylor coefficients of f from the Kapteyn coefficients of z^nu f.
pub fn kapteyn1_to_taylor<T: Scalar>(nu: &T, a: &[T]) -> Result<Vec<T>> {
    check_order("nu", nu)?;
    let mut b = Vec::with_capacity(a.len());
    for s in 0..a.len() {
        let mut acc = T::zero();
        for m in 0..=s / 2 {
            acc = acc + coeff_u(nu, s, m)? * a[s - 2 * m].clone();
        }
        b.push(acc);
    }
    Ok(b)
}

/// Kapteyn coefficients of z^nu f from the Taylor coefficients of f.
pub fn taylor_to_kapteyn1<T: Scalar>(nu: &T, b: &[T]) -> Result<Vec<T>> {
    check_order("nu", nu)?;
    let mut a = Vec::with_capacity(b.len());
    for s in 0..b.len() {
        let mut acc = T::zero();
        for m in 0..=s / 2 {
            acc = acc + coeff_v(nu, s, m)? * b[s - 2 * m].clone();
        }
        a.push(acc);
    }
    Ok(a)
}
