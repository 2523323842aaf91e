//! Coefficient transforms for Kapteyn series of the second kind.
//!
//! The expansion pairs `z^{mu+nu} f(z)` with products of Bessel terms,
//!
//! ```text
//! z^{mu+nu} f(z) = sum_n (a_n + z c_n) J_{mu+n}(w_n z) J_{nu+n}(w_n z),
//! w_n = mu + nu + 2n,
//! ```
//!
//! so with f(z) = sum_m b_m z^m the even Taylor coefficients of f ride on
//! the a chain and the odd ones on the c chain (the z^{mu+nu} weight is
//! built into the cell weights):
//!
//! ```text
//! a_s = sum_{k=0}^{s} alpha_{s,k} b_{2k}      c_s = sum_{k=0}^{s} alpha_{s,k} b_{2k+1}
//! b_{2s} = sum_{k=0}^{s} beta_{s,k} a_k       b_{2s+1} = sum_{k=0}^{s} beta_{s,k} c_k
//! ```
//!
//! with cell weights
//!
//! ```text
//! alpha_{s,k} = (mu+nu+2k)^2 Gamma(mu+k+1) Gamma(nu+k+1)
//!               / ((mu+nu+s+k)(mu+nu+2s)) C(mu+nu+s+k, s-k)
//!               (2/(mu+nu+2s))^(mu+nu+2k)
//! beta_{s,k}  = (-1)^(s+k) / (Gamma(mu+s+1) Gamma(nu+s+1))
//!               C(mu+nu+2s, s-k) ((mu+nu+2k)/2)^(mu+nu+2s)
//! ```
//!
//! The degenerate cell alpha_{0,0} = 1 covers mu = nu = s = 0, and 0^0 = 1
//! keeps beta finite there. alpha and beta are mutually inverse:
//! `sum_{k=j}^{s} alpha_{s,k} beta_{k,j} = delta_{j,s}`.

use crate::error::{Error, Result};
use crate::first_kind::check_order;
use crate::scalar::{binomial_lower, Scalar};

/// Weight taking even/odd Taylor coefficients to the a/c chains.
pub fn coeff_alpha<T: Scalar>(mu: &T, nu: &T, s: usize, k: usize) -> Result<T> {
    check_order("mu", mu)?;
    check_order("nu", nu)?;
    if k > s {
        return Err(Error::Domain(format!("k={k} out of range for s={s}")));
    }
    let m = mu.clone() + nu.clone();
    let m2s = m.clone() + T::from_int(2 * s as i64);
    if m2s.is_zero() {
        // mu = nu = s = 0: the formula degenerates; the inverse pair pins 1
        return Ok(T::one());
    }
    let m2k = m.clone() + T::from_int(2 * k as i64);
    let g1 = (mu.clone() + T::from_int(k as i64 + 1)).gamma()?;
    let g2 = (nu.clone() + T::from_int(k as i64 + 1)).gamma()?;
    let msk = m + T::from_int((s + k) as i64);
    let binom = binomial_lower(&msk, s - k);
    let power = (T::from_int(2) / m2s.clone()).pow_int(&m2k)?;
    Ok(m2k.clone() * m2k * g1 * g2 / (msk * m2s) * binom * power)
}

/// Weight taking the a/c chains back to even/odd Taylor coefficients.
pub fn coeff_beta<T: Scalar>(mu: &T, nu: &T, s: usize, k: usize) -> Result<T> {
    check_order("mu", mu)?;
    check_order("nu", nu)?;
    if k > s {
        return Err(Error::Domain(format!("k={k} out of range for s={s}")));
    }
    let m = mu.clone() + nu.clone();
    let m2s = m.clone() + T::from_int(2 * s as i64);
    let m2k = m + T::from_int(2 * k as i64);
    let g1 = (mu.clone() + T::from_int(s as i64 + 1)).gamma()?;
    let g2 = (nu.clone() + T::from_int(s as i64 + 1)).gamma()?;
    let binom = binomial_lower(&m2s, s - k);
    let power = (m2k / T::from_int(2)).pow_int(&m2s)?;
    let sign = if (s + k) % 2 == 0 { T::one() } else { -T::one() };
    Ok(sign * binom * power / (g1 * g2))
}

/// Taylor coefficients of z^{mu+nu} f from the (a, c) chains.
/// Inputs of length N+1 give the first 2N+2 Taylor coefficients.
pub fn kapteyn2_to_taylor<T: Scalar>(mu: &T, nu: &T, a: &[T], c: &[T]) -> Result<Vec<T>> {
    check_order("mu", mu)?;
    check_order("nu", nu)?;
    if a.len() != c.len() {
        return Err(Error::Domain(format!(
            "a and c must have equal length, got {} and {}",
            a.len(),
            c.len()
        )));
    }
    let mut b = Vec::with_capacity(2 * a.len());
    for s in 0..a.len() {
        let mut even = T::zero();
        let mut odd = T::zero();
        for k in 0..=s {
            let beta = coeff_beta(mu, nu, s, k)?;
            even = even + beta.clone() * a[k].clone();
            odd = odd + beta * c[k].clone();
        }
        b.push(even);
        b.push(odd);
    }
    Ok(b)
}

/// (a, c) chains from Taylor coefficients of z^{mu+nu} f. A length N+1
/// input gives chains of length floor(N/2)+1; missing odd tail entries are
/// treated as zero.
pub fn taylor_to_kapteyn2<T: Scalar>(mu: &T, nu: &T, b: &[T]) -> Result<(Vec<T>, Vec<T>)> {
    check_order("mu", mu)?;
    check_order("nu", nu)?;
    let n_out = b.len().div_ceil(2);
    let mut a = Vec::with_capacity(n_out);
    let mut c = Vec::with_capacity(n_out);
    let at = |i: usize| b.get(i).cloned().unwrap_or_else(T::zero);
    for s in 0..n_out {
        let mut ea = T::zero();
        let mut ec = T::zero();
        for k in 0..=s {
            let alpha = coeff_alpha(mu, nu, s, k)?;
            ea = ea + alpha.clone() * at(2 * k);
            ec = ec + alpha * at(2 * k + 1);
        }
        a.push(ea);
        c.push(ec);
    }
    Ok((a, c))
}
