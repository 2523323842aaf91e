//! Floating point Bessel evaluation.
//!
//! `J_nu(z)` is summed from the ascending series
//!
//! ```text
//! J_nu(z) = sum_{n>=0} (-1)^n / (n! Gamma(nu+n+1)) (z/2)^(nu+2n)
//! ```
//!
//! which is accurate at desk scale (|z| <= 50, nu >= 0); no asymptotic
//! switch-over is attempted. Products `J_mu(z) J_nu(z)` use the single series
//!
//! ```text
//! J_mu(z) J_nu(z) = sum_{k>=0} (-1)^k / (Gamma(mu+k+1) Gamma(nu+k+1))
//!                   C(mu+nu+2k, k) (z/2)^(mu+nu+2k)
//! ```
//!
//! and integer orders can be cross-checked against the integral
//! `J_n(z) = (1/pi) int_0^pi cos(nE - z sin E) dE` via composite trapezoid
//! quadrature, which converges spectrally because the integrand extends to a
//! smooth even periodic function.

use num_traits::Float;

use crate::error::{Error, Result};

/// Truncation control for the ascending series.
#[derive(Debug, Clone, Copy)]
pub struct BesselEvalConfig {
    /// A term below this magnitude (while terms decrease) ends the sum.
    pub tol: f64,
    /// Hard budget; exceeding it reports `NonConvergence`.
    pub max_terms: usize,
}

impl Default for BesselEvalConfig {
    fn default() -> Self {
        BesselEvalConfig {
            tol: 1e-13,
            max_terms: 200,
        }
    }
}

const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function via the Lanczos approximation (g = 7, 9 terms).
/// Relative error is below 1e-13 in double precision for positive arguments.
pub fn gamma<T: Float>(x: T) -> T {
    let half = T::from(0.5).unwrap();
    let one = T::one();
    let pi = T::from(std::f64::consts::PI).unwrap();
    if x < half {
        // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return pi / ((pi * x).sin() * gamma(one - x));
    }
    let z = x - one;
    let mut acc = T::from(LANCZOS_COEFFS[0]).unwrap();
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc = acc + T::from(*c).unwrap() / (z + T::from(i).unwrap());
    }
    let t = z + T::from(7.5).unwrap();
    let two_pi_sqrt = T::from((2.0 * std::f64::consts::PI).sqrt()).unwrap();
    two_pi_sqrt * t.powf(z + half) * (-t).exp() * acc
}

fn to_f64<T: Float>(x: T) -> f64 {
    num_traits::cast(x).unwrap_or(f64::NAN)
}

/// J_nu(z) for nu >= 0 by the ascending series. Negative z needs integer nu,
/// where the parity relation J_n(-z) = (-1)^n J_n(z) applies.
pub fn bessel_j<T: Float>(nu: T, z: T, cfg: &BesselEvalConfig) -> Result<T> {
    let zero = T::zero();
    let one = T::one();
    if nu < zero {
        return Err(Error::Domain(format!(
            "bessel_j needs nu >= 0, got {}",
            to_f64(nu)
        )));
    }
    let nu_int = nu.fract() == zero;
    if z < zero && !nu_int {
        return Err(Error::Domain(
            "bessel_j at negative argument needs an integer order".into(),
        ));
    }
    if z == zero {
        return Ok(if nu == zero { one } else { zero });
    }
    let (zabs, sign) = if z < zero {
        // integer nu here; odd orders flip sign
        let odd = (to_f64(nu) as i64) % 2 != 0;
        (-z, if odd { -one } else { one })
    } else {
        (z, one)
    };

    let tol = T::from(cfg.tol).unwrap();
    let half_z = zabs / (one + one);
    let q = half_z * half_z;
    let mut term = half_z.powf(nu) / gamma(nu + one);
    let mut sum = zero;
    for n in 0..cfg.max_terms {
        sum = sum + term;
        let nf = T::from(n).unwrap();
        let next = -term * q / ((nf + one) * (nu + nf + one));
        if next.abs() < tol && next.abs() <= term.abs() {
            return Ok(sign * sum);
        }
        term = next;
    }
    Err(Error::NonConvergence {
        max_terms: cfg.max_terms,
        last_term: to_f64(term),
    })
}

/// J_n(z) by composite trapezoid quadrature of the angular integral.
/// quad_points >= 16; 512 points already reach machine accuracy at desk scale.
pub fn bessel_j_integral(n: usize, z: f64, quad_points: usize) -> f64 {
    assert!(quad_points >= 16, "quad_points must be at least 16");
    let h = std::f64::consts::PI / quad_points as f64;
    let f = |e: f64| (n as f64 * e - z * e.sin()).cos();
    let mut acc = 0.5 * (f(0.0) + f(std::f64::consts::PI));
    for i in 1..quad_points {
        acc += f(i as f64 * h);
    }
    acc * h / std::f64::consts::PI
}

/// J_mu(z) J_nu(z) as a single ascending series, valid for real orders >= 0.
pub fn bessel_product<T: Float>(mu: T, nu: T, z: T, cfg: &BesselEvalConfig) -> Result<T> {
    let zero = T::zero();
    let one = T::one();
    if mu < zero || nu < zero {
        return Err(Error::Domain(
            "bessel_product needs mu >= 0 and nu >= 0".into(),
        ));
    }
    let orders_int = mu.fract() == zero && nu.fract() == zero;
    if z < zero && !orders_int {
        return Err(Error::Domain(
            "bessel_product at negative argument needs integer orders".into(),
        ));
    }
    if z == zero {
        return Ok(if mu + nu == zero { one } else { zero });
    }
    let (zabs, sign) = if z < zero {
        let odd = (to_f64(mu + nu) as i64) % 2 != 0;
        (-z, if odd { -one } else { one })
    } else {
        (z, one)
    };

    let tol = T::from(cfg.tol).unwrap();
    let half_z = zabs / (one + one);
    let q = half_z * half_z;
    let m = mu + nu;
    let mut term = half_z.powf(m) / (gamma(mu + one) * gamma(nu + one));
    let mut sum = zero;
    for k in 0..cfg.max_terms {
        sum = sum + term;
        let kf = T::from(k).unwrap();
        // ratio of consecutive terms, binomial factor included
        let next = -term * q * (m + kf + kf + one) * (m + kf + kf + one + one)
            / ((mu + kf + one) * (nu + kf + one) * (kf + one) * (m + kf + one));
        if next.abs() < tol && next.abs() <= term.abs() {
            return Ok(sign * sum);
        }
        term = next;
    }
    Err(Error::NonConvergence {
        max_terms: cfg.max_terms,
        last_term: to_f64(term),
    })
}
