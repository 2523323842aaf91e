//! Closed forms for power-weighted Kapteyn sums.
//!
//! Three families, all with the 0^0 = 1 convention so the n = 0 term
//! contributes exactly when the weight exponent p is zero:
//!
//! * first kind:  sum over n >= 0 of n^(2p) J_n(n z),
//! * second kind: sum over n >= 0 of n^(2p) J_n(2 n z)^2,
//! * squared with halved argument: S(m, a) = sum over n >= 1 of
//!   n^(2m) J_n(n a)^2, which is the second family at z = a/2 minus the
//!   n = 0 term.
//!
//! Each sum is a rational function of z (an algebraic one for the second
//! family, where half-integer powers of 1 - 4z^2 appear). The Taylor
//! coefficients are computed exactly from derivatives of powers of sinh,
//! the series is multiplied by the known denominator power, and the result
//! must terminate: a guard window of coefficients past the expected degree
//! is checked to be exactly zero before the numerator is accepted.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::{factorial, parse_rational, pochhammer, Rational, Scalar};
use crate::series::TruncSeries;

/// Largest weight exponent the generators accept. The algorithm itself has
/// no intrinsic limit; the bound keeps accidental huge requests from
/// stalling, since cost grows quickly with p.
pub const MAX_P: usize = 12;

/// Coefficients past the expected numerator degree that must vanish exactly.
const GUARD: usize = 8;

fn check_p(p: usize) -> Result<()> {
    if p > MAX_P {
        return Err(Error::BoundExceeded {
            index: p,
            bound: MAX_P,
        });
    }
    Ok(())
}

/// Symmetry factor: 1 when s = p = 0, else 1/2.
pub fn symmetry_factor(s: usize, p: usize) -> Rational {
    if s == 0 && p == 0 {
        Rational::one()
    } else {
        Rational::from_ratio(1, 2)
    }
}

/// m-th derivative of sinh(t)^r at t = 0, i.e. m! [t^m] sinh(t)^r.
pub fn sinh_power_derivative(r: usize, m: usize) -> Rational {
    let order = m + 1;
    let coeff = TruncSeries::<Rational>::sinh_t(order).pow(r, order).coeff(m);
    coeff * Rational::from_integer(factorial(m as u64))
}

/// Taylor coefficient of z^s in the first-kind power sum of weight p:
/// eps(s, p) (s+1)_(2p) [t^(2p)] (sinh(t)/t)^s.
pub fn power_coeff_first(p: usize, s: usize) -> Rational {
    let order = 2 * p + 1;
    let coeff = TruncSeries::<Rational>::sinh_over_t(order)
        .pow(s, order)
        .coeff(2 * p);
    symmetry_factor(s, p) * pochhammer(&Rational::from_int(s as i64 + 1), 2 * p) * coeff
}

/// Taylor coefficient of z^(2s) in the second-kind power sum of weight p:
/// eps(s, p) (2s+2p)! / (4^p (s!)^2) [t^(2p)] (sinh(t)/t)^(2s).
pub fn power_coeff_second(p: usize, s: usize) -> Rational {
    let order = 2 * p + 1;
    let coeff = TruncSeries::<Rational>::sinh_over_t(order)
        .pow(2 * s, order)
        .coeff(2 * p);
    let sf = factorial(s as u64);
    let den = num_traits::pow(BigInt::from(4), p) * sf.clone() * sf;
    symmetry_factor(s, p) * Rational::new(factorial((2 * s + 2 * p) as u64), den) * coeff
}

/// Denominator base of a closed form, fixing the variable name as well.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CfBase {
    /// 1 - z, first-kind sums.
    OneMinusZ,
    /// 1 - 4z^2, second-kind sums.
    OneMinusFourZSq,
    /// 1 - a^2, squared sums with halved argument.
    OneMinusASq,
}

impl CfBase {
    pub fn tag(self) -> &'static str {
        match self {
            CfBase::OneMinusZ => "1-z",
            CfBase::OneMinusFourZSq => "1-4z^2",
            CfBase::OneMinusASq => "1-a^2",
        }
    }

    pub fn from_tag(s: &str) -> Result<Self> {
        match s {
            "1-z" => Ok(CfBase::OneMinusZ),
            "1-4z^2" => Ok(CfBase::OneMinusFourZSq),
            "1-a^2" => Ok(CfBase::OneMinusASq),
            _ => Err(Error::Parse(format!("unknown base tag {s:?}"))),
        }
    }

    pub fn variable(self) -> &'static str {
        match self {
            CfBase::OneMinusASq => "a",
            _ => "z",
        }
    }

    pub fn eval(self, x: f64) -> f64 {
        match self {
            CfBase::OneMinusZ => 1.0 - x,
            CfBase::OneMinusFourZSq => 1.0 - 4.0 * x * x,
            CfBase::OneMinusASq => 1.0 - x * x,
        }
    }

    /// The base written as 1 - scale * x^power.
    fn substitution(self) -> (i64, usize) {
        match self {
            CfBase::OneMinusZ => (1, 1),
            CfBase::OneMinusFourZSq => (4, 2),
            CfBase::OneMinusASq => (1, 2),
        }
    }
}

/// A sum in closed form:
/// constant + prefactor * x^z_power * numerator(x) / base^exponent.
///
/// The numerator is primitive (integer coefficients with content 1, lowest
/// nonzero coefficient positive); scale sits in `prefactor`. The exponent is
/// integer or half-integer.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedForm {
    pub constant: Rational,
    pub prefactor: Rational,
    pub z_power: usize,
    pub numerator: Polynomial<Rational>,
    pub base: CfBase,
    pub exponent: Rational,
}

impl ClosedForm {
    /// First `order` Taylor coefficients around 0, exactly.
    pub fn taylor(&self, order: usize) -> TruncSeries<Rational> {
        let (scale, power) = self.base.substitution();
        let w_order = if power == 2 { order.div_ceil(2) } else { order };
        let inv = TruncSeries::one_minus_pow(&-self.exponent.clone(), w_order)
            .compose_monomial(&Rational::from_int(scale), power, order);
        let num = TruncSeries::from_polynomial(&self.numerator, order);
        let out = inv
            .mul(&num)
            .shift_up(self.z_power)
            .scale(&self.prefactor);
        if self.constant.is_zero() || order == 0 {
            return out;
        }
        let mut coeffs = out.coeffs().to_vec();
        coeffs[0] = coeffs[0].clone() + self.constant.clone();
        TruncSeries::new(coeffs)
    }

    /// Evaluate at a floating point, requiring the base to stay positive.
    pub fn eval(&self, x: f64) -> Result<f64> {
        let b = self.base.eval(x);
        if b <= 0.0 {
            return Err(Error::Domain(format!(
                "{} must be positive at the evaluation point, got {b:e}",
                self.base.tag()
            )));
        }
        let num = self
            .numerator
            .coeffs()
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64());
        Ok(self.constant.to_f64()
            + self.prefactor.to_f64() * x.powi(self.z_power as i32) * num
                / b.powf(self.exponent.to_f64()))
    }

    /// Human-readable one-liner, e.g. "z / (2 (1-z)^4)".
    pub fn render(&self) -> String {
        if self.prefactor.is_zero() {
            return self.constant.to_string();
        }
        let var = self.base.variable();
        let negative = self.prefactor < Rational::zero();
        let pref = if negative {
            -self.prefactor.clone()
        } else {
            self.prefactor.clone()
        };

        let mut num_parts: Vec<String> = Vec::new();
        if !pref.numer().is_one() {
            num_parts.push(pref.numer().to_string());
        }
        match self.z_power {
            0 => {}
            1 => num_parts.push(var.to_string()),
            k => num_parts.push(format!("{var}^{k}")),
        }
        if !self.numerator.is_zero() && self.numerator != Polynomial::one() {
            if self.numerator.degree() > 0 {
                num_parts.push(format!("({})", self.numerator.render(var)));
            } else {
                num_parts.push(self.numerator.render(var));
            }
        }
        let num = if num_parts.is_empty() {
            "1".to_string()
        } else {
            num_parts.join(" ")
        };

        let mut den_parts: Vec<String> = Vec::new();
        if !pref.denom().is_one() {
            den_parts.push(pref.denom().to_string());
        }
        let base_str = format!("({})", self.base.tag());
        den_parts.push(if self.exponent.is_one() {
            base_str
        } else if self.exponent.is_integer() {
            format!("{base_str}^{}", self.exponent)
        } else {
            format!("{base_str}^({})", self.exponent)
        });
        let den = den_parts.join(" ");

        let frac = if den_parts.len() > 1 {
            format!("{num} / ({den})")
        } else {
            format!("{num} / {den}")
        };
        match (self.constant.is_zero(), negative) {
            (true, false) => frac,
            (true, true) => format!("-{frac}"),
            (false, false) => format!("{} + {frac}", self.constant),
            (false, true) => format!("{} - {frac}", self.constant),
        }
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Wire shape: every rational is a "p/q" or "p" string, the numerator is the
/// ascending coefficient list, the base is its tag.
#[derive(Serialize, Deserialize)]
struct ClosedFormRepr {
    constant: String,
    prefactor: String,
    z_power: usize,
    numerator: Vec<String>,
    base: String,
    exponent: String,
}

impl From<&ClosedForm> for ClosedFormRepr {
    fn from(c: &ClosedForm) -> Self {
        ClosedFormRepr {
            constant: c.constant.to_string(),
            prefactor: c.prefactor.to_string(),
            z_power: c.z_power,
            numerator: c.numerator.coeffs().iter().map(|x| x.to_string()).collect(),
            base: c.base.tag().to_string(),
            exponent: c.exponent.to_string(),
        }
    }
}

impl TryFrom<ClosedFormRepr> for ClosedForm {
    type Error = Error;

    fn try_from(r: ClosedFormRepr) -> Result<Self> {
        let exponent = parse_rational(&r.exponent)?;
        if !exponent.denom().is_one() && *exponent.denom() != BigInt::from(2) {
            return Err(Error::Parse(
                "exponent must be integer or half-integer".into(),
            ));
        }
        Ok(ClosedForm {
            constant: parse_rational(&r.constant)?,
            prefactor: parse_rational(&r.prefactor)?,
            z_power: r.z_power,
            numerator: Polynomial::new(
                r.numerator
                    .iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>>>()?,
            ),
            base: CfBase::from_tag(&r.base)?,
            exponent,
        })
    }
}

impl Serialize for ClosedForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ClosedFormRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ClosedForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = ClosedFormRepr::deserialize(d)?;
        ClosedForm::try_from(repr).map_err(serde::de::Error::custom)
    }
}

/// Multiply the series by the denominator power and check it terminates:
/// everything past `expected_deg` up to the guard window must be exactly zero.
fn extract_numerator(
    series: &TruncSeries<Rational>,
    base_power: &TruncSeries<Rational>,
    expected_deg: usize,
) -> Result<Polynomial<Rational>> {
    let prod = series.mul(base_power);
    assert!(prod.order() > expected_deg, "truncation order too small");
    for i in expected_deg + 1..prod.order() {
        if !prod.coeff(i).is_zero() {
            return Err(Error::NonTerminating(format!(
                "coefficient of degree {i} is {}, want 0 above degree {expected_deg}",
                prod.coeff(i)
            )));
        }
    }
    Ok(Polynomial::new(prod.coeffs()[..=expected_deg].to_vec()))
}

/// Split off the leading power of the variable and the rational content,
/// leaving a primitive numerator.
fn canonical_parts(raw: &Polynomial<Rational>) -> (Rational, usize, Polynomial<Rational>) {
    let z_power = raw
        .coeffs()
        .iter()
        .position(|c| !c.is_zero())
        .unwrap_or(0);
    let shifted = Polynomial::new(raw.coeffs()[z_power..].to_vec());
    let (content, primitive) = shifted.content_split();
    (content, z_power, primitive)
}

/// Closed form of the first-kind power sum of weight p. The denominator
/// exponent is 3p + 1; the numerator degree is p (1 when p = 0).
pub fn power_sum_first(p: usize) -> Result<ClosedForm> {
    check_p(p)?;
    let deg = if p == 0 { 1 } else { p };
    let order = deg + 1 + GUARD;
    let series = TruncSeries::new((0..order).map(|s| power_coeff_first(p, s)).collect());
    let exponent = Rational::from_int((3 * p + 1) as i64);
    let base = TruncSeries::one_minus_pow(&exponent, order);
    let raw = extract_numerator(&series, &base, deg)?;
    let (prefactor, z_power, numerator) = canonical_parts(&raw);
    Ok(ClosedForm {
        constant: Rational::zero(),
        prefactor,
        z_power,
        numerator,
        base: CfBase::OneMinusZ,
        exponent,
    })
}

/// Closed form of the second-kind power sum of weight p. Only even powers of
/// z occur; the denominator exponent is (6p + 1)/2 and the numerator degree
/// is 4p (0 when p = 0, where a constant 1/2 splits off first).
pub fn power_sum_second(p: usize) -> Result<ClosedForm> {
    check_p(p)?;
    let deg = if p == 0 { 0 } else { 4 * p };
    let order = deg + 1 + GUARD;
    let constant = if p == 0 {
        Rational::from_ratio(1, 2)
    } else {
        Rational::zero()
    };
    let mut coeffs = vec![Rational::zero(); order];
    let mut s = 0usize;
    while 2 * s < order {
        coeffs[2 * s] = power_coeff_second(p, s);
        s += 1;
    }
    coeffs[0] = coeffs[0].clone() - constant.clone();
    let series = TruncSeries::new(coeffs);
    let exponent = Rational::from_ratio((6 * p + 1) as i64, 2);
    let base = TruncSeries::one_minus_pow(&exponent, order.div_ceil(2)).compose_monomial(
        &Rational::from_int(4),
        2,
        order,
    );
    let raw = extract_numerator(&series, &base, deg)?;
    let (prefactor, z_power, numerator) = canonical_parts(&raw);
    Ok(ClosedForm {
        constant,
        prefactor,
        z_power,
        numerator,
        base: CfBase::OneMinusFourZSq,
        exponent,
    })
}

/// Closed form of S(m, a), the squared sum with halved argument: substitute
/// z = a/2 into the second-kind form and drop the n = 0 term.
pub fn power_sum_squared(m: usize) -> Result<ClosedForm> {
    let g = power_sum_second(m)?;
    let half = Rational::from_ratio(1, 2);
    let constant = g.constant
        - if m == 0 {
            Rational::one()
        } else {
            Rational::zero()
        };
    let mut factor = Rational::one();
    let mut scaled = Vec::with_capacity(g.numerator.coeffs().len());
    for c in g.numerator.coeffs() {
        scaled.push(c.clone() * factor.clone());
        factor = factor * half.clone();
    }
    let (extra, shift, numerator) = canonical_parts(&Polynomial::new(scaled));
    let prefactor = g.prefactor * num_traits::pow(half, g.z_power) * extra;
    Ok(ClosedForm {
        constant,
        prefactor,
        z_power: g.z_power + shift,
        numerator,
        base: CfBase::OneMinusASq,
        exponent: g.exponent,
    })
}

/// One step of the recurrence on first-kind numerators: from the numerator of
/// the sum with denominator exponent e to the next one (exponent e + 3).
/// Division by 1 + z must be exact; a remainder means the input was not a
/// genuine numerator.
fn p_step(q: &Polynomial<Rational>, e: usize) -> Result<Polynomial<Rational>> {
    let lin = |c1: i64| Polynomial::from_ints(&[1, c1]);
    let z_one_minus_z = Polynomial::from_ints(&[0, 1, -1]);
    let a = q
        .mul(&lin(e as i64 - 1))
        .add(&z_one_minus_z.mul(&q.derivative()));
    let b = a
        .mul(&lin(e as i64))
        .add(&z_one_minus_z.mul(&a.derivative()));
    b.div_exact(&Polynomial::from_ints(&[1, 1]))
}

/// n-th numerator polynomial of the first-kind sums: the weight-(n+1) sum is
/// z P_n(z) / (2 (1-z)^(3n+4)). Starts from P_0 = 1 and applies the
/// differential recurrence, which reproduces `power_sum_first` numerators.
pub fn first_kind_numerator(n: usize) -> Result<Polynomial<Rational>> {
    if n + 1 > MAX_P {
        return Err(Error::BoundExceeded {
            index: n,
            bound: MAX_P - 1,
        });
    }
    let mut p = Polynomial::one();
    let mut e = 4usize;
    for _ in 0..n {
        p = p_step(&p, e)?;
        e += 3;
    }
    Ok(p)
}

/// Apply (1 - z^2)^(-1) (z d/dz)^2, which raises the weight p by one on
/// first-kind power sums: the Bessel equation at argument nz gives
/// (z d/dz)^2 J_n(nz) = n^2 (1 - z^2) J_n(nz).
pub fn power_weight_step<T: Scalar>(series: &TruncSeries<T>) -> TruncSeries<T> {
    let order = series.order();
    let geom = TruncSeries::one_minus_pow(&-T::one(), order.div_ceil(2)).compose_monomial(
        &T::one(),
        2,
        order,
    );
    series.t_d_dt().t_d_dt().mul(&geom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::binomial;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn int(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn poly(coeffs: &[i64]) -> Polynomial<Rational> {
        Polynomial::from_ints(coeffs)
    }

    #[test]
    fn sinh_power_derivative_spot_values() {
        assert_eq!(sinh_power_derivative(0, 0), int(1));
        assert_eq!(sinh_power_derivative(0, 3), int(0));
        assert_eq!(sinh_power_derivative(1, 1), int(1));
        assert_eq!(sinh_power_derivative(1, 2), int(0));
        assert_eq!(sinh_power_derivative(2, 2), int(2));
        // sinh^3 = t^3 + t^5/2 + ..., so the fifth derivative is 120/2
        assert_eq!(sinh_power_derivative(3, 5), int(60));
    }

    /// 2^r (d/dt)^m sinh(t)^r at 0 equals the alternating binomial sum
    /// over (r - 2k)^m. Zero bases with m = 0 count as 1.
    #[test]
    fn sinh_derivative_matches_binomial_sum() {
        for r in 0..=10usize {
            for m in 0..=14usize {
                let mut sum = BigInt::from(0);
                for k in 0..=r {
                    let base = BigInt::from(r as i64 - 2 * k as i64);
                    let sign = if k % 2 == 0 { 1 } else { -1 };
                    sum += sign * binomial(r as u64, k as u64) * num_traits::pow(base, m);
                }
                let lhs = Rational::from_integer(num_traits::pow(BigInt::from(2), r))
                    * sinh_power_derivative(r, m);
                assert_eq!(lhs, Rational::from_integer(sum), "r={r} m={m}");
            }
        }
    }

    /// Closed formulas for the first few weights, plus the direct binomial
    /// route through derivatives of sinh^s.
    #[test]
    fn first_kind_coefficients_by_three_routes() {
        let formula = |p: usize, s: usize| -> Rational {
            let sv = s as i64;
            let eps = symmetry_factor(s, p);
            let poch = |n: usize| pochhammer(&int(sv + 1), n);
            match p {
                0 => eps,
                1 => eps * poch(2) * rat(sv, 6),
                2 => eps * poch(4) * rat(sv * (5 * sv - 2), 360),
                3 => eps * poch(6) * rat(sv * (35 * sv * sv - 42 * sv + 16), 45360),
                4 => {
                    eps * poch(8)
                        * rat(
                            sv * (5 * sv - 4) * (35 * sv * sv - 56 * sv + 36),
                            5443200,
                        )
                }
                _ => unreachable!(),
            }
        };
        for p in 0..=4usize {
            for s in 0..=12usize {
                assert_eq!(power_coeff_first(p, s), formula(p, s), "formula route p={p} s={s}");
            }
        }
        // b_s(p) = eps / (s! 2^s) sum_k (-1)^k C(s,k) (s-2k)^(s+2p)
        for p in 0..=4usize {
            for s in 0..=10usize {
                let mut sum = BigInt::from(0);
                for k in 0..=s {
                    let base = BigInt::from(s as i64 - 2 * k as i64);
                    let sign = if k % 2 == 0 { 1 } else { -1 };
                    sum += sign * binomial(s as u64, k as u64) * num_traits::pow(base, s + 2 * p);
                }
                let den = factorial(s as u64) * num_traits::pow(BigInt::from(2), s);
                let direct = symmetry_factor(s, p) * Rational::new(sum, den);
                assert_eq!(power_coeff_first(p, s), direct, "binomial route p={p} s={s}");
            }
        }
    }

    /// Same two independent routes for the second kind.
    #[test]
    fn second_kind_coefficients_by_three_routes() {
        let formula = |p: usize, s: usize| -> Rational {
            let sv = s as i64;
            let eps = symmetry_factor(s, p);
            let head = |shift: usize| {
                let sf = factorial(s as u64);
                Rational::new(
                    factorial((2 * s + shift) as u64),
                    num_traits::pow(BigInt::from(4), shift / 2) * sf.clone() * sf,
                )
            };
            match p {
                0 => eps * head(0),
                1 => eps * head(2) * rat(sv, 3),
                2 => eps * head(4) * rat(sv * (5 * sv - 1), 90),
                3 => eps * head(6) * rat(sv * (35 * sv * sv - 21 * sv + 4), 5670),
                4 => {
                    eps * head(8)
                        * rat(sv * (5 * sv - 2) * (35 * sv * sv - 28 * sv + 9), 340200)
                }
                _ => unreachable!(),
            }
        };
        for p in 0..=4usize {
            for s in 0..=12usize {
                assert_eq!(power_coeff_second(p, s), formula(p, s), "formula route p={p} s={s}");
            }
        }
        // b_2s(p) = (1/(s!)^2) sum_k (-1)^(s+k) C(2s, s-k) k^(2s+2p), the
        // k = 0 term entering unhalved only through 0^0 at s = p = 0
        for p in 0..=4usize {
            for s in 0..=8usize {
                let mut sum = BigInt::from(0);
                for k in 0..=s {
                    let sign = if (s + k) % 2 == 0 { 1 } else { -1 };
                    sum += sign
                        * binomial(2 * s as u64, (s - k) as u64)
                        * num_traits::pow(BigInt::from(k), 2 * s + 2 * p);
                }
                let sf = factorial(s as u64);
                let direct = Rational::new(sum, sf.clone() * sf);
                assert_eq!(power_coeff_second(p, s), direct, "binomial route p={p} s={s}");
            }
        }
    }

    #[test]
    fn first_kind_closed_forms_table() {
        let f0 = power_sum_first(0).unwrap();
        assert_eq!(f0.constant, int(0));
        assert_eq!(f0.prefactor, rat(1, 2));
        assert_eq!(f0.z_power, 0);
        assert_eq!(f0.numerator, poly(&[2, -1]));
        assert_eq!(f0.base, CfBase::OneMinusZ);
        assert_eq!(f0.exponent, int(1));

        let expected_num: [&[i64]; 4] = [
            &[1],
            &[1, 9],
            &[1, 54, 225],
            &[1, 243, 4131, 11025],
        ];
        for (i, num) in expected_num.iter().enumerate() {
            let p = i + 1;
            let f = power_sum_first(p).unwrap();
            assert_eq!(f.constant, int(0), "p={p}");
            assert_eq!(f.prefactor, rat(1, 2), "p={p}");
            assert_eq!(f.z_power, 1, "p={p}");
            assert_eq!(f.numerator, poly(num), "p={p}");
            assert_eq!(f.exponent, int((3 * p + 1) as i64), "p={p}");
        }
    }

    #[test]
    fn numerator_recurrence_matches_direct_generation() {
        assert_eq!(first_kind_numerator(0).unwrap(), poly(&[1]));
        assert_eq!(first_kind_numerator(1).unwrap(), poly(&[1, 9]));
        assert_eq!(first_kind_numerator(2).unwrap(), poly(&[1, 54, 225]));
        assert_eq!(first_kind_numerator(3).unwrap(), poly(&[1, 243, 4131, 11025]));
        for n in 0..=6usize {
            assert_eq!(
                first_kind_numerator(n).unwrap(),
                power_sum_first(n + 1).unwrap().numerator,
                "n={n}"
            );
        }
        // leading coefficient is the square of the double factorial (2n+1)!!
        for n in 0..=5usize {
            let lead = first_kind_numerator(n).unwrap().coeff(n);
            let dfact: i64 = (0..=n as i64).map(|j| 2 * j + 1).product();
            assert_eq!(lead, int(dfact * dfact), "n={n}");
        }
    }

    #[test]
    fn second_kind_closed_forms_table() {
        let g0 = power_sum_second(0).unwrap();
        assert_eq!(g0.constant, rat(1, 2));
        assert_eq!(g0.prefactor, rat(1, 2));
        assert_eq!(g0.z_power, 0);
        assert_eq!(g0.numerator, poly(&[1]));
        assert_eq!(g0.base, CfBase::OneMinusFourZSq);
        assert_eq!(g0.exponent, rat(1, 2));

        let expected_num: [&[i64]; 3] = [
            &[1, 0, 1],
            &[1, 0, 37, 0, 118, 0, 27],
            &[1, 0, 217, 0, 5036, 0, 23630, 0, 22910, 0, 2250],
        ];
        for (i, num) in expected_num.iter().enumerate() {
            let p = i + 1;
            let g = power_sum_second(p).unwrap();
            assert_eq!(g.constant, int(0), "p={p}");
            assert_eq!(g.prefactor, int(1), "p={p}");
            assert_eq!(g.z_power, 2, "p={p}");
            assert_eq!(g.numerator, poly(num), "p={p}");
            assert_eq!(g.exponent, rat((6 * p + 1) as i64, 2), "p={p}");
        }
    }

    #[test]
    fn squared_sum_closed_forms_table() {
        let s0 = power_sum_squared(0).unwrap();
        assert_eq!(s0.constant, rat(-1, 2));
        assert_eq!(s0.prefactor, rat(1, 2));
        assert_eq!(s0.z_power, 0);
        assert_eq!(s0.numerator, poly(&[1]));
        assert_eq!(s0.base, CfBase::OneMinusASq);
        assert_eq!(s0.exponent, rat(1, 2));

        let s1 = power_sum_squared(1).unwrap();
        assert_eq!(s1.constant, int(0));
        assert_eq!(s1.prefactor, rat(1, 16));
        assert_eq!(s1.z_power, 2);
        assert_eq!(s1.numerator, poly(&[4, 0, 1]));
        assert_eq!(s1.exponent, rat(7, 2));

        let s2 = power_sum_squared(2).unwrap();
        assert_eq!(s2.prefactor, rat(1, 256));
        assert_eq!(s2.z_power, 2);
        assert_eq!(s2.numerator, poly(&[64, 0, 592, 0, 472, 0, 27]));
        assert_eq!(s2.exponent, rat(13, 2));

        // substitution identity: S(m, a) = g_m(a/2) - [m = 0]
        for m in 0..=3usize {
            let s = power_sum_squared(m).unwrap();
            let g = power_sum_second(m).unwrap();
            for &a in &[0.1, 0.3, 0.55, 0.8] {
                let want = g.eval(a / 2.0).unwrap() - if m == 0 { 1.0 } else { 0.0 };
                let got = s.eval(a).unwrap();
                assert!((got - want).abs() < 1e-13, "m={m} a={a}: {got} vs {want}");
            }
        }
    }

    /// Expanding the closed form back into a Taylor series reproduces the
    /// coefficients it was built from, beyond the construction window.
    #[test]
    fn taylor_expansion_reproduces_generating_coefficients() {
        for p in 0..=6usize {
            let f = power_sum_first(p).unwrap();
            let series = f.taylor(3 * p + 12);
            for s in 0..series.order() {
                assert_eq!(series.coeff(s), power_coeff_first(p, s), "f p={p} s={s}");
            }
            let g = power_sum_second(p).unwrap();
            let series = g.taylor(4 * p + 12);
            for i in 0..series.order() {
                let want = if i % 2 == 0 {
                    power_coeff_second(p, i / 2)
                } else {
                    Rational::zero()
                };
                assert_eq!(series.coeff(i), want, "g p={p} i={i}");
            }
        }
    }

    /// (1 - z^2)^(-1) (z d/dz)^2 sends the first-kind weight-p sum to the
    /// weight-(p+1) sum. The squared family does not obey this operator (its
    /// terms satisfy a third-order equation), so only f is checked.
    #[test]
    fn weight_step_operator_advances_first_kind() {
        let order = 24;
        for p in 0..=3usize {
            let stepped = power_weight_step(&power_sum_first(p).unwrap().taylor(order));
            let next = power_sum_first(p + 1).unwrap().taylor(order);
            assert_eq!(stepped.coeffs(), next.coeffs(), "f p={p}");
        }
    }

    #[test]
    fn bound_and_guard_failures_are_reported() {
        assert_eq!(
            power_sum_first(MAX_P + 1),
            Err(Error::BoundExceeded {
                index: MAX_P + 1,
                bound: MAX_P
            })
        );
        assert!(power_sum_second(MAX_P + 3).is_err());
        assert!(first_kind_numerator(MAX_P).is_err());

        // wrong denominator exponent: the product cannot terminate
        let order = 2 + GUARD;
        let series = TruncSeries::new((0..order).map(|s| power_coeff_first(1, s)).collect());
        let wrong_base = TruncSeries::one_minus_pow(&int(3), order);
        match extract_numerator(&series, &wrong_base, 1) {
            Err(Error::NonTerminating(_)) => {}
            other => panic!("expected NonTerminating, got {other:?}"),
        }
    }

    #[test]
    fn rendering_matches_the_published_shapes() {
        assert_eq!(power_sum_first(0).unwrap().render(), "(2 - z) / (2 (1-z))");
        assert_eq!(power_sum_first(1).unwrap().render(), "z / (2 (1-z)^4)");
        assert_eq!(power_sum_first(2).unwrap().render(), "z (1 + 9z) / (2 (1-z)^7)");
        assert_eq!(
            power_sum_second(0).unwrap().render(),
            "1/2 + 1 / (2 (1-4z^2)^(1/2))"
        );
        assert_eq!(
            power_sum_second(1).unwrap().render(),
            "z^2 (1 + z^2) / (1-4z^2)^(7/2)"
        );
        assert_eq!(
            power_sum_squared(1).unwrap().render(),
            "a^2 (4 + a^2) / (16 (1-a^2)^(7/2))"
        );
        assert_eq!(
            power_sum_squared(2).unwrap().render(),
            "a^2 (64 + 592a^2 + 472a^4 + 27a^6) / (256 (1-a^2)^(13/2))"
        );
    }

    #[test]
    fn serialization_round_trips_and_is_stable() {
        let f1 = power_sum_first(1).unwrap();
        let json = serde_json::to_string(&f1).unwrap();
        assert_eq!(
            json,
            r#"{"constant":"0","prefactor":"1/2","z_power":1,"numerator":["1"],"base":"1-z","exponent":"4"}"#
        );
        let back: ClosedForm = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f1);

        for cf in [power_sum_second(2).unwrap(), power_sum_squared(2).unwrap()] {
            let json = serde_json::to_string(&cf).unwrap();
            let back: ClosedForm = serde_json::from_str(&json).unwrap();
            assert_eq!(back, cf);
        }

        let bad = r#"{"constant":"0","prefactor":"1/2","z_power":1,"numerator":["1"],"base":"1-z","exponent":"4/3"}"#;
        assert!(serde_json::from_str::<ClosedForm>(bad).is_err());
        let bad_base = r#"{"constant":"0","prefactor":"1/2","z_power":1,"numerator":["1"],"base":"1+z","exponent":"4"}"#;
        assert!(serde_json::from_str::<ClosedForm>(bad_base).is_err());
    }

    #[test]
    fn float_evaluation_spot_values() {
        let f1 = power_sum_first(1).unwrap();
        let want = 0.2 / (2.0 * 0.8f64.powi(4));
        assert!((f1.eval(0.2).unwrap() - want).abs() < 1e-15);
        assert_eq!(power_sum_first(0).unwrap().eval(0.5).unwrap(), 1.5);

        let s1 = power_sum_squared(1).unwrap();
        let a = 0.5f64;
        let want = a * a * (4.0 + a * a) / (16.0 * (1.0 - a * a).powf(3.5));
        assert!((s1.eval(a).unwrap() - want).abs() < 1e-15);

        match power_sum_second(0).unwrap().eval(0.5) {
            Err(Error::Domain(_)) => {}
            other => panic!("expected Domain error, got {other:?}"),
        }
    }
}
