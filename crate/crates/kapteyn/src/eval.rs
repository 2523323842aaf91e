//! Floating point evaluation of the sums, plus both Kepler equation solvers.
//!
//! The series evaluators take the coefficients as a closure over n and sum
//! from n = 0 with a tail criterion: the loop stops once several consecutive
//! terms fall below tol * max(1, |partial sum|). A single small term is not
//! enough, since a coefficient or a Bessel factor can vanish accidentally
//! without the tail being done. Finite coefficient lists work through the
//! same rule: past the end of the list every term is zero.

use crate::bessel::{bessel_j, bessel_product, BesselEvalConfig};
use crate::error::{Error, Result};

/// Truncation control for sums over the Bessel order n.
#[derive(Debug, Clone, Copy)]
pub struct SumConfig {
    /// Tail threshold, relative to max(1, |partial sum|).
    pub tol: f64,
    /// Hard budget; exceeding it reports `NonConvergence`.
    pub max_n: usize,
    /// Consecutive small terms required before the sum is considered done.
    pub consecutive_small: usize,
}

impl Default for SumConfig {
    fn default() -> Self {
        SumConfig {
            tol: 1e-12,
            max_n: 400,
            consecutive_small: 3,
        }
    }
}

impl SumConfig {
    /// Inner Bessel truncation, one order tighter than the outer sum and
    /// scaled down by the weight the term will be multiplied with, so the
    /// weight cannot amplify the inner truncation error past `tol`.
    fn bessel(&self, weight: f64) -> BesselEvalConfig {
        BesselEvalConfig {
            tol: (self.tol * 0.1 / weight.abs().max(1.0)).max(f64::MIN_POSITIVE),
            ..BesselEvalConfig::default()
        }
    }
}

/// Outcome of a truncated summation or iteration.
#[derive(Debug, Clone, Copy)]
pub struct EvalReport {
    pub value: f64,
    /// Terms actually summed (or Newton steps taken).
    pub terms_used: usize,
    /// Final term (or final Newton residual).
    pub last_term: f64,
}

fn sum_until_small(
    cfg: &SumConfig,
    mut term_at: impl FnMut(usize) -> Result<f64>,
) -> Result<EvalReport> {
    let mut sum = 0.0;
    let mut small_run = 0usize;
    let mut last = 0.0;
    for n in 0..cfg.max_n {
        let t = term_at(n)?;
        if !t.is_finite() {
            return Err(Error::Domain(format!("term {n} is not finite")));
        }
        sum += t;
        last = t;
        if t.abs() <= cfg.tol * sum.abs().max(1.0) {
            small_run += 1;
            if small_run >= cfg.consecutive_small {
                return Ok(EvalReport {
                    value: sum,
                    terms_used: n + 1,
                    last_term: t,
                });
            }
        } else {
            small_run = 0;
        }
    }
    Err(Error::NonConvergence {
        max_terms: cfg.max_n,
        last_term: last,
    })
}

/// First-kind sum: over n >= 0 of coeff(n) J_(nu+n)((nu+n) z), for |z| < 1.
pub fn eval_kapteyn1(
    mut coeff: impl FnMut(usize) -> f64,
    nu: f64,
    z: f64,
    cfg: &SumConfig,
) -> Result<EvalReport> {
    if nu < 0.0 {
        return Err(Error::Domain(format!(
            "order offset nu must be >= 0, got {nu}"
        )));
    }
    if !(z.abs() < 1.0) {
        return Err(Error::Domain(format!(
            "first kind sums need |z| < 1, got {z}"
        )));
    }
    sum_until_small(cfg, |n| {
        let w = coeff(n);
        if w == 0.0 {
            return Ok(0.0);
        }
        let order = nu + n as f64;
        Ok(w * bessel_j(order, order * z, &cfg.bessel(w))?)
    })
}

/// Second-kind sum: over n >= 0 of
/// (a(n) + z c(n)) J_(mu+n)(w z) J_(nu+n)(w z) with w = mu + nu + 2n,
/// for |z| < 1/2.
pub fn eval_kapteyn2(
    mut a: impl FnMut(usize) -> f64,
    mut c: impl FnMut(usize) -> f64,
    mu: f64,
    nu: f64,
    z: f64,
    cfg: &SumConfig,
) -> Result<EvalReport> {
    if mu < 0.0 || nu < 0.0 {
        return Err(Error::Domain(format!(
            "order offsets must be >= 0, got mu={mu} nu={nu}"
        )));
    }
    if !(z.abs() < 0.5) {
        return Err(Error::Domain(format!(
            "second kind sums need |z| < 1/2, got {z}"
        )));
    }
    sum_until_small(cfg, |n| {
        let coef = a(n) + z * c(n);
        if coef == 0.0 {
            return Ok(0.0);
        }
        let nf = n as f64;
        let w = mu + nu + 2.0 * nf;
        Ok(coef * bessel_product(mu + nf, nu + nf, w * z, &cfg.bessel(coef))?)
    })
}

/// Finite first-kind coefficient list; terms past the end are zero.
pub fn eval_kapteyn1_coeffs(nu: f64, a: &[f64], z: f64, cfg: &SumConfig) -> Result<EvalReport> {
    eval_kapteyn1(|n| a.get(n).copied().unwrap_or(0.0), nu, z, cfg)
}

/// Finite second-kind coefficient pair; the shorter list is zero-padded.
pub fn eval_kapteyn2_coeffs(
    mu: f64,
    nu: f64,
    a: &[f64],
    c: &[f64],
    z: f64,
    cfg: &SumConfig,
) -> Result<EvalReport> {
    eval_kapteyn2(
        |n| a.get(n).copied().unwrap_or(0.0),
        |n| c.get(n).copied().unwrap_or(0.0),
        mu,
        nu,
        z,
        cfg,
    )
}

/// The weight n^(2p) with the 0^0 = 1 convention at n = 0.
fn power_weight(n: usize, p: usize) -> f64 {
    if n == 0 {
        if p == 0 {
            1.0
        } else {
            0.0
        }
    } else {
        (n as f64).powi(2 * p as i32)
    }
}

/// sum over n >= 0 of n^(2p) J_n(n z), the n = 0 term contributing 1
/// exactly when p = 0. Converges for |z| < 1.
pub fn eval_power_sum_first(p: usize, z: f64, cfg: &SumConfig) -> Result<EvalReport> {
    eval_kapteyn1(|n| power_weight(n, p), 0.0, z, cfg)
}

/// sum over n >= 0 of n^(2p) J_n(2 n z)^2, the n = 0 term contributing 1
/// exactly when p = 0. Converges for |z| < 1/2.
pub fn eval_power_sum_second(p: usize, z: f64, cfg: &SumConfig) -> Result<EvalReport> {
    eval_kapteyn2(|n| power_weight(n, p), |_| 0.0, 0.0, 0.0, z, cfg)
}

/// sum over n >= 1 of n^(2m) J_n(n a)^2, by direct summation. Converges for
/// |a| < 1.
pub fn eval_power_sum_squared(m: usize, a: f64, cfg: &SumConfig) -> Result<EvalReport> {
    if !(a.abs() < 1.0) {
        return Err(Error::Domain(format!(
            "squared power sums need |a| < 1, got {a}"
        )));
    }
    sum_until_small(cfg, |i| {
        let nf = (i + 1) as f64;
        let weight = nf.powi(2 * m as i32);
        Ok(weight * bessel_product(nf, nf, nf * a, &cfg.bessel(weight))?)
    })
}

fn check_kepler_inputs(ecc: f64, mean_anomaly: f64) -> Result<()> {
    if !(0.0..1.0).contains(&ecc) {
        return Err(Error::Domain(format!(
            "eccentricity must lie in [0, 1), got {ecc}"
        )));
    }
    if !mean_anomaly.is_finite() {
        return Err(Error::Domain("mean anomaly must be finite".into()));
    }
    Ok(())
}

/// Solve E - ecc sin(E) = M for the eccentric anomaly by Newton iteration
/// from E = M, until the residual drops below `tol`.
pub fn kepler_newton(ecc: f64, mean_anomaly: f64, tol: f64) -> Result<EvalReport> {
    check_kepler_inputs(ecc, mean_anomaly)?;
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let mut e = mean_anomaly;
    let mut residual = -ecc * e.sin();
    for it in 0..=64usize {
        if residual.abs() < tol {
            return Ok(EvalReport {
                value: e,
                terms_used: it,
                last_term: residual,
            });
        }
        e -= residual / (1.0 - ecc * e.cos());
        residual = e - ecc * e.sin() - mean_anomaly;
    }
    Err(Error::NonConvergence {
        max_terms: 64,
        last_term: residual,
    })
}

/// Solve the same equation through the sine series
/// E = M + sum over n >= 1 of (2/n) J_n(n ecc) sin(n M).
pub fn kepler_bessel(ecc: f64, mean_anomaly: f64, cfg: &SumConfig) -> Result<EvalReport> {
    check_kepler_inputs(ecc, mean_anomaly)?;
    let rep = sum_until_small(cfg, |i| {
        let nf = (i + 1) as f64;
        Ok(2.0 / nf * bessel_j(nf, nf * ecc, &cfg.bessel(2.0))? * (nf * mean_anomaly).sin())
    })?;
    Ok(EvalReport {
        value: mean_anomaly + rep.value,
        ..rep
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::{power_sum_first, power_sum_second, power_sum_squared};

    const CFG: SumConfig = SumConfig {
        tol: 1e-12,
        max_n: 400,
        consecutive_small: 3,
    };

    #[test]
    fn first_kind_power_sums_match_their_closed_forms() {
        for p in 0..=3usize {
            let cf = power_sum_first(p).unwrap();
            for &z in &[0.1, 0.25, 0.4] {
                let direct = eval_power_sum_first(p, z, &CFG).unwrap().value;
                let closed = cf.eval(z).unwrap();
                assert!(
                    (direct - closed).abs() < 1e-10 * (1.0 + closed.abs()),
                    "p={p} z={z}: {direct} vs {closed}"
                );
            }
        }
        // hand value: weight 0 at z = 1/2 gives (2 - z)/(2 - 2z) = 1.5
        let direct = eval_power_sum_first(0, 0.5, &CFG).unwrap().value;
        assert!((direct - 1.5).abs() < 1e-10);
    }

    #[test]
    fn second_kind_power_sums_match_their_closed_forms() {
        for p in 0..=3usize {
            let cf = power_sum_second(p).unwrap();
            for &z in &[0.05, 0.1, 0.2] {
                let direct = eval_power_sum_second(p, z, &CFG).unwrap().value;
                let closed = cf.eval(z).unwrap();
                assert!(
                    (direct - closed).abs() < 1e-10 * (1.0 + closed.abs()),
                    "p={p} z={z}: {direct} vs {closed}"
                );
            }
        }
    }

    #[test]
    fn squared_power_sums_match_their_closed_forms() {
        for m in 0..=3usize {
            let cf = power_sum_squared(m).unwrap();
            for &a in &[0.2, 0.4] {
                let direct = eval_power_sum_squared(m, a, &CFG).unwrap().value;
                let closed = cf.eval(a).unwrap();
                assert!(
                    (direct - closed).abs() < 1e-10 * (1.0 + closed.abs()),
                    "m={m} a={a}: {direct} vs {closed}"
                );
            }
        }
    }

    #[test]
    fn finite_lists_reduce_to_plain_bessel_terms() {
        let bes = crate::bessel::BesselEvalConfig::default();
        let z = 0.3;
        // single a_1 term at nu = 0 is exactly J_1(z)
        let got = eval_kapteyn1_coeffs(0.0, &[0.0, 1.0], z, &CFG).unwrap().value;
        let want = bessel_j(1.0, z, &bes).unwrap();
        assert!((got - want).abs() < 1e-13);

        // fractional order: single leading term at nu = 1/2 is J_(1/2)(z/2)
        let got = eval_kapteyn1_coeffs(0.5, &[1.0], z, &CFG).unwrap().value;
        let want = bessel_j(0.5, 0.5 * z, &bes).unwrap();
        assert!((got - want).abs() < 1e-13);

        // second kind, n = 1 term at mu = 1, nu = 0: J_2(3z) J_1(3z)
        let got = eval_kapteyn2_coeffs(1.0, 0.0, &[0.0, 1.0], &[], z, &CFG)
            .unwrap()
            .value;
        let want =
            bessel_j(2.0, 3.0 * z, &bes).unwrap() * bessel_j(1.0, 3.0 * z, &bes).unwrap();
        assert!((got - want).abs() < 1e-12);

        // pure c-list: the n = 0 product at mu = nu = 0 is J_0(0)^2 = 1
        let got = eval_kapteyn2_coeffs(0.0, 0.0, &[], &[1.0], z, &CFG)
            .unwrap()
            .value;
        assert!((got - z).abs() < 1e-14);

        // all-zero coefficients sum to zero
        assert_eq!(
            eval_kapteyn1(|_| 0.0, 0.0, 0.4, &CFG).unwrap().value,
            0.0
        );
    }

    #[test]
    fn kepler_solvers_agree_and_solve_the_equation() {
        for &ecc in &[0.0, 0.1, 0.3, 0.5] {
            for &m in &[0.5, 1.0, 2.0, 3.0] {
                let newton = kepler_newton(ecc, m, 1e-13).unwrap().value;
                let series = kepler_bessel(ecc, m, &CFG).unwrap().value;
                assert!(
                    (newton - series).abs() < 1e-9,
                    "ecc={ecc} M={m}: {newton} vs {series}"
                );
                let residual = newton - ecc * newton.sin() - m;
                assert!(residual.abs() < 1e-12, "ecc={ecc} M={m}");
            }
        }
        // M = pi is a fixed point for every eccentricity
        let e = kepler_bessel(0.4, std::f64::consts::PI, &CFG).unwrap().value;
        assert!((e - std::f64::consts::PI).abs() < 1e-12);
        // trivial eccentricity returns M itself
        assert_eq!(kepler_newton(0.0, 1.3, 1e-13).unwrap().value, 1.3);
        assert!((kepler_bessel(0.0, 1.3, &CFG).unwrap().value - 1.3).abs() < 1e-15);
    }

    /// The series solution satisfies the equation it came from, up to a
    /// small multiple of the truncation tolerance.
    #[test]
    fn kepler_series_residual_tracks_the_tolerance() {
        for &ecc in &[0.2, 0.4, 0.6] {
            for &m in &[0.5, 1.0, 2.0, 3.0] {
                let e = kepler_bessel(ecc, m, &CFG).unwrap().value;
                let residual = e - ecc * e.sin() - m;
                assert!(
                    residual.abs() < 10.0 * CFG.tol,
                    "ecc={ecc} M={m}: residual {residual:e}"
                );
            }
        }
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(
            eval_power_sum_first(0, 1.0, &CFG),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            eval_power_sum_second(0, 0.5, &CFG),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            eval_power_sum_squared(0, -1.0, &CFG),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            kepler_newton(1.0, 1.0, 1e-12),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            kepler_newton(-0.1, 1.0, 1e-12),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            eval_kapteyn1_coeffs(-1.0, &[1.0], 0.1, &CFG),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn term_budget_is_enforced() {
        let tight = SumConfig {
            tol: 1e-30,
            max_n: 5,
            consecutive_small: 3,
        };
        match eval_power_sum_first(1, 0.5, &tight) {
            Err(Error::NonConvergence { max_terms, .. }) => assert_eq!(max_terms, 5),
            other => panic!("expected NonConvergence, got {other:?}"),
        }
    }

    /// A converged value is already stable: enlarging the budget cannot
    /// move it, because the stopping point is the same.
    #[test]
    fn converged_values_are_budget_independent() {
        let wide = SumConfig { max_n: 2000, ..CFG };
        for p in 0..=2usize {
            let a = eval_power_sum_first(p, 0.3, &CFG).unwrap();
            let b = eval_power_sum_first(p, 0.3, &wide).unwrap();
            assert_eq!(a.value, b.value);
            assert_eq!(a.terms_used, b.terms_used);
        }
    }

    #[test]
    fn reports_carry_truncation_evidence() {
        let rep = eval_power_sum_first(0, 0.2, &CFG).unwrap();
        assert!(rep.terms_used > 3);
        assert!(rep.terms_used < CFG.max_n);
        assert!(rep.last_term.abs() <= CFG.tol * rep.value.abs().max(1.0));
    }
}
