//! Verification suites: each runs a grid of independent checks and reports
//! every failing cell with its coordinates, so a red run points straight at
//! the counterexample.

use clap::{Args, ValueEnum};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use kapteyn::bessel::{bessel_j, bessel_j_integral, bessel_product, BesselEvalConfig};
use kapteyn::closed_form::{
    power_sum_first, power_sum_second, power_sum_squared, sinh_power_derivative,
};
use kapteyn::eval::{
    eval_power_sum_first, eval_power_sum_second, eval_power_sum_squared, SumConfig,
};
use kapteyn::first_kind::{coeff_u, coeff_v, kapteyn1_to_taylor, taylor_to_kapteyn1};
use kapteyn::scalar::binomial;
use kapteyn::second_kind::{coeff_alpha, coeff_beta, kapteyn2_to_taylor, taylor_to_kapteyn2};
use kapteyn::Rational;

use crate::{CliError, CliResult};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    /// First kind weights invert each other, exactly.
    Biortho1,
    /// Second kind weights invert each other, exactly.
    Biortho2,
    /// sinh power derivatives equal their binomial sums, exactly.
    Lemma,
    /// Closed forms agree with direct summation within 1e-9.
    ClosedVsSum,
    /// Random exact sequences convert there and back unchanged.
    Roundtrip,
    /// Bessel series vs integral and product vs split evaluation.
    BesselXcheck,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    suite: SuiteArg,
    /// Inclusive order range like "0..3", or a single value.
    #[arg(long)]
    nu: Option<String>,
    /// Inclusive order range like "0..2", or a single value.
    #[arg(long)]
    mu: Option<String>,
    /// Largest row index s.
    #[arg(long)]
    s: Option<usize>,
    /// Largest sinh power r (lemma suite).
    #[arg(long)]
    r: Option<usize>,
    /// Largest derivative order m (lemma suite).
    #[arg(long)]
    m: Option<usize>,
    /// Inclusive weight power range like "0..4", or a single value.
    #[arg(long)]
    p: Option<String>,
    /// Comma separated z grid for the summation suites.
    #[arg(long)]
    z: Option<String>,
    /// Comma separated a grid for the squared sum family.
    #[arg(long)]
    a: Option<String>,
    /// Number of random sequences (roundtrip suite).
    #[arg(long, default_value_t = 100)]
    cases: usize,
    /// Largest random sequence length (roundtrip suite).
    #[arg(long, default_value_t = 20)]
    len: usize,
    /// RNG seed (roundtrip suite).
    #[arg(long, default_value_t = 0x0acce97a)]
    seed: u64,
    /// Largest integer order (Bessel cross check).
    #[arg(long, default_value_t = 8)]
    n: usize,
}

#[derive(Serialize)]
pub struct Failure {
    #[serde(rename = "where")]
    pub at: Value,
    pub detail: String,
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub suite: &'static str,
    pub checks: usize,
    pub pass: bool,
    pub failures: Vec<Failure>,
}

impl VerifyReport {
    fn new(suite: &'static str, checks: usize, failures: Vec<Failure>) -> Self {
        VerifyReport {
            suite,
            checks,
            pass: failures.is_empty(),
            failures,
        }
    }

    pub fn pretty(&self) -> String {
        if self.pass {
            return format!("suite {}: {} checks, pass", self.suite, self.checks);
        }
        let mut out = format!(
            "suite {}: {} of {} checks FAILED",
            self.suite,
            self.failures.len(),
            self.checks
        );
        for f in &self.failures {
            out.push_str(&format!("\n  at {}: {}", f.at, f.detail));
        }
        out
    }
}

fn parse_range(flag: &Option<String>, what: &str, default: (usize, usize)) -> CliResult<(usize, usize)> {
    let Some(s) = flag else { return Ok(default) };
    let t = s.trim();
    let (lo, hi) = match t.split_once("..") {
        Some((lo, hi)) => (lo.trim(), hi.trim()),
        None => (t, t),
    };
    let parse = |x: &str| {
        x.parse::<usize>()
            .map_err(|e| CliError::Usage(format!("bad {what} range {s:?}: {e}")))
    };
    let (lo, hi) = (parse(lo)?, parse(hi)?);
    if lo > hi {
        return Err(CliError::Usage(format!("empty {what} range {s:?}")));
    }
    Ok((lo, hi))
}

fn parse_grid(flag: &Option<String>, what: &str, default: &[f64]) -> CliResult<Vec<f64>> {
    let Some(s) = flag else { return Ok(default.to_vec()) };
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .map_err(|e| CliError::Usage(format!("bad {what} grid {s:?}: {e}")))
        })
        .collect()
}

pub fn run_suite(args: &VerifyArgs, tol: f64, max_n: usize) -> CliResult<VerifyReport> {
    match args.suite {
        SuiteArg::Biortho1 => biortho1(args),
        SuiteArg::Biortho2 => biortho2(args),
        SuiteArg::Lemma => lemma(args),
        SuiteArg::ClosedVsSum => closed_vs_sum(args, tol, max_n),
        SuiteArg::Roundtrip => roundtrip(args),
        SuiteArg::BesselXcheck => bessel_xcheck(args),
    }
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn delta(a: usize, b: usize) -> Rational {
    if a == b {
        Rational::one()
    } else {
        Rational::zero()
    }
}

fn biortho1(args: &VerifyArgs) -> CliResult<VerifyReport> {
    let (nu_lo, nu_hi) = parse_range(&args.nu, "nu", (0, 3))?;
    let s_max = args.s.unwrap_or(15);
    let mut checks = 0;
    let mut failures = Vec::new();
    for nu in nu_lo..=nu_hi {
        let nu_r = int(nu as i64);
        for parity in 0..=1usize {
            for s in 0..=s_max {
                for k in 0..=s {
                    let mut uv = Rational::zero();
                    let mut vu = Rational::zero();
                    for j in k..=s {
                        uv += coeff_u(&nu_r, 2 * j + parity, j - k)?
                            * coeff_v(&nu_r, 2 * s + parity, s - j)?;
                        vu += coeff_v(&nu_r, 2 * j + parity, j - k)?
                            * coeff_u(&nu_r, 2 * s + parity, s - j)?;
                    }
                    checks += 1;
                    let want = delta(k, s);
                    if uv != want || vu != want {
                        failures.push(Failure {
                            at: json!({"nu": nu, "parity": parity, "k": k, "s": s}),
                            detail: format!("u*v = {uv}, v*u = {vu}, want {want}"),
                        });
                    }
                }
            }
        }
    }
    Ok(VerifyReport::new("biortho1", checks, failures))
}

fn biortho2(args: &VerifyArgs) -> CliResult<VerifyReport> {
    let (mu_lo, mu_hi) = parse_range(&args.mu, "mu", (0, 2))?;
    let (nu_lo, nu_hi) = parse_range(&args.nu, "nu", (0, 2))?;
    let s_max = args.s.unwrap_or(12);
    let mut checks = 0;
    let mut failures = Vec::new();
    for mu in mu_lo..=mu_hi {
        for nu in nu_lo..=nu_hi {
            let (mu_r, nu_r) = (int(mu as i64), int(nu as i64));
            for s in 0..=s_max {
                for j in 0..=s {
                    let mut ab = Rational::zero();
                    let mut ba = Rational::zero();
                    for k in j..=s {
                        ab += coeff_alpha(&mu_r, &nu_r, s, k)? * coeff_beta(&mu_r, &nu_r, k, j)?;
                        ba += coeff_beta(&mu_r, &nu_r, s, k)? * coeff_alpha(&mu_r, &nu_r, k, j)?;
                    }
                    checks += 1;
                    let want = delta(j, s);
                    if ab != want || ba != want {
                        failures.push(Failure {
                            at: json!({"mu": mu, "nu": nu, "j": j, "s": s}),
                            detail: format!("alpha*beta = {ab}, beta*alpha = {ba}, want {want}"),
                        });
                    }
                }
            }
        }
    }
    Ok(VerifyReport::new("biortho2", checks, failures))
}

fn lemma(args: &VerifyArgs) -> CliResult<VerifyReport> {
    let r_max = args.r.unwrap_or(10);
    let m_max = args.m.unwrap_or(14);
    let mut checks = 0;
    let mut failures = Vec::new();
    // 0^0 = 1: the k-th exponential contributes (r - 2k)^m
    let int_pow = |base: i64, m: usize| -> BigInt {
        if m == 0 {
            BigInt::one()
        } else {
            BigInt::from(base).pow(m as u32)
        }
    };
    for r in 0..=r_max {
        for m in 0..=m_max {
            let mut sum = BigInt::zero();
            for k in 0..=r {
                let term = binomial(r as u64, k as u64) * int_pow(r as i64 - 2 * k as i64, m);
                if k % 2 == 0 {
                    sum += term;
                } else {
                    sum -= term;
                }
            }
            let direct = Rational::new(sum, BigInt::from(2).pow(r as u32));
            let series = sinh_power_derivative(r, m);
            checks += 1;
            if series != direct {
                failures.push(Failure {
                    at: json!({"r": r, "m": m}),
                    detail: format!("series route {series}, binomial route {direct}"),
                });
            }
        }
    }
    Ok(VerifyReport::new("lemma", checks, failures))
}

fn closed_vs_sum(args: &VerifyArgs, tol: f64, max_n: usize) -> CliResult<VerifyReport> {
    let (p_lo, p_hi) = parse_range(&args.p, "p", (0, 4))?;
    let z_first = parse_grid(&args.z, "z", &[0.1, 0.2, 0.3])?;
    let z_second = parse_grid(&args.z, "z", &[0.05, 0.1, 0.2])?;
    let a_grid = parse_grid(&args.a, "a", &[0.2, 0.3, 0.5])?;
    let cfg = SumConfig {
        tol,
        max_n,
        ..SumConfig::default()
    };
    let gate = 1e-9;
    let mut checks = 0;
    let mut failures = Vec::new();
    {
        let mut cell = |family: &str, p: usize, x: f64, closed: kapteyn::Result<f64>, direct: kapteyn::Result<kapteyn::eval::EvalReport>| {
            checks += 1;
            let at = json!({"family": family, "p": p, "arg": x});
            match (closed, direct) {
                (Ok(cv), Ok(rep)) => {
                    if !((rep.value - cv).abs() < gate * cv.abs().max(1.0)) {
                        failures.push(Failure {
                            at,
                            detail: format!("closed {} vs direct {}", cv, rep.value),
                        });
                    }
                }
                (Err(e), _) => failures.push(Failure {
                    at,
                    detail: format!("closed form evaluation failed: {e}"),
                }),
                (_, Err(e)) => failures.push(Failure {
                    at,
                    detail: format!("direct summation failed: {e}"),
                }),
            }
        };
        for p in p_lo..=p_hi {
            let fp = power_sum_first(p)?;
            let gp = power_sum_second(p)?;
            let s1 = power_sum_squared(p)?;
            for &z in &z_first {
                cell("fp", p, z, fp.eval(z), eval_power_sum_first(p, z, &cfg));
            }
            for &z in &z_second {
                cell("gp", p, z, gp.eval(z), eval_power_sum_second(p, z, &cfg));
            }
            for &a in &a_grid {
                cell("s1", p, a, s1.eval(a), eval_power_sum_squared(p, a, &cfg));
            }
        }
    }
    Ok(VerifyReport::new("closed-vs-sum", checks, failures))
}

fn roundtrip(args: &VerifyArgs) -> CliResult<VerifyReport> {
    if args.len == 0 {
        return Err(CliError::Usage("--len must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut checks = 0;
    let mut failures = Vec::new();
    for case in 0..args.cases {
        let len = rng.gen_range(1..=args.len);
        let b: Vec<Rational> = (0..len)
            .map(|_| {
                Rational::new(
                    rng.gen_range(-999i64..=999).into(),
                    rng.gen_range(1i64..=99).into(),
                )
            })
            .collect();

        let nu = int((case % 4) as i64);
        let a = taylor_to_kapteyn1(&nu, &b)?;
        checks += 1;
        if kapteyn1_to_taylor(&nu, &a)? != b {
            failures.push(Failure {
                at: json!({"kind": "kapteyn1", "case": case, "nu": (case % 4), "len": len}),
                detail: "roundtrip changed the sequence".into(),
            });
        }

        let mu2 = int((case % 3) as i64);
        let nu2 = int(((case / 3) % 3) as i64);
        let (a2, c2) = taylor_to_kapteyn2(&mu2, &nu2, &b)?;
        let back = kapteyn2_to_taylor(&mu2, &nu2, &a2, &c2)?;
        checks += 1;
        if back[..len] != b[..] || !back[len..].iter().all(Rational::is_zero) {
            failures.push(Failure {
                at: json!({"kind": "kapteyn2", "case": case, "mu": (case % 3), "nu": ((case / 3) % 3), "len": len}),
                detail: "roundtrip changed the sequence".into(),
            });
        }
    }
    Ok(VerifyReport::new("roundtrip", checks, failures))
}

fn bessel_xcheck(args: &VerifyArgs) -> CliResult<VerifyReport> {
    let n_max = args.n;
    let cfg = BesselEvalConfig::default();
    let mut checks = 0;
    let mut failures = Vec::new();

    for n in 0..=n_max {
        for iz in 0..=8 {
            let z = 0.25 * iz as f64;
            let series = bessel_j(n as f64, z, &cfg)?;
            let integral = bessel_j_integral(n, z, 512);
            checks += 1;
            if !((series - integral).abs() < 1e-9) {
                failures.push(Failure {
                    at: json!({"route": "series-vs-integral", "n": n, "z": z}),
                    detail: format!("series {series} vs integral {integral}"),
                });
            }
        }
    }

    for &mu in &[0.0, 1.0, 2.0, 2.5] {
        for &nu in &[0.0, 1.0, 2.0, 2.5] {
            for iz in 0..=5 {
                let z = 0.4 * iz as f64;
                let joint = bessel_product(mu, nu, z, &cfg)?;
                let split = bessel_j(mu, z, &cfg)? * bessel_j(nu, z, &cfg)?;
                checks += 1;
                if !((joint - split).abs() < 1e-11) {
                    failures.push(Failure {
                        at: json!({"route": "product-vs-split", "mu": mu, "nu": nu, "z": z}),
                        detail: format!("product series {joint} vs split {split}"),
                    });
                }
            }
        }
    }
    Ok(VerifyReport::new("bessel-xcheck", checks, failures))
}
