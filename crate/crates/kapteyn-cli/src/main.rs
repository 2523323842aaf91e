//! Command line front end: coefficient conversion, closed form generation,
//! numeric evaluation, verification suites, and the elliptic motion solver.
//!
//! Exit codes: 0 success, 1 a verification suite found a failing check,
//! 2 malformed input or flags, 3 domain or bound violation.

mod verify;

use std::fmt;
use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use kapteyn::closed_form::{power_sum_first, power_sum_second, power_sum_squared};
use kapteyn::error::Error as LibError;
use kapteyn::eval::{
    eval_kapteyn1, eval_kapteyn1_coeffs, eval_kapteyn2, eval_kapteyn2_coeffs,
    eval_power_sum_first, eval_power_sum_second, eval_power_sum_squared, kepler_bessel,
    kepler_newton, EvalReport, SumConfig,
};
use kapteyn::first_kind::{kapteyn1_to_taylor, taylor_to_kapteyn1};
use kapteyn::record::{
    exact_values, float_values, parse_order, values_exact, values_float, CoeffRecord, CoeffValue,
    Mode,
};
use kapteyn::second_kind::{kapteyn2_to_taylor, taylor_to_kapteyn2};
use kapteyn::{Rational, Scalar};

#[derive(Parser)]
#[command(name = "kapteyn", version, about = "Kapteyn series toolkit")]
struct Cli {
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Truncation tolerance for numeric summation and the Newton solver.
    #[arg(long, global = true, default_value_t = 1e-12)]
    tol: f64,
    /// Term budget for numeric summation.
    #[arg(long, global = true, default_value_t = 400)]
    max_n: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// Convert a coefficient record between expansions.
    Convert(ConvertArgs),
    /// Print the closed form of a power weighted sum family member.
    ClosedForm(ClosedFormArgs),
    /// Sum a series numerically and report the truncation.
    Eval(EvalArgs),
    /// Run a verification suite and report counterexamples.
    Verify(verify::VerifyArgs),
    /// Solve E - ecc sin E = M for the eccentric anomaly.
    Kepler(KeplerArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Taylor,
    #[value(alias = "first")]
    Kapteyn1,
    #[value(alias = "second")]
    Kapteyn2,
}

#[derive(Args)]
struct ConvertArgs {
    /// Target expansion.
    #[arg(long, value_enum)]
    to: KindArg,
    /// Input file; stdin when omitted.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Expansion of the input when it is a bare array or shorthand object.
    #[arg(long, value_enum)]
    kind: Option<KindArg>,
    /// Order offset nu; overrides the input record's value.
    #[arg(long)]
    nu: Option<String>,
    /// Order offset mu (second kind); overrides the input record's value.
    #[arg(long)]
    mu: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    /// sum of n^(2p) J_n(n z)
    Fp,
    /// sum of n^(2p) J_n(2 n z)^2
    Gp,
    /// sum over n >= 1 of n^(2p) J_n(n a)^2
    S1,
}

#[derive(Args)]
struct ClosedFormArgs {
    #[arg(value_enum)]
    family: FamilyArg,
    /// Power of the n^(2p) weight.
    #[arg(long)]
    p: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeriesArg {
    Kapteyn1,
    Kapteyn2,
    S1,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(value_enum)]
    series: SeriesArg,
    /// Weight formula; only "n^2p" (with --p) is recognized.
    #[arg(long)]
    weight: Option<String>,
    /// Power for the n^2p weight.
    #[arg(long)]
    p: Option<usize>,
    /// Coefficient record file, as an alternative to --weight.
    #[arg(long)]
    coeffs: Option<PathBuf>,
    /// Argument of a first or second kind sum.
    #[arg(long)]
    z: Option<f64>,
    /// Argument of the squared sum family.
    #[arg(long)]
    a: Option<f64>,
    /// Weight power of the squared sum family.
    #[arg(long)]
    m: Option<usize>,
    /// Order offset nu (real; overrides the coefficient record).
    #[arg(long)]
    nu: Option<f64>,
    /// Order offset mu (real; overrides the coefficient record).
    #[arg(long)]
    mu: Option<f64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Newton,
    Bessel,
    Both,
}

#[derive(Args)]
struct KeplerArgs {
    /// Orbital eccentricity, in [0, 1).
    #[arg(long)]
    ecc: f64,
    /// Mean anomaly.
    #[arg(long = "M")]
    mean_anomaly: f64,
    #[arg(long, value_enum, default_value_t = MethodArg::Both)]
    method: MethodArg,
}

pub enum CliError {
    Lib(LibError),
    Usage(String),
    Io(String),
}

pub type CliResult<T> = Result<T, CliError>;

impl From<LibError> for CliError {
    fn from(e: LibError) -> Self {
        CliError::Lib(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Usage(m) | CliError::Io(m) => write!(f, "{m}"),
        }
    }
}

fn exit_code(e: &CliError) -> u8 {
    match e {
        CliError::Usage(_) | CliError::Io(_) => 2,
        CliError::Lib(LibError::Parse(_) | LibError::MixedMode) => 2,
        CliError::Lib(_) => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// Returns false only when a verification suite ran and found failures.
fn run(cli: &Cli) -> CliResult<bool> {
    let text = match &cli.command {
        Command::Convert(args) => cmd_convert(cli, args)?,
        Command::ClosedForm(args) => cmd_closed_form(cli, args)?,
        Command::Eval(args) => cmd_eval(cli, args)?,
        Command::Kepler(args) => cmd_kepler(cli, args)?,
        Command::Verify(args) => {
            let report = verify::run_suite(args, cli.tol, cli.max_n)?;
            let rendered = match cli.format {
                Format::Json => serde_json::to_string(&report).expect("report serializes"),
                Format::Pretty => report.pretty(),
                Format::Csv => {
                    return Err(CliError::Usage(
                        "csv output is not defined for verify reports; use json or pretty".into(),
                    ))
                }
            };
            emit(cli, &rendered)?;
            return Ok(report.pass);
        }
    };
    emit(cli, &text)?;
    Ok(true)
}

fn emit(cli: &Cli, text: &str) -> CliResult<()> {
    let mut body = text.to_string();
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match &cli.out {
        Some(path) => fs::write(path, body)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn read_input(path: &Option<PathBuf>) -> CliResult<String> {
    match path {
        Some(p) => fs::read_to_string(p)
            .map_err(|e| CliError::Io(format!("cannot read {}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Io(format!("cannot read stdin: {e}")))?;
            Ok(s)
        }
    }
}

// ---------------------------------------------------------------- convert

fn cmd_convert(cli: &Cli, args: &ConvertArgs) -> CliResult<String> {
    let text = read_input(&args.input)?;
    let rec = load_record(&text, args)?;
    rec.validate()?;
    let (nu, mu) = effective_orders(&rec, &args.nu, &args.mu);
    let converted = match rec.mode() {
        Mode::Exact => convert_exact(&rec, &nu, &mu, args.to)?,
        Mode::Float => convert_float(&rec, &nu, &mu, args.to)?,
    };
    Ok(match cli.format {
        Format::Json => converted.to_json(),
        Format::Csv => record_csv(&converted),
        Format::Pretty => record_pretty(&converted),
    })
}

/// Accept a full record, a bare coefficient array (kind from --kind), or a
/// shorthand object with keys b / a / a,c and optional nu, mu.
fn load_record(text: &str, args: &ConvertArgs) -> CliResult<CoeffRecord> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| LibError::Parse(format!("bad input JSON: {e}")))?;
    match &value {
        Value::Object(map) if map.contains_key("kind") => Ok(CoeffRecord::from_json(text)?),
        Value::Array(items) => {
            let kind = args.kind.ok_or_else(|| {
                CliError::Usage("a bare coefficient array needs --kind".into())
            })?;
            let (mode, vals) = infer_values(items)?;
            let nu = args.nu.clone().unwrap_or_else(|| "0".into());
            let mu = args.mu.clone().unwrap_or_else(|| "0".into());
            Ok(match kind {
                KindArg::Taylor => CoeffRecord::Taylor { nu, mode, coeffs: vals },
                KindArg::Kapteyn1 => CoeffRecord::Kapteyn1 { nu, mode, coeffs: vals },
                KindArg::Kapteyn2 => {
                    let c = zero_values(mode, vals.len());
                    CoeffRecord::Kapteyn2 { mu, nu, mode, a: vals, c }
                }
            })
        }
        Value::Object(map) => shorthand_record(map, args),
        _ => Err(CliError::Lib(LibError::Parse(
            "expected a record object or a coefficient array".into(),
        ))),
    }
}

fn shorthand_record(
    map: &serde_json::Map<String, Value>,
    args: &ConvertArgs,
) -> CliResult<CoeffRecord> {
    let list = |key: &str| -> CliResult<Option<(Mode, Vec<CoeffValue>)>> {
        match map.get(key) {
            None => Ok(None),
            Some(Value::Array(items)) => Ok(Some(infer_values(items)?)),
            Some(_) => Err(CliError::Lib(LibError::Parse(format!(
                "field {key:?} must be an array"
            )))),
        }
    };
    let order = |key: &str| -> CliResult<Option<String>> {
        match map.get(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.trim().to_string())),
            Some(Value::Number(n)) => Ok(Some(n.to_string())),
            Some(_) => Err(CliError::Lib(LibError::Parse(format!(
                "field {key:?} must be a string or number"
            )))),
        }
    };
    let nu = order("nu")?.or_else(|| args.nu.clone()).unwrap_or_else(|| "0".into());
    let mu = order("mu")?.or_else(|| args.mu.clone()).unwrap_or_else(|| "0".into());
    match (list("b")?, list("a")?, list("c")?) {
        (Some((mode, coeffs)), None, None) => Ok(CoeffRecord::Taylor { nu, mode, coeffs }),
        (None, Some((mode, a)), None) if args.kind != Some(KindArg::Kapteyn2) => {
            Ok(CoeffRecord::Kapteyn1 { nu, mode, coeffs: a })
        }
        (None, Some((mode, a)), maybe_c) => {
            let c = match maybe_c {
                Some((c_mode, c)) => {
                    if c_mode != mode && !c.is_empty() && !a.is_empty() {
                        return Err(CliError::Lib(LibError::MixedMode));
                    }
                    c
                }
                None => zero_values(mode, a.len()),
            };
            Ok(CoeffRecord::Kapteyn2 { mu, nu, mode, a, c })
        }
        _ => Err(CliError::Lib(LibError::Parse(
            "shorthand input needs key \"b\" (Taylor), \"a\" (first kind) or \"a\"/\"c\" (second kind)"
                .into(),
        ))),
    }
}

/// Strings and literal integers mean exact mode; any fractional number
/// switches the list to float mode, and mixing that with strings fails.
fn infer_values(items: &[Value]) -> CliResult<(Mode, Vec<CoeffValue>)> {
    let mut saw_string = false;
    let mut saw_fraction = false;
    for v in items {
        match v {
            Value::String(_) => saw_string = true,
            Value::Number(n) => {
                if !n.is_i64() && !n.is_u64() {
                    saw_fraction = true;
                }
            }
            other => {
                return Err(CliError::Lib(LibError::Parse(format!(
                    "coefficient {other} must be a string or number"
                ))))
            }
        }
    }
    if saw_string && saw_fraction {
        return Err(CliError::Lib(LibError::MixedMode));
    }
    if saw_fraction {
        let vals = items
            .iter()
            .map(|v| CoeffValue::Float(v.as_f64().expect("checked numeric")))
            .collect();
        return Ok((Mode::Float, vals));
    }
    let vals = items
        .iter()
        .map(|v| match v {
            Value::String(s) => CoeffValue::Exact(s.trim().to_string()),
            Value::Number(n) => CoeffValue::Exact(n.to_string()),
            _ => unreachable!("validated above"),
        })
        .collect();
    Ok((Mode::Exact, vals))
}

fn zero_values(mode: Mode, len: usize) -> Vec<CoeffValue> {
    match mode {
        Mode::Exact => vec![CoeffValue::Exact("0".into()); len],
        Mode::Float => vec![CoeffValue::Float(0.0); len],
    }
}

/// Flag overrides beat whatever the record carries; mu defaults to 0 for
/// records that do not have one.
fn effective_orders(
    rec: &CoeffRecord,
    nu_flag: &Option<String>,
    mu_flag: &Option<String>,
) -> (String, String) {
    let (rec_nu, rec_mu) = match rec {
        CoeffRecord::Taylor { nu, .. } | CoeffRecord::Kapteyn1 { nu, .. } => (nu.clone(), None),
        CoeffRecord::Kapteyn2 { mu, nu, .. } => (nu.clone(), Some(mu.clone())),
    };
    let nu = nu_flag.clone().unwrap_or(rec_nu);
    let mu = mu_flag
        .clone()
        .or(rec_mu)
        .unwrap_or_else(|| "0".into());
    (nu, mu)
}

fn convert_exact(
    rec: &CoeffRecord,
    nu_s: &str,
    mu_s: &str,
    to: KindArg,
) -> CliResult<CoeffRecord> {
    let nu_n = parse_order(nu_s)?;
    let nu = Rational::from_int(nu_n as i64);
    let taylor = match rec {
        CoeffRecord::Taylor { coeffs, .. } => values_exact(coeffs)?,
        CoeffRecord::Kapteyn1 { coeffs, .. } => kapteyn1_to_taylor(&nu, &values_exact(coeffs)?)?,
        CoeffRecord::Kapteyn2 { a, c, .. } => {
            let mu = Rational::from_int(parse_order(mu_s)? as i64);
            kapteyn2_to_taylor(&mu, &nu, &values_exact(a)?, &values_exact(c)?)?
        }
    };
    let mode = Mode::Exact;
    Ok(match to {
        KindArg::Taylor => CoeffRecord::Taylor {
            nu: nu_n.to_string(),
            mode,
            coeffs: exact_values(&taylor),
        },
        KindArg::Kapteyn1 => CoeffRecord::Kapteyn1 {
            nu: nu_n.to_string(),
            mode,
            coeffs: exact_values(&taylor_to_kapteyn1(&nu, &taylor)?),
        },
        KindArg::Kapteyn2 => {
            let mu_n = parse_order(mu_s)?;
            let mu = Rational::from_int(mu_n as i64);
            let (a, c) = taylor_to_kapteyn2(&mu, &nu, &taylor)?;
            CoeffRecord::Kapteyn2 {
                mu: mu_n.to_string(),
                nu: nu_n.to_string(),
                mode,
                a: exact_values(&a),
                c: exact_values(&c),
            }
        }
    })
}

fn parse_real_order(s: &str) -> CliResult<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|e| CliError::Lib(LibError::Parse(format!("bad order {s:?}: {e}"))))
}

fn convert_float(
    rec: &CoeffRecord,
    nu_s: &str,
    mu_s: &str,
    to: KindArg,
) -> CliResult<CoeffRecord> {
    let nu = parse_real_order(nu_s)?;
    let taylor = match rec {
        CoeffRecord::Taylor { coeffs, .. } => values_float(coeffs)?,
        CoeffRecord::Kapteyn1 { coeffs, .. } => kapteyn1_to_taylor(&nu, &values_float(coeffs)?)?,
        CoeffRecord::Kapteyn2 { a, c, .. } => {
            let mu = parse_real_order(mu_s)?;
            kapteyn2_to_taylor(&mu, &nu, &values_float(a)?, &values_float(c)?)?
        }
    };
    let mode = Mode::Float;
    Ok(match to {
        KindArg::Taylor => CoeffRecord::Taylor {
            nu: nu.to_string(),
            mode,
            coeffs: float_values(&taylor),
        },
        KindArg::Kapteyn1 => CoeffRecord::Kapteyn1 {
            nu: nu.to_string(),
            mode,
            coeffs: float_values(&taylor_to_kapteyn1(&nu, &taylor)?),
        },
        KindArg::Kapteyn2 => {
            let mu = parse_real_order(mu_s)?;
            let (a, c) = taylor_to_kapteyn2(&mu, &nu, &taylor)?;
            CoeffRecord::Kapteyn2 {
                mu: mu.to_string(),
                nu: nu.to_string(),
                mode,
                a: float_values(&a),
                c: float_values(&c),
            }
        }
    })
}

fn value_str(v: &CoeffValue) -> String {
    match v {
        CoeffValue::Exact(s) => s.clone(),
        CoeffValue::Float(x) => x.to_string(),
    }
}

fn record_csv(rec: &CoeffRecord) -> String {
    match rec {
        CoeffRecord::Taylor { coeffs, .. } | CoeffRecord::Kapteyn1 { coeffs, .. } => {
            let mut out = String::from("index,value");
            for (i, v) in coeffs.iter().enumerate() {
                out.push_str(&format!("\n{i},{}", value_str(v)));
            }
            out
        }
        CoeffRecord::Kapteyn2 { mode, a, c, .. } => {
            let zero = zero_values(*mode, 1);
            let mut out = String::from("index,a,c");
            for i in 0..a.len().max(c.len()) {
                let av = a.get(i).unwrap_or(&zero[0]);
                let cv = c.get(i).unwrap_or(&zero[0]);
                out.push_str(&format!("\n{i},{},{}", value_str(av), value_str(cv)));
            }
            out
        }
    }
}

fn record_pretty(rec: &CoeffRecord) -> String {
    let rows = |name: &str, vals: &[CoeffValue]| -> String {
        vals.iter()
            .enumerate()
            .map(|(i, v)| format!("{name}[{i}] = {}", value_str(v)))
            .collect::<Vec<_>>()
            .join("\n")
    };
    match rec {
        CoeffRecord::Taylor { nu, coeffs, .. } => {
            format!("taylor (nu = {nu})\n{}", rows("b", coeffs))
        }
        CoeffRecord::Kapteyn1 { nu, coeffs, .. } => {
            format!("kapteyn1 (nu = {nu})\n{}", rows("a", coeffs))
        }
        CoeffRecord::Kapteyn2 { mu, nu, a, c, .. } => {
            format!(
                "kapteyn2 (mu = {mu}, nu = {nu})\n{}\n{}",
                rows("a", a),
                rows("c", c)
            )
        }
    }
}

// ------------------------------------------------------------ closed-form

fn cmd_closed_form(cli: &Cli, args: &ClosedFormArgs) -> CliResult<String> {
    let cf = match args.family {
        FamilyArg::Fp => power_sum_first(args.p)?,
        FamilyArg::Gp => power_sum_second(args.p)?,
        FamilyArg::S1 => power_sum_squared(args.p)?,
    };
    match cli.format {
        Format::Json => Ok(serde_json::to_string(&cf).expect("closed form serializes")),
        Format::Pretty => Ok(cf.render()),
        Format::Csv => Err(CliError::Usage(
            "csv output is not defined for closed forms; use json or pretty".into(),
        )),
    }
}

// ------------------------------------------------------------------- eval

fn sum_config(cli: &Cli) -> SumConfig {
    SumConfig {
        tol: cli.tol,
        max_n: cli.max_n,
        ..SumConfig::default()
    }
}

/// n^(2p) with the 0^0 = 1 convention.
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

fn weight_power(args: &EvalArgs) -> CliResult<usize> {
    let w = args.weight.as_deref().ok_or_else(|| {
        CliError::Usage("provide --weight n^2p with --p, or a --coeffs file".into())
    })?;
    if w.trim() != "n^2p" {
        return Err(CliError::Usage(format!(
            "unrecognized weight {w:?}; only \"n^2p\" is supported"
        )));
    }
    args.p
        .ok_or_else(|| CliError::Usage("--weight n^2p needs --p".into()))
}

fn require<T: Copy>(opt: Option<T>, what: &str) -> CliResult<T> {
    opt.ok_or_else(|| CliError::Usage(format!("missing required flag {what}")))
}

fn record_reals(vals: &[CoeffValue], mode: Mode) -> CliResult<Vec<f64>> {
    Ok(match mode {
        Mode::Float => values_float(vals)?,
        Mode::Exact => values_exact(vals)?.iter().map(Scalar::to_f64).collect(),
    })
}

fn cmd_eval(cli: &Cli, args: &EvalArgs) -> CliResult<String> {
    let cfg = sum_config(cli);
    let report = match args.series {
        SeriesArg::Kapteyn1 => {
            let z = require(args.z, "--z")?;
            if let Some(path) = &args.coeffs {
                let rec = CoeffRecord::from_json(&read_input(&Some(path.clone()))?)?;
                let CoeffRecord::Kapteyn1 { nu, mode, coeffs } = &rec else {
                    return Err(CliError::Usage(format!(
                        "eval kapteyn1 needs a kapteyn1 record, got {}",
                        rec.kind_name()
                    )));
                };
                let a = record_reals(coeffs, *mode)?;
                let nu = match args.nu {
                    Some(x) => x,
                    None => parse_real_order(nu)?,
                };
                eval_kapteyn1_coeffs(nu, &a, z, &cfg)?
            } else {
                let p = weight_power(args)?;
                let nu = args.nu.unwrap_or(0.0);
                if nu == 0.0 {
                    eval_power_sum_first(p, z, &cfg)?
                } else {
                    eval_kapteyn1(|n| power_weight(n, p), nu, z, &cfg)?
                }
            }
        }
        SeriesArg::Kapteyn2 => {
            let z = require(args.z, "--z")?;
            if let Some(path) = &args.coeffs {
                let rec = CoeffRecord::from_json(&read_input(&Some(path.clone()))?)?;
                let CoeffRecord::Kapteyn2 { mu, nu, mode, a, c } = &rec else {
                    return Err(CliError::Usage(format!(
                        "eval kapteyn2 needs a kapteyn2 record, got {}",
                        rec.kind_name()
                    )));
                };
                let av = record_reals(a, *mode)?;
                let cv = record_reals(c, *mode)?;
                let mu = match args.mu {
                    Some(x) => x,
                    None => parse_real_order(mu)?,
                };
                let nu = match args.nu {
                    Some(x) => x,
                    None => parse_real_order(nu)?,
                };
                eval_kapteyn2_coeffs(mu, nu, &av, &cv, z, &cfg)?
            } else {
                let p = weight_power(args)?;
                let (mu, nu) = (args.mu.unwrap_or(0.0), args.nu.unwrap_or(0.0));
                if mu == 0.0 && nu == 0.0 {
                    eval_power_sum_second(p, z, &cfg)?
                } else {
                    eval_kapteyn2(|n| power_weight(n, p), |_| 0.0, mu, nu, z, &cfg)?
                }
            }
        }
        SeriesArg::S1 => {
            let m = require(args.m, "--m")?;
            let a = require(args.a, "--a")?;
            eval_power_sum_squared(m, a, &cfg)?
        }
    };
    Ok(render_report(&report, cli.format))
}

fn report_json(rep: &EvalReport) -> Value {
    json!({
        "value": rep.value,
        "terms_used": rep.terms_used,
        "last_term": rep.last_term,
    })
}

fn render_report(rep: &EvalReport, format: Format) -> String {
    match format {
        Format::Json => report_json(rep).to_string(),
        Format::Csv => format!(
            "value,terms_used,last_term\n{},{},{}",
            rep.value, rep.terms_used, rep.last_term
        ),
        Format::Pretty => format!(
            "{} after {} terms (last term {:e})",
            rep.value, rep.terms_used, rep.last_term
        ),
    }
}

// ----------------------------------------------------------------- kepler

fn cmd_kepler(cli: &Cli, args: &KeplerArgs) -> CliResult<String> {
    let cfg = sum_config(cli);
    match args.method {
        MethodArg::Newton => {
            let rep = kepler_newton(args.ecc, args.mean_anomaly, cli.tol)?;
            Ok(render_report(&rep, cli.format))
        }
        MethodArg::Bessel => {
            let rep = kepler_bessel(args.ecc, args.mean_anomaly, &cfg)?;
            Ok(render_report(&rep, cli.format))
        }
        MethodArg::Both => {
            let newton = kepler_newton(args.ecc, args.mean_anomaly, cli.tol)?;
            let bessel = kepler_bessel(args.ecc, args.mean_anomaly, &cfg)?;
            let diff = (newton.value - bessel.value).abs();
            Ok(match cli.format {
                Format::Json => json!({
                    "newton": report_json(&newton),
                    "bessel": report_json(&bessel),
                    "difference": diff,
                })
                .to_string(),
                Format::Csv => format!(
                    "method,value,terms_used,last_term\nnewton,{},{},{}\nbessel,{},{},{}",
                    newton.value,
                    newton.terms_used,
                    newton.last_term,
                    bessel.value,
                    bessel.terms_used,
                    bessel.last_term
                ),
                Format::Pretty => format!(
                    "newton: {} ({} steps)\nbessel: {} ({} terms)\ndifference: {diff:e}",
                    newton.value, newton.terms_used, bessel.value, bessel.terms_used
                ),
            })
        }
    }
}
