//! JSON records for coefficient sequences.
//!
//! A record names the expansion the coefficients belong to ("kind"), the
//! order offsets as strings, and a mode. In exact mode every coefficient is
//! a rational string like "3/4" or "-2"; in float mode every coefficient is
//! a JSON number. Mixing the two in one record is rejected, since silently
//! promoting exact data to floats would destroy the guarantee the exact
//! mode exists for.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{parse_rational, Rational};

/// Whether coefficients are exact rational strings or f64 numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

/// One coefficient as it appears in JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffValue {
    Exact(String),
    Float(f64),
}

/// A coefficient sequence tied to a particular expansion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CoeffRecord {
    Taylor {
        nu: String,
        mode: Mode,
        coeffs: Vec<CoeffValue>,
    },
    Kapteyn1 {
        nu: String,
        mode: Mode,
        coeffs: Vec<CoeffValue>,
    },
    Kapteyn2 {
        mu: String,
        nu: String,
        mode: Mode,
        a: Vec<CoeffValue>,
        c: Vec<CoeffValue>,
    },
}

fn check_mode(mode: Mode, vals: &[CoeffValue]) -> Result<()> {
    let consistent = vals.iter().all(|v| match mode {
        Mode::Exact => matches!(v, CoeffValue::Exact(_)),
        Mode::Float => matches!(v, CoeffValue::Float(_)),
    });
    if consistent {
        Ok(())
    } else {
        Err(Error::MixedMode)
    }
}

impl CoeffRecord {
    pub fn from_json(s: &str) -> Result<Self> {
        let rec: CoeffRecord =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("bad record: {e}")))?;
        rec.validate()?;
        Ok(rec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serialization cannot fail")
    }

    pub fn mode(&self) -> Mode {
        match self {
            CoeffRecord::Taylor { mode, .. }
            | CoeffRecord::Kapteyn1 { mode, .. }
            | CoeffRecord::Kapteyn2 { mode, .. } => *mode,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            CoeffRecord::Taylor { .. } => "taylor",
            CoeffRecord::Kapteyn1 { .. } => "kapteyn1",
            CoeffRecord::Kapteyn2 { .. } => "kapteyn2",
        }
    }

    /// Every coefficient must match the declared mode.
    pub fn validate(&self) -> Result<()> {
        match self {
            CoeffRecord::Taylor { mode, coeffs, .. }
            | CoeffRecord::Kapteyn1 { mode, coeffs, .. } => check_mode(*mode, coeffs),
            CoeffRecord::Kapteyn2 { mode, a, c, .. } => {
                check_mode(*mode, a)?;
                check_mode(*mode, c)
            }
        }
    }
}

/// Parse an order offset like "0" or "2" into a nonnegative integer.
pub fn parse_order(s: &str) -> Result<usize> {
    s.trim()
        .parse::<usize>()
        .map_err(|e| Error::Parse(format!("bad order {s:?}: {e}")))
}

/// Read a value list as exact rationals. Fails on float entries.
pub fn values_exact(vals: &[CoeffValue]) -> Result<Vec<Rational>> {
    vals.iter()
        .map(|v| match v {
            CoeffValue::Exact(s) => parse_rational(s),
            CoeffValue::Float(_) => Err(Error::MixedMode),
        })
        .collect()
}

/// Read a value list as floats. Fails on exact entries.
pub fn values_float(vals: &[CoeffValue]) -> Result<Vec<f64>> {
    vals.iter()
        .map(|v| match v {
            CoeffValue::Float(x) => Ok(*x),
            CoeffValue::Exact(_) => Err(Error::MixedMode),
        })
        .collect()
}

/// Render rationals in the canonical "p" / "p/q" string form.
pub fn exact_values(coeffs: &[Rational]) -> Vec<CoeffValue> {
    coeffs
        .iter()
        .map(|r| CoeffValue::Exact(r.to_string()))
        .collect()
}

pub fn float_values(coeffs: &[f64]) -> Vec<CoeffValue> {
    coeffs.iter().map(|&x| CoeffValue::Float(x)).collect()
}
