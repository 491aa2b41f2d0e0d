//! Instance, order and report file formats.
//!
//! Numbers in files are strings so rationals survive untouched. Plain JSON
//! numbers are accepted on input and read through their decimal text.

use cogbalance::rational::{to_decimal_string, to_fraction_string};
use cogbalance::{parse_rational, Rational};
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const DECIMAL_DIGITS: usize = 12;

/// A number as an exact `p/q` string plus a rounded decimal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Num {
    pub exact: String,
    pub decimal: String,
}

impl From<&Rational> for Num {
    fn from(v: &Rational) -> Self {
        Num {
            exact: to_fraction_string(v),
            decimal: to_decimal_string(v, DECIMAL_DIGITS),
        }
    }
}

pub fn nums<'a>(vs: impl IntoIterator<Item = &'a Rational>) -> Vec<Num> {
    vs.into_iter().map(Num::from).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Unload,
    Load,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceFile {
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lengths: Option<Vec<Value>>,
    #[serde(default)]
    pub meta: Value,
}

impl InstanceFile {
    pub fn unload(points: &[Rational], meta: Value) -> Self {
        let points = points
            .iter()
            .map(|p| Value::String(to_fraction_string(p)))
            .collect();
        InstanceFile {
            kind: Kind::Unload,
            points: Some(points),
            lengths: None,
            meta,
        }
    }

    pub fn load(lengths: &[Rational], meta: Value) -> Self {
        let lengths = lengths
            .iter()
            .map(|p| Value::String(to_fraction_string(p)))
            .collect();
        InstanceFile {
            kind: Kind::Load,
            points: None,
            lengths: Some(lengths),
            meta,
        }
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| format!("malformed instance file: {e}"))
    }

    pub fn points(&self) -> Result<Vec<Rational>, String> {
        match (&self.kind, &self.points) {
            (Kind::Unload, Some(values)) => values.iter().map(number).collect(),
            (Kind::Unload, None) => Err("unload instance has no \"points\" array".into()),
            (Kind::Load, _) => Err("expected an unload instance, found kind \"load\"".into()),
        }
    }

    pub fn lengths(&self) -> Result<Vec<Rational>, String> {
        match (&self.kind, &self.lengths) {
            (Kind::Load, Some(values)) => values.iter().map(number).collect(),
            (Kind::Load, None) => Err("load instance has no \"lengths\" array".into()),
            (Kind::Unload, _) => Err("expected a load instance, found kind \"unload\"".into()),
        }
    }
}

fn number(v: &Value) -> Result<Rational, String> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        other => {
            return Err(format!(
                "expected a number or numeric string, found {other}"
            ))
        }
    };
    parse_rational(text.trim()).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrderFile {
    pub order: Vec<usize>,
}

impl OrderFile {
    pub fn parse(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| format!("malformed order file: {e}"))
    }
}

/// `lo,hi` with each bound a rational or decimal.
pub fn parse_window(text: &str) -> Result<(Rational, Rational), String> {
    let (lo, hi) = text
        .split_once(',')
        .ok_or_else(|| format!("window {text:?} is not of the form lo,hi"))?;
    let lo = parse_rational(lo.trim()).map_err(|e| e.to_string())?;
    let hi = parse_rational(hi.trim()).map_err(|e| e.to_string())?;
    if lo > hi {
        return Err(format!("window lower end {lo} exceeds upper end {hi}"));
    }
    Ok((lo, hi))
}

/// Comma-separated nonnegative integers.
pub fn parse_u64_list(text: &str) -> Result<Vec<u64>, String> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|e| format!("bad integer {t:?}: {e}"))
        })
        .collect()
}
