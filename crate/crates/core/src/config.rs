//! Suite configuration and its flat `key = value` file format.
//!
//! ```text
//! # comment
//! realizations = all
//! modes = generic, fock
//! backends = symbolic, numeric, qdiff
//! dim = 16
//! q = 0.8, 3/2, random
//! tolerance = 1e-9
//! seed = 7
//! q_power = 1
//! alpha = 2
//!
//! [realization.Eq12]
//! q_power = 2
//! ```
//!
//! Top-level keys set defaults; a `[realization.<name>]` section overrides
//! `dim`, `q_power`, `tolerance` and parameters for one realization.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::AlgebraMode;
use crate::error::Error;
use crate::fock::Params;
use crate::numeric::Number;
use crate::realizations::{catalog, spec};
use crate::scalar::Symbol;

/// Extra cells that are not catalog realizations.
pub const OSCILLATOR_CELL: &str = "oscillator";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteBackend {
    /// Exact normal forms.
    Symbolic,
    /// Truncated Fock matrices.
    Numeric,
    /// q-difference operators on polynomials.
    Qdiff,
}

impl SuiteBackend {
    pub const ALL: [SuiteBackend; 3] = [
        SuiteBackend::Symbolic,
        SuiteBackend::Numeric,
        SuiteBackend::Qdiff,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteBackend::Symbolic => "symbolic",
            SuiteBackend::Numeric => "numeric",
            SuiteBackend::Qdiff => "qdiff",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL
            .into_iter()
            .find(|b| b.name().eq_ignore_ascii_case(s))
    }
}

/// A value of `q`: fixed, or drawn from the seed.
#[derive(Debug, Clone, PartialEq)]
pub enum QValue {
    Fixed(Number),
    /// A complex `q` with `|q| != 1`, reproducible from the seed.
    Random,
}

impl fmt::Display for QValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QValue::Fixed(n) => write!(f, "{n}"),
            QValue::Random => f.write_str("random"),
        }
    }
}

impl Serialize for QValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl std::str::FromStr for QValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        if s.trim().eq_ignore_ascii_case("random") {
            return Ok(QValue::Random);
        }
        let n: Number = s.parse()?;
        if n.is_zero() {
            return Err(Error::Parse("q must be nonzero".into()));
        }
        Ok(QValue::Fixed(n))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Override {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q_power: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<Symbol, Number>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteConfig {
    /// Catalog names, plus the `oscillator` cells.
    pub realizations: Vec<String>,
    pub modes: Vec<AlgebraMode>,
    pub backends: Vec<SuiteBackend>,
    pub dim: usize,
    pub q_values: Vec<QValue>,
    pub tolerance: f64,
    pub params: Params,
    pub seed: u64,
    /// Check `T^n` against the relations with `q` replaced by `q^n`.
    pub q_power: u32,
    pub overrides: BTreeMap<String, Override>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            realizations: all_realizations(),
            modes: vec![AlgebraMode::Generic, AlgebraMode::FockRestricted],
            backends: SuiteBackend::ALL.to_vec(),
            dim: 16,
            q_values: vec![
                QValue::Fixed(Number::from(0.8)),
                QValue::Fixed("3/2".parse().expect("literal")),
                QValue::Random,
            ],
            tolerance: 1e-9,
            params: Params::default(),
            seed: 20_240_917,
            q_power: 1,
            overrides: BTreeMap::new(),
        }
    }
}

fn all_realizations() -> Vec<String> {
    catalog()
        .iter()
        .map(|s| s.name.to_string())
        .chain([OSCILLATOR_CELL.to_string()])
        .collect()
}

/// The effective settings for one realization.
#[derive(Debug, Clone)]
pub struct Effective {
    pub dim: usize,
    pub q_power: u32,
    pub tolerance: f64,
    pub params: Params,
}

impl SuiteConfig {
    pub fn effective(&self, realization: &str) -> Effective {
        let o = self.overrides.get(realization).cloned().unwrap_or_default();
        let mut params = self.params.clone();
        for (s, v) in o.params {
            params.set(s, v);
        }
        Effective {
            dim: o.dim.unwrap_or(self.dim),
            q_power: o.q_power.unwrap_or(self.q_power),
            tolerance: o.tolerance.unwrap_or(self.tolerance),
            params,
        }
    }

    /// Applies one `key = value` setting; `section` is the realization name
    /// of the enclosing `[realization.<name>]` block, if any.
    pub fn set(&mut self, section: Option<&str>, key: &str, value: &str) -> Result<(), String> {
        let key = key.trim().to_ascii_lowercase().replace('-', "_");
        let value = value.trim();
        if let Some(name) = section {
            let o = self.overrides.entry(name.to_string()).or_default();
            return match key.as_str() {
                "dim" => parse_dim(value).map(|d| o.dim = Some(d)),
                "q_power" => parse_q_power(value).map(|n| o.q_power = Some(n)),
                "tolerance" | "tol" => parse_tol(value).map(|t| o.tolerance = Some(t)),
                other => match parameter(other) {
                    Some(s) => parse_number(value).map(|v| {
                        o.params.insert(s, v);
                    }),
                    None => Err(format!("unknown key {other:?} in realization section")),
                },
            };
        }
        match key.as_str() {
            "realizations" | "realization" => {
                self.realizations = parse_realizations(value)?;
                Ok(())
            }
            "modes" | "mode" => {
                self.modes = parse_list(value, |s| {
                    AlgebraMode::from_name(s).ok_or_else(|| format!("unknown mode {s:?}"))
                })?;
                Ok(())
            }
            "backends" | "backend" => {
                self.backends = parse_list(value, |s| {
                    SuiteBackend::from_name(s).ok_or_else(|| format!("unknown backend {s:?}"))
                })?;
                Ok(())
            }
            "dim" => parse_dim(value).map(|d| self.dim = d),
            "q" | "q_values" => {
                self.q_values =
                    parse_list(value, |s| s.parse::<QValue>().map_err(|e| e.to_string()))?;
                Ok(())
            }
            "tolerance" | "tol" => parse_tol(value).map(|t| self.tolerance = t),
            "seed" => value
                .parse()
                .map(|s| self.seed = s)
                .map_err(|_| format!("seed must be a nonnegative integer, got {value:?}")),
            "q_power" => parse_q_power(value).map(|n| self.q_power = n),
            other => match parameter(other) {
                Some(s) => parse_number(value).map(|v| self.params.set(s, v)),
                None => Err(format!("unknown key {other:?}")),
            },
        }
    }

    /// Reads a config file on top of `self`. Every bad line is reported.
    pub fn apply_text(&mut self, text: &str) -> Result<(), Vec<Error>> {
        let mut errors = Vec::new();
        let mut section: Option<String> = None;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Config {
                line: line_no,
                message,
            };
            if let Some(head) = line.strip_prefix('[') {
                let Some(head) = head.strip_suffix(']') else {
                    errors.push(err(format!("unterminated section header {line:?}")));
                    continue;
                };
                let Some(name) = head.trim().strip_prefix("realization.") else {
                    errors.push(err(format!("expected [realization.<name>], got [{head}]")));
                    continue;
                };
                match spec(name.trim()) {
                    Ok(s) => section = Some(s.name.to_string()),
                    Err(e) => {
                        errors.push(err(e.to_string()));
                        section = None;
                    }
                }
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                errors.push(err(format!("expected key = value, got {line:?}")));
                continue;
            };
            if let Err(m) = self.set(section.as_deref(), key, value) {
                errors.push(err(m));
            }
        }
        if errors.is_empty() {
            Ok(())
        } else {
            Err(errors)
        }
    }

    pub fn from_text(text: &str) -> Result<Self, Vec<Error>> {
        let mut c = SuiteConfig::default();
        c.apply_text(text)?;
        Ok(c)
    }
}

fn parameter(key: &str) -> Option<Symbol> {
    Symbol::from_name(key).filter(|s| Symbol::PARAMETERS.contains(s))
}

fn parse_list<T>(value: &str, f: impl Fn(&str) -> Result<T, String>) -> Result<Vec<T>, String> {
    let items: Vec<&str> = value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    if items.is_empty() {
        return Err("empty list".into());
    }
    items.into_iter().map(f).collect()
}

fn parse_realizations(value: &str) -> Result<Vec<String>, String> {
    if value.trim().eq_ignore_ascii_case("all") {
        return Ok(all_realizations());
    }
    parse_list(value, |s| {
        if s.eq_ignore_ascii_case(OSCILLATOR_CELL) {
            return Ok(OSCILLATOR_CELL.to_string());
        }
        spec(s)
            .map(|sp| sp.name.to_string())
            .map_err(|e| e.to_string())
    })
}

fn parse_dim(value: &str) -> Result<usize, String> {
    match value.parse::<usize>() {
        Ok(d) if (2..=64).contains(&d) => Ok(d),
        _ => Err(format!("dim must be an integer in 2..=64, got {value:?}")),
    }
}

fn parse_q_power(value: &str) -> Result<u32, String> {
    match value.parse::<u32>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(format!("q_power must be a positive integer, got {value:?}")),
    }
}

fn parse_tol(value: &str) -> Result<f64, String> {
    match value.parse::<f64>() {
        Ok(t) if t.is_finite() && t >= 0.0 => Ok(t),
        _ => Err(format!(
            "tolerance must be a nonnegative number, got {value:?}"
        )),
    }
}

fn parse_number(value: &str) -> Result<Number, String> {
    value.parse::<Number>().map_err(|e| e.to_string())
}
