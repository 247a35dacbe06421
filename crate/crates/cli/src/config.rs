//! `key = value` run configuration.
//!
//! One assignment per line; `#` starts a comment. Numbers may be written as
//! fractions (`t_ia = 1/30`). Unset keys take the defaults of the standard
//! figure set-up: `Δ = 1`, `T_iA = Δ/30`, `T_iB = 10Δ`, `R = Δ/10`.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use huygens_core::cosmo::CosmologyParams;
use huygens_core::signalling::{optimal_detector_states, QubitState};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    /// 1-based line, when the problem is tied to one.
    pub line: Option<usize>,
    pub message: String,
}

impl ConfigError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        Self {
            line: Some(line),
            message: message.into(),
        }
    }

    fn global(message: impl Into<String>) -> Self {
        Self {
            line: None,
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "config line {l}: {}", self.message),
            None => write!(f, "config: {}", self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

/// Parses a finite real written as a decimal/scientific literal or as a
/// fraction `a/b`.
pub fn parse_value(text: &str) -> Result<f64, String> {
    let text = text.trim();
    let v = match text.split_once('/') {
        Some((num, den)) => {
            let n = parse_literal(num)?;
            let d = parse_literal(den)?;
            if d == 0.0 {
                return Err(format!("zero denominator in '{text}'"));
            }
            n / d
        }
        None => parse_literal(text)?,
    };
    if !v.is_finite() {
        return Err(format!("'{text}' is not a finite number"));
    }
    Ok(v)
}

fn parse_literal(text: &str) -> Result<f64, String> {
    let text = text.trim();
    // Rust's float parser also takes "inf" and "nan"; keep to plain numerals.
    if text.is_empty()
        || !text
            .bytes()
            .all(|b| b.is_ascii_digit() || matches!(b, b'.' | b'e' | b'E' | b'+' | b'-'))
    {
        return Err(format!("'{text}' is not a number"));
    }
    let v: f64 = text
        .parse()
        .map_err(|_| format!("'{text}' is not a number"))?;
    if !v.is_finite() {
        return Err(format!("'{text}' is not a finite number"));
    }
    Ok(v)
}

/// One `key = value` line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub key: String,
    pub value: String,
    pub line: usize,
}

/// Splits a config file into assignments. Keys are lower-cased; a key may
/// appear only once.
pub fn parse_entries(text: &str) -> Result<Vec<Entry>, ConfigError> {
    let mut out: Vec<Entry> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split_once('#').map_or(raw, |(c, _)| c).trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| {
            ConfigError::at(line, format!("expected 'key = value', got '{content}'"))
        })?;
        let key = key.trim().to_ascii_lowercase();
        let value = value.trim();
        if key.is_empty() || !key.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_') {
            return Err(ConfigError::at(line, format!("invalid key '{key}'")));
        }
        if value.is_empty() {
            return Err(ConfigError::at(line, format!("missing value for '{key}'")));
        }
        if let Some(prev) = out.iter().find(|e| e.key == key) {
            return Err(ConfigError::at(
                line,
                format!("'{key}' already set on line {}", prev.line),
            ));
        }
        out.push(Entry {
            key,
            value: value.to_string(),
            line,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Varied {
    R,
    TiB,
}

impl Varied {
    pub fn name(self) -> &'static str {
        match self {
            Varied::R => "R",
            Varied::TiB => "T_iB",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl GridSpec {
    /// Grid values in increasing order. A one-point grid is just `min`.
    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.min];
        }
        let n = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                let t = i as f64 / n;
                if i + 1 == self.points {
                    return self.max;
                }
                match self.spacing {
                    Spacing::Linear => self.min + t * (self.max - self.min),
                    Spacing::Log => self.min * (self.max / self.min).powf(t),
                }
            })
            .collect()
    }
}

/// How a receiver's window is set as its switch-on time moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReceiverPolicy {
    /// `T_fB − T_iB = Δ`.
    FixedComovingDuration,
    /// `η_fB − η_iB` as for the base window.
    FixedConformalDuration,
    /// `η_fB / η_iB` as for the base window.
    FixedConformalRatio,
}

impl FromStr for ReceiverPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "fixed-comoving-duration" => Ok(Self::FixedComovingDuration),
            "fixed-conformal-duration" => Ok(Self::FixedConformalDuration),
            "fixed-conformal-ratio" => Ok(Self::FixedConformalRatio),
            other => Err(format!("unknown receiver policy '{other}'")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub cosmology: CosmologyParams,
    pub delta: f64,
    pub t_ia: f64,
    pub t_ib: f64,
    pub r: f64,
    pub vary: Varied,
    pub grid: GridSpec,
    pub receiver_policy: ReceiverPolicy,
    pub couplings: (f64, f64),
    pub states: (QubitState, QubitState),
    /// `None` writes to stdout.
    pub output: Option<PathBuf>,
    pub format: Format,
    /// Tolerance of the mode-sum path (`α ≠ 3/2`).
    pub tol: f64,
    /// Receiver switch-on times for `network`.
    pub slices: Vec<f64>,
    pub lattice_spacing: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        let delta = 1.0;
        Self {
            cosmology: CosmologyParams::matter(1.0).expect("matter cosmology"),
            delta,
            t_ia: delta / 30.0,
            t_ib: 10.0 * delta,
            r: delta / 10.0,
            vary: Varied::R,
            grid: GridSpec {
                min: 0.01 * delta,
                max: 3.0 * delta,
                points: 200,
                spacing: Spacing::Linear,
            },
            receiver_policy: ReceiverPolicy::FixedComovingDuration,
            couplings: (1.0, 1.0),
            states: optimal_detector_states(),
            output: None,
            format: Format::Csv,
            tol: 1e-8,
            slices: [10.0, 20.0, 40.0, 80.0, 160.0].map(|t| t * delta).to_vec(),
            lattice_spacing: 0.1 * delta,
        }
    }
}

impl FromStr for SweepConfig {
    type Err = ConfigError;

    fn from_str(text: &str) -> Result<Self, ConfigError> {
        parse_config(text)
    }
}

/// Parses and validates a whole config file.
pub fn parse_config(text: &str) -> Result<SweepConfig, ConfigError> {
    let entries = parse_entries(text)?;
    let mut cfg = SweepConfig::default();
    let get = |key: &str| entries.iter().find(|e| e.key == key);
    let num = |e: &Entry| parse_value(&e.value).map_err(|m| ConfigError::at(e.line, m));

    for e in &entries {
        const KNOWN: [&str; 21] = [
            "w",
            "alpha",
            "eta_star",
            "delta",
            "t_ia",
            "t_ib",
            "r",
            "vary",
            "grid_min",
            "grid_max",
            "grid_points",
            "grid_spacing",
            "receiver_policy",
            "lambda_a",
            "lambda_b",
            "states",
            "output",
            "format",
            "tol",
            "slices",
            "lattice_spacing",
        ];
        if !KNOWN.contains(&e.key.as_str()) {
            return Err(ConfigError::at(e.line, format!("unknown key '{}'", e.key)));
        }
    }

    let eta_star = get("eta_star").map(num).transpose()?.unwrap_or(1.0);
    cfg.cosmology = match (get("w"), get("alpha")) {
        (Some(_), Some(a)) => {
            return Err(ConfigError::at(
                a.line,
                "set either 'w' or 'alpha', not both",
            ));
        }
        (Some(e), None) => CosmologyParams::from_w(num(e)?, eta_star),
        (None, Some(e)) => CosmologyParams::from_alpha(num(e)?, eta_star),
        (None, None) => CosmologyParams::matter(eta_star),
    }
    .map_err(|err| ConfigError::global(err.to_string()))?;

    if let Some(e) = get("delta") {
        cfg.delta = positive(e, num(e)?)?;
    }
    let delta = cfg.delta;
    cfg.t_ia = delta / 30.0;
    cfg.t_ib = 10.0 * delta;
    cfg.r = delta / 10.0;
    cfg.slices = [10.0, 20.0, 40.0, 80.0, 160.0].map(|t| t * delta).to_vec();
    cfg.lattice_spacing = 0.1 * delta;

    for (key, slot) in [
        ("t_ia", &mut cfg.t_ia),
        ("t_ib", &mut cfg.t_ib),
        ("r", &mut cfg.r),
    ] {
        if let Some(e) = get(key) {
            *slot = positive(e, num(e)?)?;
        }
    }

    if let Some(e) = get("vary") {
        cfg.vary = match e.value.to_ascii_lowercase().as_str() {
            "r" => Varied::R,
            "t_ib" | "tib" => Varied::TiB,
            other => {
                return Err(ConfigError::at(
                    e.line,
                    format!("cannot vary '{other}' (R or T_iB)"),
                ))
            }
        };
    }
    cfg.grid = match cfg.vary {
        Varied::R => GridSpec {
            min: 0.01 * delta,
            max: 3.0 * delta,
            ..cfg.grid
        },
        Varied::TiB => GridSpec {
            min: 2.0 * delta,
            max: 50.0 * delta,
            ..cfg.grid
        },
    };
    if let Some(e) = get("grid_min") {
        cfg.grid.min = positive(e, num(e)?)?;
    }
    if let Some(e) = get("grid_max") {
        cfg.grid.max = positive(e, num(e)?)?;
    }
    if let Some(e) = get("grid_points") {
        cfg.grid.points = e
            .value
            .parse::<usize>()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| {
                ConfigError::at(
                    e.line,
                    format!("grid_points must be a positive integer, got '{}'", e.value),
                )
            })?;
    }
    if let Some(e) = get("grid_spacing") {
        cfg.grid.spacing = match e.value.to_ascii_lowercase().as_str() {
            "linear" | "lin" => Spacing::Linear,
            "log" => Spacing::Log,
            other => {
                return Err(ConfigError::at(
                    e.line,
                    format!("unknown grid spacing '{other}'"),
                ))
            }
        };
    }
    if cfg.grid.points >= 2 && !(cfg.grid.min < cfg.grid.max) {
        return Err(ConfigError::global(format!(
            "grid_min ({}) must be below grid_max ({})",
            cfg.grid.min, cfg.grid.max
        )));
    }

    if let Some(e) = get("receiver_policy") {
        cfg.receiver_policy = e.value.parse().map_err(|m| ConfigError::at(e.line, m))?;
    }
    if let Some(e) = get("lambda_a") {
        cfg.couplings.0 = non_negative(e, num(e)?)?;
    }
    if let Some(e) = get("lambda_b") {
        cfg.couplings.1 = non_negative(e, num(e)?)?;
    }
    if let Some(e) = get("states") {
        cfg.states = parse_states(&e.value).map_err(|m| ConfigError::at(e.line, m))?;
    }
    if let Some(e) = get("output") {
        cfg.output = match e.value.as_str() {
            "-" | "stdout" => None,
            path => Some(PathBuf::from(path)),
        };
    }
    if let Some(e) = get("format") {
        cfg.format = match e.value.to_ascii_lowercase().as_str() {
            "csv" => Format::Csv,
            "json" => Format::Json,
            other => return Err(ConfigError::at(e.line, format!("unknown format '{other}'"))),
        };
    }
    if let Some(e) = get("tol") {
        cfg.tol = positive(e, num(e)?)?;
    }
    if let Some(e) = get("slices") {
        let values = e
            .value
            .split(',')
            .map(|v| {
                parse_value(v).and_then(|x| {
                    if x > 0.0 {
                        Ok(x)
                    } else {
                        Err(format!("slice time {x} must be positive"))
                    }
                })
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(|m| ConfigError::at(e.line, m))?;
        if values.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(ConfigError::at(
                e.line,
                "slice times must be strictly increasing",
            ));
        }
        cfg.slices = values;
    }
    if let Some(e) = get("lattice_spacing") {
        cfg.lattice_spacing = positive(e, num(e)?)?;
    }
    Ok(cfg)
}

fn positive(e: &Entry, v: f64) -> Result<f64, ConfigError> {
    if v > 0.0 {
        Ok(v)
    } else {
        Err(ConfigError::at(
            e.line,
            format!("'{}' must be positive, got {v}", e.key),
        ))
    }
}

fn non_negative(e: &Entry, v: f64) -> Result<f64, ConfigError> {
    if v >= 0.0 {
        Ok(v)
    } else {
        Err(ConfigError::at(
            e.line,
            format!("'{}' must be non-negative, got {v}", e.key),
        ))
    }
}

/// `optimal`, or `|α_A|, φ_A, |α_B|, φ_B` with `φ = arg α − arg β`.
fn parse_states(text: &str) -> Result<(QubitState, QubitState), String> {
    if text.eq_ignore_ascii_case("optimal") {
        return Ok(optimal_detector_states());
    }
    let v = text
        .split(',')
        .map(parse_value)
        .collect::<Result<Vec<_>, _>>()?;
    let [ma, pa, mb, pb] = v[..] else {
        return Err(format!(
            "states must be 'optimal' or four numbers |alpha_A|, phase_A, |alpha_B|, phase_B; got '{text}'"
        ));
    };
    let a = QubitState::from_polar(ma, pa).map_err(|e| e.to_string())?;
    let b = QubitState::from_polar(mb, pb).map_err(|e| e.to_string())?;
    Ok((a, b))
}
