//! Variable-node update rules for column-weight-three decoders.
//!
//! A rule maps the channel sign and the two extrinsic incoming levels to an
//! outgoing level. Two forms exist: a 7x7 lookup table given for the positive
//! channel value (the negative half follows from odd symmetry), and a linear
//! threshold rule `Q(m1 + m2 + y)` with real magnitudes.
//!
//! Threshold rules are evaluated in fixed-point micro-units. The decimation
//! rule's parameters put many sums exactly on a threshold (`0 - 2.3 + 1.5` is
//! `-0.8 = -T1`), where binary floating point lands on either side.

use std::collections::BTreeMap;
use std::fmt;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::level::{ChannelSign, Level, ALPHABET_SIZE, MAX_INDEX};

const NLEVELS: usize = MAX_INDEX as usize;
const FIXED_SCALE: f64 = 1e6;

fn to_fixed(x: f64) -> i64 {
    (x * FIXED_SCALE).round() as i64
}

/// Linear-threshold variable rule with constant channel weight.
#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdRule {
    levels: [f64; NLEVELS],
    thresholds: [f64; NLEVELS],
    channel: f64,
    levels_fx: [i64; NLEVELS],
    thresholds_fx: [i64; NLEVELS],
    channel_fx: i64,
}

impl ThresholdRule {
    /// `levels` are `L1..L3`, `thresholds` are `T1..T3` (with `T4 = inf`
    /// implied), `channel` is the magnitude `C`. Values are rounded to 1e-6.
    pub fn new(levels: [f64; NLEVELS], thresholds: [f64; NLEVELS], channel: f64) -> Result<Self> {
        let positive = |xs: &[f64]| xs.iter().all(|x| x.is_finite() && *x > 0.0);
        let increasing = |xs: &[f64]| xs.windows(2).all(|w| w[0] < w[1]);
        if !positive(&levels) || !increasing(&levels) {
            return Err(Error::InvalidRule(format!(
                "level magnitudes must be positive and strictly increasing: {levels:?}"
            )));
        }
        if !positive(&thresholds) || !increasing(&thresholds) {
            return Err(Error::InvalidRule(format!(
                "thresholds must be positive and strictly increasing: {thresholds:?}"
            )));
        }
        if !(channel.is_finite() && channel > 0.0) {
            return Err(Error::InvalidRule(format!(
                "channel magnitude must be positive, got {channel}"
            )));
        }
        Ok(ThresholdRule {
            levels,
            thresholds,
            channel,
            levels_fx: levels.map(to_fixed),
            thresholds_fx: thresholds.map(to_fixed),
            channel_fx: to_fixed(channel),
        })
    }

    pub fn levels(&self) -> [f64; NLEVELS] {
        self.levels
    }

    pub fn thresholds(&self) -> [f64; NLEVELS] {
        self.thresholds
    }

    pub fn channel(&self) -> f64 {
        self.channel
    }

    /// Real value attached to a level.
    pub fn value(&self, level: Level) -> f64 {
        match level.magnitude() {
            0 => 0.0,
            m => f64::from(level.signum()) * self.levels[m as usize - 1],
        }
    }

    fn value_fx(&self, level: Level) -> i64 {
        match level.magnitude() {
            0 => 0,
            m => i64::from(level.signum()) * self.levels_fx[m as usize - 1],
        }
    }

    /// The quantizer `Q`: `sgn(x) L_i` when `T_i <= |x| < T_{i+1}`, else 0.
    pub fn quantize(&self, x: f64) -> Level {
        self.quantize_fx(to_fixed(x))
    }

    fn quantize_fx(&self, x: i64) -> Level {
        let mag = x.abs();
        let idx = self.thresholds_fx.iter().take_while(|&&t| mag >= t).count() as i8;
        Level::from_index(if x < 0 { -idx } else { idx })
    }

    pub fn eval(&self, y: ChannelSign, m1: Level, m2: Level) -> Level {
        let sum = self.value_fx(m1) + self.value_fx(m2) + i64::from(y.signum()) * self.channel_fx;
        self.quantize_fx(sum)
    }
}

/// Lookup-table variable rule, stored for the positive channel value only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LutRule {
    table: [[Level; ALPHABET_SIZE]; ALPHABET_SIZE],
}

impl LutRule {
    /// Builds a table from 49 signed indices, row-major, rows indexed by `m1`
    /// and columns by `m2`, both from `-L3` to `L3`.
    pub fn from_indices(indices: &[i8]) -> Result<Self> {
        if indices.len() != ALPHABET_SIZE * ALPHABET_SIZE {
            return Err(Error::InvalidRule(format!(
                "lookup table needs {} entries, got {}",
                ALPHABET_SIZE * ALPHABET_SIZE,
                indices.len()
            )));
        }
        let mut table = [[Level::ZERO; ALPHABET_SIZE]; ALPHABET_SIZE];
        for (k, &i) in indices.iter().enumerate() {
            table[k / ALPHABET_SIZE][k % ALPHABET_SIZE] = Level::new(i).map_err(|_| {
                Error::InvalidRule(format!(
                    "entry ({}, {}) = {i} is outside the alphabet",
                    Level::from_slot(k / ALPHABET_SIZE),
                    Level::from_slot(k % ALPHABET_SIZE)
                ))
            })?;
        }
        Ok(LutRule { table })
    }

    pub fn indices(&self) -> Vec<i8> {
        self.table.iter().flatten().map(|l| l.index()).collect()
    }

    pub fn entry(&self, m1: Level, m2: Level) -> Level {
        self.table[m1.slot()][m2.slot()]
    }

    pub fn eval(&self, y: ChannelSign, m1: Level, m2: Level) -> Level {
        match y {
            ChannelSign::Plus => self.entry(m1, m2),
            ChannelSign::Minus => -self.entry(-m1, -m2),
        }
    }
}

/// A variable-node map `Phi_v` for `d_v = 3`.
#[derive(Clone, Debug, PartialEq)]
pub enum VariableRule {
    Lut(LutRule),
    Threshold(ThresholdRule),
}

impl VariableRule {
    pub fn eval(&self, y: ChannelSign, m1: Level, m2: Level) -> Level {
        match self {
            VariableRule::Lut(r) => r.eval(y, m1, m2),
            VariableRule::Threshold(r) => r.eval(y, m1, m2),
        }
    }

    /// Evaluates the rule on every input, for use in decoder inner loops.
    pub fn tabulate(&self) -> VnTable {
        let mut plus = [[0i8; ALPHABET_SIZE]; ALPHABET_SIZE];
        let mut minus = [[0i8; ALPHABET_SIZE]; ALPHABET_SIZE];
        for a in Level::all() {
            for b in Level::all() {
                plus[a.slot()][b.slot()] = self.eval(ChannelSign::Plus, a, b).index();
                minus[a.slot()][b.slot()] = self.eval(ChannelSign::Minus, a, b).index();
            }
        }
        VnTable { tables: [plus, minus] }
    }

    /// Returns the rule if [`validate_rule`] reports nothing.
    pub fn validated(self) -> Result<Self> {
        let violations = validate_rule(&self);
        if violations.is_empty() {
            Ok(self)
        } else {
            let list: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
            Err(Error::InvalidRule(list.join("; ")))
        }
    }
}

impl fmt::Display for VariableRule {
    /// Single-line canonical form; used in report headers and config hashes.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VariableRule::Lut(r) => {
                let idx: Vec<String> = r.indices().iter().map(|i| i.to_string()).collect();
                write!(f, "lut[{}]", idx.join(" "))
            }
            VariableRule::Threshold(r) => write!(
                f,
                "threshold[L={} {} {};T={} {} {};C={}]",
                r.levels[0],
                r.levels[1],
                r.levels[2],
                r.thresholds[0],
                r.thresholds[1],
                r.thresholds[2],
                r.channel
            ),
        }
    }
}

/// Fully tabulated variable rule indexed by `[channel][m1][m2]` slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VnTable {
    tables: [[[i8; ALPHABET_SIZE]; ALPHABET_SIZE]; 2],
}

impl VnTable {
    /// `minus` selects the `-C` half; `m1`, `m2` are level indices.
    #[inline]
    pub fn get(&self, minus: bool, m1: i8, m2: i8) -> i8 {
        self.tables[minus as usize][(m1 + MAX_INDEX) as usize][(m2 + MAX_INDEX) as usize]
    }
}

/// One failed property of a variable rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RuleViolation {
    Asymmetric {
        m1: Level,
        m2: Level,
        value: Level,
        swapped: Level,
    },
    NotMonotone {
        channel: ChannelSign,
        m1: Level,
        m2: Level,
        /// Which argument (1 or 2) was raised by one level.
        argument: u8,
        value: Level,
        raised: Level,
    },
    NotOdd {
        m1: Level,
        m2: Level,
        plus: Level,
        minus: Level,
    },
    Saturation {
        input: Level,
        expected: Level,
        actual: Level,
    },
}

impl fmt::Display for RuleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleViolation::Asymmetric {
                m1,
                m2,
                value,
                swapped,
            } => write!(
                f,
                "asymmetric: (+C, {m1}, {m2}) = {value} but (+C, {m2}, {m1}) = {swapped}"
            ),
            RuleViolation::NotMonotone {
                channel,
                m1,
                m2,
                argument,
                value,
                raised,
            } => {
                let c = if *channel == ChannelSign::Plus { "+C" } else { "-C" };
                write!(
                    f,
                    "not monotone: ({c}, {m1}, {m2}) = {value} drops to {raised} when argument {argument} is raised"
                )
            }
            RuleViolation::NotOdd {
                m1,
                m2,
                plus,
                minus,
            } => write!(
                f,
                "not odd: (+C, {m1}, {m2}) = {plus} but (-C, {}, {}) = {minus}",
                -*m1,
                -*m2
            ),
            RuleViolation::Saturation {
                input,
                expected,
                actual,
            } => write!(
                f,
                "saturation: (+C, {input}, {input}) = {actual}, expected {expected}"
            ),
        }
    }
}

/// Checks swap symmetry, odd symmetry, monotonicity in each argument and the
/// saturation chain `(C,0,0) -> L1`, `(C,L1,L1) -> L2`, `(C,L2,L2) -> L3`.
///
/// Alphabet closure holds by construction: both rule forms only produce
/// values of [`Level`].
pub fn validate_rule(rule: &VariableRule) -> Vec<RuleViolation> {
    use ChannelSign::{Minus, Plus};
    let mut out = Vec::new();
    for a in Level::all() {
        for b in Level::all() {
            let v = rule.eval(Plus, a, b);
            let swapped = rule.eval(Plus, b, a);
            if a < b && v != swapped {
                out.push(RuleViolation::Asymmetric {
                    m1: a,
                    m2: b,
                    value: v,
                    swapped,
                });
            }
            let minus = rule.eval(Minus, -a, -b);
            if minus != -v {
                out.push(RuleViolation::NotOdd {
                    m1: a,
                    m2: b,
                    plus: v,
                    minus,
                });
            }
            for channel in [Plus, Minus] {
                let value = rule.eval(channel, a, b);
                if a.index() < MAX_INDEX {
                    let raised = rule.eval(channel, Level::from_index(a.index() + 1), b);
                    if raised < value {
                        out.push(RuleViolation::NotMonotone {
                            channel,
                            m1: a,
                            m2: b,
                            argument: 1,
                            value,
                            raised,
                        });
                    }
                }
                if b.index() < MAX_INDEX {
                    let raised = rule.eval(channel, a, Level::from_index(b.index() + 1));
                    if raised < value {
                        out.push(RuleViolation::NotMonotone {
                            channel,
                            m1: a,
                            m2: b,
                            argument: 2,
                            value,
                            raised,
                        });
                    }
                }
            }
        }
    }
    for step in 0..MAX_INDEX {
        let input = Level::from_index(step);
        let expected = Level::from_index(step + 1);
        let actual = rule.eval(Plus, input, input);
        if actual != expected {
            out.push(RuleViolation::Saturation {
                input,
                expected,
                actual,
            });
        }
    }
    out
}

/// Message trajectory of an all-correct neighbourhood: `m_1 = Phi_v(+C,0,0)`,
/// `m_t = Phi_v(+C, m_{t-1}, m_{t-1})`. Returns `k` values.
pub fn saturating_sequence(rule: &VariableRule, k: usize) -> Vec<Level> {
    let mut out = Vec::with_capacity(k);
    let mut m = Level::ZERO;
    for _ in 0..k {
        m = rule.eval(ChannelSign::Plus, m, m);
        out.push(m);
    }
    out
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RuleSection {
    kind: String,
    table: Option<String>,
    levels: Option<String>,
    thresholds: Option<String>,
    channel: Option<String>,
}

fn numbers<T: std::str::FromStr>(section: &str, key: &str, text: &str) -> Result<Vec<T>> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<T>().map_err(|_| {
                Error::InvalidRule(format!("[{section}] {key}: cannot parse {tok:?}"))
            })
        })
        .collect()
}

fn three(section: &str, key: &str, text: Option<&String>) -> Result<[f64; NLEVELS]> {
    let text = text.ok_or_else(|| Error::InvalidRule(format!("[{section}] missing `{key}`")))?;
    let v: Vec<f64> = numbers(section, key, text)?;
    v.try_into().map_err(|v: Vec<f64>| {
        Error::InvalidRule(format!(
            "[{section}] {key}: expected {NLEVELS} values, got {}",
            v.len()
        ))
    })
}

fn tag(name: &str, e: Error) -> Error {
    match e {
        Error::InvalidRule(m) => Error::InvalidRule(format!("[{name}] {m}")),
        other => other,
    }
}

fn build_rule(name: &str, s: &RuleSection) -> Result<VariableRule> {
    let missing = |key: &str| Error::InvalidRule(format!("[{name}] missing `{key}`"));
    match s.kind.as_str() {
        "lut" => {
            let table = s.table.as_ref().ok_or_else(|| missing("table"))?;
            let idx: Vec<i8> = numbers(name, "table", table)?;
            Ok(VariableRule::Lut(
                LutRule::from_indices(&idx).map_err(|e| tag(name, e))?,
            ))
        }
        "threshold" => {
            let channel = s.channel.as_ref().ok_or_else(|| missing("channel"))?;
            let c: Vec<f64> = numbers(name, "channel", channel)?;
            if c.len() != 1 {
                return Err(Error::InvalidRule(format!(
                    "[{name}] channel: expected one value, got {}",
                    c.len()
                )));
            }
            let rule = ThresholdRule::new(
                three(name, "levels", s.levels.as_ref())?,
                three(name, "thresholds", s.thresholds.as_ref())?,
                c[0],
            )
            .map_err(|e| tag(name, e))?;
            Ok(VariableRule::Threshold(rule))
        }
        other => Err(Error::InvalidRule(format!(
            "[{name}] unknown kind {other:?} (expected \"lut\" or \"threshold\")"
        ))),
    }
}

/// Parses a rule definition file into named, validated rules.
///
/// The file is TOML with one table per rule:
///
/// ```text
/// [faid]
/// kind = "lut"
/// table = """
/// -3 -3 -2 -1 -1 -1  1
/// ... (7 rows of 7 signed indices, rows m1, columns m2, for y = +C)
/// """
///
/// [decimation]
/// kind = "threshold"
/// levels = "1.1 2.3 6.6"      # L1 L2 L3
/// thresholds = "0.8 2.8 4"    # T1 T2 T3
/// channel = "1.5"             # C
/// ```
///
/// Every rule must pass [`validate_rule`].
pub fn parse_rule_file(text: &str) -> Result<BTreeMap<String, VariableRule>> {
    let rules = parse_rule_file_unchecked(text)?;
    for (name, rule) in &rules {
        rule.clone().validated().map_err(|e| tag(name, e))?;
    }
    Ok(rules)
}

/// Same grammar as [`parse_rule_file`] without rule validation.
pub fn parse_rule_file_unchecked(text: &str) -> Result<BTreeMap<String, VariableRule>> {
    let sections: BTreeMap<String, RuleSection> =
        toml::from_str(text).map_err(|e| Error::InvalidRule(e.to_string()))?;
    sections
        .iter()
        .map(|(name, s)| Ok((name.clone(), build_rule(name, s)?)))
        .collect()
}
