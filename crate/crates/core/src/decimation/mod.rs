//! Decimation rules and the adaptive decimation schedule.
//!
//! A decimation rule for `d_v = 3` is specified by the set of unordered
//! message triples on which a node with channel value `+C` gets decimated to
//! 0. The set is closed upward under componentwise comparison of the sorted
//! triples; the rule for `-C` follows by negation.

mod adfaid;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Deserialize;

pub use adfaid::{
    residual_graph, Adfaid, AdfaidConfig, AdfaidOutcome, DecimationState, DecimationTrace,
    Monitors, Phase, RuleAttempt,
};

use crate::error::{Error, Result};
use crate::level::{ChannelSign, Level, ALPHABET_SIZE, MAX_INDEX};

/// Unordered message triple, stored sorted in descending order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple([Level; 3]);

impl Triple {
    pub fn new(a: Level, b: Level, c: Level) -> Self {
        let mut t = [a, b, c];
        t.sort_unstable_by(|x, y| y.cmp(x));
        Triple(t)
    }

    pub fn from_indices(a: i8, b: i8, c: i8) -> Result<Self> {
        Ok(Triple::new(Level::new(a)?, Level::new(b)?, Level::new(c)?))
    }

    pub fn levels(&self) -> [Level; 3] {
        self.0
    }

    /// Componentwise `>=` of the sorted triples.
    pub fn dominates(&self, other: &Triple) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a >= b)
    }

    pub fn negate(&self) -> Triple {
        Triple::new(-self.0[0], -self.0[1], -self.0[2])
    }

    /// Every unordered triple over the alphabet (84 of them).
    pub fn all() -> Vec<Triple> {
        let mut out = Vec::new();
        for a in Level::all() {
            for b in Level::all().filter(|b| *b <= a) {
                for c in Level::all().filter(|c| *c <= b) {
                    out.push(Triple([a, b, c]));
                }
            }
        }
        out
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.0[0].index(), self.0[1].index(), self.0[2].index())
    }
}

impl FromStr for Triple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        let [a, b, c] = parts[..] else {
            return Err(Error::InvalidArgument(format!(
                "a triple needs three levels, got {s:?}"
            )));
        };
        Ok(Triple::new(a.parse()?, b.parse()?, c.parse()?))
    }
}

/// Parses one triple per line; blank lines and `#` comments are skipped.
pub fn parse_triples(text: &str) -> Result<Vec<Triple>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        out.push(
            line.parse()
                .map_err(|e: Error| Error::parse(i + 1, e.to_string()))?,
        );
    }
    Ok(out)
}

const ORDERED: usize = ALPHABET_SIZE * ALPHABET_SIZE * ALPHABET_SIZE;

fn ordered_slot(a: i8, b: i8, c: i8) -> usize {
    let s = |x: i8| (x + MAX_INDEX) as usize;
    (s(a) * ALPHABET_SIZE + s(b)) * ALPHABET_SIZE + s(c)
}

/// A set of unordered triples with constant-time, order-insensitive lookup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleSet {
    triples: BTreeSet<Triple>,
    member: [bool; ORDERED],
    generators: Vec<Triple>,
}

impl TripleSet {
    pub fn from_triples(triples: impl IntoIterator<Item = Triple>) -> Self {
        let mut set = TripleSet {
            triples: BTreeSet::new(),
            member: [false; ORDERED],
            generators: Vec::new(),
        };
        for t in triples {
            set.insert(t);
        }
        set
    }

    fn insert(&mut self, t: Triple) {
        let [a, b, c] = t.0.map(Level::index);
        for (x, y, z) in [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
            self.member[ordered_slot(x, y, z)] = true;
        }
        self.triples.insert(t);
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Triple> {
        self.triples.iter()
    }

    /// Generators the set was expanded from, if built by [`closure_expand`].
    pub fn generators(&self) -> &[Triple] {
        &self.generators
    }

    pub fn contains(&self, t: &Triple) -> bool {
        self.triples.contains(t)
    }

    /// Membership of the unordered triple `{a, b, c}` given as indices.
    #[inline]
    pub fn contains_indices(&self, a: i8, b: i8, c: i8) -> bool {
        self.member[ordered_slot(a, b, c)]
    }

    pub fn is_subset(&self, other: &TripleSet) -> bool {
        self.triples.is_subset(&other.triples)
    }

    pub fn union(&self, other: &TripleSet) -> TripleSet {
        TripleSet::from_triples(self.triples.union(&other.triples).copied())
    }

    /// Returns a member `t` and a non-member `t' >= t` if the set is not
    /// closed upward.
    pub fn closure_violation(&self) -> Option<(Triple, Triple)> {
        for t in &self.triples {
            let [a, b, c] = t.0;
            for i in 0..3 {
                let mut up = [a, b, c];
                if up[i] == Level::MAX {
                    continue;
                }
                up[i] = Level::from_index(up[i].index() + 1);
                let up = Triple::new(up[0], up[1], up[2]);
                if !self.contains(&up) {
                    return Some((*t, up));
                }
            }
        }
        None
    }

    pub fn is_monotone_closed(&self) -> bool {
        self.closure_violation().is_none()
    }
}

/// Upward closure of `generators` over unordered triples.
pub fn closure_expand(generators: &[Triple]) -> TripleSet {
    let mut set = TripleSet::from_triples(
        Triple::all()
            .into_iter()
            .filter(|t| generators.iter().any(|g| t.dominates(g))),
    );
    set.generators = generators.to_vec();
    set
}

/// Decimation rule output: `+1` decimate to 0, `-1` decimate to 1, `0` leave.
pub fn beta_eval(xi: &TripleSet, y: ChannelSign, m1: Level, m2: Level, m3: Level) -> i8 {
    beta_indices(xi, y == ChannelSign::Minus, m1.index(), m2.index(), m3.index())
}

#[inline]
pub(crate) fn beta_indices(xi: &TripleSet, minus: bool, a: i8, b: i8, c: i8) -> i8 {
    if minus {
        -(xi.contains_indices(-a, -b, -c) as i8)
    } else {
        xi.contains_indices(a, b, c) as i8
    }
}

/// `Lambda`: every triple `(L3, m2, m3)` with `m2, m3 >= -L2`.
pub fn lambda_set() -> TripleSet {
    let floor = Level::from_index(1 - MAX_INDEX);
    TripleSet::from_triples(
        Triple::all()
            .into_iter()
            .filter(|t| t.0[0] == Level::MAX && t.0[2] >= floor),
    )
}

/// Inputs to [`build_schedule`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScheduleSpec {
    pub name: String,
    /// Generators of the first decimation rule.
    pub xi1: Vec<Triple>,
    /// Ordered code-dependent triples appended to `Lambda`.
    pub gamma: Vec<Triple>,
    /// Sizes of the nested rule sets, strictly increasing.
    pub sizes: Vec<usize>,
}

/// The first decimation rule and the nested sequence of second rules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleSchedule {
    pub name: String,
    pub xi1: TripleSet,
    pub lambda: TripleSet,
    pub gamma: Vec<Triple>,
    pub sizes: Vec<usize>,
    rules: Vec<TripleSet>,
}

impl RuleSchedule {
    /// Number of nested rules.
    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Rule `j`, 1-based as in the decoding procedure.
    pub fn rule(&self, j: usize) -> &TripleSet {
        &self.rules[j - 1]
    }

    pub fn rules(&self) -> &[TripleSet] {
        &self.rules
    }

    /// The most aggressive rule, `Lambda ∪ Gamma`.
    pub fn full(&self) -> &TripleSet {
        self.rules.last().expect("schedules have at least one rule")
    }

    pub fn spec(&self) -> ScheduleSpec {
        ScheduleSpec {
            name: self.name.clone(),
            xi1: if self.xi1.generators().is_empty() {
                self.xi1.iter().copied().collect()
            } else {
                self.xi1.generators().to_vec()
            },
            gamma: self.gamma.clone(),
            sizes: self.sizes.clone(),
        }
    }
}

impl fmt::Display for RuleSchedule {
    /// Single-line canonical form for report headers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |ts: &mut dyn Iterator<Item = &Triple>| {
            ts.map(|t| t.to_string()).collect::<Vec<_>>().join(",")
        };
        let spec = self.spec();
        write!(
            f,
            "{}[xi1={};gamma={};sizes={}]",
            self.name,
            list(&mut spec.xi1.iter()),
            list(&mut self.gamma.iter()),
            self.sizes
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// Materializes the nested rules `Lambda ∪ Gamma[..size - |Lambda|]` and
/// checks every structural requirement.
pub fn build_schedule(spec: &ScheduleSpec) -> Result<RuleSchedule> {
    let bad = |msg: String| Err(Error::InvalidSchedule(msg));
    let lambda = lambda_set();
    let mut seen = BTreeSet::new();
    for t in &spec.gamma {
        if lambda.contains(t) {
            return bad(format!("gamma triple ({t}) overlaps lambda"));
        }
        if !seen.insert(*t) {
            return bad(format!("gamma triple ({t}) listed twice"));
        }
    }
    if spec.sizes.is_empty() {
        return bad("no rule sizes given".into());
    }
    if spec.sizes.windows(2).any(|w| w[0] >= w[1]) {
        return bad(format!("sizes {:?} are not strictly increasing", spec.sizes));
    }
    let full = lambda.len() + spec.gamma.len();
    let first = spec.sizes[0];
    let last = *spec.sizes.last().unwrap();
    if first < lambda.len() {
        return bad(format!("size {first} is below |lambda| = {}", lambda.len()));
    }
    if last != full {
        return bad(format!(
            "last size {last} must equal |lambda| + |gamma| = {full}"
        ));
    }
    let xi1 = closure_expand(&spec.xi1);
    if xi1.is_empty() {
        return bad("first decimation rule is empty".into());
    }
    let mut rules = Vec::with_capacity(spec.sizes.len());
    for (j, &size) in spec.sizes.iter().enumerate() {
        let set = lambda.union(&TripleSet::from_triples(
            spec.gamma[..size - lambda.len()].iter().copied(),
        ));
        if let Some((t, up)) = set.closure_violation() {
            return bad(format!(
                "rule {} (size {size}) contains ({t}) but not ({up})",
                j + 1
            ));
        }
        rules.push(set);
    }
    Ok(RuleSchedule {
        name: spec.name.clone(),
        xi1,
        lambda,
        gamma: spec.gamma.clone(),
        sizes: spec.sizes.clone(),
        rules,
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScheduleFile {
    name: String,
    xi1: String,
    gamma: String,
    sizes: String,
}

/// Parses a schedule file:
///
/// ```text
/// name = "tanner-155-64"
/// xi1 = """
/// 3 0 0
/// 2 2 1
/// """
/// gamma = """
/// 2 2 2
/// ...
/// """
/// sizes = "23 25 26 27 29"
/// ```
///
/// `xi1` lists generators of the first rule, `gamma` the ordered triples of
/// the second, one triple per line as signed level indices.
pub fn parse_schedule(text: &str) -> Result<RuleSchedule> {
    let file: ScheduleFile =
        toml::from_str(text).map_err(|e| Error::InvalidSchedule(e.to_string()))?;
    let field = |name: &str, e: Error| Error::InvalidSchedule(format!("{name}: {e}"));
    let sizes = file
        .sizes
        .split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::InvalidSchedule(format!("sizes: cannot parse {t:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    build_schedule(&ScheduleSpec {
        name: file.name,
        xi1: parse_triples(&file.xi1).map_err(|e| field("xi1", e))?,
        gamma: parse_triples(&file.gamma).map_err(|e| field("gamma", e))?,
        sizes,
    })
}
