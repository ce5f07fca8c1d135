//! Multilevel finite alphabet iterative decoder with a flooding schedule.
//!
//! Messages are level indices (`i8` in `-3..=3`) stored per edge. One
//! iteration recomputes every variable-to-check message from the previous
//! iteration's check-to-variable messages, then every check-to-variable
//! message, then the bit decisions.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::TannerGraph;
use crate::level::MAX_INDEX;
use crate::rule::{VariableRule, VnTable};

/// Per-decode message state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoderState {
    pub v2c: Vec<i8>,
    pub c2v: Vec<i8>,
    /// Received hard bits `r_i`; the channel value is `(-1)^{r_i} C`.
    pub received: Vec<u8>,
    pub bits: Vec<u8>,
    pub iteration: usize,
}

impl DecoderState {
    /// Fresh state with all messages at zero and decisions equal to the
    /// received bits.
    pub fn new(graph: &TannerGraph, received: &[u8]) -> Result<Self> {
        graph.check_len(received.len())?;
        if let Some(b) = received.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidArgument(format!("received bit {b} is not 0 or 1")));
        }
        Ok(DecoderState {
            v2c: vec![0; graph.num_edges()],
            c2v: vec![0; graph.num_edges()],
            received: received.to_vec(),
            bits: received.to_vec(),
            iteration: 0,
        })
    }

    pub fn reset_messages(&mut self) {
        self.v2c.fill(0);
        self.c2v.fill(0);
    }
}

/// Variable-node pass for degree-3 variables. Nodes with a nonzero `clamp`
/// entry send `clamp * L_s` on every edge.
#[inline]
pub(crate) fn variable_pass(
    graph: &TannerGraph,
    table: &VnTable,
    received: &[u8],
    c2v: &[i8],
    v2c: &mut [i8],
    clamp: Option<&[i8]>,
) {
    for v in 0..graph.n() {
        let e = graph.var_edges(v).start;
        if let Some(g) = clamp {
            if g[v] != 0 {
                let m = g[v] * MAX_INDEX;
                v2c[e..e + 3].fill(m);
                continue;
            }
        }
        let minus = received[v] == 1;
        let (a, b, c) = (c2v[e], c2v[e + 1], c2v[e + 2]);
        v2c[e] = table.get(minus, b, c);
        v2c[e + 1] = table.get(minus, a, c);
        v2c[e + 2] = table.get(minus, a, b);
    }
}

/// Check-node pass: sign product times minimum magnitude, extrinsic.
#[inline]
pub(crate) fn check_pass(graph: &TannerGraph, v2c: &[i8], c2v: &mut [i8]) {
    for c in 0..graph.m() {
        let edges = graph.check_edges(c);
        let mut parity = false;
        let mut min1 = MAX_INDEX + 1;
        let mut min2 = MAX_INDEX + 1;
        let mut arg = usize::MAX;
        for (k, &e) in edges.iter().enumerate() {
            let m = v2c[e];
            parity ^= m < 0;
            let mag = m.abs();
            if mag < min1 {
                min2 = min1;
                min1 = mag;
                arg = k;
            } else if mag < min2 {
                min2 = mag;
            }
        }
        for (k, &e) in edges.iter().enumerate() {
            let mag = if k == arg { min2 } else { min1 }.min(MAX_INDEX);
            let neg = parity ^ (v2c[e] < 0);
            c2v[e] = if neg { -mag } else { mag };
        }
    }
}

/// Decision from the index sum of all incoming messages plus the channel
/// sign; ties keep the received bit.
#[inline]
pub(crate) fn decide_bit(incoming_sum: i32, received: u8) -> u8 {
    let total = incoming_sum + if received == 0 { 1 } else { -1 };
    match total.cmp(&0) {
        std::cmp::Ordering::Less => 1,
        std::cmp::Ordering::Greater => 0,
        std::cmp::Ordering::Equal => received,
    }
}

pub(crate) fn decide_into(graph: &TannerGraph, received: &[u8], c2v: &[i8], bits: &mut [u8]) {
    for v in 0..graph.n() {
        let sum: i32 = graph.var_edges(v).map(|e| i32::from(c2v[e])).sum();
        bits[v] = decide_bit(sum, received[v]);
    }
}

/// Hard decisions for the current state.
pub fn hard_decision(graph: &TannerGraph, state: &DecoderState) -> Vec<u8> {
    let mut bits = state.received.clone();
    if state.iteration > 0 {
        decide_into(graph, &state.received, &state.c2v, &mut bits);
    }
    bits
}

/// One flooding iteration.
pub fn faid_iterate(graph: &TannerGraph, table: &VnTable, state: &mut DecoderState) {
    variable_pass(graph, table, &state.received, &state.c2v, &mut state.v2c, None);
    check_pass(graph, &state.v2c, &mut state.c2v);
    state.iteration += 1;
    decide_into(graph, &state.received, &state.c2v, &mut state.bits);
}

/// Messages and decisions after one iteration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IterationSnapshot {
    pub iteration: usize,
    pub v2c: Vec<i8>,
    pub c2v: Vec<i8>,
    pub bits: Vec<u8>,
}

impl IterationSnapshot {
    pub(crate) fn of(state: &DecoderState) -> Self {
        IterationSnapshot {
            iteration: state.iteration,
            v2c: state.v2c.clone(),
            c2v: state.c2v.clone(),
            bits: state.bits.clone(),
        }
    }
}

/// Renders snapshots as text:
///
/// ```text
/// # iteration <k>
/// v2c: <signed index per edge, variable-major edge order>
/// c2v: <signed index per edge>
/// bits: <decision per variable>
/// ```
pub fn format_trace(trace: &[IterationSnapshot]) -> String {
    let mut s = String::new();
    let join = |xs: &mut dyn Iterator<Item = String>| xs.collect::<Vec<_>>().join(" ");
    for snap in trace {
        let _ = writeln!(s, "# iteration {}", snap.iteration);
        let _ = writeln!(s, "v2c: {}", join(&mut snap.v2c.iter().map(|x| x.to_string())));
        let _ = writeln!(s, "c2v: {}", join(&mut snap.c2v.iter().map(|x| x.to_string())));
        let _ = writeln!(s, "bits: {}", join(&mut snap.bits.iter().map(|x| x.to_string())));
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeOutcome {
    /// True iff `bits` has zero syndrome.
    pub converged: bool,
    pub bits: Vec<u8>,
    pub iterations: usize,
    /// Per-iteration snapshots; empty unless tracing was requested.
    pub trace: Vec<IterationSnapshot>,
}

/// FAID decoder with a fixed variable rule and iteration limit.
#[derive(Clone, Debug)]
pub struct Faid {
    rule: VariableRule,
    table: VnTable,
    max_iter: usize,
}

impl Faid {
    pub fn new(rule: VariableRule, max_iter: usize) -> Result<Self> {
        if max_iter == 0 {
            return Err(Error::InvalidArgument("max_iter must be at least 1".into()));
        }
        Ok(Faid {
            table: rule.tabulate(),
            rule,
            max_iter,
        })
    }

    pub fn rule(&self) -> &VariableRule {
        &self.rule
    }

    pub fn max_iter(&self) -> usize {
        self.max_iter
    }

    pub fn decode(&self, graph: &TannerGraph, received: &[u8]) -> Result<DecodeOutcome> {
        self.run(graph, received, false)
    }

    pub fn decode_traced(&self, graph: &TannerGraph, received: &[u8]) -> Result<DecodeOutcome> {
        self.run(graph, received, true)
    }

    fn run(&self, graph: &TannerGraph, received: &[u8], trace: bool) -> Result<DecodeOutcome> {
        graph.require_column_weight_three()?;
        let mut state = DecoderState::new(graph, received)?;
        let mut snaps = Vec::new();
        let mut converged = graph.is_codeword(&state.bits);
        while !converged && state.iteration < self.max_iter {
            faid_iterate(graph, &self.table, &mut state);
            if trace {
                snaps.push(IterationSnapshot::of(&state));
            }
            converged = graph.is_codeword(&state.bits);
        }
        Ok(DecodeOutcome {
            converged,
            bits: state.bits,
            iterations: state.iteration,
            trace: snaps,
        })
    }
}

/// Decodes `received` with rule `rule` for at most `max_iter` iterations.
pub fn faid_decode(
    graph: &TannerGraph,
    rule: &VariableRule,
    received: &[u8],
    max_iter: usize,
) -> Result<DecodeOutcome> {
    Faid::new(rule.clone(), max_iter)?.decode(graph, received)
}
