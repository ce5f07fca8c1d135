//! The adaptive decimation-enhanced decoder.
//!
//! For each rule index `j` of the schedule:
//!
//! 1. clear all decimation marks and messages;
//! 2. run three iterations with the decimation map, stopping on convergence;
//! 3. apply the first rule to every node and reset messages, `q = 0`;
//! 4. run two iterations, apply rule `j` to the undecimated nodes and reset;
//!    repeat while the decimated count grows past `q`;
//! 5. decode the remaining nodes with the residual map for up to the
//!    iteration budget.
//!
//! On failure `j` advances to the next, more aggressive rule. Decimated nodes
//! send `gamma * L3` on every edge and keep their decimated bit.

use crate::error::{Error, Result};
use crate::faid::{check_pass, decide_bit, variable_pass, DecodeOutcome};
use crate::graph::{induced_subgraph, NodeRole, NodeSet, Subgraph, TannerGraph};
use crate::level::MAX_INDEX;
use crate::rule::{VariableRule, VnTable};

use super::{beta_indices, RuleSchedule, TripleSet};

#[derive(Clone, Debug, PartialEq)]
pub struct AdfaidConfig {
    /// Map used while decimating.
    pub decimation: VariableRule,
    /// Map used on the residual nodes once decimation has settled.
    pub residual: VariableRule,
    pub schedule: RuleSchedule,
    /// Iterations allowed for the residual map per rule attempt.
    pub iter_budget: usize,
    /// Evaluate the invariant monitors on every decode.
    pub monitors: bool,
}

impl AdfaidConfig {
    pub fn new(decimation: VariableRule, residual: VariableRule, schedule: RuleSchedule) -> Self {
        AdfaidConfig {
            decimation,
            residual,
            schedule,
            iter_budget: 100,
            monitors: false,
        }
    }
}

/// Decimation marks and counters at the end of a rule attempt.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecimationState {
    /// `+1` decimated to 0, `-1` decimated to 1, `0` free.
    pub gamma: Vec<i8>,
    /// Number of decimated nodes, `N_b`.
    pub decimated: usize,
    /// Last count that triggered another round.
    pub q: usize,
    /// Decimation rounds completed with the second rule.
    pub rounds: usize,
    /// 1-based rule index `j`.
    pub rule_index: usize,
}

/// Where a rule attempt stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    /// The received word was already a codeword.
    Initial,
    /// Converged during the first three iterations.
    Warmup,
    /// Converged between decimation rounds.
    Decimation,
    /// Converged while decoding the residual nodes.
    Residual,
    /// Did not converge with this rule.
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleAttempt {
    pub rule_index: usize,
    /// Nodes decimated by the first rule.
    pub first_round: Vec<usize>,
    /// Nodes newly decimated by each round of rule `j`.
    pub rounds: Vec<Vec<usize>>,
    pub state: DecimationState,
    pub phase: Phase,
    pub iterations: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DecimationTrace {
    pub attempts: Vec<RuleAttempt>,
}

impl DecimationTrace {
    pub fn last(&self) -> Option<&RuleAttempt> {
        self.attempts.last()
    }

    /// Rule index of the final attempt.
    pub fn final_rule_index(&self) -> usize {
        self.last().map_or(1, |a| a.rule_index)
    }
}

/// Invariant counters. `*_checks` count the situations examined.
///
/// The monitors that talk about correct and error nodes assume the all-zero
/// codeword was sent, so a node is in error iff its received bit is 1.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Monitors {
    /// Nodes decimated against their channel sign.
    pub safety_violations: u64,
    pub fixpoint_checks: u64,
    /// Extra rounds after the fixpoint that decimated something.
    pub fixpoint_violations: u64,
    /// `L3` messages seen in the first two iterations after a reset.
    pub strong_message_checks: u64,
    /// ...of which came from a check with an undecimated other neighbour.
    pub strong_message_violations: u64,
    /// Correct undecimated nodes holding an `L3` at a decimation round with
    /// no decimated error node among their checks' other neighbours.
    pub strong_input_checks: u64,
    /// ...of which were not decimated.
    pub strong_input_violations: u64,
}

impl Monitors {
    pub fn merge(&mut self, o: &Monitors) {
        self.safety_violations += o.safety_violations;
        self.fixpoint_checks += o.fixpoint_checks;
        self.fixpoint_violations += o.fixpoint_violations;
        self.strong_message_checks += o.strong_message_checks;
        self.strong_message_violations += o.strong_message_violations;
        self.strong_input_checks += o.strong_input_checks;
        self.strong_input_violations += o.strong_input_violations;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdfaidOutcome {
    pub outcome: DecodeOutcome,
    pub trace: DecimationTrace,
    pub monitors: Monitors,
}

/// Adaptive decimation decoder bound to one configuration.
#[derive(Clone, Debug)]
pub struct Adfaid {
    config: AdfaidConfig,
    decimation: VnTable,
    residual: VnTable,
}

impl Adfaid {
    pub fn new(config: AdfaidConfig) -> Result<Self> {
        if config.iter_budget == 0 {
            return Err(Error::InvalidArgument("iteration budget must be at least 1".into()));
        }
        let decimation = config.decimation.clone().validated()?.tabulate();
        let residual = config.residual.clone().validated()?.tabulate();
        if config.schedule.is_empty() {
            return Err(Error::InvalidSchedule("schedule has no rules".into()));
        }
        Ok(Adfaid {
            config,
            decimation,
            residual,
        })
    }

    pub fn config(&self) -> &AdfaidConfig {
        &self.config
    }

    pub fn decode(&self, graph: &TannerGraph, received: &[u8]) -> Result<AdfaidOutcome> {
        graph.require_column_weight_three()?;
        graph.check_len(received.len())?;
        if let Some(b) = received.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidArgument(format!("received bit {b} is not 0 or 1")));
        }
        let mut run = Run::new(graph, received, self.config.monitors);
        let mut trace = DecimationTrace::default();

        if graph.is_codeword(received) {
            trace.attempts.push(RuleAttempt {
                rule_index: 1,
                first_round: Vec::new(),
                rounds: Vec::new(),
                state: run.state(1, 0, 0),
                phase: Phase::Initial,
                iterations: 0,
            });
            return Ok(run.finish(true, trace));
        }

        let schedule = &self.config.schedule;
        for j in 1..=schedule.len() {
            let (attempt, converged) = self.attempt(&mut run, j);
            trace.attempts.push(attempt);
            if converged {
                return Ok(run.finish(true, trace));
            }
        }
        Ok(run.finish(false, trace))
    }

    fn attempt(&self, run: &mut Run<'_>, j: usize) -> (RuleAttempt, bool) {
        let schedule = &self.config.schedule;
        let start_iters = run.iterations;
        run.gamma.fill(0);
        run.reset();
        let mut attempt = RuleAttempt {
            rule_index: j,
            first_round: Vec::new(),
            rounds: Vec::new(),
            state: run.state(j, 0, 0),
            phase: Phase::Failed,
            iterations: 0,
        };
        let done = |run: &mut Run<'_>, attempt: &mut RuleAttempt, phase, q| {
            attempt.phase = phase;
            attempt.iterations = run.iterations - start_iters;
            attempt.state = run.state(j, q, attempt.rounds.len());
        };

        for _ in 0..3 {
            if run.iterate(&self.decimation) {
                done(run, &mut attempt, Phase::Warmup, 0);
                return (attempt, true);
            }
        }
        attempt.first_round = run.apply_rule(&schedule.xi1, false);
        run.reset();
        let mut q = 0;

        let rule = schedule.rule(j);
        loop {
            for _ in 0..2 {
                if run.iterate(&self.decimation) {
                    done(run, &mut attempt, Phase::Decimation, q);
                    return (attempt, true);
                }
            }
            let fresh = run.apply_rule(rule, true);
            attempt.rounds.push(fresh);
            run.reset();
            let nb = run.decimated();
            if nb > q {
                q = nb;
            } else {
                break;
            }
        }
        if run.monitor {
            run.check_fixpoint(&self.decimation, rule);
        }

        for _ in 0..self.config.iter_budget {
            if run.iterate(&self.residual) {
                done(run, &mut attempt, Phase::Residual, q);
                return (attempt, true);
            }
        }
        done(run, &mut attempt, Phase::Failed, q);
        (attempt, false)
    }
}

struct Run<'g> {
    graph: &'g TannerGraph,
    received: Vec<u8>,
    v2c: Vec<i8>,
    c2v: Vec<i8>,
    bits: Vec<u8>,
    gamma: Vec<i8>,
    iterations: usize,
    since_reset: usize,
    monitor: bool,
    monitors: Monitors,
}

impl<'g> Run<'g> {
    fn new(graph: &'g TannerGraph, received: &[u8], monitor: bool) -> Self {
        Run {
            graph,
            received: received.to_vec(),
            v2c: vec![0; graph.num_edges()],
            c2v: vec![0; graph.num_edges()],
            bits: received.to_vec(),
            gamma: vec![0; graph.n()],
            iterations: 0,
            since_reset: 0,
            monitor,
            monitors: Monitors::default(),
        }
    }

    fn reset(&mut self) {
        self.v2c.fill(0);
        self.c2v.fill(0);
        self.since_reset = 0;
    }

    fn decimated(&self) -> usize {
        self.gamma.iter().filter(|&&g| g != 0).count()
    }

    fn state(&self, j: usize, q: usize, rounds: usize) -> DecimationState {
        DecimationState {
            gamma: self.gamma.clone(),
            decimated: self.decimated(),
            q,
            rounds,
            rule_index: j,
        }
    }

    fn finish(self, converged: bool, trace: DecimationTrace) -> AdfaidOutcome {
        AdfaidOutcome {
            outcome: DecodeOutcome {
                converged,
                bits: self.bits,
                iterations: self.iterations,
                trace: Vec::new(),
            },
            trace,
            monitors: self.monitors,
        }
    }

    /// One iteration; returns true when the decisions form a codeword.
    fn iterate(&mut self, table: &VnTable) -> bool {
        self.pass(table);
        self.iterations += 1;
        let g = self.graph;
        for v in 0..g.n() {
            self.bits[v] = match self.gamma[v] {
                0 => {
                    let sum: i32 = g.var_edges(v).map(|e| i32::from(self.c2v[e])).sum();
                    decide_bit(sum, self.received[v])
                }
                s => (s < 0) as u8,
            };
        }
        g.is_codeword(&self.bits)
    }

    fn pass(&mut self, table: &VnTable) {
        variable_pass(
            self.graph,
            table,
            &self.received,
            &self.c2v,
            &mut self.v2c,
            Some(&self.gamma),
        );
        check_pass(self.graph, &self.v2c, &mut self.c2v);
        self.since_reset += 1;
        if self.monitor && self.since_reset <= 2 {
            self.check_strong_messages();
        }
    }

    /// Evaluates `xi` on the free nodes (or all nodes) against the latest
    /// incoming messages, marks the decimated ones and returns them.
    fn apply_rule(&mut self, xi: &TripleSet, only_free: bool) -> Vec<usize> {
        if self.monitor && only_free {
            self.check_strong_inputs(xi);
        }
        let fresh = self.evaluate_rule(xi, only_free);
        for &(v, s) in &fresh {
            self.gamma[v] = s;
            if self.monitor && (s > 0) != (self.received[v] == 0) {
                self.monitors.safety_violations += 1;
            }
        }
        fresh.into_iter().map(|(v, _)| v).collect()
    }

    fn evaluate_rule(&self, xi: &TripleSet, only_free: bool) -> Vec<(usize, i8)> {
        let g = self.graph;
        let mut out = Vec::new();
        for v in 0..g.n() {
            if only_free && self.gamma[v] != 0 {
                continue;
            }
            let e = g.var_edges(v).start;
            let s = beta_indices(
                xi,
                self.received[v] == 1,
                self.c2v[e],
                self.c2v[e + 1],
                self.c2v[e + 2],
            );
            if s != 0 {
                out.push((v, s));
            }
        }
        out
    }

    /// Runs one extra decimation round on a copy of the messages and counts
    /// any node it would decimate.
    fn check_fixpoint(&mut self, table: &VnTable, rule: &TripleSet) {
        let (v2c, c2v, since) = (self.v2c.clone(), self.c2v.clone(), self.since_reset);
        let monitor = std::mem::replace(&mut self.monitor, false);
        for _ in 0..2 {
            self.pass(table);
        }
        self.monitors.fixpoint_checks += 1;
        if !self.evaluate_rule(rule, true).is_empty() {
            self.monitors.fixpoint_violations += 1;
        }
        self.monitor = monitor;
        self.v2c = v2c;
        self.c2v = c2v;
        self.since_reset = since;
    }

    fn check_strong_messages(&mut self) {
        let g = self.graph;
        for c in 0..g.m() {
            let edges = g.check_edges(c);
            for (k, &e) in edges.iter().enumerate() {
                if self.c2v[e].abs() != MAX_INDEX {
                    continue;
                }
                self.monitors.strong_message_checks += 1;
                let all_fixed = edges
                    .iter()
                    .enumerate()
                    .all(|(i, &o)| i == k || self.gamma[g.edge_var(o)] != 0);
                if !all_fixed {
                    self.monitors.strong_message_violations += 1;
                }
            }
        }
    }

    fn check_strong_inputs(&mut self, xi: &TripleSet) {
        let g = self.graph;
        let lambda = super::lambda_set();
        if !lambda.is_subset(xi) {
            return;
        }
        for v in 0..g.n() {
            if self.gamma[v] != 0 || self.received[v] != 0 {
                continue;
            }
            let e = g.var_edges(v);
            if !e.clone().any(|e| self.c2v[e] == MAX_INDEX) {
                continue;
            }
            let near_fixed_error = g.var_checks(v).iter().any(|&c| {
                g.check_vars(c)
                    .iter()
                    .any(|&u| u != v && self.gamma[u] != 0 && self.received[u] == 1)
            });
            if near_fixed_error {
                continue;
            }
            self.monitors.strong_input_checks += 1;
            let s = e.start;
            if beta_indices(xi, false, self.c2v[s], self.c2v[s + 1], self.c2v[s + 2]) != 1 {
                self.monitors.strong_input_violations += 1;
            }
        }
    }
}

/// The undecimated variables and, when nonempty, their induced subgraph.
pub fn residual_graph(
    graph: &TannerGraph,
    state: &DecimationState,
) -> Result<(NodeSet, Option<Subgraph>)> {
    graph.check_len(state.gamma.len())?;
    let free: Vec<usize> = (0..graph.n()).filter(|&v| state.gamma[v] == 0).collect();
    let sub = if free.is_empty() {
        None
    } else {
        Some(induced_subgraph(graph, &free)?)
    };
    Ok((NodeSet::new(free, graph.n(), NodeRole::Residual)?, sub))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decimation::{beta_eval, build_schedule, ScheduleSpec, Triple};
    use crate::level::{check_update, ChannelSign, Level};
    use crate::presets;
    use rand::seq::index::sample;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tanner() -> TannerGraph {
        crate::graph::parse_alist(include_str!("../../../../fixtures/tanner_155_64.alist")).unwrap()
    }

    /// Straightforward per-node transcription of the procedure on `Level`s.
    struct Reference<'a> {
        g: &'a TannerGraph,
        cfg: &'a AdfaidConfig,
        y: Vec<ChannelSign>,
        gamma: Vec<i8>,
        c2v: Vec<Level>,
        bits: Vec<u8>,
        iterations: usize,
    }

    impl<'a> Reference<'a> {
        fn step(&mut self, rule: &VariableRule) -> bool {
            let g = self.g;
            let mut v2c = vec![Level::ZERO; g.num_edges()];
            for v in 0..g.n() {
                let es: Vec<usize> = g.var_edges(v).collect();
                for (k, &e) in es.iter().enumerate() {
                    v2c[e] = if self.gamma[v] != 0 {
                        Level::new(self.gamma[v] * 3).unwrap()
                    } else {
                        let o: Vec<Level> = es
                            .iter()
                            .enumerate()
                            .filter(|&(i, _)| i != k)
                            .map(|(_, &x)| self.c2v[x])
                            .collect();
                        rule.eval(self.y[v], o[0], o[1])
                    };
                }
            }
            for c in 0..g.m() {
                for &e in g.check_edges(c) {
                    let o: Vec<Level> = g
                        .check_edges(c)
                        .iter()
                        .filter(|&&x| x != e)
                        .map(|&x| v2c[x])
                        .collect();
                    self.c2v[e] = check_update(&o).unwrap();
                }
            }
            self.iterations += 1;
            for v in 0..g.n() {
                self.bits[v] = if self.gamma[v] != 0 {
                    (self.gamma[v] < 0) as u8
                } else {
                    let s: i32 = g.var_edges(v).map(|e| self.c2v[e].index() as i32).sum::<i32>()
                        + self.y[v].signum() as i32;
                    if s == 0 {
                        self.y[v].bit()
                    } else {
                        (s < 0) as u8
                    }
                };
            }
            g.is_codeword(&self.bits)
        }

        fn decimate(&mut self, xi: &TripleSet) {
            let decided: Vec<(usize, i8)> = (0..self.g.n())
                .filter(|&v| self.gamma[v] == 0)
                .map(|v| {
                    let m: Vec<Level> = self.g.var_edges(v).map(|e| self.c2v[e]).collect();
                    (v, beta_eval(xi, self.y[v], m[0], m[1], m[2]))
                })
                .collect();
            for (v, s) in decided {
                self.gamma[v] = s;
            }
            self.c2v.fill(Level::ZERO);
        }

        fn run(g: &'a TannerGraph, cfg: &'a AdfaidConfig, r: &[u8]) -> (bool, Vec<u8>, usize, usize) {
            let mut s = Reference {
                g,
                cfg,
                y: r.iter().map(|&b| ChannelSign::from_bit(b)).collect(),
                gamma: vec![0; g.n()],
                c2v: vec![Level::ZERO; g.num_edges()],
                bits: r.to_vec(),
                iterations: 0,
            };
            if g.is_codeword(r) {
                return (true, s.bits, 0, 1);
            }
            'rules: for j in 1..=cfg.schedule.len() {
                s.gamma.fill(0);
                s.c2v.fill(Level::ZERO);
                for _ in 0..3 {
                    if s.step(&s.cfg.decimation) {
                        return (true, s.bits, s.iterations, j);
                    }
                }
                s.decimate(&s.cfg.schedule.xi1);
                let mut q = 0;
                loop {
                    for _ in 0..2 {
                        if s.step(&s.cfg.decimation) {
                            return (true, s.bits, s.iterations, j);
                        }
                    }
                    s.decimate(s.cfg.schedule.rule(j));
                    let nb = s.gamma.iter().filter(|&&x| x != 0).count();
                    if nb <= q {
                        break;
                    }
                    q = nb;
                }
                for _ in 0..s.cfg.iter_budget {
                    if s.step(&s.cfg.residual) {
                        return (true, s.bits, s.iterations, j);
                    }
                }
                continue 'rules;
            }
            (false, s.bits, s.iterations, cfg.schedule.len())
        }
    }

    fn pattern(n: usize, w: usize, rng: &mut ChaCha8Rng) -> Vec<u8> {
        let mut r = vec![0u8; n];
        for i in sample(rng, n, w) {
            r[i] = 1;
        }
        r
    }

    #[test]
    fn matches_reference_on_random_patterns() {
        let g = tanner();
        let mut cfg = presets::tanner_adfaid();
        cfg.iter_budget = 30;
        let dec = Adfaid::new(cfg.clone()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let (mut escalated, mut failures) = (0, 0);
        for k in 0..40 {
            let r = pattern(g.n(), 6 + k % 16, &mut rng);
            let got = dec.decode(&g, &r).unwrap();
            let (conv, bits, iters, j) = Reference::run(&g, &cfg, &r);
            assert_eq!(got.outcome.converged, conv, "pattern {k}");
            assert_eq!(got.outcome.bits, bits, "pattern {k}");
            assert_eq!(got.outcome.iterations, iters, "pattern {k}");
            assert_eq!(got.trace.final_rule_index(), j, "pattern {k}");
            escalated += usize::from(j > 1);
            failures += usize::from(!conv);
        }
        assert!(escalated > 0 && failures > 0, "{escalated} {failures}");
    }

    #[test]
    fn all_correct_word_decimates_everything() {
        let g = tanner();
        let mut cfg = presets::tanner_adfaid();
        cfg.monitors = true;
        let dec = Adfaid::new(cfg).unwrap();
        // A single error so the syndrome pre-check does not stop at once.
        let mut r = vec![0u8; g.n()];
        r[0] = 1;
        let out = dec.decode(&g, &r).unwrap();
        assert!(out.outcome.converged);
        assert!(out.outcome.bits.iter().all(|&b| b == 0));
        assert_eq!(out.monitors.safety_violations, 0);
    }

    #[test]
    fn zero_pattern_is_a_codeword() {
        let g = tanner();
        let dec = Adfaid::new(presets::tanner_adfaid()).unwrap();
        let out = dec.decode(&g, &vec![0; g.n()]).unwrap();
        assert!(out.outcome.converged);
        assert_eq!(out.outcome.iterations, 0);
        assert_eq!(out.trace.last().unwrap().phase, Phase::Initial);
    }

    /// Messages after three iterations on the all-zero word are all `L3`,
    /// so the first rule marks every node.
    #[test]
    fn first_rule_fires_everywhere_on_clean_input() {
        let g = tanner();
        let cfg = presets::tanner_adfaid();
        let mut run = Run::new(&g, &vec![0; g.n()], false);
        let table = cfg.decimation.tabulate();
        for _ in 0..3 {
            run.pass(&table);
        }
        assert!(run.c2v.iter().all(|&m| m == 3));
        let marked = run.apply_rule(&cfg.schedule.xi1, false);
        assert_eq!(marked.len(), g.n());
        assert!(run.gamma.iter().all(|&s| s == 1));
    }

    #[test]
    fn monitors_hold_on_random_patterns() {
        let g = tanner();
        let mut cfg = presets::tanner_adfaid();
        cfg.monitors = true;
        cfg.iter_budget = 20;
        let dec = Adfaid::new(cfg).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut total = Monitors::default();
        for k in 0..60 {
            let r = pattern(g.n(), 3 + k % 10, &mut rng);
            total.merge(&dec.decode(&g, &r).unwrap().monitors);
        }
        assert_eq!(total.safety_violations, 0);
        assert!(total.fixpoint_checks > 0);
        assert_eq!(total.fixpoint_violations, 0);
    }

    /// With one map and a single rule the decoder is the plain decimation
    /// decoder: one attempt, no escalation.
    #[test]
    fn single_rule_schedule_makes_one_attempt() {
        let g = tanner();
        let schedule = build_schedule(&ScheduleSpec {
            name: "single".into(),
            xi1: vec![Triple::from_indices(3, 0, 0).unwrap()],
            gamma: vec![Triple::from_indices(2, 2, 2).unwrap()],
            sizes: vec![22],
        })
        .unwrap();
        let cfg = AdfaidConfig::new(presets::faid_rule(), presets::faid_rule(), schedule);
        let dec = Adfaid::new(cfg.clone()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let r = pattern(g.n(), 9, &mut rng);
            let out = dec.decode(&g, &r).unwrap();
            assert_eq!(out.trace.attempts.len(), 1);
            let (conv, bits, _, _) = Reference::run(&g, &cfg, &r);
            assert_eq!((out.outcome.converged, out.outcome.bits), (conv, bits));
        }
    }

    #[test]
    fn decimated_bits_stay_pinned() {
        let g = tanner();
        let dec = Adfaid::new(presets::tanner_adfaid()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let r = pattern(g.n(), 10, &mut rng);
            let out = dec.decode(&g, &r).unwrap();
            let last = out.trace.last().unwrap();
            for (v, &s) in last.state.gamma.iter().enumerate() {
                if s != 0 {
                    assert_eq!(out.outcome.bits[v], (s < 0) as u8);
                }
            }
            let mut j = 0;
            for a in &out.trace.attempts {
                assert!(a.rule_index > j);
                j = a.rule_index;
            }
        }
    }

    #[test]
    fn residual_graph_extremes() {
        let g = tanner();
        let mut state = DecimationState {
            gamma: vec![1; g.n()],
            decimated: g.n(),
            q: g.n(),
            rounds: 0,
            rule_index: 1,
        };
        let (set, sub) = residual_graph(&g, &state).unwrap();
        assert!(set.is_empty() && sub.is_none());
        state.gamma.fill(0);
        let (set, sub) = residual_graph(&g, &state).unwrap();
        assert_eq!(set.len(), g.n());
        assert_eq!(sub.unwrap().boundary_edges(), 0);
    }
}
