//! Subgraph decoding under the isolation assumption, critical numbers and
//! classification of decoder failures against the residual graph.
//!
//! Everything here assumes the all-zero codeword, so a variable is in error
//! iff its received bit is 1.

use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;

use crate::decimation::{residual_graph, DecimationTrace};
use crate::error::{Error, Result};
use crate::faid::{decide_bit, DecodeOutcome};
use crate::graph::{is_stopping_set, Subgraph, TannerGraph};
use crate::level::MAX_INDEX;
use crate::rule::{saturating_sequence, VariableRule, VnTable};

/// Default bound on `|P|` for isolation decoding.
pub const DEFAULT_CAP: usize = 16;
/// Default largest weight tried by [`critical_number`].
pub const DEFAULT_MAX_WEIGHT: usize = 8;

/// A subgraph `H` whose exterior is error free: every boundary edge into a
/// check of `W` carries `saturating_sequence(rule)[k - 1]` at iteration `k`.
#[derive(Clone, Debug)]
pub struct IsolatedInstance<'a> {
    pub subgraph: &'a Subgraph,
    pub rule: &'a VariableRule,
    /// Local indices (into `subgraph.vars`) of the erroneous variables.
    pub errors: Vec<usize>,
    pub max_iter: usize,
    pub cap: usize,
}

impl<'a> IsolatedInstance<'a> {
    pub fn new(subgraph: &'a Subgraph, rule: &'a VariableRule, errors: Vec<usize>) -> Self {
        IsolatedInstance {
            subgraph,
            rule,
            errors,
            max_iter: 100,
            cap: DEFAULT_CAP,
        }
    }
}

/// Precomputed local structure shared by many isolation decodes.
struct Isolation {
    /// Check of each local edge, variable-major, three per variable.
    edge_check: Vec<usize>,
    /// Local edges of each check.
    check_edges: Vec<Vec<usize>>,
    boundary: Vec<usize>,
    table: VnTable,
    exterior: Vec<i8>,
}

impl Isolation {
    fn new(h: &Subgraph, rule: &VariableRule, max_iter: usize, cap: usize) -> Result<Self> {
        let p = h.vars.len();
        if p > cap {
            return Err(Error::CapExceeded { size: p, cap });
        }
        if let Some(v) = h.var_adj.iter().position(|cs| cs.len() != 3) {
            return Err(Error::UnsupportedGraph(format!(
                "subgraph variable {} has {} checks, expected 3",
                h.vars[v],
                h.var_adj[v].len()
            )));
        }
        if max_iter == 0 {
            return Err(Error::InvalidArgument("max_iter must be at least 1".into()));
        }
        let edge_check: Vec<usize> = h.var_adj.iter().flatten().copied().collect();
        let mut check_edges = vec![Vec::new(); h.checks.len()];
        for (e, &c) in edge_check.iter().enumerate() {
            check_edges[c].push(e);
        }
        Ok(Isolation {
            edge_check,
            check_edges,
            boundary: h.boundary.clone(),
            table: rule.tabulate(),
            exterior: saturating_sequence(rule, max_iter)
                .into_iter()
                .map(|l| l.index())
                .collect(),
        })
    }

    fn decode(&self, errors: &[usize], max_iter: usize) -> Result<DecodeOutcome> {
        let p = self.edge_check.len() / 3;
        let mut received = vec![0u8; p];
        for &v in errors {
            if v >= p {
                return Err(Error::InvalidArgument(format!(
                    "error index {v} outside a subgraph of {p} variables"
                )));
            }
            received[v] = 1;
        }
        let mut bits = received.clone();
        if errors.is_empty() {
            return Ok(outcome(true, bits, 0));
        }
        let ne = self.edge_check.len();
        let (mut v2c, mut c2v) = (vec![0i8; ne], vec![0i8; ne]);
        for k in 1..=max_iter {
            for (v, &bit) in received.iter().enumerate().take(p) {
                let e = 3 * v;
                let minus = bit == 1;
                let (a, b, c) = (c2v[e], c2v[e + 1], c2v[e + 2]);
                v2c[e] = self.table.get(minus, b, c);
                v2c[e + 1] = self.table.get(minus, a, c);
                v2c[e + 2] = self.table.get(minus, a, b);
            }
            let outside = self.exterior[k - 1];
            for (c, edges) in self.check_edges.iter().enumerate() {
                for &e in edges {
                    let mut neg = false;
                    let mut mag = MAX_INDEX;
                    let others = edges.iter().filter(|&&o| o != e).map(|&o| v2c[o]);
                    let ext = std::iter::repeat_n(outside, self.boundary[c]);
                    for m in others.chain(ext) {
                        neg ^= m < 0;
                        mag = mag.min(m.abs());
                    }
                    c2v[e] = if neg { -mag } else { mag };
                }
            }
            for v in 0..p {
                let sum = i32::from(c2v[3 * v]) + i32::from(c2v[3 * v + 1]) + i32::from(c2v[3 * v + 2]);
                bits[v] = decide_bit(sum, received[v]);
            }
            if bits.iter().all(|&b| b == 0) {
                return Ok(outcome(true, bits, k));
            }
        }
        Ok(outcome(false, bits, max_iter))
    }
}

fn outcome(converged: bool, bits: Vec<u8>, iterations: usize) -> DecodeOutcome {
    DecodeOutcome {
        converged,
        bits,
        iterations,
        trace: Vec::new(),
    }
}

/// Runs the decoder on `H` with an all-correct exterior. Converged means
/// every variable of `P` decides 0 after some iteration within the budget.
/// The returned bits are local to `P`.
pub fn isolation_decode(instance: &IsolatedInstance<'_>) -> Result<DecodeOutcome> {
    Isolation::new(instance.subgraph, instance.rule, instance.max_iter, instance.cap)?
        .decode(&instance.errors, instance.max_iter)
}

/// Smallest number of errors in `P` for which the decoder fails on `H` under
/// the isolation assumption, or `None` when every pattern up to
/// `max_weight` is corrected.
pub fn critical_number(
    h: &Subgraph,
    rule: &VariableRule,
    max_weight: usize,
    max_iter: usize,
    cap: usize,
) -> Result<Option<usize>> {
    let iso = Isolation::new(h, rule, max_iter, cap)?;
    let p = h.vars.len();
    for w in 1..=max_weight.min(p) {
        let failed = (0..p)
            .combinations(w)
            .par_bridge()
            .map(|e| iso.decode(&e, max_iter).map(|o| !o.converged))
            .try_reduce(|| false, |a, b| Ok(a || b))?;
        if failed {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Residual-graph analysis of one failed decode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailureRecord {
    pub support: Vec<usize>,
    /// Some error node was decimated (necessarily to its received value).
    pub decimated_error: bool,
    /// Final rule index; 0 for decoders without decimation.
    pub rule_index: usize,
    /// Undecimated variables after the final attempt.
    pub residual: Vec<usize>,
    pub residual_is_stopping: bool,
    /// Every correct residual node has all its checks at residual degree
    /// at least 2.
    pub degree_property_holds: bool,
    /// Some residual error node has a check of residual degree 1.
    pub error_sees_degree1: bool,
    pub iterations: usize,
    /// Set when the record is inconsistent with a failed decode.
    pub anomaly: Option<String>,
}

impl FailureRecord {
    /// The degree property is only claimed when no error node was decimated.
    pub fn degree_property_violated(&self) -> bool {
        !self.decimated_error && !self.degree_property_holds
    }
}

impl fmt::Display for FailureRecord {
    /// `support=3,45,99 j=5 residual=12 stopping=true decimated_error=false degree_property=true`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "support={} j={} residual={} stopping={} decimated_error={} degree_property={}",
            self.support.iter().join(","),
            self.rule_index,
            self.residual.len(),
            self.residual_is_stopping,
            self.decimated_error,
            self.degree_property_holds,
        )?;
        if let Some(a) = &self.anomaly {
            write!(f, " anomaly=\"{a}\"")?;
        }
        Ok(())
    }
}

/// Classifies a failure of the adaptive decoder from its trace.
pub fn classify_failure(
    graph: &TannerGraph,
    trace: &DecimationTrace,
    support: &[usize],
) -> Result<FailureRecord> {
    let attempt = trace
        .last()
        .ok_or_else(|| Error::InvalidArgument("empty decimation trace".into()))?;
    let gamma = &attempt.state.gamma;
    graph.check_len(gamma.len())?;
    let (residual, _) = residual_graph(graph, &attempt.state)?;
    let decimated_error = support.iter().any(|&v| gamma[v] != 0);
    let iterations = trace.attempts.iter().map(|a| a.iterations).sum();
    let mut rec = residual_record(graph, support, residual.indices().to_vec(), iterations)?;
    rec.decimated_error = decimated_error;
    rec.rule_index = attempt.rule_index;
    if rec.residual.is_empty() {
        rec.anomaly = Some("failure with every node decimated".into());
    }
    Ok(rec)
}

/// Classifies a failure of a decoder without decimation: the residual graph
/// is the whole graph and the rule index is 0.
pub fn classify_plain_failure(
    graph: &TannerGraph,
    support: &[usize],
    iterations: usize,
) -> Result<FailureRecord> {
    residual_record(graph, support, (0..graph.n()).collect(), iterations)
}

fn residual_record(
    graph: &TannerGraph,
    support: &[usize],
    residual: Vec<usize>,
    iterations: usize,
) -> Result<FailureRecord> {
    let mut in_support = vec![false; graph.n()];
    for &v in support {
        if v >= graph.n() {
            return Err(Error::InvalidArgument(format!("support index {v} out of range")));
        }
        in_support[v] = true;
    }
    let mut in_residual = vec![false; graph.n()];
    for &v in &residual {
        in_residual[v] = true;
    }
    let degree: Vec<usize> = (0..graph.m())
        .map(|c| graph.check_vars(c).iter().filter(|&&u| in_residual[u]).count())
        .collect();
    let sees_degree1 = |v: usize| graph.var_checks(v).iter().any(|&c| degree[c] < 2);
    let degree_property_holds = residual.iter().all(|&v| in_support[v] || !sees_degree1(v));
    let error_sees_degree1 = residual.iter().any(|&v| in_support[v] && sees_degree1(v));
    let mut support = support.to_vec();
    support.sort_unstable();
    Ok(FailureRecord {
        support,
        decimated_error: false,
        rule_index: 0,
        residual_is_stopping: is_stopping_set(graph, &residual),
        residual,
        degree_property_holds,
        error_sees_degree1,
        iterations,
        anomaly: None,
    })
}

#[cfg(test)]
#[allow(clippy::needless_range_loop)]
mod tests {
    use super::*;
    use crate::graph::induced_subgraph;
    use crate::level::{check_update, ChannelSign, Level};
    use crate::presets;
    use crate::rule::LutRule;
    use rand::seq::index::sample;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn tanner() -> TannerGraph {
        crate::graph::parse_alist(include_str!("../../../fixtures/tanner_155_64.alist")).unwrap()
    }

    /// Full-graph decode in which every variable outside `P` is clamped to
    /// send the all-correct trajectory value.
    fn clamped_oracle(
        g: &TannerGraph,
        p: &[usize],
        rule: &VariableRule,
        errors: &[usize],
        max_iter: usize,
    ) -> (bool, usize) {
        let traj = saturating_sequence(rule, max_iter);
        let mut y = vec![ChannelSign::Plus; g.n()];
        for &e in errors {
            y[p[e]] = ChannelSign::Minus;
        }
        if errors.is_empty() {
            return (true, 0);
        }
        let mut c2v = vec![Level::ZERO; g.num_edges()];
        let mut v2c = vec![Level::ZERO; g.num_edges()];
        for k in 1..=max_iter {
            for v in 0..g.n() {
                let es: Vec<usize> = g.var_edges(v).collect();
                for (i, &e) in es.iter().enumerate() {
                    v2c[e] = if p.contains(&v) {
                        let o: Vec<Level> =
                            (0..3).filter(|&x| x != i).map(|x| c2v[es[x]]).collect();
                        rule.eval(y[v], o[0], o[1])
                    } else {
                        traj[k - 1]
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
                    c2v[e] = check_update(&o).unwrap();
                }
            }
            let ok = p.iter().all(|&v| {
                let s: i32 = g.var_edges(v).map(|e| c2v[e].index() as i32).sum::<i32>()
                    + y[v].signum() as i32;
                s > 0 || (s == 0 && y[v] == ChannelSign::Plus)
            });
            if ok {
                return (true, k);
            }
        }
        (false, max_iter)
    }

    /// A connected set of `size` variables grown from `start`.
    fn connected(g: &TannerGraph, start: usize, size: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
        let mut set = vec![start];
        while set.len() < size {
            let v = set[rng.random_range(0..set.len())];
            let nb = crate::graph::search::var_neighbors(g, v);
            let u = nb[rng.random_range(0..nb.len())];
            if !set.contains(&u) {
                set.push(u);
            }
        }
        set.sort_unstable();
        set
    }

    #[test]
    fn matches_clamped_full_graph() {
        let g = tanner();
        let rule = presets::faid_rule();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let mut failures = 0;
        for _ in 0..30 {
            let size = rng.random_range(4..=10);
            let p = connected(&g, rng.random_range(0..g.n()), size, &mut rng);
            let h = induced_subgraph(&g, &p).unwrap();
            let w = rng.random_range(0..=size.min(5));
            let errors: Vec<usize> = sample(&mut rng, size, w).into_vec();
            let mut inst = IsolatedInstance::new(&h, &rule, errors.clone());
            inst.max_iter = 20;
            let got = isolation_decode(&inst).unwrap();
            let (conv, iters) = clamped_oracle(&g, &p, &rule, &errors, 20);
            assert_eq!((got.converged, got.iterations), (conv, iters), "{p:?} {errors:?}");
            failures += usize::from(!conv);
        }
        assert!(failures < 30);
    }

    #[test]
    fn lone_error_recovers() {
        let g = tanner();
        let h = induced_subgraph(&g, &[7]).unwrap();
        let rule = presets::faid_rule();
        let out = isolation_decode(&IsolatedInstance::new(&h, &rule, vec![0])).unwrap();
        assert!(out.converged && out.iterations <= 3);
        assert_eq!(critical_number(&h, &rule, 1, 100, DEFAULT_CAP).unwrap(), None);
    }

    #[test]
    fn silent_rule_never_corrects() {
        let g = tanner();
        let h = induced_subgraph(&g, &[0, 1, 2]).unwrap();
        let silent = VariableRule::Lut(LutRule::from_indices(&[0; 49]).unwrap());
        assert_eq!(critical_number(&h, &silent, 3, 10, DEFAULT_CAP).unwrap(), Some(1));
    }

    #[test]
    fn empty_error_set_converges() {
        let g = tanner();
        let h = induced_subgraph(&g, &(0..12).collect::<Vec<_>>()).unwrap();
        for rule in [presets::faid_rule(), presets::decimation_rule()] {
            let out = isolation_decode(&IsolatedInstance::new(&h, &rule, vec![])).unwrap();
            assert!(out.converged);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let g = tanner();
        let h = induced_subgraph(&g, &(0..17).collect::<Vec<_>>()).unwrap();
        let rule = presets::faid_rule();
        assert!(matches!(
            isolation_decode(&IsolatedInstance::new(&h, &rule, vec![])),
            Err(Error::CapExceeded { size: 17, cap: 16 })
        ));
    }

    #[test]
    fn codeword_residual_is_stopping() {
        let g = tanner();
        let cw = g.parity_matrix().nullspace();
        let support: Vec<usize> = (0..g.n()).filter(|&v| cw[0][v] == 1).collect();
        let rec = residual_record(&g, &[support[0]], support.clone(), 0).unwrap();
        assert!(rec.residual_is_stopping);
        assert!(rec.degree_property_holds);
        assert!(!rec.error_sees_degree1);
    }

    #[test]
    fn plain_failure_record_format() {
        let g = tanner();
        let rec = classify_plain_failure(&g, &[99, 3, 45], 100).unwrap();
        assert_eq!(
            rec.to_string(),
            "support=3,45,99 j=0 residual=155 stopping=true decimated_error=false degree_property=true"
        );
    }
}
