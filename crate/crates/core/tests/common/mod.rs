//! Fixtures and independent oracles shared by the integration tests.
#![allow(dead_code)]

use faid_core::level::{check_update, ChannelSign, Level};
use faid_core::rule::saturating_sequence;
use faid_core::{parse_alist, TannerGraph, VariableRule};

pub const TANNER: &str = include_str!("../../../../fixtures/tanner_155_64.alist");

pub fn tanner() -> TannerGraph {
    parse_alist(TANNER).unwrap()
}

pub fn fixture(name: &str) -> String {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/");
    std::fs::read_to_string(format!("{path}{name}")).unwrap()
}

/// Decodes errors on `p[errors]` over the whole graph, with every variable
/// outside `p` forced to send the all-correct trajectory. Success means all
/// of `p` decides 0 after some iteration. Returns `(converged, iterations)`.
pub fn clamped_oracle(
    g: &TannerGraph,
    p: &[usize],
    rule: &VariableRule,
    errors: &[usize],
    max_iter: usize,
) -> (bool, usize) {
    if errors.is_empty() {
        return (true, 0);
    }
    let traj = saturating_sequence(rule, max_iter);
    let inside: Vec<bool> = (0..g.n()).map(|v| p.contains(&v)).collect();
    let mut y = vec![ChannelSign::Plus; g.n()];
    for &e in errors {
        y[p[e]] = ChannelSign::Minus;
    }
    let mut c2v = vec![Level::ZERO; g.num_edges()];
    let mut v2c = vec![Level::ZERO; g.num_edges()];
    for k in 1..=max_iter {
        for v in 0..g.n() {
            let es: Vec<usize> = g.var_edges(v).collect();
            for (i, &e) in es.iter().enumerate() {
                v2c[e] = if inside[v] {
                    let o: Vec<Level> = (0..3).filter(|&x| x != i).map(|x| c2v[es[x]]).collect();
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
            let s: i32 =
                g.var_edges(v).map(|e| c2v[e].index() as i32).sum::<i32>() + y[v].signum() as i32;
            s > 0 || (s == 0 && y[v] == ChannelSign::Plus)
        });
        if ok {
            return (true, k);
        }
    }
    (false, max_iter)
}

/// Smallest failing error weight inside `p`, by bitmask enumeration with
/// the clamped oracle.
pub fn brute_critical_number(
    g: &TannerGraph,
    p: &[usize],
    rule: &VariableRule,
    max_weight: usize,
    max_iter: usize,
) -> Option<usize> {
    let n = p.len();
    let mut best: Option<usize> = None;
    for mask in 1u32..(1 << n) {
        let w = mask.count_ones() as usize;
        if w > max_weight || best.is_some_and(|b| w >= b) {
            continue;
        }
        let errors: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        if !clamped_oracle(g, p, rule, &errors, max_iter).0 {
            best = Some(w);
        }
    }
    best
}

/// A connected set of `size` variables grown at random from `start`.
pub fn connected_set<R: rand::Rng>(g: &TannerGraph, start: usize, size: usize, rng: &mut R) -> Vec<usize> {
    let mut set = vec![start];
    while set.len() < size {
        let v = set[rng.random_range(0..set.len())];
        let nb = faid_core::graph::search::var_neighbors(g, v);
        let u = nb[rng.random_range(0..nb.len())];
        if !set.contains(&u) {
            set.push(u);
        }
    }
    set.sort_unstable();
    set
}
