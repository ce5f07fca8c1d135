//! Bounded searches for small harmful structures: stopping sets and
//! connected variable sets with few odd-degree checks (trapping-set
//! candidates).

use std::collections::BTreeSet;

use super::{NodeRole, NodeSet, TannerGraph};
use crate::error::{Error, Result};

/// Largest stopping-set size the bounded search accepts.
pub const MAX_STOPPING_SEARCH: usize = 13;

/// Variables sharing at least one check with `v`, sorted, excluding `v`.
pub fn var_neighbors(graph: &TannerGraph, v: usize) -> Vec<usize> {
    let mut out: Vec<usize> = graph
        .var_checks(v)
        .iter()
        .flat_map(|&c| graph.check_vars(c).iter().copied())
        .filter(|&u| u != v)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Number of checks with an odd number of neighbours in `set`.
pub fn odd_checks(graph: &TannerGraph, set: &[usize]) -> usize {
    let mut count = vec![0u8; graph.m()];
    for &v in set {
        for &c in graph.var_checks(v) {
            count[c] ^= 1;
        }
    }
    count.iter().filter(|&&x| x == 1).count()
}

/// Stopping sets of size at most `max_size`, including every minimal one
/// (no nonempty proper subset is a stopping set).
///
/// Grows a set from each start variable by repeatedly picking a check that
/// has exactly one neighbour in the set and branching over its other
/// neighbours. `budget` caps the number of search nodes expanded; the second
/// value of the result is false when the budget ran out.
pub fn stopping_sets_up_to(
    graph: &TannerGraph,
    max_size: usize,
    budget: u64,
) -> Result<(Vec<NodeSet>, bool)> {
    if max_size > MAX_STOPPING_SEARCH {
        return Err(Error::InvalidArgument(format!(
            "stopping-set search is bounded to size {MAX_STOPPING_SEARCH}, got {max_size}"
        )));
    }
    let mut found = BTreeSet::new();
    let mut count = vec![0u8; graph.m()];
    let mut set = Vec::new();
    let mut expanded = 0u64;
    let mut complete = true;
    for start in 0..graph.n() {
        set.push(start);
        for &c in graph.var_checks(start) {
            count[c] += 1;
        }
        complete &= grow(
            graph,
            start,
            max_size,
            budget,
            &mut expanded,
            &mut set,
            &mut count,
            &mut found,
        );
        for &c in graph.var_checks(start) {
            count[c] -= 1;
        }
        set.pop();
        if !complete {
            break;
        }
    }
    let sets = found
        .into_iter()
        .map(|s: Vec<usize>| NodeSet::new(s, graph.n(), NodeRole::Candidate))
        .collect::<Result<Vec<_>>>()?;
    Ok((sets, complete))
}

#[allow(clippy::too_many_arguments)]
fn grow(
    graph: &TannerGraph,
    min: usize,
    max_size: usize,
    budget: u64,
    expanded: &mut u64,
    set: &mut Vec<usize>,
    count: &mut [u8],
    found: &mut BTreeSet<Vec<usize>>,
) -> bool {
    *expanded += 1;
    if *expanded > budget {
        return false;
    }
    let dangling = set
        .iter()
        .flat_map(|&v| graph.var_checks(v).iter().copied())
        .find(|&c| count[c] == 1);
    let Some(c) = dangling else {
        let mut s = set.clone();
        s.sort_unstable();
        found.insert(s);
        return true;
    };
    if set.len() == max_size {
        return true;
    }
    for &u in graph.check_vars(c) {
        if u <= min || set.contains(&u) {
            continue;
        }
        set.push(u);
        for &cc in graph.var_checks(u) {
            count[cc] += 1;
        }
        let ok = grow(graph, min, max_size, budget, expanded, set, count, found);
        for &cc in graph.var_checks(u) {
            count[cc] -= 1;
        }
        set.pop();
        if !ok {
            return false;
        }
    }
    true
}

/// Connected variable sets (two variables are adjacent when they share a
/// check) of exactly `size` nodes with at most `max_odd` odd-degree checks.
///
/// Enumerates each connected set once. Stops after `limit` sets are returned.
pub fn trapping_candidates(
    graph: &TannerGraph,
    size: usize,
    max_odd: usize,
    limit: usize,
) -> Vec<Vec<usize>> {
    let adj: Vec<Vec<usize>> = (0..graph.n()).map(|v| var_neighbors(graph, v)).collect();
    let mut out = Vec::new();
    if size == 0 {
        return out;
    }
    let mut odd = vec![0u8; graph.m()];
    for v in 0..graph.n() {
        let ext: Vec<usize> = adj[v].iter().copied().filter(|&u| u > v).collect();
        let mut sub = vec![v];
        toggle(graph, v, &mut odd);
        extend(graph, &adj, v, size, max_odd, limit, &mut sub, ext, &mut odd, &mut out);
        toggle(graph, v, &mut odd);
        if out.len() >= limit {
            break;
        }
    }
    out
}

/// Heuristic search for connected sets of `size` variables with few
/// odd-degree checks: a beam of width `beam` grown from every variable,
/// always keeping the extensions with the fewest odd checks. Returns
/// distinct sets sorted by odd-check count, then lexicographically.
pub fn low_odd_sets(graph: &TannerGraph, size: usize, beam: usize) -> Vec<(usize, Vec<usize>)> {
    let mut all = BTreeSet::new();
    if size == 0 || beam == 0 {
        return Vec::new();
    }
    let adj: Vec<Vec<usize>> = (0..graph.n()).map(|v| var_neighbors(graph, v)).collect();
    for start in 0..graph.n() {
        let mut frontier = vec![vec![start]];
        for _ in 1..size {
            let mut next = BTreeSet::new();
            for set in &frontier {
                for &v in set {
                    for &u in &adj[v] {
                        if set.binary_search(&u).is_ok() {
                            continue;
                        }
                        let mut s = set.clone();
                        s.insert(s.binary_search(&u).unwrap_err(), u);
                        next.insert((odd_checks(graph, &s), s));
                    }
                }
            }
            frontier = next.into_iter().take(beam).map(|(_, s)| s).collect();
        }
        for s in frontier {
            all.insert((odd_checks(graph, &s), s));
        }
    }
    all.into_iter().collect()
}

fn toggle(graph: &TannerGraph, v: usize, odd: &mut [u8]) {
    for &c in graph.var_checks(v) {
        odd[c] ^= 1;
    }
}

// ESU enumeration: each connected set is produced from its smallest vertex
// through exclusive-neighbourhood extension.
#[allow(clippy::too_many_arguments)]
fn extend(
    graph: &TannerGraph,
    adj: &[Vec<usize>],
    root: usize,
    size: usize,
    max_odd: usize,
    limit: usize,
    sub: &mut Vec<usize>,
    mut ext: Vec<usize>,
    odd: &mut [u8],
    out: &mut Vec<Vec<usize>>,
) {
    if sub.len() == size {
        let odd_count = sub
            .iter()
            .flat_map(|&v| graph.var_checks(v).iter())
            .filter(|&&c| odd[c] == 1)
            .collect::<BTreeSet<_>>()
            .len();
        if odd_count <= max_odd {
            let mut s = sub.clone();
            s.sort_unstable();
            out.push(s);
        }
        return;
    }
    while let Some(w) = ext.pop() {
        if out.len() >= limit {
            return;
        }
        let mut next = ext.clone();
        for &u in &adj[w] {
            if u <= root || sub.contains(&u) || next.contains(&u) {
                continue;
            }
            // Exclusive: not adjacent to anything already in the set.
            if sub.iter().any(|&s| adj[s].binary_search(&u).is_ok()) {
                continue;
            }
            next.push(u);
        }
        sub.push(w);
        toggle(graph, w, odd);
        extend(graph, adj, root, size, max_odd, limit, sub, next, odd, out);
        toggle(graph, w, odd);
        sub.pop();
    }
}
