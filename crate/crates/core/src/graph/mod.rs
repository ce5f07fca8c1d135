//! Tanner graphs, variable-node sets and stopping-set machinery.

mod alist;
pub mod search;

use std::collections::VecDeque;
use std::fmt;
use std::ops::Range;

pub use alist::{parse_alist, write_alist};

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

/// Bipartite variable/check graph of a binary LDPC code.
///
/// Edges are numbered variable-major: the edges of variable `v` are
/// `var_edges(v)`, in increasing check order. Message arrays in the decoders
/// are indexed by these edge ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TannerGraph {
    n: usize,
    m: usize,
    var_adj: Vec<Vec<usize>>,
    chk_adj: Vec<Vec<usize>>,
    var_edge_start: Vec<usize>,
    chk_edge_start: Vec<usize>,
    chk_edge_ids: Vec<usize>,
    edge_var: Vec<usize>,
    edge_chk: Vec<usize>,
}

impl TannerGraph {
    /// Builds a graph from `(variable, check)` pairs.
    pub fn from_edges(
        n: usize,
        m: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut var_adj = vec![Vec::new(); n];
        for (v, c) in edges {
            if v >= n || c >= m {
                return Err(Error::InvalidArgument(format!(
                    "edge ({v}, {c}) outside a {n}x{m} graph"
                )));
            }
            var_adj[v].push(c);
        }
        for (v, adj) in var_adj.iter_mut().enumerate() {
            adj.sort_unstable();
            if adj.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidArgument(format!(
                    "repeated edge at variable {v}"
                )));
            }
        }
        let mut chk_adj = vec![Vec::new(); m];
        let mut var_edge_start = Vec::with_capacity(n + 1);
        let mut edge_var = Vec::new();
        let mut edge_chk = Vec::new();
        let mut chk_edges = vec![Vec::new(); m];
        for (v, adj) in var_adj.iter().enumerate() {
            var_edge_start.push(edge_var.len());
            for &c in adj {
                chk_adj[c].push(v);
                chk_edges[c].push(edge_var.len());
                edge_var.push(v);
                edge_chk.push(c);
            }
        }
        var_edge_start.push(edge_var.len());
        let mut chk_edge_start = Vec::with_capacity(m + 1);
        let mut chk_edge_ids = Vec::with_capacity(edge_var.len());
        for ids in chk_edges {
            chk_edge_start.push(chk_edge_ids.len());
            chk_edge_ids.extend(ids);
        }
        chk_edge_start.push(chk_edge_ids.len());
        Ok(TannerGraph {
            n,
            m,
            var_adj,
            chk_adj,
            var_edge_start,
            chk_edge_start,
            chk_edge_ids,
            edge_var,
            edge_chk,
        })
    }

    /// Number of variable nodes.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of check nodes.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn num_edges(&self) -> usize {
        self.edge_var.len()
    }

    pub fn var_checks(&self, v: usize) -> &[usize] {
        &self.var_adj[v]
    }

    pub fn check_vars(&self, c: usize) -> &[usize] {
        &self.chk_adj[c]
    }

    pub fn var_degree(&self, v: usize) -> usize {
        self.var_adj[v].len()
    }

    pub fn check_degree(&self, c: usize) -> usize {
        self.chk_adj[c].len()
    }

    pub fn var_edges(&self, v: usize) -> Range<usize> {
        self.var_edge_start[v]..self.var_edge_start[v + 1]
    }

    /// Edge ids of check `c`, ordered like `check_vars(c)`.
    pub fn check_edges(&self, c: usize) -> &[usize] {
        &self.chk_edge_ids[self.chk_edge_start[c]..self.chk_edge_start[c + 1]]
    }

    pub fn edge_var(&self, e: usize) -> usize {
        self.edge_var[e]
    }

    pub fn edge_check(&self, e: usize) -> usize {
        self.edge_chk[e]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edge_var.iter().copied().zip(self.edge_chk.iter().copied())
    }

    /// `Some(d)` if every variable has degree `d`.
    pub fn var_regularity(&self) -> Option<usize> {
        regular(self.var_adj.iter().map(Vec::len))
    }

    /// `Some(d)` if every check has degree `d`.
    pub fn check_regularity(&self) -> Option<usize> {
        regular(self.chk_adj.iter().map(Vec::len))
    }

    /// Fails unless every variable node has degree 3.
    pub fn require_column_weight_three(&self) -> Result<()> {
        match (0..self.n).find(|&v| self.var_degree(v) != 3) {
            None => Ok(()),
            Some(v) => Err(Error::UnsupportedGraph(format!(
                "variable {v} has degree {}, decoders need degree 3",
                self.var_degree(v)
            ))),
        }
    }

    pub fn parity_matrix(&self) -> BitMatrix {
        let mut h = BitMatrix::zeros(self.m, self.n);
        for (v, c) in self.edges() {
            h.set(c, v, true);
        }
        h
    }

    /// Per-check XOR of the incident bits.
    pub fn syndrome(&self, bits: &[u8]) -> Result<Vec<u8>> {
        self.check_len(bits.len())?;
        Ok(self
            .chk_adj
            .iter()
            .map(|vs| vs.iter().fold(0u8, |acc, &v| acc ^ (bits[v] & 1)))
            .collect())
    }

    /// True iff the syndrome of `bits` is zero. `bits` must have length `n`.
    pub fn is_codeword(&self, bits: &[u8]) -> bool {
        self.chk_adj
            .iter()
            .all(|vs| vs.iter().fold(0u8, |acc, &v| acc ^ bits[v]) == 0)
    }

    pub(crate) fn check_len(&self, len: usize) -> Result<()> {
        if len != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                actual: len,
            });
        }
        Ok(())
    }

    /// Length of the shortest cycle, `None` when the graph is a forest.
    pub fn girth(&self) -> Option<usize> {
        // Nodes 0..n are variables, n..n+m are checks.
        let total = self.n + self.m;
        let neighbors = |u: usize| -> Box<dyn Iterator<Item = usize> + '_> {
            if u < self.n {
                Box::new(self.var_adj[u].iter().map(move |&c| c + self.n))
            } else {
                Box::new(self.chk_adj[u - self.n].iter().copied())
            }
        };
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; total];
        let mut parent = vec![usize::MAX; total];
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[s] = 0;
            parent[s] = usize::MAX;
            queue.clear();
            queue.push_back(s);
            'bfs: while let Some(u) = queue.pop_front() {
                if let Some(b) = best {
                    if 2 * dist[u] + 1 >= b {
                        break 'bfs;
                    }
                }
                for w in neighbors(u) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }
}

fn regular(mut degrees: impl Iterator<Item = usize>) -> Option<usize> {
    let first = degrees.next()?;
    degrees.all(|d| d == first).then_some(first)
}

/// Hamming weight of a bit vector.
pub fn weight(bits: &[u8]) -> usize {
    bits.iter().filter(|&&b| b != 0).count()
}

/// What a [`NodeSet`] describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeRole {
    ErrorSupport,
    Decimated,
    Residual,
    Candidate,
}

/// Sorted, duplicate-free set of variable-node indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NodeSet {
    indices: Vec<usize>,
    role: NodeRole,
}

impl NodeSet {
    pub fn new(mut indices: Vec<usize>, n: usize, role: NodeRole) -> Result<Self> {
        indices.sort_unstable();
        if let Some(w) = indices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument(format!(
                "variable {} listed twice",
                w[0]
            )));
        }
        if let Some(&bad) = indices.iter().find(|&&i| i >= n) {
            return Err(Error::InvalidArgument(format!(
                "variable {bad} out of range for n = {n}"
            )));
        }
        Ok(NodeSet { indices, role })
    }

    /// Support of a bit vector.
    pub fn support(bits: &[u8], role: NodeRole) -> Self {
        NodeSet {
            indices: bits
                .iter()
                .enumerate()
                .filter(|(_, &b)| b != 0)
                .map(|(i, _)| i)
                .collect(),
            role,
        }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn role(&self) -> NodeRole {
        self.role
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.indices.binary_search(&v).is_ok()
    }
}

impl fmt::Display for NodeSet {
    /// Whitespace-separated 0-based indices, the node-set file line format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Parses a node-set file: one set per line, whitespace-separated 0-based
/// indices. Blank lines and `#` comments are skipped.
pub fn parse_node_sets(text: &str, n: usize) -> Result<Vec<NodeSet>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let idx = line
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::parse(i + 1, format!("not an index: {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(
            NodeSet::new(idx, n, NodeRole::Candidate)
                .map_err(|e| Error::parse(i + 1, e.to_string()))?,
        );
    }
    Ok(out)
}

/// True iff every check adjacent to `set` has at least two neighbours in it.
/// The empty set is a stopping set.
pub fn is_stopping_set(graph: &TannerGraph, set: &[usize]) -> bool {
    let mut count = vec![0u8; graph.m()];
    for &v in set {
        for &c in graph.var_checks(v) {
            count[c] = count[c].saturating_add(1);
        }
    }
    !count.contains(&1)
}

/// Subgraph induced by a variable set `P` together with its check
/// neighbourhood `W = N(P)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    /// Global indices of `P`, sorted.
    pub vars: Vec<usize>,
    /// Global indices of `W`, sorted.
    pub checks: Vec<usize>,
    /// Local check indices adjacent to each local variable.
    pub var_adj: Vec<Vec<usize>>,
    /// Local variable indices adjacent to each local check.
    pub chk_adj: Vec<Vec<usize>>,
    /// Number of neighbours of each local check outside `P`.
    pub boundary: Vec<usize>,
}

impl Subgraph {
    /// Stopping-set test using only the subgraph's own edges.
    pub fn is_stopping_set(&self) -> bool {
        self.chk_adj.iter().all(|vs| vs.len() != 1)
    }

    /// The subgraph as a standalone graph on local indices.
    pub fn to_graph(&self) -> TannerGraph {
        let edges = self
            .var_adj
            .iter()
            .enumerate()
            .flat_map(|(v, cs)| cs.iter().map(move |&c| (v, c)));
        TannerGraph::from_edges(self.vars.len(), self.checks.len(), edges)
            .expect("subgraph edges are valid by construction")
    }

    pub fn boundary_edges(&self) -> usize {
        self.boundary.iter().sum()
    }
}

pub fn induced_subgraph(graph: &TannerGraph, set: &[usize]) -> Result<Subgraph> {
    if set.is_empty() {
        return Err(Error::InvalidArgument("induced subgraph of an empty set".into()));
    }
    let vars = NodeSet::new(set.to_vec(), graph.n(), NodeRole::Candidate)?.indices;
    let mut local_var = vec![usize::MAX; graph.n()];
    for (i, &v) in vars.iter().enumerate() {
        local_var[v] = i;
    }
    let mut checks: Vec<usize> = vars
        .iter()
        .flat_map(|&v| graph.var_checks(v).iter().copied())
        .collect();
    checks.sort_unstable();
    checks.dedup();
    let mut local_chk = vec![usize::MAX; graph.m()];
    for (i, &c) in checks.iter().enumerate() {
        local_chk[c] = i;
    }
    let var_adj = vars
        .iter()
        .map(|&v| graph.var_checks(v).iter().map(|&c| local_chk[c]).collect())
        .collect();
    let chk_adj: Vec<Vec<usize>> = checks
        .iter()
        .map(|&c| {
            graph
                .check_vars(c)
                .iter()
                .filter(|&&v| local_var[v] != usize::MAX)
                .map(|&v| local_var[v])
                .collect()
        })
        .collect();
    let boundary = checks
        .iter()
        .zip(&chk_adj)
        .map(|(&c, inside)| graph.check_degree(c) - inside.len())
        .collect();
    Ok(Subgraph {
        vars,
        checks,
        var_adj,
        chk_adj,
        boundary,
    })
}

/// Expected code parameters; `None` skips the corresponding check.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CodeExpectation {
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub dv: Option<usize>,
    pub dc: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeReport {
    pub n: usize,
    pub m: usize,
    pub rank: usize,
    /// Code dimension `n - rank`.
    pub k: usize,
    pub var_regularity: Option<usize>,
    pub check_regularity: Option<usize>,
    /// `None` means the graph has no cycle.
    pub girth: Option<usize>,
    pub failures: Vec<String>,
}

impl CodeReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for CodeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let deg = |d: Option<usize>| d.map_or("irregular".to_string(), |d| d.to_string());
        writeln!(f, "n = {}, m = {}", self.n, self.m)?;
        writeln!(f, "rank = {}, k = {}", self.rank, self.k)?;
        writeln!(
            f,
            "variable degree = {}, check degree = {}",
            deg(self.var_regularity),
            deg(self.check_regularity)
        )?;
        writeln!(
            f,
            "girth = {}",
            self.girth.map_or("infinite".to_string(), |g| g.to_string())
        )?;
        for fail in &self.failures {
            writeln!(f, "FAIL: {fail}")?;
        }
        Ok(())
    }
}

/// Structural report: regularity, GF(2) rank and girth.
pub fn validate_code(graph: &TannerGraph, expected: &CodeExpectation) -> CodeReport {
    let rank = graph.parity_matrix().rank();
    let mut report = CodeReport {
        n: graph.n(),
        m: graph.m(),
        rank,
        k: graph.n() - rank,
        var_regularity: graph.var_regularity(),
        check_regularity: graph.check_regularity(),
        girth: graph.girth(),
        failures: Vec::new(),
    };
    if let Some(n) = expected.n {
        if n != report.n {
            report.failures.push(format!("n = {}, expected {n}", report.n));
        }
    }
    if let Some(k) = expected.k {
        if k != report.k {
            report.failures.push(format!("k = {}, expected {k}", report.k));
        }
    }
    if let Some(dv) = expected.dv {
        if report.var_regularity != Some(dv) {
            report
                .failures
                .push(format!("variable degrees are not all {dv}"));
        }
    }
    if let Some(dc) = expected.dc {
        if report.check_regularity != Some(dc) {
            report.failures.push(format!("check degrees are not all {dc}"));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> TannerGraph {
        TannerGraph::from_edges(3, 2, [(0, 0), (1, 0), (1, 1), (2, 1)]).unwrap()
    }

    #[test]
    fn adjacency_consistent() {
        let g = toy();
        for (e, (v, c)) in g.edges().enumerate() {
            assert!(g.var_edges(v).contains(&e));
            assert!(g.check_edges(c).contains(&e));
            assert!(g.check_vars(c).contains(&v));
        }
        assert!(TannerGraph::from_edges(2, 1, [(0, 0), (0, 0)]).is_err());
        assert!(TannerGraph::from_edges(2, 1, [(2, 0)]).is_err());
    }

    #[test]
    fn girth_of_forest_and_cycle() {
        assert_eq!(toy().girth(), None);
        let single = TannerGraph::from_edges(1, 3, [(0, 0), (0, 1), (0, 2)]).unwrap();
        assert_eq!(single.girth(), None);
        // Two variables sharing two checks: a 4-cycle.
        let c4 = TannerGraph::from_edges(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        assert_eq!(c4.girth(), Some(4));
    }

    #[test]
    fn stopping_set_basics() {
        let g = TannerGraph::from_edges(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        assert!(is_stopping_set(&g, &[]));
        assert!(!is_stopping_set(&g, &[0]));
        assert!(is_stopping_set(&g, &[0, 1]));
    }

    #[test]
    fn syndrome_and_weight() {
        let g = toy();
        assert_eq!(g.syndrome(&[0, 0, 0]).unwrap(), vec![0, 0]);
        assert_eq!(g.syndrome(&[0, 1, 0]).unwrap(), vec![1, 1]);
        assert!(g.syndrome(&[0, 1]).is_err());
        assert_eq!(weight(&[1, 0, 1]), 2);
    }

    #[test]
    fn induced_subgraph_whole_and_single() {
        let g = toy();
        let all = induced_subgraph(&g, &[0, 1, 2]).unwrap();
        assert_eq!(all.boundary_edges(), 0);
        assert_eq!(all.to_graph(), g);
        let one = induced_subgraph(&g, &[1]).unwrap();
        assert_eq!(one.checks, vec![0, 1]);
        assert_eq!(one.boundary, vec![1, 1]);
        assert!(induced_subgraph(&g, &[]).is_err());
    }

    #[test]
    fn node_set_parsing() {
        let sets = parse_node_sets("3 1 2\n# comment\n\n0\n", 5).unwrap();
        assert_eq!(sets[0].indices(), &[1, 2, 3]);
        assert_eq!(sets[1].to_string(), "0");
        assert!(matches!(
            parse_node_sets("1 1\n", 5),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(parse_node_sets("0\n9\n", 5).is_err());
    }
}
