//! Floating-point sum-product decoder, used as a baseline.

use crate::error::{Error, Result};
use crate::faid::DecodeOutcome;
use crate::graph::TannerGraph;

const TANH_LIMIT: f64 = 1.0 - 1e-15;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bp {
    pub max_iter: usize,
}

impl Bp {
    pub fn new(max_iter: usize) -> Result<Self> {
        if max_iter == 0 {
            return Err(Error::InvalidArgument("max_iter must be at least 1".into()));
        }
        Ok(Bp { max_iter })
    }

    pub fn decode(&self, graph: &TannerGraph, alpha: f64, received: &[u8]) -> Result<DecodeOutcome> {
        bp_decode(graph, alpha, received, self.max_iter)
    }
}

/// Flooding sum-product with channel LLR `±ln((1 - alpha) / alpha)`.
pub fn bp_decode(
    graph: &TannerGraph,
    alpha: f64,
    received: &[u8],
    max_iter: usize,
) -> Result<DecodeOutcome> {
    if !(alpha > 0.0 && alpha < 0.5) {
        return Err(Error::InvalidArgument(format!(
            "belief propagation needs 0 < alpha < 0.5, got {alpha}"
        )));
    }
    graph.check_len(received.len())?;
    let llr = ((1.0 - alpha) / alpha).ln();
    let channel: Vec<f64> = received.iter().map(|&b| if b == 0 { llr } else { -llr }).collect();
    let mut bits = received.to_vec();
    let done = |bits: &[u8], it| DecodeOutcome {
        converged: true,
        bits: bits.to_vec(),
        iterations: it,
        trace: Vec::new(),
    };
    if graph.is_codeword(&bits) {
        return Ok(done(&bits, 0));
    }
    let mut v2c: Vec<f64> = (0..graph.num_edges()).map(|e| channel[graph.edge_var(e)]).collect();
    let mut c2v = vec![0.0f64; graph.num_edges()];
    let mut t = Vec::new();
    let mut prefix = Vec::new();
    for it in 1..=max_iter {
        for c in 0..graph.m() {
            let edges = graph.check_edges(c);
            t.clear();
            t.extend(edges.iter().map(|&e| (v2c[e] / 2.0).tanh()));
            // Leave-one-out products without division.
            prefix.clear();
            let mut acc = 1.0;
            for &x in &t {
                prefix.push(acc);
                acc *= x;
            }
            let mut suffix = 1.0;
            for k in (0..edges.len()).rev() {
                let p = (prefix[k] * suffix).clamp(-TANH_LIMIT, TANH_LIMIT);
                c2v[edges[k]] = 2.0 * p.atanh();
                suffix *= t[k];
            }
        }
        for v in 0..graph.n() {
            let total: f64 = channel[v] + graph.var_edges(v).map(|e| c2v[e]).sum::<f64>();
            bits[v] = u8::from(total < 0.0);
            for e in graph.var_edges(v) {
                v2c[e] = total - c2v[e];
            }
        }
        if graph.is_codeword(&bits) {
            return Ok(done(&bits, it));
        }
    }
    Ok(DecodeOutcome {
        converged: false,
        bits,
        iterations: max_iter,
        trace: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tanner() -> TannerGraph {
        crate::graph::parse_alist(include_str!("../../../../fixtures/tanner_155_64.alist")).unwrap()
    }

    #[test]
    fn zero_errors() {
        let g = tanner();
        let out = bp_decode(&g, 0.01, &vec![0; g.n()], 100).unwrap();
        assert!(out.converged && out.iterations <= 1);
    }

    #[test]
    fn corrects_every_single_error() {
        let g = tanner();
        for v in 0..g.n() {
            let mut r = vec![0; g.n()];
            r[v] = 1;
            let out = bp_decode(&g, 0.02, &r, 100).unwrap();
            assert!(out.converged && out.bits.iter().all(|&b| b == 0), "v = {v}");
        }
    }

    #[test]
    fn degenerate_alpha() {
        let g = tanner();
        let r = vec![0; g.n()];
        assert!(bp_decode(&g, 0.0, &r, 10).is_err());
        assert!(bp_decode(&g, 0.5, &r, 10).is_err());
        assert!(Bp::new(0).is_err());
    }
}
