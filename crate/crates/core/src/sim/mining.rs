//! Searches for low-weight error patterns on which a decoder fails.
//!
//! Candidates are drawn first from connected variable sets with few
//! odd-degree checks (the usual trapping-set shapes, found by a beam
//! search), then from subsets of slightly larger such sets, then uniformly
//! at random.

use itertools::Itertools;

use super::bp::bp_decode;
use super::decoder::FrameDecoder;
use super::patterns::{sample_support, to_bits};
use crate::analysis::FailureRecord;
use crate::error::Result;
use crate::faid::Faid;
use crate::graph::search::low_odd_sets;
use crate::graph::TannerGraph;

const BEAM: usize = 24;

/// Where a candidate support came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Trapping,
    Subset,
    Uniform,
}

/// Candidate supports of exactly `weight` nodes, at most `budget` of them.
pub fn candidates(
    graph: &TannerGraph,
    weight: usize,
    max_odd: usize,
    seed: u64,
    budget: u64,
) -> impl Iterator<Item = (Vec<usize>, Source)> + '_ {
    let direct: Vec<Vec<usize>> = low_odd_sets(graph, weight, BEAM)
        .into_iter()
        .filter(|(odd, _)| *odd <= max_odd)
        .map(|(_, s)| s)
        .collect();
    let larger: Vec<Vec<usize>> = (weight + 1..=weight + 3)
        .flat_map(|s| low_odd_sets(graph, s, BEAM))
        .filter(|(odd, _)| *odd < max_odd)
        .map(|(_, s)| s)
        .collect();
    let subsets = larger
        .into_iter()
        .flat_map(move |set| set.into_iter().combinations(weight));
    let uniform = (0u64..).map(move |i| sample_support(graph.n(), weight, seed, i));
    direct
        .into_iter()
        .map(|s| (s, Source::Trapping))
        .chain(subsets.map(|s| (s, Source::Subset)))
        .chain(uniform.map(|s| (s, Source::Uniform)))
        .take(budget as usize)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BpSeparation {
    pub support: Vec<usize>,
    /// Crossover probability used for the channel LLR when BP failed.
    pub alpha: f64,
    pub source: Source,
    /// Candidates examined, including the hit.
    pub tried: u64,
}

/// Looks for a support of size `weight` on which BP with `bp_iters`
/// iterations fails at one of `alphas` while `faid` decodes it.
pub fn bp_separation_search(
    graph: &TannerGraph,
    faid: &Faid,
    weight: usize,
    alphas: &[f64],
    bp_iters: usize,
    budget: u64,
    seed: u64,
) -> Result<Option<BpSeparation>> {
    for (i, (support, source)) in candidates(graph, weight, 3, seed, budget).enumerate() {
        let tried = i as u64 + 1;
        let r = to_bits(graph.n(), &support);
        for &alpha in alphas {
            let bp = bp_decode(graph, alpha, &r, bp_iters)?;
            if bp.bits.iter().all(|&b| b == 0) {
                continue;
            }
            let f = faid.decode(graph, &r)?;
            if f.converged && f.bits.iter().all(|&b| b == 0) {
                return Ok(Some(BpSeparation {
                    support,
                    alpha,
                    source,
                    tried,
                }));
            }
            break;
        }
    }
    Ok(None)
}

/// Classified failures of `decoder` on supports of weight `min_weight` and
/// above, up to `limit` failures from at most `budget` candidates per weight.
pub fn mine_failures(
    graph: &TannerGraph,
    decoder: &FrameDecoder,
    weights: std::ops::RangeInclusive<usize>,
    budget: u64,
    limit: usize,
    seed: u64,
) -> Result<Vec<FailureRecord>> {
    let mut out = Vec::new();
    for w in weights {
        for (support, _) in candidates(graph, w, 4, seed, budget) {
            let r = to_bits(graph.n(), &support);
            let res = decoder.decode_frame(graph, 0.01, &r, true)?;
            if let Some(rec) = res.record {
                out.push(rec);
                if out.len() >= limit {
                    return Ok(out);
                }
            }
        }
    }
    Ok(out)
}
