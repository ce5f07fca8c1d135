//! Guaranteed-correction checks over fixed-weight error patterns.

use rayon::prelude::*;

use super::decoder::FrameDecoder;
use super::patterns::{enumerate_patterns, pattern_count, to_bits, PatternMode};
use crate::analysis::FailureRecord;
use crate::decimation::Monitors;
use crate::error::{Error, Result};
use crate::graph::TannerGraph;

const CHUNK: usize = 4096;

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub weight: usize,
    pub mode: PatternMode,
    pub decoded: u64,
    /// Every failing support, in enumeration order.
    pub failures: Vec<FailureRecord>,
    pub monitors: Monitors,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Decodes every support yielded by the pattern source under the all-zero
/// codeword. `alpha` only feeds belief propagation.
#[allow(clippy::too_many_arguments)]
pub fn verify_guaranteed(
    graph: &TannerGraph,
    decoder: &FrameDecoder,
    alpha: f64,
    weight: usize,
    mode: PatternMode,
    seed: u64,
    ceiling: u128,
    workers: usize,
) -> Result<VerifyReport> {
    pattern_count(graph.n(), weight, mode, ceiling)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let mut patterns = enumerate_patterns(graph.n(), weight, mode, seed, ceiling)?;
    let mut report = VerifyReport {
        weight,
        mode,
        decoded: 0,
        failures: Vec::new(),
        monitors: Monitors::default(),
    };
    loop {
        let chunk: Vec<Vec<usize>> = patterns.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        let results = pool.install(|| {
            chunk
                .par_iter()
                .map(|s| decoder.decode_frame(graph, alpha, &to_bits(graph.n(), s), true))
                .collect::<Result<Vec<_>>>()
        })?;
        report.decoded += results.len() as u64;
        for r in results {
            report.monitors.merge(&r.monitors);
            if let Some(rec) = r.record {
                report.failures.push(rec);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use crate::sim::patterns::DEFAULT_CEILING;

    #[test]
    fn faid_corrects_all_double_errors() {
        let g = crate::graph::parse_alist(include_str!("../../../../fixtures/tanner_155_64.alist"))
            .unwrap();
        let d = FrameDecoder::faid(presets::faid_rule(), 100).unwrap();
        let rep = verify_guaranteed(&g, &d, 0.01, 2, PatternMode::Exhaustive, 0, DEFAULT_CEILING, 1)
            .unwrap();
        assert_eq!(rep.decoded, 11_935);
        assert!(rep.passed());
    }

    #[test]
    fn reports_failures_of_a_weak_decoder() {
        let g = crate::graph::parse_alist(include_str!("../../../../fixtures/tanner_155_64.alist"))
            .unwrap();
        let d = FrameDecoder::faid(presets::faid_rule(), 1).unwrap();
        let rep = verify_guaranteed(&g, &d, 0.01, 12, PatternMode::Sample(50), 1, 0, 1).unwrap();
        assert_eq!(rep.decoded, 50);
        assert!(!rep.passed());
        assert!(rep.failures.iter().all(|f| f.support.len() == 12));
    }
}
