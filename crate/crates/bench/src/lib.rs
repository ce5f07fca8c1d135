//! Shared inputs for the decoder benchmarks.

use faid_core::sim::patterns::{sample_support, to_bits};
use faid_core::{parse_alist, TannerGraph};

pub fn tanner() -> TannerGraph {
    parse_alist(include_str!("../../../fixtures/tanner_155_64.alist")).expect("fixture parses")
}

/// `count` received words with `weight` errors each, fixed by `seed`.
pub fn patterns(graph: &TannerGraph, weight: usize, count: u64, seed: u64) -> Vec<Vec<u8>> {
    (0..count)
        .map(|i| to_bits(graph.n(), &sample_support(graph.n(), weight, seed, i)))
        .collect()
}

#[cfg(test)]
mod tests {
    #[test]
    fn patterns_have_weight() {
        let g = super::tanner();
        let p = super::patterns(&g, 6, 10, 1);
        assert!(p.iter().all(|r| r.iter().filter(|&&b| b == 1).count() == 6));
    }
}
