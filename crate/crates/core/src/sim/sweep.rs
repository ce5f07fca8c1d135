//! Frame error rate sweeps over the crossover probability.
//!
//! Frames are decoded in fixed-size batches in frame order and counted
//! strictly in that order, so a sweep stops at the same frame whatever the
//! number of workers.

use std::fmt::Write;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use super::channel::{bsc_sample, check_alpha, frame_rng};
use super::decoder::{FrameDecoder, FrameResult};
use crate::analysis::FailureRecord;
use crate::decimation::Monitors;
use crate::error::{Error, Result};
use crate::graph::{write_alist, TannerGraph};

/// Frames decoded per parallel batch.
pub const BATCH: u64 = 256;

pub const CSV_HEADER: &str = "alpha,frames,frame_errors,bit_errors,fer,ber,mean_iters,mean_rule_index";

#[derive(Clone, Debug, PartialEq)]
pub struct SimConfig {
    pub alphas: Vec<f64>,
    /// Frame budget per alpha.
    pub frames: u64,
    /// Stop an alpha point once this many frame errors were seen.
    pub target_errors: u64,
    pub seed: u64,
    /// Worker threads; does not affect results.
    pub workers: usize,
    /// Classify failures and collect them in the report.
    pub classify: bool,
}

impl SimConfig {
    pub fn new(alphas: Vec<f64>, frames: u64, seed: u64) -> Self {
        SimConfig {
            alphas,
            frames,
            target_errors: 100,
            seed,
            workers: 1,
            classify: true,
        }
    }

    fn check(&self) -> Result<()> {
        if self.alphas.is_empty() {
            return Err(Error::InvalidArgument("no alpha values given".into()));
        }
        for &a in &self.alphas {
            check_alpha(a)?;
        }
        if self.workers == 0 {
            return Err(Error::InvalidArgument("workers must be at least 1".into()));
        }
        if self.frames == 0 || self.target_errors == 0 {
            return Err(Error::InvalidArgument("frames and target errors must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub alpha: f64,
    pub frames: u64,
    pub frame_errors: u64,
    pub bit_errors: u64,
    pub fer: f64,
    pub ber: f64,
    pub mean_iters: f64,
    /// Mean final rule index; adaptive decoder only.
    pub mean_rule_index: Option<f64>,
}

impl SweepRow {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.alpha,
            self.frames,
            self.frame_errors,
            self.bit_errors,
            self.fer,
            self.ber,
            self.mean_iters,
            self.mean_rule_index.map(|x| x.to_string()).unwrap_or_default()
        )
    }

    /// 95% Wilson score interval for the frame error rate.
    pub fn fer_interval(&self) -> (f64, f64) {
        wilson_interval(self.frame_errors, self.frames)
    }
}

pub fn wilson_interval(errors: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959_963_984_540_054;
    let n = trials as f64;
    let p = errors as f64 / n;
    let denom = 1.0 + z * z / n;
    let centre = (p + z * z / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

#[derive(Clone, Debug, PartialEq)]
pub struct FailureEntry {
    pub alpha: f64,
    pub frame: u64,
    pub record: FailureRecord,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepReport {
    pub decoder: String,
    pub seed: u64,
    pub config_hash: String,
    pub rows: Vec<SweepRow>,
    pub failures: Vec<FailureEntry>,
    pub monitors: Monitors,
}

impl SweepReport {
    pub fn csv(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# decoder: {}", self.decoder);
        let _ = writeln!(s, "# seed: {}", self.seed);
        let _ = writeln!(s, "# config-hash: {}", self.config_hash);
        let _ = writeln!(s, "{CSV_HEADER}");
        for r in &self.rows {
            let _ = writeln!(s, "{}", r.csv_line());
        }
        s
    }

    /// One line per failed frame: `alpha=.. frame=.. support=.. j=.. ...`.
    pub fn failure_log(&self) -> String {
        let mut s = String::new();
        for f in &self.failures {
            let _ = writeln!(s, "alpha={} frame={} {}", f.alpha, f.frame, f.record);
        }
        s
    }
}

/// Reads back `(alpha, frame, support)` from a failure log.
pub fn parse_failure_log(text: &str) -> Result<Vec<(f64, u64, Vec<usize>)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let field = |key: &str| {
            line.split_whitespace()
                .find_map(|t| t.strip_prefix(key))
                .ok_or_else(|| Error::parse(i + 1, format!("missing `{key}`")))
        };
        let bad = |what: &str| Error::parse(i + 1, format!("bad {what}"));
        let alpha = field("alpha=")?.parse().map_err(|_| bad("alpha"))?;
        let frame = field("frame=")?.parse().map_err(|_| bad("frame"))?;
        let support = field("support=")?
            .split(',')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse().map_err(|_| bad("support")))
            .collect::<Result<Vec<usize>>>()?;
        out.push((alpha, frame, support));
    }
    Ok(out)
}

/// SHA-256 over the code, the decoder identity and every result-affecting
/// setting. Worker count and output paths are excluded.
pub fn config_hash(graph: &TannerGraph, decoder: &FrameDecoder, config: &SimConfig) -> String {
    let mut h = Sha256::new();
    h.update(write_alist(graph));
    h.update(format!(
        "decoder={decoder}\nalphas={:?}\nframes={}\ntarget_errors={}\nseed={}\nbatch={BATCH}\n",
        config.alphas, config.frames, config.target_errors, config.seed
    ));
    hex::encode(h.finalize())
}

/// Error pattern of frame `frame` at `alpha`.
pub fn frame_pattern(n: usize, alpha: f64, seed: u64, frame: u64) -> Result<Vec<u8>> {
    bsc_sample(n, alpha, &mut frame_rng(seed, alpha.to_bits(), frame))
}

pub fn fer_sweep(graph: &TannerGraph, decoder: &FrameDecoder, config: &SimConfig) -> Result<SweepReport> {
    config.check()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let mut report = SweepReport {
        decoder: decoder.to_string(),
        seed: config.seed,
        config_hash: config_hash(graph, decoder, config),
        rows: Vec::new(),
        failures: Vec::new(),
        monitors: Monitors::default(),
    };
    for &alpha in &config.alphas {
        let (mut frames, mut errors, mut bits, mut iters, mut rules) = (0u64, 0u64, 0u64, 0u64, 0u64);
        'point: while frames < config.frames && errors < config.target_errors {
            let end = (frames + BATCH).min(config.frames);
            let batch: Vec<FrameResult> = pool.install(|| {
                (frames..end)
                    .into_par_iter()
                    .map(|f| {
                        let r = frame_pattern(graph.n(), alpha, config.seed, f)?;
                        decoder.decode_frame(graph, alpha, &r, config.classify)
                    })
                    .collect::<Result<_>>()
            })?;
            for res in batch {
                let f = frames;
                frames += 1;
                iters += res.iterations as u64;
                rules += res.rule_index.unwrap_or(0) as u64;
                report.monitors.merge(&res.monitors);
                if res.frame_error {
                    errors += 1;
                    bits += res.bit_errors as u64;
                    if let Some(record) = res.record {
                        report.failures.push(FailureEntry { alpha, frame: f, record });
                    }
                    if errors == config.target_errors {
                        break 'point;
                    }
                }
            }
        }
        let nf = frames as f64;
        report.rows.push(SweepRow {
            alpha,
            frames,
            frame_errors: errors,
            bit_errors: bits,
            fer: errors as f64 / nf,
            ber: bits as f64 / (nf * graph.n() as f64),
            mean_iters: iters as f64 / nf,
            mean_rule_index: matches!(decoder, FrameDecoder::Adfaid(_)).then(|| rules as f64 / nf),
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    fn tanner() -> TannerGraph {
        crate::graph::parse_alist(include_str!("../../../../fixtures/tanner_155_64.alist")).unwrap()
    }

    #[test]
    fn zero_alpha_has_no_errors() {
        let g = tanner();
        for d in [
            FrameDecoder::faid(presets::faid_rule(), 100).unwrap(),
            FrameDecoder::adfaid(presets::tanner_adfaid()).unwrap(),
            FrameDecoder::bp(100).unwrap(),
        ] {
            let rep = fer_sweep(&g, &d, &SimConfig::new(vec![0.0], 300, 1)).unwrap();
            assert_eq!(rep.rows[0].frames, 300);
            assert_eq!(rep.rows[0].frame_errors, 0);
            assert_eq!(rep.rows[0].fer, 0.0);
        }
    }

    #[test]
    fn stops_exactly_at_target_and_is_worker_independent() {
        let g = tanner();
        let d = FrameDecoder::faid(presets::faid_rule(), 100).unwrap();
        let mut cfg = SimConfig::new(vec![0.06], 100_000, 3);
        cfg.target_errors = 10;
        let a = fer_sweep(&g, &d, &cfg).unwrap();
        cfg.workers = 3;
        let b = fer_sweep(&g, &d, &cfg).unwrap();
        assert_eq!(a.rows[0].frame_errors, 10);
        assert_eq!(a.failures.len(), 10);
        assert_eq!(a.csv(), b.csv());
        assert_eq!(a.failure_log(), b.failure_log());
        let row = &a.rows[0];
        assert_eq!(row.fer * row.frames as f64, row.frame_errors as f64);
        assert!(a.csv().lines().nth(3) == Some(CSV_HEADER));
    }

    #[test]
    fn failure_log_round_trips() {
        let g = tanner();
        let d = FrameDecoder::adfaid(presets::tanner_adfaid()).unwrap();
        let mut cfg = SimConfig::new(vec![0.08], 2_000, 5);
        cfg.target_errors = 3;
        let rep = fer_sweep(&g, &d, &cfg).unwrap();
        let parsed = parse_failure_log(&rep.failure_log()).unwrap();
        assert_eq!(parsed.len(), rep.failures.len());
        for ((alpha, frame, support), e) in parsed.iter().zip(&rep.failures) {
            assert_eq!((*alpha, *frame), (e.alpha, e.frame));
            assert_eq!(support, &e.record.support);
            let r = frame_pattern(g.n(), *alpha, 5, *frame).unwrap();
            let s: Vec<usize> = (0..g.n()).filter(|&v| r[v] == 1).collect();
            assert_eq!(&s, support);
        }
        assert!(rep.rows[0].mean_rule_index.is_some());
    }

    #[test]
    fn hash_ignores_workers() {
        let g = tanner();
        let d = FrameDecoder::bp(100).unwrap();
        let mut cfg = SimConfig::new(vec![0.01], 10, 1);
        let a = config_hash(&g, &d, &cfg);
        cfg.workers = 8;
        assert_eq!(a, config_hash(&g, &d, &cfg));
        cfg.seed = 2;
        assert_ne!(a, config_hash(&g, &d, &cfg));
    }

    #[test]
    fn wilson_contains_estimate() {
        let (lo, hi) = wilson_interval(100, 10_000);
        assert!(lo < 0.01 && 0.01 < hi);
        assert_eq!(wilson_interval(0, 10).0, 0.0);
    }
}
