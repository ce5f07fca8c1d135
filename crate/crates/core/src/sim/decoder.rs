//! Uniform front end over the three decoders for simulation runs.

use std::fmt;
use std::str::FromStr;

use super::bp::Bp;
use crate::analysis::{classify_failure, classify_plain_failure, FailureRecord};
use crate::decimation::{Adfaid, AdfaidConfig, Monitors};
use crate::error::{Error, Result};
use crate::faid::Faid;
use crate::graph::TannerGraph;
use crate::rule::VariableRule;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecoderKind {
    Faid,
    Adfaid,
    Bp,
}

impl FromStr for DecoderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "faid" => Ok(DecoderKind::Faid),
            "adfaid" => Ok(DecoderKind::Adfaid),
            "bp" => Ok(DecoderKind::Bp),
            _ => Err(Error::InvalidArgument(format!(
                "decoder `{s}` is not one of faid, adfaid, bp"
            ))),
        }
    }
}

impl fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DecoderKind::Faid => "faid",
            DecoderKind::Adfaid => "adfaid",
            DecoderKind::Bp => "bp",
        })
    }
}

/// Result of decoding one frame against the all-zero codeword.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameResult {
    /// Decoded word differs from the all-zero codeword.
    pub frame_error: bool,
    pub bit_errors: usize,
    pub iterations: usize,
    pub rule_index: Option<usize>,
    pub monitors: Monitors,
    /// Present for frame errors when classification was requested.
    pub record: Option<FailureRecord>,
}

#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum FrameDecoder {
    Faid(Faid),
    Adfaid(Adfaid),
    Bp(Bp),
}

impl FrameDecoder {
    pub fn faid(rule: VariableRule, max_iter: usize) -> Result<Self> {
        Ok(FrameDecoder::Faid(Faid::new(rule.validated()?, max_iter)?))
    }

    pub fn adfaid(config: AdfaidConfig) -> Result<Self> {
        Ok(FrameDecoder::Adfaid(Adfaid::new(config)?))
    }

    pub fn bp(max_iter: usize) -> Result<Self> {
        Ok(FrameDecoder::Bp(Bp::new(max_iter)?))
    }

    pub fn kind(&self) -> DecoderKind {
        match self {
            FrameDecoder::Faid(_) => DecoderKind::Faid,
            FrameDecoder::Adfaid(_) => DecoderKind::Adfaid,
            FrameDecoder::Bp(_) => DecoderKind::Bp,
        }
    }

    /// Turns the invariant monitors of the adaptive decoder on or off.
    pub fn set_monitors(&mut self, on: bool) {
        if let FrameDecoder::Adfaid(a) = self {
            let mut cfg = a.config().clone();
            cfg.monitors = on;
            *a = Adfaid::new(cfg).expect("configuration was already accepted");
        }
    }

    /// Decodes the error pattern `received` (all-zero codeword sent).
    /// `alpha` is only used by belief propagation.
    pub fn decode_frame(
        &self,
        graph: &TannerGraph,
        alpha: f64,
        received: &[u8],
        classify: bool,
    ) -> Result<FrameResult> {
        let rule_index = matches!(self, FrameDecoder::Adfaid(_)).then_some(1);
        if received.iter().all(|&b| b == 0) {
            graph.check_len(received.len())?;
            return Ok(FrameResult {
                frame_error: false,
                bit_errors: 0,
                iterations: 0,
                rule_index,
                monitors: Monitors::default(),
                record: None,
            });
        }
        let support: Vec<usize> = (0..received.len()).filter(|&v| received[v] == 1).collect();
        let (outcome, rule_index, monitors, trace) = match self {
            FrameDecoder::Faid(f) => (f.decode(graph, received)?, None, Monitors::default(), None),
            FrameDecoder::Adfaid(a) => {
                let out = a.decode(graph, received)?;
                let j = out.trace.final_rule_index();
                (out.outcome, Some(j), out.monitors, Some(out.trace))
            }
            FrameDecoder::Bp(b) => (b.decode(graph, alpha, received)?, None, Monitors::default(), None),
        };
        let bit_errors = outcome.bits.iter().filter(|&&b| b == 1).count();
        let frame_error = bit_errors > 0;
        let record = if frame_error && classify {
            Some(match &trace {
                Some(t) => classify_failure(graph, t, &support)?,
                None => classify_plain_failure(graph, &support, outcome.iterations)?,
            })
        } else {
            None
        };
        Ok(FrameResult {
            frame_error,
            bit_errors,
            iterations: outcome.iterations,
            rule_index,
            monitors,
            record,
        })
    }
}

impl fmt::Display for FrameDecoder {
    /// Canonical one-line identity, used in report headers and hashes.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrameDecoder::Faid(d) => write!(f, "faid rule={} max_iter={}", d.rule(), d.max_iter()),
            FrameDecoder::Adfaid(d) => {
                let c = d.config();
                write!(
                    f,
                    "adfaid decimation={} residual={} schedule={} budget={}",
                    c.decimation, c.residual, c.schedule, c.iter_budget
                )
            }
            FrameDecoder::Bp(b) => write!(f, "bp max_iter={}", b.max_iter),
        }
    }
}
