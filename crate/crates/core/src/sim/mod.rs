//! Monte Carlo simulation on the binary symmetric channel.

pub mod bp;
pub mod channel;
pub mod decoder;
pub mod mining;
pub mod patterns;
pub mod sweep;
pub mod verify;

pub use bp::{bp_decode, Bp};
pub use channel::{bsc_sample, frame_rng};
pub use decoder::{DecoderKind, FrameDecoder, FrameResult};
pub use patterns::{enumerate_patterns, PatternMode};
pub use sweep::{fer_sweep, SimConfig, SweepReport, SweepRow};
pub use verify::{verify_guaranteed, VerifyReport};
