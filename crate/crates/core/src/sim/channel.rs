//! Binary symmetric channel and per-frame random streams.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Stream for frame `frame` of sweep point `point`. The generator depends
/// only on these three numbers, never on scheduling.
pub fn frame_rng(seed: u64, point: u64, frame: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ point.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    rng.set_stream(frame);
    rng
}

pub fn check_alpha(alpha: f64) -> Result<()> {
    if !(0.0..=0.5).contains(&alpha) {
        return Err(Error::InvalidArgument(format!(
            "crossover probability {alpha} is outside [0, 0.5]"
        )));
    }
    Ok(())
}

/// Error pattern with independent flips of probability `alpha`.
pub fn bsc_sample<R: Rng + ?Sized>(n: usize, alpha: f64, rng: &mut R) -> Result<Vec<u8>> {
    check_alpha(alpha)?;
    Ok((0..n).map(|_| u8::from(rng.random_bool(alpha))).collect())
}
