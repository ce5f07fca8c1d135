//! Fixed-weight error supports, enumerated or sampled.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::seq::index::sample;

use super::channel::frame_rng;
use crate::error::{Error, Result};

/// Largest `C(n, w)` accepted in exhaustive mode by default.
pub const DEFAULT_CEILING: u128 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PatternMode {
    Exhaustive,
    /// Uniform random supports, drawn independently.
    Sample(u64),
}

impl FromStr for PatternMode {
    type Err = Error;

    /// `exhaustive` or `sample:N`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "exhaustive" {
            return Ok(PatternMode::Exhaustive);
        }
        s.strip_prefix("sample:")
            .and_then(|n| n.parse().ok())
            .map(PatternMode::Sample)
            .ok_or_else(|| {
                Error::InvalidArgument(format!("mode `{s}` is not `exhaustive` or `sample:N`"))
            })
    }
}

impl fmt::Display for PatternMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternMode::Exhaustive => write!(f, "exhaustive"),
            PatternMode::Sample(n) => write!(f, "sample:{n}"),
        }
    }
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul(u128::from(n - i)) {
            Some(x) => x / u128::from(i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Support number `index` of a sampled run: sorted, uniform over all
/// weight-`w` supports.
pub fn sample_support(n: usize, weight: usize, seed: u64, index: u64) -> Vec<usize> {
    let mut rng = frame_rng(seed, u64::MAX, index);
    let mut s = sample(&mut rng, n, weight).into_vec();
    s.sort_unstable();
    s
}

/// Number of supports `enumerate_patterns` will yield.
pub fn pattern_count(n: usize, weight: usize, mode: PatternMode, ceiling: u128) -> Result<u128> {
    if weight > n {
        return Err(Error::InvalidArgument(format!("weight {weight} exceeds length {n}")));
    }
    match mode {
        PatternMode::Exhaustive => {
            let count = binomial(n as u64, weight as u64);
            if count > ceiling {
                return Err(Error::TooManyPatterns { count, ceiling });
            }
            Ok(count)
        }
        PatternMode::Sample(k) => Ok(u128::from(k)),
    }
}

/// Supports of weight `weight` over `n` positions. Exhaustive mode is
/// lexicographic; sample mode is reproducible from `seed`.
pub fn enumerate_patterns(
    n: usize,
    weight: usize,
    mode: PatternMode,
    seed: u64,
    ceiling: u128,
) -> Result<Box<dyn Iterator<Item = Vec<usize>> + Send>> {
    pattern_count(n, weight, mode, ceiling)?;
    Ok(match mode {
        PatternMode::Exhaustive => Box::new((0..n).combinations(weight)),
        PatternMode::Sample(k) => Box::new((0..k).map(move |i| sample_support(n, weight, seed, i))),
    })
}

/// Bit vector with ones on `support`.
pub fn to_bits(n: usize, support: &[usize]) -> Vec<u8> {
    let mut r = vec![0u8; n];
    for &v in support {
        r[v] = 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_exhaustive_is_lexicographic() {
        let all: Vec<_> = enumerate_patterns(5, 2, PatternMode::Exhaustive, 0, DEFAULT_CEILING)
            .unwrap()
            .collect();
        assert_eq!(all.len(), 10);
        assert_eq!(all[0], vec![0, 1]);
        assert_eq!(all[9], vec![3, 4]);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn counts() {
        assert_eq!(binomial(155, 3), 608_685);
        assert_eq!(binomial(155, 2), 11_935);
        assert_eq!(binomial(155, 5), 698_526_906);
        assert_eq!(binomial(3, 5), 0);
        assert!(matches!(
            pattern_count(155, 5, PatternMode::Exhaustive, DEFAULT_CEILING),
            Err(Error::TooManyPatterns { .. })
        ));
    }

    #[test]
    fn sampling_is_reproducible() {
        let a: Vec<_> = enumerate_patterns(155, 6, PatternMode::Sample(1000), 4, 0)
            .unwrap()
            .collect();
        let b: Vec<_> = enumerate_patterns(155, 6, PatternMode::Sample(1000), 4, 0)
            .unwrap()
            .collect();
        assert_eq!(a.len(), 1000);
        assert_eq!(a, b);
        assert!(a.iter().all(|s| s.len() == 6 && s.windows(2).all(|w| w[0] < w[1])));
    }

    #[test]
    fn parses_modes() {
        assert_eq!("exhaustive".parse::<PatternMode>().unwrap(), PatternMode::Exhaustive);
        assert_eq!("sample:100".parse::<PatternMode>().unwrap(), PatternMode::Sample(100));
        assert!("sample:x".parse::<PatternMode>().is_err());
        assert_eq!(PatternMode::Sample(7).to_string(), "sample:7");
    }
}
