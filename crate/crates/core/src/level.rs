//! The 7-level message alphabet and the check-node rule.
//!
//! Levels are stored as signed indices in `-3..=3`. The sign of the index is
//! the sign of the message and its magnitude selects `L1 < L2 < L3`; index 0
//! is the zero message. Real magnitudes only exist inside threshold rules, so
//! every comparison made by the decoders (triple dominance, saturation, check
//! minimum) works directly on indices.

use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest level index, `s`. The alphabet has `2s + 1` symbols.
pub const MAX_INDEX: i8 = 3;

/// Number of symbols in the alphabet.
pub const ALPHABET_SIZE: usize = 2 * MAX_INDEX as usize + 1;

/// One symbol of the message alphabet.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Level(i8);

impl Level {
    pub const ZERO: Level = Level(0);
    pub const L1: Level = Level(1);
    pub const L2: Level = Level(2);
    pub const L3: Level = Level(3);
    /// The strongest positive message, `L_s`.
    pub const MAX: Level = Level(MAX_INDEX);

    pub fn new(index: i8) -> Result<Self> {
        if index.abs() > MAX_INDEX {
            return Err(Error::InvalidArgument(format!(
                "level index {index} outside -{MAX_INDEX}..={MAX_INDEX}"
            )));
        }
        Ok(Level(index))
    }

    /// Caller guarantees `|index| <= MAX_INDEX`.
    pub(crate) const fn from_index(index: i8) -> Self {
        Level(index)
    }

    pub fn index(self) -> i8 {
        self.0
    }

    pub fn magnitude(self) -> u8 {
        self.0.unsigned_abs()
    }

    pub fn signum(self) -> i8 {
        self.0.signum()
    }

    pub fn negate(self) -> Self {
        Level(-self.0)
    }

    /// Position of this level in a `-s..=s` table.
    pub fn slot(self) -> usize {
        (self.0 + MAX_INDEX) as usize
    }

    pub fn from_slot(slot: usize) -> Self {
        Level(slot as i8 - MAX_INDEX)
    }

    /// All levels in increasing order.
    pub fn all() -> impl DoubleEndedIterator<Item = Level> + Clone {
        (-MAX_INDEX..=MAX_INDEX).map(Level)
    }
}

impl Neg for Level {
    type Output = Level;

    fn neg(self) -> Level {
        self.negate()
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => f.write_str("0"),
            i if i < 0 => write!(f, "-L{}", -i),
            i => write!(f, "L{i}"),
        }
    }
}

impl FromStr for Level {
    type Err = Error;

    /// Accepts signed indices (`-2`) and symbolic names (`-L2`, `L3`, `0`).
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (neg, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t.strip_prefix('+').unwrap_or(t)),
        };
        let body = body
            .strip_prefix('L')
            .or_else(|| body.strip_prefix('l'))
            .unwrap_or(body);
        let mag: i8 = body
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("not a level: {s:?}")))?;
        if mag < 0 {
            return Err(Error::InvalidArgument(format!("not a level: {s:?}")));
        }
        Level::new(if neg { -mag } else { mag })
    }
}

/// Sign of a BSC channel value `y_i = (-1)^{r_i} C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChannelSign {
    /// `+C`, received bit 0.
    Plus,
    /// `-C`, received bit 1.
    Minus,
}

impl ChannelSign {
    pub fn from_bit(bit: u8) -> Self {
        if bit == 0 {
            ChannelSign::Plus
        } else {
            ChannelSign::Minus
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            ChannelSign::Plus => 0,
            ChannelSign::Minus => 1,
        }
    }

    pub fn signum(self) -> i8 {
        match self {
            ChannelSign::Plus => 1,
            ChannelSign::Minus => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            ChannelSign::Plus => ChannelSign::Minus,
            ChannelSign::Minus => ChannelSign::Plus,
        }
    }
}

/// Check-node update: product of input signs times the minimum input magnitude.
///
/// `messages` are the `d_c - 1` extrinsic inputs.
pub fn check_update(messages: &[Level]) -> Result<Level> {
    if messages.is_empty() {
        return Err(Error::InvalidArgument(
            "check update needs at least one input message".into(),
        ));
    }
    let mut negative = false;
    let mut min = MAX_INDEX;
    for m in messages {
        negative ^= m.0 < 0;
        min = min.min(m.0.abs());
    }
    Ok(Level(if negative { -min } else { min }))
}
