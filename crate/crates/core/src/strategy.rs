use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits;
use crate::matroid::Matroid;

/// Rule for choosing the non-degenerate element to branch on.
///
/// `Seeded` draws from a ChaCha8 stream seeded with the user seed mixed with
/// a fingerprint of the matroid being split. Each node therefore gets its own
/// independent stream, and the choice does not depend on the order in which
/// nodes are visited, so parallel and sequential runs agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum PivotStrategy {
    #[default]
    MinIndex,
    MaxIndex,
    Seeded(u64),
}

impl PivotStrategy {
    /// Index of the pivot, or `None` if every element is a loop or coloop.
    pub fn pick(&self, m: &Matroid) -> Option<usize> {
        let nd = m.nondegenerate_mask();
        if nd == 0 {
            return None;
        }
        Some(match *self {
            PivotStrategy::MinIndex => nd.trailing_zeros() as usize,
            PivotStrategy::MaxIndex => 63 - nd.leading_zeros() as usize,
            PivotStrategy::Seeded(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fingerprint(m));
                let k = rng.random_range(0..bits::popcount(nd));
                bits::ones(nd).nth(k).unwrap()
            }
        })
    }
}

/// FNV-1a over the ground size and basis masks.
fn fingerprint(m: &Matroid) -> u64 {
    const PRIME: u64 = 0x100_0000_01b3;
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for word in std::iter::once(m.len() as u64).chain(m.bases().iter().copied()) {
        for byte in word.to_le_bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(PRIME);
        }
    }
    h
}

impl fmt::Display for PivotStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PivotStrategy::MinIndex => f.write_str("min-index"),
            PivotStrategy::MaxIndex => f.write_str("max-index"),
            PivotStrategy::Seeded(s) => write!(f, "random:{s}"),
        }
    }
}

impl FromStr for PivotStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "min-index" => Ok(PivotStrategy::MinIndex),
            "max-index" => Ok(PivotStrategy::MaxIndex),
            _ => match s.strip_prefix("random:").map(str::parse) {
                Some(Ok(seed)) => Ok(PivotStrategy::Seeded(seed)),
                _ => Err(format!("unknown pivot strategy `{s}`")),
            },
        }
    }
}
