//! Nimbers and the XOR algebra of impartial sums.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The nimber `*n`. `Nimber(0)` is the game 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Nimber(pub u64);

impl Nimber {
    pub const ZERO: Nimber = Nimber(0);
    pub const STAR: Nimber = Nimber(1);

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// `*n = {0, *, ..., *(n-1)}`.
    pub fn options(self) -> impl DoubleEndedIterator<Item = Nimber> {
        (0..self.0).map(Nimber)
    }
}

impl std::ops::BitXor for Nimber {
    type Output = Nimber;
    fn bitxor(self, rhs: Nimber) -> Nimber {
        Nimber(self.0 ^ rhs.0)
    }
}

impl std::ops::BitXorAssign for Nimber {
    fn bitxor_assign(&mut self, rhs: Nimber) {
        self.0 ^= rhs.0;
    }
}

impl std::iter::Sum for Nimber {
    fn sum<I: Iterator<Item = Nimber>>(iter: I) -> Nimber {
        nim_sum(iter)
    }
}

impl fmt::Display for Nimber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            f.write_str("0")
        } else {
            write!(f, "*{}", self.0)
        }
    }
}

impl FromStr for Nimber {
    type Err = Error;

    /// Accepts `0`, `*` (meaning `*1`) and `*N`.
    fn from_str(s: &str) -> Result<Nimber> {
        let s = s.trim();
        if s == "0" {
            return Ok(Nimber(0));
        }
        let digits =
            s.strip_prefix('*').ok_or_else(|| Error::parse(format!("expected `0` or `*N`, found `{s}`")))?.trim();
        if digits.is_empty() {
            return Ok(Nimber(1));
        }
        digits.parse::<u64>().map(Nimber).map_err(|e| Error::parse(format!("bad nimber `{s}`: {e}")))
    }
}

/// Value of a disjunctive sum of nimbers: the bitwise XOR of their values.
pub fn nim_sum<I: IntoIterator<Item = Nimber>>(values: I) -> Nimber {
    Nimber(values.into_iter().fold(0, |acc, n| acc ^ n.0))
}

/// Minimum excluded value: the least non-negative integer not in `values`.
pub fn mex<I: IntoIterator<Item = u64>>(values: I) -> u64 {
    let mut seen: Vec<u64> = values.into_iter().collect();
    seen.sort_unstable();
    seen.dedup();
    let mut m = 0;
    for v in seen {
        if v == m {
            m += 1;
        } else if v > m {
            break;
        }
    }
    m
}
