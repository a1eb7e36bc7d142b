//! EPMX to a sum of superstars, and that sum to comets.
//!
//! Clause `t` gets identity `2^t`. X variable `j` becomes a Right-0
//! superstar whose Left options are, per state, the nimber summing the
//! identities of the clauses holding that state, plus `*2^(m+j)`. Y variables
//! become Left-0 superstars with the state sums as Right options. The sum
//! closes with `*(2^m - 1)`.

use std::fmt;

use serde::Serialize;

use crate::epmx::{EpmxInstance, Owner};
use crate::error::{Error, Result};
use crate::game::{text::format_star_sum, SumPosition};
use crate::nimber::Nimber;
use crate::superstar::{comet_sum, CometSum, StarValue, Superstar};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarsReduction {
    pub x: Vec<Superstar>,
    pub y: Vec<Superstar>,
    pub nimber: Nimber,
}

impl StarsReduction {
    /// `x_0, ..., y_0, ..., *(2^m - 1)` in that order.
    pub fn values(&self) -> Vec<StarValue> {
        self.x
            .iter()
            .chain(&self.y)
            .cloned()
            .map(StarValue::Star)
            .chain(std::iter::once(StarValue::Nimber(self.nimber)))
            .collect()
    }

    pub fn to_sum(&self) -> SumPosition {
        SumPosition::new(self.values().into_iter().map(Into::into))
    }
}

impl fmt::Display for StarsReduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_star_sum(&self.values()))
    }
}

/// Builds the superstar sum. States missing from every clause first get a
/// covering dummy clause (appended last), which leaves the game unchanged.
pub fn epmx_to_superstars(instance: &EpmxInstance) -> Result<StarsReduction> {
    if !instance.is_equal_partitioned() {
        return Err(Error::precondition("EPMX instance is not equal-partitioned"));
    }
    let instance = instance.complete_missing_states();
    let m = instance.clauses().len();
    if m == 0 {
        return Err(Error::precondition("EPMX instance has no clauses"));
    }
    let xs: Vec<usize> = instance.owned_by(Owner::X).collect();
    if m + xs.len() > 63 {
        return Err(Error::WordOverflow(format!(
            "{m} clauses and {} X variables need 2^{} nimbers",
            xs.len(),
            m + xs.len() - 1
        )));
    }
    // A literal repeated within a clause cancels, as in the XOR it stands for.
    let mut sums: Vec<Vec<u64>> = instance.variables().iter().map(|v| vec![0; v.states.len()]).collect();
    for (t, clause) in instance.clauses().iter().enumerate() {
        for lit in clause {
            sums[lit.var][lit.state] ^= 1 << t;
        }
    }
    let x = xs
        .iter()
        .enumerate()
        .map(|(j, &v)| Superstar::new(sums[v].iter().copied().chain([1u64 << (m + j)]), [0]))
        .collect::<Result<Vec<_>>>()?;
    let y = instance
        .owned_by(Owner::Y)
        .map(|v| Superstar::new([0], sums[v].iter().copied()))
        .collect::<Result<Vec<_>>>()?;
    Ok(StarsReduction { x, y, nimber: Nimber((1u64 << m) - 1) })
}

pub fn superstars_to_comets(values: &[StarValue]) -> Result<CometSum> {
    comet_sum(values)
}
