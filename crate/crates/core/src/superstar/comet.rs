//! Comets: a superstar rewritten as `↑`s (or `↓`s), an optional `*`, and the
//! superstar itself.
//!
//! A Left0 superstar `S` is paired with `↓ + * + S` and a Right0 one with
//! `↑ + * + S`; a nimber is its own comet. Summing comets just adds the
//! counters and collects the parts.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{StarValue, SuperstarClass};
use crate::error::{Error, Result};
use crate::game::{Game, SumPosition};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CometSum {
    /// Net count of `↑` (negative for `↓`).
    pub up_count: i64,
    /// Whether an odd number of `*` remain.
    pub star_parity: bool,
    pub parts: Vec<StarValue>,
}

impl CometSum {
    /// True when the `↑`/`↓` and `*` decorations cancel out entirely.
    pub fn is_bare(&self) -> bool {
        self.up_count == 0 && !self.star_parity
    }

    pub fn add(&mut self, other: &CometSum) {
        self.up_count += other.up_count;
        self.star_parity ^= other.star_parity;
        self.parts.extend(other.parts.iter().cloned());
    }

    /// The decorations followed by the parts, as a playable sum.
    pub fn to_sum(&self) -> SumPosition {
        let mut sum = SumPosition::zero();
        let unit = if self.up_count >= 0 { Game::up() } else { Game::down() };
        for _ in 0..self.up_count.unsigned_abs() {
            sum.push(unit.clone());
        }
        if self.star_parity {
            sum.push(crate::nimber::Nimber::STAR);
        }
        for p in &self.parts {
            sum.push(p.clone());
        }
        sum
    }
}

impl fmt::Display for CometSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = Vec::new();
        let arrow = if self.up_count >= 0 { "↑" } else { "↓" };
        match self.up_count.unsigned_abs() {
            0 => {}
            1 => terms.push(arrow.to_string()),
            k => terms.push(format!("{k}{arrow}")),
        }
        if self.star_parity {
            terms.push("*".to_string());
        }
        terms.extend(self.parts.iter().map(ToString::to_string));
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join("+"))
        }
    }
}

/// Comet of a single value. Only nimbers, Left0 and Right0 have one.
pub fn comet_of(v: &StarValue) -> Result<CometSum> {
    let (up_count, star_parity) = match v.classify() {
        SuperstarClass::NimberClass => (0, false),
        SuperstarClass::Left0 => (-1, true),
        SuperstarClass::Right0 => (1, true),
        other => return Err(Error::UndefinedComet(other)),
    };
    Ok(CometSum { up_count, star_parity, parts: vec![v.clone()] })
}

pub fn comet_sum(values: &[StarValue]) -> Result<CometSum> {
    let mut total = CometSum::default();
    for v in values {
        total.add(&comet_of(v)?);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Solver;
    use crate::nimber::Nimber;
    use crate::superstar::Superstar;

    fn star(l: &[u64], r: &[u64]) -> StarValue {
        StarValue::Star(Superstar::new(l.iter().copied(), r.iter().copied()).unwrap())
    }

    #[test]
    fn single_comets() {
        let c = comet_of(&star(&[0], &[1])).unwrap();
        assert_eq!((c.up_count, c.star_parity), (-1, true));
        let c = comet_of(&star(&[1], &[0])).unwrap();
        assert_eq!((c.up_count, c.star_parity), (1, true));
        let c = comet_of(&StarValue::Nimber(Nimber(3))).unwrap();
        assert!(c.is_bare());
        assert!(matches!(comet_of(&star(&[2], &[3])), Err(Error::UndefinedComet(SuperstarClass::No0))));
        assert!(matches!(comet_of(&star(&[0], &[0, 2])), Err(Error::UndefinedComet(SuperstarClass::Both0))));
    }

    #[test]
    fn opposite_comets_cancel() {
        let total = comet_sum(&[star(&[0], &[1]), star(&[1], &[0])]).unwrap();
        assert!(total.is_bare());
        assert_eq!(total.parts.len(), 2);
        assert_eq!(total.to_string(), "{0|*1}+{*1|0}");
    }

    #[test]
    fn display() {
        let total = comet_sum(&[star(&[0], &[1]), star(&[0], &[2])]).unwrap();
        assert_eq!(total.to_string(), "2↓+{0|*1}+{0|*2}");
    }

    /// Cancelling `↑` against `↓` and pairs of `*` does not change the value.
    #[test]
    fn expanded_comets_match_collected_form() {
        let pool = [star(&[0], &[1]), star(&[0, 2], &[3]), star(&[1], &[0]), StarValue::Nimber(Nimber(2))];
        let mut solver = Solver::default();
        for a in 0..pool.len() {
            for b in a..pool.len() {
                let values = [pool[a].clone(), pool[b].clone()];
                let mut expanded = SumPosition::zero();
                for v in &values {
                    for c in comet_of(v).unwrap().to_sum().into_components() {
                        expanded.push(c);
                    }
                }
                let collected = comet_sum(&values).unwrap().to_sum();
                assert!(solver.equals(&expanded, &collected).unwrap());
            }
        }
    }
}
