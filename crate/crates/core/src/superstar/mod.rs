//! Superstars: games whose options are all nimbers.
//!
//! A [`Superstar`] stores the nimber indices each player may move to. The
//! module classifies superstars by where the 0 option sits, simplifies the
//! ones equal to a nimber, plays the "more own-0 games" winning strategy and
//! converts to comets.

mod comet;
mod strategy;

use std::fmt::{self, Display};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use comet::{comet_of, comet_sum, CometSum};
pub use strategy::{zero_game_win_move, StarMove};

use crate::error::{Error, Result};
use crate::game::{Game, Player};
use crate::nimber::{mex, Nimber};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Superstar {
    left: Vec<u64>,
    right: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SuperstarClass {
    /// Literally `*n`: both sides are `{0, ..., n-1}`.
    NimberClass,
    No0,
    Left0,
    Right0,
    Both0,
    OneSided,
}

impl Superstar {
    /// Builds `{*l... | *r...}`; duplicates are dropped. Both sides empty is
    /// the game 0 and is rejected (use [`StarValue::Nimber`] instead).
    pub fn new(left: impl IntoIterator<Item = u64>, right: impl IntoIterator<Item = u64>) -> Result<Superstar> {
        let mut left: Vec<u64> = left.into_iter().collect();
        let mut right: Vec<u64> = right.into_iter().collect();
        left.sort_unstable();
        left.dedup();
        right.sort_unstable();
        right.dedup();
        if left.is_empty() && right.is_empty() {
            return Err(Error::precondition("a superstar needs at least one option; {|} is the game 0"));
        }
        Ok(Superstar { left, right })
    }

    /// The superstar form of `*n` (n >= 1).
    pub fn of_nimber(n: u64) -> Result<Superstar> {
        Superstar::new(0..n, 0..n)
    }

    pub fn left(&self) -> &[u64] {
        &self.left
    }

    pub fn right(&self) -> &[u64] {
        &self.right
    }

    pub fn side(&self, player: Player) -> &[u64] {
        match player {
            Player::Left => &self.left,
            Player::Right => &self.right,
        }
    }

    pub fn max_index(&self) -> Option<u64> {
        self.left.iter().chain(&self.right).copied().max()
    }

    pub fn classify(&self) -> SuperstarClass {
        let is_initial_segment = |side: &[u64]| side.iter().enumerate().all(|(i, &v)| v == i as u64);
        if self.left == self.right && is_initial_segment(&self.left) {
            return SuperstarClass::NimberClass;
        }
        if self.left.is_empty() || self.right.is_empty() {
            return SuperstarClass::OneSided;
        }
        match (self.left[0] == 0, self.right[0] == 0) {
            (true, true) => SuperstarClass::Both0,
            (true, false) => SuperstarClass::Left0,
            (false, true) => SuperstarClass::Right0,
            (false, false) => SuperstarClass::No0,
        }
    }

    /// `*n` when both sides are `{0, ..., n-1}` plus extras strictly above `n`.
    ///
    /// Any side can only match with `n` equal to its mex, so the pattern holds
    /// exactly when both mexes agree. An empty side has mex 0, so `{|*2}` is 0.
    pub fn simplify(&self) -> Option<Nimber> {
        let n = mex(self.left.iter().copied());
        if n != mex(self.right.iter().copied()) {
            return None;
        }
        debug_assert!(self.left.iter().chain(&self.right).all(|&x| x != n));
        Some(Nimber(n))
    }

    pub fn to_game(&self) -> Game {
        let top = self.max_index().unwrap_or(0);
        let nimbers: Vec<Game> = {
            let mut built = vec![Game::zero()];
            for _ in 1..=top {
                built.push(Game::new(built.clone(), built.clone()));
            }
            built
        };
        Game::new(
            self.left.iter().map(|&i| nimbers[i as usize].clone()),
            self.right.iter().map(|&i| nimbers[i as usize].clone()),
        )
    }

    pub fn negate(&self) -> Superstar {
        Superstar { left: self.right.clone(), right: self.left.clone() }
    }
}

fn write_side(f: &mut fmt::Formatter<'_>, side: &[u64]) -> fmt::Result {
    for (i, &v) in side.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        Nimber(v).fmt(f)?;
    }
    Ok(())
}

impl fmt::Display for Superstar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        write_side(f, &self.left)?;
        f.write_str("|")?;
        write_side(f, &self.right)?;
        f.write_str("}")
    }
}

impl Serialize for Superstar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Superstar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Superstar, D::Error> {
        match StarValue::deserialize(deserializer)? {
            StarValue::Star(s) => Ok(s),
            StarValue::Nimber(n) => Superstar::of_nimber(n.0).map_err(serde::de::Error::custom),
        }
    }
}

/// A superstar or a plain nimber: the value of one Paint Can stack.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StarValue {
    Nimber(Nimber),
    Star(Superstar),
}

impl StarValue {
    pub fn star(left: impl IntoIterator<Item = u64>, right: impl IntoIterator<Item = u64>) -> Result<StarValue> {
        Superstar::new(left, right).map(StarValue::Star)
    }

    /// Class of the value; plain nimbers (including 0) are [`SuperstarClass::NimberClass`].
    pub fn classify(&self) -> SuperstarClass {
        match self {
            StarValue::Nimber(_) => SuperstarClass::NimberClass,
            StarValue::Star(s) => s.classify(),
        }
    }

    /// The nimber this value literally is, if any.
    pub fn as_nimber(&self) -> Option<Nimber> {
        match self {
            StarValue::Nimber(n) => Some(*n),
            StarValue::Star(s) if s.classify() == SuperstarClass::NimberClass => Some(Nimber(s.left.len() as u64)),
            StarValue::Star(_) => None,
        }
    }

    pub fn side(&self, player: Player) -> Vec<u64> {
        match self {
            StarValue::Nimber(n) => (0..n.0).collect(),
            StarValue::Star(s) => s.side(player).to_vec(),
        }
    }

    pub fn negate(&self) -> StarValue {
        match self {
            StarValue::Nimber(n) => StarValue::Nimber(*n),
            StarValue::Star(s) => StarValue::Star(s.negate()),
        }
    }

    pub fn to_game(&self) -> Game {
        match self {
            StarValue::Nimber(n) => Game::nimber(n.0),
            StarValue::Star(s) => s.to_game(),
        }
    }
}

impl fmt::Display for StarValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StarValue::Nimber(n) => n.fmt(f),
            StarValue::Star(s) => s.fmt(f),
        }
    }
}

impl FromStr for StarValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<StarValue> {
        let mut values = crate::game::text::parse_star_sum(s)?;
        match values.len() {
            0 => Ok(StarValue::Nimber(Nimber(0))),
            1 => Ok(values.remove(0)),
            _ => Err(Error::parse(format!("expected a single term, found `{s}`"))),
        }
    }
}

impl From<Nimber> for StarValue {
    fn from(n: Nimber) -> StarValue {
        StarValue::Nimber(n)
    }
}

impl From<Superstar> for StarValue {
    fn from(s: Superstar) -> StarValue {
        StarValue::Star(s)
    }
}

impl Serialize for StarValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for StarValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<StarValue, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
