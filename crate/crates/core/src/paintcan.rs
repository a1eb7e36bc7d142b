//! Paint Can: stacks of colored bricks, one stack per superstar.
//!
//! Text form lists each stack bottom to top with `B`, `R`, `G`, `Y` (gray)
//! and separates stacks with `/`, e.g. `BRGYB/GGGG`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::game::{Component, MoveEnumerable, Player, SumPosition};
use crate::nimber::Nimber;
use crate::superstar::{StarValue, Superstar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BrickColor {
    Blue,
    Red,
    Green,
    Gray,
}

impl BrickColor {
    pub fn playable_by(self, player: Player) -> bool {
        matches!(
            (self, player),
            (BrickColor::Green, _) | (BrickColor::Blue, Player::Left) | (BrickColor::Red, Player::Right)
        )
    }

    pub fn letter(self) -> char {
        match self {
            BrickColor::Blue => 'B',
            BrickColor::Red => 'R',
            BrickColor::Green => 'G',
            BrickColor::Gray => 'Y',
        }
    }

    pub fn from_letter(c: char) -> Option<BrickColor> {
        Some(match c.to_ascii_uppercase() {
            'B' => BrickColor::Blue,
            'R' => BrickColor::Red,
            'G' => BrickColor::Green,
            'Y' => BrickColor::Gray,
            _ => return None,
        })
    }
}

/// One stack, index 0 at the bottom. Never empty.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Stack(Vec<BrickColor>);

impl Stack {
    pub fn new(bricks: Vec<BrickColor>) -> Result<Stack> {
        if bricks.is_empty() {
            return Err(Error::precondition("a stack needs at least one brick"));
        }
        Ok(Stack(bricks))
    }

    /// `h` green bricks: the nimber `*h`.
    pub fn green(h: usize) -> Result<Stack> {
        Stack::new(vec![BrickColor::Green; h])
    }

    pub fn bricks(&self) -> &[BrickColor] {
        &self.0
    }

    pub fn height(&self) -> usize {
        self.0.len()
    }

    /// True when a paint can sits on top, i.e. some brick is not Green.
    pub fn has_can(&self) -> bool {
        self.0.iter().any(|&b| b != BrickColor::Green)
    }

    pub fn legal_moves(&self, player: Player) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i].playable_by(player)).collect()
    }

    /// Height of what is left after taking brick `i`; the survivors are Green.
    fn remove(&self, i: usize) -> Option<Stack> {
        (i > 0).then(|| Stack(vec![BrickColor::Green; i]))
    }

    pub fn value(&self) -> StarValue {
        if !self.has_can() {
            return StarValue::Nimber(Nimber(self.0.len() as u64));
        }
        let side = |p: Player| (0..self.0.len() as u64).filter(move |&i| self.0[i as usize].playable_by(p));
        match Superstar::new(side(Player::Left), side(Player::Right)) {
            Ok(s) => StarValue::Star(s),
            Err(_) => StarValue::Nimber(Nimber::ZERO),
        }
    }
}

impl fmt::Display for Stack {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|b| write!(f, "{}", b.letter()))
    }
}

impl FromStr for Stack {
    type Err = Error;

    /// Parses one stack. Trailing gray bricks encode nothing and are rejected.
    fn from_str(s: &str) -> Result<Stack> {
        let bricks = s
            .trim()
            .chars()
            .map(|c| BrickColor::from_letter(c).ok_or_else(|| Error::parse(format!("unknown brick color `{c}`"))))
            .collect::<Result<Vec<_>>>()?;
        if bricks.is_empty() {
            return Err(Error::parse("empty stack"));
        }
        if bricks.last() == Some(&BrickColor::Gray) {
            return Err(Error::parse(format!("stack `{s}` ends in a gray brick")));
        }
        Ok(Stack(bricks))
    }
}

impl MoveEnumerable for Stack {
    fn options(&self, player: Player) -> Vec<Component> {
        self.legal_moves(player).into_iter().map(|i| Component::Nimber(Nimber(i as u64))).collect()
    }

    fn key(&self) -> String {
        self.to_string()
    }
}

pub fn stack_to_superstar(s: &Stack) -> StarValue {
    s.value()
}

/// The stack for a value; `None` for the nimber 0, which is no stack at all.
pub fn superstar_to_stack(v: &StarValue) -> Option<Stack> {
    match v {
        StarValue::Nimber(n) => (n.0 > 0).then(|| Stack(vec![BrickColor::Green; n.0 as usize])),
        StarValue::Star(s) => {
            let top = s.max_index().expect("superstars have an option");
            let bricks = (0..=top)
                .map(|i| match (s.left().binary_search(&i).is_ok(), s.right().binary_search(&i).is_ok()) {
                    (true, true) => BrickColor::Green,
                    (true, false) => BrickColor::Blue,
                    (false, true) => BrickColor::Red,
                    (false, false) => BrickColor::Gray,
                })
                .collect();
            Some(Stack(bricks))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PaintCanMove {
    pub stack: usize,
    pub brick: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct PaintCanPosition {
    stacks: Vec<Stack>,
}

impl PaintCanPosition {
    pub fn new(stacks: Vec<Stack>) -> PaintCanPosition {
        PaintCanPosition { stacks }
    }

    /// One stack per value, skipping zeros.
    pub fn from_values(values: &[StarValue]) -> PaintCanPosition {
        PaintCanPosition { stacks: values.iter().filter_map(superstar_to_stack).collect() }
    }

    pub fn stacks(&self) -> &[Stack] {
        &self.stacks
    }

    pub fn is_empty(&self) -> bool {
        self.stacks.is_empty()
    }

    pub fn values(&self) -> Vec<StarValue> {
        self.stacks.iter().map(Stack::value).collect()
    }
}

impl fmt::Display for PaintCanPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.stacks.iter().enumerate() {
            if i > 0 {
                f.write_str("/")?;
            }
            s.fmt(f)?;
        }
        Ok(())
    }
}

impl FromStr for PaintCanPosition {
    type Err = Error;

    fn from_str(s: &str) -> Result<PaintCanPosition> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(PaintCanPosition::default());
        }
        Ok(PaintCanPosition { stacks: s.split('/').map(str::parse).collect::<Result<_>>()? })
    }
}

impl Serialize for PaintCanPosition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PaintCanPosition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<PaintCanPosition, D::Error> {
        String::deserialize(deserializer)?.parse().map_err(serde::de::Error::custom)
    }
}

pub fn legal_moves(pos: &PaintCanPosition, player: Player) -> Vec<PaintCanMove> {
    pos.stacks
        .iter()
        .enumerate()
        .flat_map(|(stack, s)| s.legal_moves(player).into_iter().map(move |brick| PaintCanMove { stack, brick }))
        .collect()
}

/// Takes the chosen brick and everything above it; the survivors turn Green
/// and an emptied stack disappears.
pub fn apply_move(pos: &PaintCanPosition, player: Player, mv: PaintCanMove) -> Result<PaintCanPosition> {
    let legal = pos.stacks.get(mv.stack).and_then(|s| s.bricks().get(mv.brick)).is_some_and(|b| b.playable_by(player));
    if !legal {
        return Err(Error::IllegalMove(format!("{player:?} cannot take brick {} of stack {}", mv.brick, mv.stack)));
    }
    let mut stacks = pos.stacks.clone();
    match stacks[mv.stack].remove(mv.brick) {
        Some(rest) => stacks[mv.stack] = rest,
        None => {
            stacks.remove(mv.stack);
        }
    }
    Ok(PaintCanPosition { stacks })
}

/// The position as a sum of superstar and nimber components.
pub fn position_value(pos: &PaintCanPosition) -> SumPosition {
    SumPosition::new(pos.values().into_iter().filter(|v| *v != StarValue::Nimber(Nimber::ZERO)).map(Component::from))
}

/// The position as a sum of opaque ruleset components, searched through
/// [`legal_moves`] rather than through the superstar encoding.
pub fn position_as_ruleset(pos: &PaintCanPosition) -> SumPosition {
    SumPosition::new(pos.stacks.iter().cloned().map(Component::ruleset))
}
