//! Generic partizan games under normal play.
//!
//! [`Game`] is an explicit game tree and [`SumPosition`] a disjunctive sum of
//! components. [`Solver`] decides outcomes by memoized exhaustive search; it
//! is the oracle the rest of the crate is validated against.

mod solver;
mod sum;
pub mod text;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use solver::{Solver, SolverConfig, DEFAULT_NODE_BUDGET};
pub use sum::{Component, MoveEnumerable, RulesetComponent, SumPosition};

use crate::error::Result;
use crate::nimber::Nimber;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Player {
    Left,
    Right,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Left => Player::Right,
            Player::Right => Player::Left,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Left => "Left",
            Player::Right => "Right",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OutcomeClass {
    /// First player wins.
    N,
    /// Second player wins.
    P,
    /// Left wins either way.
    L,
    /// Right wins either way.
    R,
}

impl OutcomeClass {
    pub fn from_wins(left_first: bool, right_first: bool) -> OutcomeClass {
        match (left_first, right_first) {
            (true, true) => OutcomeClass::N,
            (false, false) => OutcomeClass::P,
            (true, false) => OutcomeClass::L,
            (false, true) => OutcomeClass::R,
        }
    }

    /// Whether `player` wins when their opponent moves first.
    pub fn wins_going_second(self, player: Player) -> bool {
        match player {
            Player::Left => matches!(self, OutcomeClass::L | OutcomeClass::P),
            Player::Right => matches!(self, OutcomeClass::R | OutcomeClass::P),
        }
    }
}

impl fmt::Display for OutcomeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutcomeClass::N => "N",
            OutcomeClass::P => "P",
            OutcomeClass::L => "L",
            OutcomeClass::R => "R",
        })
    }
}

/// An explicit finite game tree `{left options | right options}`.
///
/// Options are kept as sorted, deduplicated sets, so two structurally equal
/// trees compare equal and share a canonical text form. Cloning is cheap.
#[derive(Clone)]
pub struct Game(Arc<Node>);

struct Node {
    left: Vec<Game>,
    right: Vec<Game>,
    canon: String,
    nimber: Option<u64>,
}

impl Game {
    pub fn new(left: impl IntoIterator<Item = Game>, right: impl IntoIterator<Item = Game>) -> Game {
        let mut left: Vec<Game> = left.into_iter().collect();
        let mut right: Vec<Game> = right.into_iter().collect();
        left.sort();
        left.dedup();
        right.sort();
        right.dedup();

        let nimber = (left == right && left.iter().enumerate().all(|(i, g)| g.0.nimber == Some(i as u64)))
            .then_some(left.len() as u64);
        let canon = match nimber {
            Some(n) => Nimber(n).to_string(),
            None => {
                let side = |opts: &[Game]| opts.iter().map(|g| g.0.canon.as_str()).collect::<Vec<_>>().join(",");
                format!("{{{}|{}}}", side(&left), side(&right))
            }
        };
        Game(Arc::new(Node { left, right, canon, nimber }))
    }

    pub fn zero() -> Game {
        Game::new([], [])
    }

    /// The tree of `*n`.
    pub fn nimber(n: u64) -> Game {
        let mut built: Vec<Game> = Vec::with_capacity(n as usize + 1);
        built.push(Game::zero());
        for _ in 1..=n {
            built.push(Game::new(built.clone(), built.clone()));
        }
        built.pop().expect("at least zero is built")
    }

    /// `↑ = {0 | *}`
    pub fn up() -> Game {
        Game::new([Game::zero()], [Game::nimber(1)])
    }

    /// `↓ = {* | 0}`
    pub fn down() -> Game {
        Game::new([Game::nimber(1)], [Game::zero()])
    }

    pub fn left_options(&self) -> &[Game] {
        &self.0.left
    }

    pub fn right_options(&self) -> &[Game] {
        &self.0.right
    }

    pub fn options(&self, player: Player) -> &[Game] {
        match player {
            Player::Left => &self.0.left,
            Player::Right => &self.0.right,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.left.is_empty() && self.0.right.is_empty()
    }

    /// `Some(n)` when the tree is literally `*n`.
    pub fn as_nimber(&self) -> Option<Nimber> {
        self.0.nimber.map(Nimber)
    }

    pub fn is_impartial(&self) -> bool {
        self.0.left == self.0.right && self.0.left.iter().all(Game::is_impartial)
    }

    /// Conjugate: Left and Right options swapped at every level.
    pub fn negate(&self) -> Game {
        if self.0.nimber.is_some() {
            return self.clone();
        }
        Game::new(self.0.right.iter().map(Game::negate), self.0.left.iter().map(Game::negate))
    }

    pub fn canonical(&self) -> &str {
        &self.0.canon
    }

    pub fn birthday(&self) -> usize {
        self.0.left.iter().chain(&self.0.right).map(|g| g.birthday() + 1).max().unwrap_or(0)
    }
}

impl PartialEq for Game {
    fn eq(&self, other: &Game) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.canon == other.0.canon
    }
}

impl Eq for Game {}

impl Ord for Game {
    /// Nimber-shaped trees first, by value; everything else by canonical text.
    fn cmp(&self, other: &Game) -> Ordering {
        match (self.0.nimber, other.0.nimber) {
            (Some(a), Some(b)) => a.cmp(&b),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => self.0.canon.cmp(&other.0.canon),
        }
    }
}

impl PartialOrd for Game {
    fn partial_cmp(&self, other: &Game) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Hash for Game {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.canon.hash(state);
    }
}

impl fmt::Display for Game {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.canon)
    }
}

impl fmt::Debug for Game {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Game({})", self.0.canon)
    }
}

impl std::str::FromStr for Game {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Game> {
        text::parse_game(s)
    }
}

/// Conjugate of a game tree.
pub fn negate(g: &Game) -> Game {
    g.negate()
}

/// Whether `player` wins `g` moving first, using a default solver.
pub fn wins_moving_first(g: &SumPosition, player: Player) -> Result<bool> {
    Solver::default().wins_moving_first(g, player)
}

pub fn outcome(g: &SumPosition) -> Result<OutcomeClass> {
    Solver::default().outcome(g)
}

/// Game equality, decided by the difference game `g - h` being a second-player win.
pub fn equals(g: &SumPosition, h: &SumPosition) -> Result<bool> {
    Solver::default().equals(g, h)
}

pub fn is_equal_to_nimber(g: &SumPosition, n: Nimber) -> Result<bool> {
    Solver::default().is_equal_to_nimber(g, n)
}
