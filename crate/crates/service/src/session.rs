//! Game sessions: an initial position, the moves played since, and whose
//! side the human is on. The current position is always the replay of the
//! history from the initial one.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use superstars::blackout::{BlackoutMove, BlackoutPosition};
use superstars::paintcan::{self, PaintCanMove, PaintCanPosition};
use superstars::{Error, Player};

use crate::ai::Hint;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ruleset {
    Paintcan,
    Blackout,
}

/// Either ruleset's notion of a player, written as `Left`/`Right` or
/// `AllOff`/`OneOn`. Blackout maps AllOff to Left.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SideName {
    Left,
    Right,
    AllOff,
    OneOn,
}

impl SideName {
    pub fn player(self) -> Player {
        match self {
            SideName::Left | SideName::AllOff => Player::Left,
            SideName::Right | SideName::OneOn => Player::Right,
        }
    }

    pub fn for_ruleset(ruleset: Ruleset, p: Player) -> SideName {
        match (ruleset, p) {
            (Ruleset::Paintcan, Player::Left) => SideName::Left,
            (Ruleset::Paintcan, Player::Right) => SideName::Right,
            (Ruleset::Blackout, Player::Left) => SideName::AllOff,
            (Ruleset::Blackout, Player::Right) => SideName::OneOn,
        }
    }
}

/// Paint Can document: stacks in text form plus the player to move. A bare
/// string is accepted too, with Left to move.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PaintCanDocument {
    pub stacks: PaintCanPosition,
    #[serde(default = "left")]
    pub to_move: Player,
}

fn left() -> Player {
    Player::Left
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Position {
    PaintCan { stacks: PaintCanPosition, to_move: Player },
    Blackout(BlackoutPosition),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Move {
    PaintCan(PaintCanMove),
    Blackout(BlackoutMove),
}

impl Position {
    pub fn parse(ruleset: Ruleset, doc: &Value) -> Result<Position, Error> {
        match ruleset {
            Ruleset::Paintcan => {
                let doc = match doc {
                    Value::String(s) => PaintCanDocument { stacks: s.parse()?, to_move: Player::Left },
                    other => serde_json::from_value(other.clone())
                        .map_err(|e| Error::Parse(format!("Paint Can document: {e}")))?,
                };
                Ok(Position::PaintCan { stacks: doc.stacks, to_move: doc.to_move })
            }
            Ruleset::Blackout => serde_json::from_value(doc.clone())
                .map(Position::Blackout)
                .map_err(|e| Error::Parse(format!("Blackout document: {e}"))),
        }
    }

    pub fn ruleset(&self) -> Ruleset {
        match self {
            Position::PaintCan { .. } => Ruleset::Paintcan,
            Position::Blackout(_) => Ruleset::Blackout,
        }
    }

    pub fn document(&self) -> Value {
        match self {
            Position::PaintCan { stacks, to_move } => {
                serde_json::to_value(PaintCanDocument { stacks: stacks.clone(), to_move: *to_move })
            }
            Position::Blackout(p) => serde_json::to_value(p),
        }
        .expect("positions serialize")
    }

    pub fn to_move(&self) -> Player {
        match self {
            Position::PaintCan { to_move, .. } => *to_move,
            Position::Blackout(p) => p.to_move().player(),
        }
    }

    pub fn legal_moves(&self) -> Vec<Move> {
        match self {
            Position::PaintCan { stacks, to_move } => {
                paintcan::legal_moves(stacks, *to_move).into_iter().map(Move::PaintCan).collect()
            }
            Position::Blackout(p) => p.legal_moves().into_iter().map(Move::Blackout).collect(),
        }
    }

    /// The winner, once the player to move is stuck.
    pub fn winner(&self) -> Option<Player> {
        match self {
            Position::PaintCan { .. } => self.legal_moves().is_empty().then(|| self.to_move().opponent()),
            Position::Blackout(p) => p.loser_if_stuck().map(|s| s.opponent().player()),
        }
    }

    pub fn apply(&self, mv: Move) -> Result<Position, Error> {
        match (self, mv) {
            (Position::PaintCan { stacks, to_move }, Move::PaintCan(m)) => Ok(Position::PaintCan {
                stacks: paintcan::apply_move(stacks, *to_move, m)?,
                to_move: to_move.opponent(),
            }),
            (Position::Blackout(p), Move::Blackout(m)) => Ok(Position::Blackout(p.apply_move(m)?)),
            _ => Err(Error::IllegalMove("move belongs to the other ruleset".into())),
        }
    }

    /// Reads a move document in this position's ruleset.
    pub fn parse_move(&self, doc: &Value) -> Result<Move, Error> {
        let parsed = match self {
            Position::PaintCan { .. } => serde_json::from_value(doc.clone()).map(Move::PaintCan),
            Position::Blackout(_) => serde_json::from_value(doc.clone()).map(Move::Blackout),
        };
        parsed.map_err(|e| Error::Parse(format!("move document: {e}")))
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HistoryEntry {
    pub by: SideName,
    #[serde(rename = "move")]
    pub mv: Move,
    /// Set on AI moves.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<&'static str>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub approximate: bool,
}

#[derive(Debug)]
pub struct Session {
    pub id: String,
    pub initial: Position,
    pub position: Position,
    pub history: Vec<HistoryEntry>,
    pub human: Player,
    pub ai_budget: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoveError {
    Finished,
    OutOfTurn,
}

impl Session {
    pub fn new(id: String, initial: Position, human: Player, ai_budget: u64) -> Session {
        Session { id, position: initial.clone(), initial, history: Vec::new(), human, ai_budget }
    }

    pub fn ruleset(&self) -> Ruleset {
        self.initial.ruleset()
    }

    pub fn is_finished(&self) -> bool {
        self.position.winner().is_some()
    }

    pub fn ai_to_move(&self) -> bool {
        !self.is_finished() && self.position.to_move() != self.human
    }

    fn push(&mut self, mv: Move, hint: Option<&Hint>) -> Result<(), Error> {
        let next = self.position.apply(mv)?;
        let by = SideName::for_ruleset(self.ruleset(), self.position.to_move());
        self.history.push(HistoryEntry {
            by,
            mv,
            source: hint.map(|h| h.source),
            approximate: hint.is_some_and(|h| h.approximate),
        });
        self.position = next;
        Ok(())
    }

    /// Applies a human move. The position is untouched on any error. A
    /// Blackout switch naming the AI's side counts as out of turn.
    pub fn human_move(&mut self, mv: Move) -> Result<Result<(), MoveError>, Error> {
        if self.is_finished() {
            return Ok(Err(MoveError::Finished));
        }
        let side_named = match mv {
            Move::Blackout(BlackoutMove::Switch { side, .. }) => Some(side.player()),
            _ => None,
        };
        if self.position.to_move() != self.human || side_named.is_some_and(|p| p != self.human) {
            return Ok(Err(MoveError::OutOfTurn));
        }
        self.push(mv, None)?;
        Ok(Ok(()))
    }

    /// Lets the AI move until the human is to move or the game is over.
    pub fn run_ai(&mut self) -> Result<(), Error> {
        while self.ai_to_move() {
            let hint = crate::ai::choose(&self.position, self.ai_budget)?;
            self.push(hint.mv, Some(&hint))?;
        }
        Ok(())
    }

    /// Replays the history from the initial position.
    pub fn replay(&self) -> Result<Position, Error> {
        self.history.iter().try_fold(self.initial.clone(), |p, e| p.apply(e.mv))
    }

    pub fn state(&self) -> SessionState {
        let winner = self.position.winner();
        let human_to_act = winner.is_none() && self.position.to_move() == self.human;
        SessionState {
            id: self.id.clone(),
            ruleset: self.ruleset(),
            position: self.position.document(),
            to_move: SideName::for_ruleset(self.ruleset(), self.position.to_move()),
            human_side: SideName::for_ruleset(self.ruleset(), self.human),
            status: if winner.is_some() { "finished" } else { "ongoing" },
            winner: winner.map(|w| SideName::for_ruleset(self.ruleset(), w)),
            legal_moves: if human_to_act { self.position.legal_moves() } else { Vec::new() },
            history: self.history.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SessionState {
    pub id: String,
    pub ruleset: Ruleset,
    pub position: Value,
    pub to_move: SideName,
    pub human_side: SideName,
    pub status: &'static str,
    pub winner: Option<SideName>,
    pub legal_moves: Vec<Move>,
    pub history: Vec<HistoryEntry>,
}
