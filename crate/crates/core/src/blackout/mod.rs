//! Blackout: two players flip switches wired to a row of lights.
//!
//! AllOff (Left) and OneOn (Right) each own a list of switches. A move picks
//! one of the mover's unused switches and either leaves it off or turns it on,
//! toggling every light it is wired to; the switch is used up either way.
//! Once OneOn has no switches left they may pass while some light is on and
//! passes remain. Play is normal play: a player with no move loses.
//!
//! Documents are JSON with bit strings, bit `i` being light `e_(i+1)`:
//!
//! ```json
//! {"lightCount": 2, "lights": "11", "allOffRows": ["10", "01", "11"],
//!  "oneOnRows": ["10", "11"], "passBudget": 2, "toMove": "OneOn"}
//! ```

mod bits;
mod gf2;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use bits::Bits;
pub use gf2::gf2_solve;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::game::{Player, DEFAULT_NODE_BUDGET};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    AllOff,
    OneOn,
}

impl Side {
    pub fn opponent(self) -> Side {
        match self {
            Side::AllOff => Side::OneOn,
            Side::OneOn => Side::AllOff,
        }
    }

    pub fn player(self) -> Player {
        match self {
            Side::AllOff => Player::Left,
            Side::OneOn => Player::Right,
        }
    }

    pub fn from_player(p: Player) -> Side {
        match p {
            Player::Left => Side::AllOff,
            Player::Right => Side::OneOn,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::AllOff => "AllOff",
            Side::OneOn => "OneOn",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "camelCase")]
pub enum BlackoutMove {
    /// Use row `row` of `side`'s switches; `on` toggles its lights.
    Switch {
        side: Side,
        row: usize,
        on: bool,
    },
    Pass,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "BlackoutDocument", into = "BlackoutDocument")]
pub struct BlackoutPosition {
    lights: Bits,
    all_off_rows: Vec<Bits>,
    one_on_rows: Vec<Bits>,
    pass_budget: u32,
    to_move: Side,
}

/// Serialized form of a position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BlackoutDocument {
    pub light_count: usize,
    pub lights: Bits,
    pub all_off_rows: Vec<Bits>,
    pub one_on_rows: Vec<Bits>,
    pub pass_budget: u32,
    pub to_move: Side,
}

impl TryFrom<BlackoutDocument> for BlackoutPosition {
    type Error = Error;

    fn try_from(d: BlackoutDocument) -> Result<BlackoutPosition> {
        if d.lights.len() != d.light_count {
            return Err(Error::parse(format!("lights has {} bits, lightCount is {}", d.lights.len(), d.light_count)));
        }
        BlackoutPosition::new(d.lights, d.all_off_rows, d.one_on_rows, d.pass_budget, d.to_move)
    }
}

impl From<BlackoutPosition> for BlackoutDocument {
    fn from(p: BlackoutPosition) -> BlackoutDocument {
        BlackoutDocument {
            light_count: p.lights.len(),
            lights: p.lights,
            all_off_rows: p.all_off_rows,
            one_on_rows: p.one_on_rows,
            pass_budget: p.pass_budget,
            to_move: p.to_move,
        }
    }
}

impl BlackoutPosition {
    pub fn new(
        lights: Bits,
        all_off_rows: Vec<Bits>,
        one_on_rows: Vec<Bits>,
        pass_budget: u32,
        to_move: Side,
    ) -> Result<BlackoutPosition> {
        for row in all_off_rows.iter().chain(&one_on_rows) {
            if row.len() != lights.len() {
                return Err(Error::precondition(format!("row {row} does not have {} bits", lights.len())));
            }
            if row.is_zero() {
                return Err(Error::precondition("every switch must be wired to at least one light"));
            }
        }
        Ok(BlackoutPosition { lights, all_off_rows, one_on_rows, pass_budget, to_move })
    }

    pub fn from_json(text: &str) -> Result<BlackoutPosition> {
        serde_json::from_str(text).map_err(|e| Error::parse(format!("Blackout document: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("positions always serialize")
    }

    pub fn lights(&self) -> &Bits {
        &self.lights
    }

    pub fn rows(&self, side: Side) -> &[Bits] {
        match side {
            Side::AllOff => &self.all_off_rows,
            Side::OneOn => &self.one_on_rows,
        }
    }

    pub fn pass_budget(&self) -> u32 {
        self.pass_budget
    }

    pub fn to_move(&self) -> Side {
        self.to_move
    }

    pub fn legal_moves(&self) -> Vec<BlackoutMove> {
        let side = self.to_move;
        let rows = self.rows(side);
        if side == Side::OneOn && rows.is_empty() {
            return if !self.lights.is_zero() && self.pass_budget > 0 { vec![BlackoutMove::Pass] } else { vec![] };
        }
        (0..rows.len()).flat_map(|row| [false, true].map(|on| BlackoutMove::Switch { side, row, on })).collect()
    }

    pub fn is_legal(&self, mv: BlackoutMove) -> bool {
        match mv {
            BlackoutMove::Pass => {
                self.to_move == Side::OneOn
                    && self.one_on_rows.is_empty()
                    && !self.lights.is_zero()
                    && self.pass_budget > 0
            }
            BlackoutMove::Switch { side, row, .. } => side == self.to_move && row < self.rows(side).len(),
        }
    }

    pub fn apply_move(&self, mv: BlackoutMove) -> Result<BlackoutPosition> {
        if !self.is_legal(mv) {
            return Err(Error::IllegalMove(format!("{mv:?} is not available to {}", self.to_move)));
        }
        let mut next = self.clone();
        match mv {
            BlackoutMove::Pass => next.pass_budget -= 1,
            BlackoutMove::Switch { side, row, on } => {
                let rows = match side {
                    Side::AllOff => &mut next.all_off_rows,
                    Side::OneOn => &mut next.one_on_rows,
                };
                let r = rows.remove(row);
                if on {
                    next.lights.xor_assign(&r);
                }
            }
        }
        next.to_move = self.to_move.opponent();
        Ok(next)
    }

    /// The player to move when they have no legal move (and so lose).
    pub fn loser_if_stuck(&self) -> Option<Side> {
        self.legal_moves().is_empty().then_some(self.to_move)
    }
}

impl fmt::Display for BlackoutPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = |r: &[Bits]| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        write!(
            f,
            "lights {} | AllOff [{}] | OneOn [{}] | passes {} | {} to move",
            self.lights,
            rows(&self.all_off_rows),
            rows(&self.one_on_rows),
            self.pass_budget,
            self.to_move
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlackoutSolveConfig {
    /// Positions expanded per root move before giving up.
    pub node_budget: u64,
    /// Evaluate positions without OneOn switches in closed form.
    pub endgame_shortcut: bool,
    pub exec: Exec,
}

impl Default for BlackoutSolveConfig {
    fn default() -> Self {
        BlackoutSolveConfig { node_budget: DEFAULT_NODE_BUDGET, endgame_shortcut: true, exec: Exec::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BlackoutSolution {
    pub winner: Side,
    /// First winning move for the player to move, in [`BlackoutPosition::legal_moves`] order.
    pub winning_move: Option<BlackoutMove>,
    pub expanded: u64,
}

/// Rows are kept sorted so identical switches share memo entries.
#[derive(Clone, PartialEq, Eq, Hash)]
struct State {
    lights: Bits,
    all_off: Vec<Bits>,
    one_on: Vec<Bits>,
    budget: u32,
    to_move: Side,
}

impl State {
    fn of(pos: &BlackoutPosition) -> State {
        let mut all_off = pos.all_off_rows.clone();
        let mut one_on = pos.one_on_rows.clone();
        all_off.sort();
        one_on.sort();
        State { lights: pos.lights.clone(), all_off, one_on, budget: pos.pass_budget, to_move: pos.to_move }
    }
}

struct Search {
    memo: HashMap<State, bool>,
    config: BlackoutSolveConfig,
    expanded: u64,
}

impl Search {
    fn new(config: BlackoutSolveConfig) -> Search {
        Search { memo: HashMap::new(), config, expanded: 0 }
    }

    /// Exact value once OneOn is out of switches. OneOn can only pass, so
    /// AllOff wins by darkening every light after one of its moves, or by
    /// having more switches than OneOn has passes.
    fn endgame(s: &State) -> bool {
        let (lights_on, r, b) = (!s.lights.is_zero(), s.all_off.len() as u64, s.budget as u64);
        match s.to_move {
            Side::OneOn if !lights_on || b == 0 => true,
            Side::OneOn => Search::endgame(&State { to_move: Side::AllOff, budget: s.budget - 1, ..s.clone() }),
            Side::AllOff if r == 0 => false,
            Side::AllOff if r > b => true,
            Side::AllOff => gf2_solve(&s.lights, &s.all_off).is_some(),
        }
    }

    /// Whether AllOff wins from `s`.
    fn all_off_wins(&mut self, s: &State) -> Result<bool> {
        if self.config.endgame_shortcut && s.one_on.is_empty() {
            return Ok(Search::endgame(s));
        }
        if let Some(&w) = self.memo.get(s) {
            return Ok(w);
        }
        self.expanded += 1;
        if self.expanded > self.config.node_budget {
            return Err(Error::BudgetExceeded { budget: self.config.node_budget });
        }
        let mover = s.to_move;
        let mut result = mover == Side::OneOn;
        let mut any = false;
        for child in children(s) {
            any = true;
            if self.all_off_wins(&child)? == (mover == Side::AllOff) {
                result = mover == Side::AllOff;
                break;
            }
        }
        if !any {
            result = mover == Side::OneOn;
        }
        self.memo.insert(s.clone(), result);
        Ok(result)
    }
}

fn children(s: &State) -> Vec<State> {
    let rows = match s.to_move {
        Side::AllOff => &s.all_off,
        Side::OneOn => &s.one_on,
    };
    if s.to_move == Side::OneOn && rows.is_empty() {
        if s.lights.is_zero() || s.budget == 0 {
            return vec![];
        }
        return vec![State { budget: s.budget - 1, to_move: Side::AllOff, ..s.clone() }];
    }
    let mut out = Vec::with_capacity(rows.len() * 2);
    for i in 0..rows.len() {
        if i > 0 && rows[i] == rows[i - 1] {
            continue;
        }
        let mut rest = rows.clone();
        let row = rest.remove(i);
        for on in [false, true] {
            let lights = if on { s.lights.xor(&row) } else { s.lights.clone() };
            let mut child = State { lights, budget: s.budget, to_move: s.to_move.opponent(), ..s.clone() };
            match s.to_move {
                Side::AllOff => child.all_off = rest.clone(),
                Side::OneOn => child.one_on = rest.clone(),
            }
            out.push(child);
        }
    }
    out
}

/// Winner under optimal play. Root moves are searched independently, in
/// parallel under [`Exec::Parallel`], each with its own budget.
pub fn solve(pos: &BlackoutPosition, config: BlackoutSolveConfig) -> Result<BlackoutSolution> {
    let moves = pos.legal_moves();
    let mover = pos.to_move;
    if moves.is_empty() {
        return Ok(BlackoutSolution { winner: mover.opponent(), winning_move: None, expanded: 1 });
    }
    let results = config.exec.try_map(&moves, |&mv| {
        let child = pos.apply_move(mv)?;
        let mut search = Search::new(config);
        let all_off = search.all_off_wins(&State::of(&child))?;
        Ok::<_, Error>((all_off, search.expanded))
    })?;
    let expanded = 1 + results.iter().map(|r| r.1).sum::<u64>();
    let best = results.iter().position(|&(all_off, _)| all_off == (mover == Side::AllOff));
    Ok(BlackoutSolution {
        winner: if best.is_some() { mover } else { mover.opponent() },
        winning_move: best.map(|i| moves[i]),
        expanded,
    })
}

/// Winner only, with a single shared memo. Cheaper than [`solve`] when no
/// move is needed.
pub fn winner(pos: &BlackoutPosition, config: BlackoutSolveConfig) -> Result<Side> {
    let mut search = Search::new(config);
    Ok(if search.all_off_wins(&State::of(pos))? { Side::AllOff } else { Side::OneOn })
}
