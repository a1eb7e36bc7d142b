//! Move choice for the engine side.
//!
//! Paint Can uses the zero-game strategy when the position has that shape,
//! then a budgeted search over the superstar values. Blackout clears the
//! board by linear algebra once OneOn is out of switches, then searches.
//! When a search runs out of budget the first legal move is played and the
//! hint is marked approximate.

use serde::Serialize;
use superstars::blackout::{self, gf2_solve, BlackoutMove, BlackoutPosition, BlackoutSolveConfig, Side};
use superstars::game::Component;
use superstars::paintcan::{PaintCanMove, PaintCanPosition};
use superstars::superstar::zero_game_win_move;
use superstars::{Error, Player, Solver, SolverConfig, SumPosition};

use crate::session::{Move, Position};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Hint {
    #[serde(rename = "move")]
    pub mv: Move,
    /// `strategy`, `gf2`, `minimax` or `fallback`.
    pub source: &'static str,
    pub approximate: bool,
}

/// The engine's move for the player to act. Errors only when no move exists.
pub fn choose(pos: &Position, budget: u64) -> Result<Hint, Error> {
    let legal = pos.legal_moves();
    let Some(&first) = legal.first() else {
        return Err(Error::IllegalMove("the player to move has no legal move".into()));
    };
    let found = match pos {
        Position::PaintCan { stacks, to_move } => paint_can(stacks, *to_move, budget),
        Position::Blackout(p) => blackout(p, budget),
    };
    Ok(match found {
        Ok(Some((mv, source))) => Hint { mv, source, approximate: false },
        // Every move loses; any legal one will do.
        Ok(None) => Hint { mv: first, source: "minimax", approximate: false },
        Err(Error::BudgetExceeded { .. }) => Hint { mv: first, source: "fallback", approximate: true },
        Err(e) => return Err(e),
    })
}

type Found = Result<Option<(Move, &'static str)>, Error>;

fn paint_can(stacks: &PaintCanPosition, player: Player, budget: u64) -> Found {
    let values = stacks.values();
    if let Ok(m) = zero_game_win_move(&values, player) {
        let mv = PaintCanMove { stack: m.component, brick: m.to.0 as usize };
        return Ok(Some((Move::PaintCan(mv), "strategy")));
    }
    // One component per stack, so component indices are stack indices.
    let sum = SumPosition::new(values.into_iter().map(Component::from));
    let mut solver = Solver::new(SolverConfig::default().with_budget(budget));
    Ok(solver.winning_move(&sum, player)?.map(|(stack, to)| {
        let brick = to.as_nimber().expect("superstar options are nimbers").0 as usize;
        (Move::PaintCan(PaintCanMove { stack, brick }), "minimax")
    }))
}

fn blackout(p: &BlackoutPosition, budget: u64) -> Found {
    if p.to_move() == Side::AllOff && p.rows(Side::OneOn).is_empty() {
        if let Some(rows) = gf2_solve(p.lights(), p.rows(Side::AllOff)) {
            if let Some(&row) = rows.first() {
                return Ok(Some((Move::Blackout(BlackoutMove::Switch { side: Side::AllOff, row, on: true }), "gf2")));
            }
        }
    }
    let config = BlackoutSolveConfig { node_budget: budget, ..BlackoutSolveConfig::default() };
    Ok(blackout::solve(p, config)?.winning_move.map(|m| (Move::Blackout(m), "minimax")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::session::Ruleset;
    use serde_json::json;

    #[test]
    fn strategy_fires_on_zero_game_shapes() {
        // `RG` is {*1|0,*1}, a Right0 superstar: Right owns the only 0-class component.
        let pos = Position::parse(Ruleset::Paintcan, &json!({"stacks": "RG/GG", "toMove": "Right"})).unwrap();
        let h = choose(&pos, 10_000).unwrap();
        assert_eq!(h.source, "strategy");
        assert!(pos.apply(h.mv).is_ok());
    }

    #[test]
    fn clearing_switch_when_one_row_matches() {
        let doc = json!({"lightCount": 2, "lights": "11", "allOffRows": ["11"], "oneOnRows": [], "passBudget": 1, "toMove": "AllOff"});
        let pos = Position::parse(Ruleset::Blackout, &doc).unwrap();
        let h = choose(&pos, 10_000).unwrap();
        assert_eq!(h.source, "gf2");
        assert_eq!(h.mv, Move::Blackout(BlackoutMove::Switch { side: Side::AllOff, row: 0, on: true }));
    }

    #[test]
    fn tiny_budget_is_flagged() {
        let doc = json!({"lightCount": 3, "lights": "111", "allOffRows": ["100", "010", "001"],
                         "oneOnRows": ["110", "011", "101"], "passBudget": 2, "toMove": "OneOn"});
        let pos = Position::parse(Ruleset::Blackout, &doc).unwrap();
        let h = choose(&pos, 1).unwrap();
        assert!(h.approximate);
        assert_eq!(h.source, "fallback");
        assert!(!choose(&pos, 1_000_000).unwrap().approximate);
    }
}
