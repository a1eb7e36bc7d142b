use std::collections::HashMap;
use std::sync::Arc;

use super::{Component, OutcomeClass, Player, SumPosition};
use crate::error::{Error, Result};
use crate::nimber::Nimber;

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    /// Maximum number of positions expanded before giving up.
    pub node_budget: u64,
    /// Fold all nimber components into one and answer all-nimber positions by XOR.
    pub nim_shortcut: bool,
    pub memoize: bool,
    /// Answer "is there a losing `*k` below `*n`" from a per-rest incremental scan.
    /// Only effective together with `nim_shortcut` and `memoize`.
    pub nim_prefix_scan: bool,
}

impl Default for SolverConfig {
    fn default() -> SolverConfig {
        SolverConfig { node_budget: DEFAULT_NODE_BUDGET, nim_shortcut: true, memoize: true, nim_prefix_scan: true }
    }
}

impl SolverConfig {
    pub fn with_budget(mut self, node_budget: u64) -> SolverConfig {
        self.node_budget = node_budget;
        self
    }

    /// Plain exhaustive search: no folding, no memo.
    pub fn brute_force() -> SolverConfig {
        SolverConfig { nim_shortcut: false, memoize: false, nim_prefix_scan: false, ..SolverConfig::default() }
    }
}

type Rest = Arc<[Component]>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct StateKey {
    rest: Rest,
    nim: u64,
    player: Player,
}

/// Progress of the scan over `rest + *0, rest + *1, ...` for one mover.
#[derive(Debug, Clone, Copy, Default)]
struct PrefixScan {
    scanned: u64,
    first_loss: Option<u64>,
}

/// Memoized normal-play search over sums.
///
/// The memo key is the sorted component multiset (plus the folded nimber),
/// so component order never affects results. The memo persists across
/// queries on the same solver.
#[derive(Debug, Default)]
pub struct Solver {
    config: SolverConfig,
    memo: HashMap<StateKey, bool>,
    prefix: HashMap<(Rest, Player), PrefixScan>,
    expanded: u64,
}

impl Solver {
    pub fn new(config: SolverConfig) -> Solver {
        Solver { config, ..Solver::default() }
    }

    pub fn with_budget(node_budget: u64) -> Solver {
        Solver::new(SolverConfig::default().with_budget(node_budget))
    }

    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    /// Positions expanded since construction (memo hits are not counted).
    pub fn expanded(&self) -> u64 {
        self.expanded
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn clear(&mut self) {
        self.memo.clear();
        self.prefix.clear();
        self.expanded = 0;
    }

    pub fn wins_moving_first(&mut self, g: &SumPosition, player: Player) -> Result<bool> {
        let (rest, nim) = self.normalize(g.components().iter().cloned());
        self.wins(&rest, nim, player)
    }

    pub fn outcome(&mut self, g: &SumPosition) -> Result<OutcomeClass> {
        let left = self.wins_moving_first(g, Player::Left)?;
        let right = self.wins_moving_first(g, Player::Right)?;
        Ok(OutcomeClass::from_wins(left, right))
    }

    pub fn equals(&mut self, g: &SumPosition, h: &SumPosition) -> Result<bool> {
        Ok(self.outcome(&g.plus(&h.negate()))? == OutcomeClass::P)
    }

    pub fn is_equal_to_nimber(&mut self, g: &SumPosition, n: Nimber) -> Result<bool> {
        Ok(self.outcome(&g.clone().with(n))? == OutcomeClass::P)
    }

    /// A move for `player` after which the opponent loses moving first, if any.
    /// Returned as (component index in `g`, resulting component).
    pub fn winning_move(&mut self, g: &SumPosition, player: Player) -> Result<Option<(usize, Component)>> {
        for (i, to) in g.moves(player) {
            let next = g.after_move(i, to.clone());
            if !self.wins_moving_first(&next, player.opponent())? {
                return Ok(Some((i, to)));
            }
        }
        Ok(None)
    }

    fn normalize(&self, comps: impl Iterator<Item = Component>) -> (Vec<Component>, u64) {
        let mut nim = 0;
        let mut rest = Vec::new();
        for c in comps {
            match c {
                Component::Nimber(n) if self.config.nim_shortcut => nim ^= n.0,
                c if c.is_dead() => {}
                c => rest.push(c),
            }
        }
        rest.sort();
        (rest, nim)
    }

    fn wins(&mut self, rest: &[Component], nim: u64, player: Player) -> Result<bool> {
        if self.config.nim_shortcut && rest.is_empty() {
            return Ok(nim != 0);
        }
        let key = self.config.memoize.then(|| StateKey { rest: Rest::from(rest), nim, player });
        if let Some(&known) = key.as_ref().and_then(|k| self.memo.get(k)) {
            return Ok(known);
        }
        self.expanded += 1;
        if self.expanded > self.config.node_budget {
            return Err(Error::BudgetExceeded { budget: self.config.node_budget });
        }

        let result = self.search(rest, nim, player)?;
        if let Some(key) = key {
            self.memo.insert(key, result);
        }
        Ok(result)
    }

    fn search(&mut self, rest: &[Component], nim: u64, player: Player) -> Result<bool> {
        let opp = player.opponent();
        for i in 0..rest.len() {
            if i > 0 && rest[i] == rest[i - 1] {
                continue;
            }
            let mut options = rest[i].options(player);
            options.sort();
            options.dedup();
            for opt in options {
                let (child, child_nim) = self.child(rest, i, opt, nim);
                if !self.wins(&child, child_nim, opp)? {
                    return Ok(true);
                }
            }
        }
        if nim == 0 {
            return Ok(false);
        }
        if self.config.nim_prefix_scan && self.config.memoize {
            let rest: Rest = Rest::from(rest);
            return self.losing_nimber_below(&rest, opp, nim);
        }
        for k in 0..nim {
            if !self.wins(rest, k, opp)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Replaces `rest[index]` by `opt`, keeping the multiset sorted and nimbers folded.
    fn child(&self, rest: &[Component], index: usize, opt: Component, nim: u64) -> (Vec<Component>, u64) {
        let mut child: Vec<Component> = Vec::with_capacity(rest.len());
        child.extend_from_slice(&rest[..index]);
        child.extend_from_slice(&rest[index + 1..]);
        let mut nim = nim;
        match opt {
            Component::Nimber(n) if self.config.nim_shortcut => nim ^= n.0,
            c if c.is_dead() => {}
            c => {
                let at = child.binary_search(&c).unwrap_or_else(|e| e);
                child.insert(at, c);
            }
        }
        (child, nim)
    }

    /// Whether some `k < bound` makes `rest + *k` a loss for `mover` moving first.
    fn losing_nimber_below(&mut self, rest: &Rest, mover: Player, bound: u64) -> Result<bool> {
        let entry_key = (rest.clone(), mover);
        let mut scan = self.prefix.get(&entry_key).copied().unwrap_or_default();
        if let Some(k) = scan.first_loss {
            return Ok(k < bound);
        }
        while scan.scanned < bound {
            let k = scan.scanned;
            let wins = self.wins(rest, k, mover)?;
            // Nested queries only ever touch indices below `k`, so the stored
            // entry cannot have moved past this point.
            scan.scanned = k + 1;
            if !wins {
                scan.first_loss = Some(k);
            }
            self.prefix.insert(entry_key.clone(), scan);
            if !wins {
                return Ok(true);
            }
        }
        Ok(false)
    }
}
