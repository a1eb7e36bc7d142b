//! Multistate XOR-SAT and its two-player assignment game.
//!
//! Each clause is an XOR of literals `var@state`; a literal is true when its
//! variable is set to that state. Player X owns some variables and wants
//! every clause to hold, player Y owns the rest and wants one to fail.
//! Players alternate assigning one of their own variables.
//!
//! Instance documents are JSON:
//!
//! ```json
//! {"variables": [{"name": "x0", "owner": "X", "states": ["a", "b"]}],
//!  "clauses": [["x0@a"], ["x0@a", "x0@b"]],
//!  "firstPlayer": "X"}
//! ```

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::game::DEFAULT_NODE_BUDGET;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Owner {
    X,
    Y,
}

impl Owner {
    pub fn opponent(self) -> Owner {
        match self {
            Owner::X => Owner::Y,
            Owner::Y => Owner::X,
        }
    }
}

impl fmt::Display for Owner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Owner::X => "X",
            Owner::Y => "Y",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultistateVariable {
    pub name: String,
    pub owner: Owner,
    pub states: Vec<String>,
}

/// Variable `var` is set to its state number `state`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub var: usize,
    pub state: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpmxInstance {
    variables: Vec<MultistateVariable>,
    clauses: Vec<Vec<Literal>>,
}

/// Partial assignment: state index per variable.
pub type Assignment = Vec<Option<usize>>;

impl EpmxInstance {
    pub fn new(variables: Vec<MultistateVariable>, clauses: Vec<Vec<Literal>>) -> Result<EpmxInstance> {
        let mut names = std::collections::HashSet::new();
        for v in &variables {
            if v.states.is_empty() {
                return Err(Error::precondition(format!("variable {} has no states", v.name)));
            }
            if !names.insert(v.name.as_str()) {
                return Err(Error::precondition(format!("variable {} declared twice", v.name)));
            }
            let mut seen = std::collections::HashSet::new();
            if let Some(dup) = v.states.iter().find(|s| !seen.insert(s.as_str())) {
                return Err(Error::precondition(format!("variable {} repeats state {dup}", v.name)));
            }
        }
        for (t, clause) in clauses.iter().enumerate() {
            if clause.is_empty() {
                return Err(Error::precondition(format!("clause {t} is empty")));
            }
            for lit in clause {
                let ok = variables.get(lit.var).is_some_and(|v| lit.state < v.states.len());
                if !ok {
                    return Err(Error::precondition(format!("clause {t} references an undeclared literal")));
                }
            }
        }
        Ok(EpmxInstance { variables, clauses })
    }

    pub fn variables(&self) -> &[MultistateVariable] {
        &self.variables
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    pub fn owned_by(&self, owner: Owner) -> impl Iterator<Item = usize> + '_ {
        (0..self.variables.len()).filter(move |&i| self.variables[i].owner == owner)
    }

    pub fn is_equal_partitioned(&self) -> bool {
        self.owned_by(Owner::X).count() == self.owned_by(Owner::Y).count()
    }

    pub fn literal_name(&self, lit: Literal) -> String {
        let v = &self.variables[lit.var];
        format!("{}@{}", v.name, v.states[lit.state])
    }

    pub fn parse_literal(&self, text: &str) -> Result<Literal> {
        let (name, state) = text
            .split_once('@')
            .ok_or_else(|| Error::parse(format!("literal `{text}` is not of the form var@state")))?;
        let var = self
            .variables
            .iter()
            .position(|v| v.name == name)
            .ok_or_else(|| Error::parse(format!("unknown variable `{name}`")))?;
        let state = self.variables[var]
            .states
            .iter()
            .position(|s| s == state)
            .ok_or_else(|| Error::parse(format!("variable `{name}` has no state `{state}`")))?;
        Ok(Literal { var, state })
    }

    fn check_total(&self, assignment: &[Option<usize>]) -> Result<()> {
        if assignment.len() != self.variables.len() || assignment.iter().any(Option::is_none) {
            return Err(Error::IncompleteAssignment);
        }
        Ok(())
    }

    /// True iff every clause has an odd number of true literals.
    pub fn evaluate(&self, assignment: &[Option<usize>]) -> Result<bool> {
        self.check_total(assignment)?;
        Ok(self
            .clauses
            .iter()
            .all(|clause| clause.iter().filter(|lit| assignment[lit.var] == Some(lit.state)).count() % 2 == 1))
    }

    pub fn winner(&self, assignment: &[Option<usize>]) -> Result<Owner> {
        Ok(if self.evaluate(assignment)? { Owner::X } else { Owner::Y })
    }

    /// Appends, for each variable with a state that no clause mentions, one
    /// clause listing every state of that variable. Such a clause always has
    /// exactly one true literal.
    pub fn complete_missing_states(&self) -> EpmxInstance {
        let mut used = vec![Vec::new(); self.variables.len()];
        for (i, v) in self.variables.iter().enumerate() {
            used[i] = vec![false; v.states.len()];
        }
        for lit in self.clauses.iter().flatten() {
            used[lit.var][lit.state] = true;
        }
        let mut clauses = self.clauses.clone();
        for (var, flags) in used.iter().enumerate() {
            if flags.iter().any(|u| !u) {
                clauses.push((0..flags.len()).map(|state| Literal { var, state }).collect());
            }
        }
        EpmxInstance { variables: self.variables.clone(), clauses }
    }

    pub fn to_document(&self, first_player: Option<Owner>) -> EpmxDocument {
        EpmxDocument {
            variables: self.variables.clone(),
            clauses: self.clauses.iter().map(|c| c.iter().map(|&l| self.literal_name(l)).collect()).collect(),
            first_player,
        }
    }
}

impl fmt::Display for EpmxInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let clauses: Vec<String> = self
            .clauses
            .iter()
            .map(|c| format!("({})", c.iter().map(|&l| self.literal_name(l)).collect::<Vec<_>>().join(" ^ ")))
            .collect();
        f.write_str(&clauses.join(" & "))
    }
}

/// Serialized form of an instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpmxDocument {
    pub variables: Vec<MultistateVariable>,
    pub clauses: Vec<Vec<String>>,
    #[serde(rename = "firstPlayer", default, skip_serializing_if = "Option::is_none")]
    pub first_player: Option<Owner>,
}

impl EpmxDocument {
    pub fn from_json(text: &str) -> Result<EpmxDocument> {
        serde_json::from_str(text).map_err(|e| Error::parse(format!("EPMX document: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    pub fn instance(&self) -> Result<EpmxInstance> {
        let shell = EpmxInstance::new(self.variables.clone(), Vec::new())?;
        let clauses = self
            .clauses
            .iter()
            .map(|c| c.iter().map(|l| shell.parse_literal(l)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        EpmxInstance::new(self.variables.clone(), clauses)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpmxGameState {
    pub assignment: Assignment,
    pub to_move: Owner,
}

impl EpmxGameState {
    pub fn start(instance: &EpmxInstance, first: Owner) -> EpmxGameState {
        EpmxGameState { assignment: vec![None; instance.variables.len()], to_move: first }
    }

    pub fn is_complete(&self) -> bool {
        self.assignment.iter().all(Option::is_some)
    }

    pub fn legal_moves(&self, instance: &EpmxInstance) -> Vec<Literal> {
        instance
            .owned_by(self.to_move)
            .filter(|&v| self.assignment[v].is_none())
            .flat_map(|var| (0..instance.variables[var].states.len()).map(move |state| Literal { var, state }))
            .collect()
    }

    pub fn play(&self, instance: &EpmxInstance, lit: Literal) -> Result<EpmxGameState> {
        let ok = instance.variables.get(lit.var).is_some_and(|v| v.owner == self.to_move && lit.state < v.states.len())
            && self.assignment[lit.var].is_none();
        if !ok {
            return Err(Error::IllegalMove(format!("{} cannot play {lit:?}", self.to_move)));
        }
        let mut assignment = self.assignment.clone();
        assignment[lit.var] = Some(lit.state);
        Ok(EpmxGameState { assignment, to_move: self.to_move.opponent() })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EpmxSolveConfig {
    /// Positions expanded per root move before giving up.
    pub node_budget: u64,
    pub exec: Exec,
}

impl Default for EpmxSolveConfig {
    fn default() -> Self {
        EpmxSolveConfig { node_budget: DEFAULT_NODE_BUDGET, exec: Exec::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EpmxSolution {
    pub winner: Owner,
    /// First winning move for the starting player, in declaration order.
    pub winning_move: Option<String>,
    pub expanded: u64,
}

/// Clause-parity flips per (variable, state), as bit words.
struct Compiled {
    words: usize,
    flips: Vec<Vec<Vec<u64>>>,
    owners: Vec<Owner>,
    target: Vec<u64>,
}

impl Compiled {
    fn new(instance: &EpmxInstance) -> Compiled {
        let m = instance.clauses.len();
        let words = m.div_ceil(64).max(1);
        let mut flips: Vec<Vec<Vec<u64>>> =
            instance.variables.iter().map(|v| vec![vec![0u64; words]; v.states.len()]).collect();
        for (t, clause) in instance.clauses.iter().enumerate() {
            for lit in clause {
                flips[lit.var][lit.state][t / 64] ^= 1 << (t % 64);
            }
        }
        let mut target = vec![0u64; words];
        for t in 0..m {
            target[t / 64] |= 1 << (t % 64);
        }
        Compiled { words, flips, owners: instance.variables.iter().map(|v| v.owner).collect(), target }
    }
}

/// Search state: clause parities, then assigned-variable bits.
type Key = Box<[u64]>;

struct Search<'a> {
    c: &'a Compiled,
    memo: HashMap<Key, bool>,
    expanded: u64,
    budget: u64,
}

impl Search<'_> {
    /// Whether X wins from `key` with `to_move` about to play.
    fn x_wins(&mut self, key: &mut [u64], to_move: Owner) -> Result<bool> {
        if let Some(&w) = self.memo.get(&*key) {
            return Ok(w);
        }
        self.expanded += 1;
        if self.expanded > self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        let words = self.c.words;
        let assigned = |key: &[u64], v: usize| key[words + v / 64] >> (v % 64) & 1 == 1;
        let mut any_move = false;
        let mut result = to_move == Owner::Y;
        'vars: for v in 0..self.c.owners.len() {
            if self.c.owners[v] != to_move || assigned(key, v) {
                continue;
            }
            any_move = true;
            key[words + v / 64] |= 1 << (v % 64);
            for flip in &self.c.flips[v] {
                xor_into(&mut key[..words], flip);
                let child = self.x_wins(key, to_move.opponent());
                xor_into(&mut key[..words], flip);
                let child = match child {
                    Ok(w) => w,
                    Err(e) => {
                        key[words + v / 64] &= !(1 << (v % 64));
                        return Err(e);
                    }
                };
                if child == (to_move == Owner::X) {
                    result = child;
                    key[words + v / 64] &= !(1 << (v % 64));
                    break 'vars;
                }
            }
            key[words + v / 64] &= !(1 << (v % 64));
        }
        if !any_move {
            result = if self.c.owners.iter().enumerate().all(|(v, _)| assigned(key, v)) {
                key[..words] == self.c.target[..]
            } else {
                // The mover is out of variables; the opponent keeps playing.
                self.x_wins(key, to_move.opponent())?
            };
        }
        self.memo.insert(key.to_vec().into_boxed_slice(), result);
        Ok(result)
    }
}

fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

/// Minimax winner when `first` moves first. Each root move is searched
/// independently (in parallel under [`Exec::Parallel`]) with its own budget.
pub fn solve(instance: &EpmxInstance, first: Owner, config: EpmxSolveConfig) -> Result<EpmxSolution> {
    if !instance.is_equal_partitioned() {
        return Err(Error::precondition(format!(
            "not equal-partitioned: X owns {} variables, Y owns {}",
            instance.owned_by(Owner::X).count(),
            instance.owned_by(Owner::Y).count()
        )));
    }
    let compiled = Compiled::new(instance);
    let n = instance.variables.len();
    let root: Vec<u64> = vec![0; compiled.words + n.div_ceil(64)];
    let moves = EpmxGameState::start(instance, first).legal_moves(instance);
    if moves.is_empty() {
        let winner = if root[..compiled.words] == compiled.target[..] { Owner::X } else { Owner::Y };
        return Ok(EpmxSolution { winner, winning_move: None, expanded: 1 });
    }
    let results = config.exec.try_map(&moves, |lit| {
        let mut search = Search { c: &compiled, memo: HashMap::new(), expanded: 0, budget: config.node_budget };
        let mut key = root.clone();
        key[compiled.words + lit.var / 64] |= 1 << (lit.var % 64);
        xor_into(&mut key[..compiled.words], &compiled.flips[lit.var][lit.state]);
        let x = search.x_wins(&mut key, first.opponent())?;
        Ok::<_, Error>((x, search.expanded))
    })?;
    let expanded = 1 + results.iter().map(|r| r.1).sum::<u64>();
    let best = results.iter().position(|&(x, _)| x == (first == Owner::X));
    Ok(EpmxSolution {
        winner: if best.is_some() { first } else { first.opponent() },
        winning_move: best.map(|i| instance.literal_name(moves[i])),
        expanded,
    })
}

/// Plain exhaustive minimax over full assignments, no memo. Test oracle.
pub fn solve_brute_force(instance: &EpmxInstance, first: Owner) -> Result<Owner> {
    fn go(instance: &EpmxInstance, state: &EpmxGameState) -> Result<Owner> {
        if state.is_complete() {
            return instance.winner(&state.assignment);
        }
        let moves = state.legal_moves(instance);
        if moves.is_empty() {
            let passed = EpmxGameState { assignment: state.assignment.clone(), to_move: state.to_move.opponent() };
            return go(instance, &passed);
        }
        for lit in moves {
            if go(instance, &state.play(instance, lit)?)? == state.to_move {
                return Ok(state.to_move);
            }
        }
        Ok(state.to_move.opponent())
    }
    go(instance, &EpmxGameState::start(instance, first))
}
