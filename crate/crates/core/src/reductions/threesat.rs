//! Restricted 3-CNF to EPMX.
//!
//! Each CNF variable becomes an X variable whose states pick which of its
//! clauses it satisfies: a null state, one state for the sign occurring once,
//! and one state per non-empty subset of the other sign's clauses. With one
//! positive occurrence in clause r and negative ones in s and t the states are
//! `a` (none), `b` (r), `c` (s and t), `d` (s), `e` (t). Y gets as many
//! two-state dummies. The clauses are the CNF clauses, then `c_x` listing
//! every X state, then `c_y` listing every Y state; both always hold because
//! the variable count is odd.

use serde::Serialize;

use super::cnf::CnfInstance;
use crate::epmx::{Assignment, EpmxInstance, Literal, MultistateVariable, Owner};
use crate::error::{Error, Result};

/// One state of a variable gadget.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GadgetState {
    pub name: String,
    /// Truth value the state stands for; `None` for the null state.
    pub value: Option<bool>,
    /// CNF clauses this state's literal appears in.
    pub clauses: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VariableGadget {
    pub variable: String,
    pub states: Vec<GadgetState>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeSatReduction {
    pub instance: EpmxInstance,
    pub gadgets: Vec<VariableGadget>,
    /// Index of the `c_x` clause; `c_y` follows it.
    pub cx_clause: usize,
}

fn state_name(i: usize) -> String {
    let mut name = String::new();
    let mut i = i;
    loop {
        name.insert(0, (b'a' + (i % 26) as u8) as char);
        if i < 26 {
            return name;
        }
        i = i / 26 - 1;
    }
}

/// Non-empty subsets, the full set first and then singletons (then the rest).
fn subsets(items: &[usize]) -> Vec<Vec<usize>> {
    let n = items.len();
    let mut masks: Vec<u32> = (1..1u32 << n).collect();
    let full = (1u32 << n) - 1;
    masks.sort_by_key(|&m| (m != full, m.count_ones() != 1, m.count_ones(), m));
    masks.dedup();
    masks.into_iter().map(|m| (0..n).filter(|&i| m >> i & 1 == 1).map(|i| items[i]).collect()).collect()
}

pub fn threesat_to_epmx(cnf: &CnfInstance) -> Result<ThreeSatReduction> {
    cnf.check_restricted()?;
    let n = cnf.variable_count;
    let mut gadgets = Vec::with_capacity(n);
    for (v, occ) in cnf.occurrences().into_iter().enumerate() {
        // The sign occurring once gets a single state; ties go to the positive sign.
        let (single, single_value, multi, multi_value) = if occ.positive.len() <= occ.negative.len() {
            (occ.positive, true, occ.negative, false)
        } else {
            (occ.negative, false, occ.positive, true)
        };
        let mut states = vec![GadgetState { name: String::new(), value: None, clauses: vec![] }];
        for set in subsets(&single) {
            states.push(GadgetState { name: String::new(), value: Some(single_value), clauses: set });
        }
        for set in subsets(&multi) {
            states.push(GadgetState { name: String::new(), value: Some(multi_value), clauses: set });
        }
        for (i, s) in states.iter_mut().enumerate() {
            s.name = state_name(i);
        }
        gadgets.push(VariableGadget { variable: format!("x{v}"), states });
    }

    let mut variables: Vec<MultistateVariable> = gadgets
        .iter()
        .map(|g| MultistateVariable {
            name: g.variable.clone(),
            owner: Owner::X,
            states: g.states.iter().map(|s| s.name.clone()).collect(),
        })
        .collect();
    variables.extend((0..n).map(|i| MultistateVariable {
        name: format!("y{i}"),
        owner: Owner::Y,
        states: vec!["a".into(), "b".into()],
    }));

    let mut clauses: Vec<Vec<Literal>> = vec![Vec::new(); cnf.clauses.len()];
    for (var, g) in gadgets.iter().enumerate() {
        for (state, s) in g.states.iter().enumerate() {
            for &t in &s.clauses {
                clauses[t].push(Literal { var, state });
            }
        }
    }
    let cx_clause = clauses.len();
    let all_states = |range: std::ops::Range<usize>, vars: &[MultistateVariable]| -> Vec<Literal> {
        range.flat_map(|var| (0..vars[var].states.len()).map(move |state| Literal { var, state })).collect()
    };
    clauses.push(all_states(0..n, &variables));
    clauses.push(all_states(n..2 * n, &variables));
    let instance = EpmxInstance::new(variables, clauses)?;
    Ok(ThreeSatReduction { instance, gadgets, cx_clause })
}

/// EPMX assignment built greedily from a satisfying CNF assignment: each
/// variable takes the state covering exactly those of its satisfied clauses
/// that no earlier variable covered. Every clause then has exactly one true
/// literal.
pub fn epmx_solution_from_sat(cnf: &CnfInstance, sat: &[bool], reduction: &ThreeSatReduction) -> Result<Assignment> {
    if sat.len() != cnf.variable_count || !cnf.satisfied_by(sat) {
        return Err(Error::InvalidWitness("assignment does not satisfy the formula".into()));
    }
    let occ = cnf.occurrences();
    let mut covered = vec![false; cnf.clauses.len()];
    let n = cnf.variable_count;
    let mut assignment: Assignment = vec![None; 2 * n];
    for (v, g) in reduction.gadgets.iter().enumerate() {
        let mine = if sat[v] { &occ[v].positive } else { &occ[v].negative };
        let needed: Vec<usize> = mine.iter().copied().filter(|&t| !covered[t]).collect();
        let state = g
            .states
            .iter()
            .position(|s| s.clauses == needed && (needed.is_empty() || s.value == Some(sat[v])))
            .expect("every subset of one sign's clauses has a state");
        for &t in &needed {
            covered[t] = true;
        }
        assignment[v] = Some(state);
    }
    for y in &mut assignment[n..2 * n] {
        *y = Some(0);
    }
    if !reduction.instance.evaluate(&assignment)? {
        return Err(Error::InvalidWitness("greedy assignment failed to satisfy the EPMX formula".into()));
    }
    Ok(assignment)
}

/// CNF assignment read back from a satisfying EPMX assignment. Null states
/// leave the variable free; it is set false.
pub fn sat_solution_from_epmx(
    cnf: &CnfInstance,
    reduction: &ThreeSatReduction,
    assignment: &[Option<usize>],
) -> Result<Vec<bool>> {
    if !reduction.instance.evaluate(assignment)? {
        return Err(Error::InvalidWitness("assignment does not satisfy the EPMX formula".into()));
    }
    let sat: Vec<bool> = reduction
        .gadgets
        .iter()
        .enumerate()
        .map(|(v, g)| g.states[assignment[v].expect("evaluate checked totality")].value.unwrap_or(false))
        .collect();
    if !cnf.satisfied_by(&sat) {
        return Err(Error::InvalidWitness("read-back assignment does not satisfy the formula".into()));
    }
    Ok(sat)
}
