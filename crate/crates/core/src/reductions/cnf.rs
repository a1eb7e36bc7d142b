//! CNF formulas, DIMACS text, the restricted 3-CNF form and normalization
//! into it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Clauses of signed literals: `v + 1` for variable `v`, `-(v + 1)` for its
/// negation, as in DIMACS.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CnfInstance {
    pub variable_count: usize,
    pub clauses: Vec<Vec<i32>>,
}

fn var_of(lit: i32) -> usize {
    lit.unsigned_abs() as usize - 1
}

fn lit(var: usize, positive: bool) -> i32 {
    let l = var as i32 + 1;
    if positive {
        l
    } else {
        -l
    }
}

impl CnfInstance {
    pub fn new(variable_count: usize, clauses: Vec<Vec<i32>>) -> Result<CnfInstance> {
        for c in &clauses {
            if let Some(&bad) = c.iter().find(|&&l| l == 0 || var_of(l) >= variable_count) {
                return Err(Error::precondition(format!(
                    "literal {bad} is out of range for {variable_count} variables"
                )));
            }
        }
        Ok(CnfInstance { variable_count, clauses })
    }

    pub fn parse_dimacs(text: &str) -> Result<CnfInstance> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            if line.starts_with('%') {
                break;
            }
            if let Some(rest) = line.strip_prefix('p') {
                let fields: Vec<&str> = rest.split_whitespace().collect();
                let parsed = match fields.as_slice() {
                    ["cnf", v, c] => v.parse().ok().zip(c.parse().ok()),
                    _ => None,
                };
                header = Some(parsed.ok_or_else(|| Error::parse(format!("bad DIMACS header `{line}`")))?);
                continue;
            }
            let Some((vars, _)) = header else {
                return Err(Error::parse("clause before the `p cnf` header"));
            };
            for tok in line.split_whitespace() {
                let l: i32 = tok.parse().map_err(|_| Error::parse(format!("bad literal `{tok}`")))?;
                if l == 0 {
                    clauses.push(std::mem::take(&mut current));
                    continue;
                }
                if var_of(l) >= vars {
                    return Err(Error::parse(format!("literal {l} exceeds {vars} variables")));
                }
                current.push(l);
            }
        }
        let (vars, count) = header.ok_or_else(|| Error::parse("missing `p cnf` header"))?;
        if !current.is_empty() {
            clauses.push(current);
        }
        if clauses.len() != count {
            return Err(Error::parse(format!("header declares {count} clauses, found {}", clauses.len())));
        }
        Ok(CnfInstance { variable_count: vars, clauses })
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.variable_count, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                out.push_str(&l.to_string());
                out.push(' ');
            }
            out.push_str("0\n");
        }
        out
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|&l| assignment[var_of(l)] == (l > 0)))
    }

    /// Distinct (clause, literal) occurrences of each variable, split by sign.
    pub fn occurrences(&self) -> Vec<Occurrences> {
        let mut occ = vec![Occurrences::default(); self.variable_count];
        for (t, c) in self.clauses.iter().enumerate() {
            let distinct: BTreeSet<i32> = c.iter().copied().collect();
            for l in distinct {
                let o = &mut occ[var_of(l)];
                if l > 0 {
                    o.positive.push(t);
                } else {
                    o.negative.push(t);
                }
            }
        }
        occ
    }

    /// Checks the form the EPMX gadget needs: three literal slots per clause,
    /// no clause holding a literal and its negation, every variable occurring
    /// at most three times with both signs, and an odd variable count.
    pub fn check_restricted(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::precondition(format!("restriction violated: {msg}")));
        if self.variable_count.is_multiple_of(2) {
            return fail(format!("{} variables is not odd", self.variable_count));
        }
        for (t, c) in self.clauses.iter().enumerate() {
            if c.len() != 3 {
                return fail(format!("clause {t} has {} literals", c.len()));
            }
            if c.iter().any(|&l| c.contains(&-l)) {
                return fail(format!("clause {t} contains a literal and its negation"));
            }
        }
        for (v, o) in self.occurrences().iter().enumerate() {
            if o.positive.is_empty() || o.negative.is_empty() {
                return fail(format!("variable {} does not occur with both signs", v + 1));
            }
            if o.positive.len() + o.negative.len() > 3 {
                return fail(format!("variable {} occurs more than three times", v + 1));
            }
        }
        Ok(())
    }

    pub fn is_restricted(&self) -> bool {
        self.check_restricted().is_ok()
    }
}

impl fmt::Display for CnfInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.to_dimacs().trim_end())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Occurrences {
    pub positive: Vec<usize>,
    pub negative: Vec<usize>,
}

/// `(a ∨ b ∨ c) ∧ (¬a ∨ ¬b ∨ ¬c)` on three fresh variables starting at `first`.
fn dummy_block(first: usize) -> [Vec<i32>; 2] {
    let (a, b, c) = (lit(first, true), lit(first + 1, true), lit(first + 2, true));
    [vec![a, b, c], vec![-a, -b, -c]]
}

/// An equisatisfiable instance in the restricted form; returned unchanged
/// when the input already is restricted.
///
/// Steps: drop tautologies and repeated literals, split wide clauses with
/// fresh chain variables, eliminate pure variables, replace each variable
/// occurring more than three times by a cycle of implied copies, pad clauses
/// to three slots by repeating a literal, and append a three-variable
/// satisfiable block when the variable count comes out even.
pub fn normalize_3sat(cnf: &CnfInstance) -> CnfInstance {
    if cnf.is_restricted() {
        return cnf.clone();
    }
    let unsat = || CnfInstance { variable_count: 1, clauses: vec![vec![1, 1, 1], vec![-1, -1, -1]] };
    let trivially_sat = || CnfInstance { variable_count: 3, clauses: dummy_block(0).to_vec() };

    let mut next_var = cnf.variable_count;
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    for c in &cnf.clauses {
        let mut c: Vec<i32> = c.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        if c.iter().any(|&l| c.contains(&-l)) {
            continue;
        }
        if c.is_empty() {
            return unsat();
        }
        c.sort_by_key(|l| (l.unsigned_abs(), *l < 0));
        while c.len() > 3 {
            let z = lit(next_var, true);
            next_var += 1;
            let tail = c.split_off(2);
            clauses.push(vec![c[0], c[1], z]);
            c = std::iter::once(-z).chain(tail).collect();
        }
        clauses.push(c);
    }

    // Pure variables can be fixed to satisfy all their clauses.
    loop {
        let mut sign: BTreeMap<usize, (bool, bool)> = BTreeMap::new();
        for &l in clauses.iter().flatten() {
            let e = sign.entry(var_of(l)).or_default();
            if l > 0 {
                e.0 = true;
            } else {
                e.1 = true;
            }
        }
        let pure: BTreeSet<i32> = sign.iter().filter(|(_, &(p, n))| p != n).map(|(&v, &(p, _))| lit(v, p)).collect();
        if pure.is_empty() {
            break;
        }
        clauses.retain(|c| !c.iter().any(|l| pure.contains(l)));
    }
    if clauses.is_empty() {
        return trivially_sat();
    }

    // Renumber the surviving variables densely, then split heavy ones.
    let used: BTreeSet<usize> = clauses.iter().flatten().map(|&l| var_of(l)).collect();
    let index: BTreeMap<usize, usize> = used.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let renamed: Vec<Vec<i32>> =
        clauses.iter().map(|c| c.iter().map(|&l| lit(index[&var_of(l)], l > 0)).collect()).collect();
    let mut out = CnfInstance { variable_count: used.len(), clauses: renamed };

    let occ = out.occurrences();
    let mut fresh = out.variable_count;
    let mut cycles = Vec::new();
    for (v, o) in occ.iter().enumerate() {
        let mut sites: Vec<(usize, bool)> =
            o.positive.iter().map(|&t| (t, true)).chain(o.negative.iter().map(|&t| (t, false))).collect();
        if sites.len() <= 3 {
            continue;
        }
        sites.sort();
        let copies: Vec<usize> = (0..sites.len()).map(|i| if i == 0 { v } else { fresh + i - 1 }).collect();
        fresh += sites.len() - 1;
        for (&(t, positive), &copy) in sites.iter().zip(&copies) {
            for l in out.clauses[t].iter_mut() {
                if *l == lit(v, positive) {
                    *l = lit(copy, positive);
                }
            }
        }
        for i in 0..copies.len() {
            let (a, b) = (copies[i], copies[(i + 1) % copies.len()]);
            cycles.push(vec![lit(a, false), lit(b, true)]);
        }
    }
    out.variable_count = fresh;
    out.clauses.extend(cycles);
    for c in out.clauses.iter_mut() {
        while c.len() < 3 {
            c.push(*c.last().expect("clauses are non-empty"));
        }
    }
    if out.variable_count.is_multiple_of(2) {
        out.clauses.extend(dummy_block(out.variable_count));
        out.variable_count += 3;
    }
    debug_assert!(out.is_restricted(), "{out}");
    out
}
