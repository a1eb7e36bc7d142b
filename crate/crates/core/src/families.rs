//! Instance families for sweeps, benchmarks and randomized checks.
//!
//! Exhaustive enumerators return every instance of a bounded shape; the
//! random generators take any [`Rng`] so callers control seeding.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::blackout::Bits;
use crate::epmx::{EpmxInstance, Literal, MultistateVariable, Owner};
use crate::nimber::Nimber;
use crate::reductions::{oracle_has_exact_cover, oracle_min_cover, CnfInstance, SetCoverInstance};
use crate::superstar::{Superstar, SuperstarClass};

/// Clauses of three literals over `n` variables, as sorted multisets, without
/// a literal and its negation together.
fn clause_shapes(n: usize) -> Vec<Vec<i32>> {
    let lits: Vec<i32> = (1..=n as i32).flat_map(|v| [v, -v]).collect();
    let mut out = Vec::new();
    for a in 0..lits.len() {
        for b in a..lits.len() {
            for c in b..lits.len() {
                let clause = vec![lits[a], lits[b], lits[c]];
                if !clause.iter().any(|&l| clause.contains(&-l)) {
                    out.push(clause);
                }
            }
        }
    }
    out
}

/// Every restricted 3-CNF with at most `max_vars` variables and between one
/// and `max_clauses` clauses. Clause lists are multisets, so reorderings of
/// one formula appear once.
pub fn restricted_cnfs(max_vars: usize, max_clauses: usize) -> Vec<CnfInstance> {
    let mut out = Vec::new();
    for n in (1..=max_vars).step_by(2) {
        let shapes = clause_shapes(n);
        let mut pick = Vec::new();
        extend_multisets(&shapes, 0, max_clauses, &mut pick, &mut |clauses| {
            if let Ok(cnf) = CnfInstance::new(n, clauses.to_vec()) {
                if cnf.is_restricted() {
                    out.push(cnf);
                }
            }
        });
    }
    out
}

fn extend_multisets<T: Clone>(items: &[T], from: usize, left: usize, pick: &mut Vec<T>, visit: &mut impl FnMut(&[T])) {
    if !pick.is_empty() {
        visit(pick);
    }
    if left == 0 {
        return;
    }
    for i in from..items.len() {
        pick.push(items[i].clone());
        extend_multisets(items, i, left - 1, pick, visit);
        pick.pop();
    }
}

/// A random restricted 3-CNF with an odd variable count at most `max_vars`
/// and at most `max_clauses` clauses, by rejection sampling.
pub fn random_restricted_cnf<R: Rng + ?Sized>(rng: &mut R, max_vars: usize, max_clauses: usize) -> CnfInstance {
    let counts: Vec<usize> = (1..=max_vars.max(1)).step_by(2).collect();
    loop {
        let n = *counts.choose(rng).expect("at least one count");
        // Each variable needs both signs, so fewer than ceil(2n/3) clauses cannot work.
        let min_clauses = (2 * n).div_ceil(3).max(2);
        if min_clauses > max_clauses {
            continue;
        }
        let c = rng.gen_range(min_clauses..=max_clauses);
        let clauses = (0..c)
            .map(|_| (0..3).map(|_| rng.gen_range(1..=n as i32) * if rng.gen() { 1 } else { -1 }).collect())
            .collect();
        if let Ok(cnf) = CnfInstance::new(n, clauses) {
            if cnf.is_restricted() {
                return cnf;
            }
        }
    }
}

fn random_side<R: Rng + ?Sized>(rng: &mut R, max_index: u64, allow_zero: bool) -> Vec<u64> {
    (u64::from(!allow_zero)..=max_index).filter(|_| rng.gen_bool(0.5)).collect()
}

/// A random superstar with option indices at most `max_index`.
pub fn random_superstar<R: Rng + ?Sized>(rng: &mut R, max_index: u64) -> Superstar {
    loop {
        let (l, r) = (random_side(rng, max_index, true), random_side(rng, max_index, true));
        if let Ok(s) = Superstar::new(l, r) {
            return s;
        }
    }
}

/// A random No0 superstar: both sides non-empty, neither containing 0.
pub fn random_no0_superstar<R: Rng + ?Sized>(rng: &mut R, max_index: u64) -> Superstar {
    assert!(max_index >= 1, "a No0 superstar needs an index of at least 1");
    loop {
        let (l, r) = (random_side(rng, max_index, false), random_side(rng, max_index, false));
        if l.is_empty() || r.is_empty() {
            continue;
        }
        let s = Superstar::new(l, r).expect("sides are non-empty");
        debug_assert_eq!(s.classify(), SuperstarClass::No0);
        return s;
    }
}

/// A random superstar of the given class with indices at most `max_index`.
pub fn random_superstar_of_class<R: Rng + ?Sized>(rng: &mut R, class: SuperstarClass, max_index: u64) -> Superstar {
    loop {
        let s = random_superstar(rng, max_index);
        if s.classify() == class {
            return s;
        }
    }
}

/// A random equal-partitioned EPMX instance. Literals within a clause are
/// distinct.
pub fn random_epmx<R: Rng + ?Sized>(
    rng: &mut R,
    per_side: usize,
    max_states: usize,
    max_clauses: usize,
    max_width: usize,
) -> EpmxInstance {
    let mut vars = Vec::new();
    for owner in [Owner::X, Owner::Y] {
        for i in 0..per_side {
            let k = rng.gen_range(1..=max_states);
            let states = (0..k).map(|s| ((b'a' + s as u8) as char).to_string()).collect();
            let prefix = if owner == Owner::X { "x" } else { "y" };
            vars.push(MultistateVariable { name: format!("{prefix}{i}"), owner, states });
        }
    }
    let clauses = (0..rng.gen_range(1..=max_clauses))
        .map(|_| {
            let mut clause: Vec<Literal> = (0..rng.gen_range(1..=max_width))
                .map(|_| {
                    let var = rng.gen_range(0..vars.len());
                    Literal { var, state: rng.gen_range(0..vars[var].states.len()) }
                })
                .collect();
            clause.sort_by_key(|l| (l.var, l.state));
            clause.dedup();
            clause
        })
        .collect();
    EpmxInstance::new(vars, clauses).expect("generated instances are well formed")
}

/// A random set cover instance whose sets all have three elements.
pub fn random_three_uniform<R: Rng + ?Sized>(rng: &mut R, elements: usize, sets: usize, k: usize) -> SetCoverInstance {
    assert!(elements >= 3);
    let all: Vec<usize> = (0..elements).collect();
    let sets = (0..sets)
        .map(|_| {
            let mut s: Vec<usize> = all.choose_multiple(rng, 3).copied().collect();
            s.sort_unstable();
            s
        })
        .collect();
    SetCoverInstance::new(elements, sets, k).expect("non-empty sets and k >= 1")
}

/// Every pure set cover instance with at most `max_elements` elements, at
/// most `max_sets` distinct sets and `1 <= k < n`. Which set comes first
/// matters to the Blackout board, so each choice of first set is included.
/// Pure means: a cover of size at most k implies an exact cover of that size.
pub fn pure_setcover_instances(max_elements: usize, max_sets: usize) -> Vec<SetCoverInstance> {
    let mut out = Vec::new();
    for m in 1..=max_elements {
        let subsets: Vec<Vec<usize>> =
            (1u32..1 << m).map(|mask| (0..m).filter(|i| mask >> i & 1 == 1).collect()).collect();
        let mut pick = Vec::new();
        combinations(subsets.len(), max_sets, 0, &mut pick, &mut |idx| {
            let n = idx.len();
            for first in 0..n {
                let mut order: Vec<Vec<usize>> = vec![subsets[idx[first]].clone()];
                order.extend(idx.iter().enumerate().filter(|&(j, _)| j != first).map(|(_, &i)| subsets[i].clone()));
                for k in 1..n {
                    let sc = SetCoverInstance::new(m, order.clone(), k).expect("valid by construction");
                    let covers = oracle_min_cover(&sc).expect("tiny").is_some_and(|c| c <= k);
                    if !covers || oracle_has_exact_cover(&sc, k).expect("tiny") {
                        out.push(sc);
                    }
                }
            }
        });
    }
    out
}

fn combinations(n: usize, max: usize, from: usize, pick: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if !pick.is_empty() {
        visit(pick);
    }
    if pick.len() == max {
        return;
    }
    for i in from..n {
        pick.push(i);
        combinations(n, max, i + 1, pick, visit);
        pick.pop();
    }
}

pub fn random_nimbers<R: Rng + ?Sized>(rng: &mut R, count: usize) -> Vec<Nimber> {
    (0..count).map(|_| Nimber(rng.gen())).collect()
}

pub fn random_bits<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Bits {
    Bits::from_indices(len, (0..len).filter(|_| rng.gen_bool(0.5)))
}

/// A target and `rows` random rows of `cols` bits.
pub fn random_gf2_system<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> (Bits, Vec<Bits>) {
    let target = random_bits(rng, cols);
    (target, (0..rows).map(|_| random_bits(rng, cols)).collect())
}
