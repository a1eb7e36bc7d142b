//! Exhaustive checkers used to validate the reductions at small sizes.

use super::cnf::CnfInstance;
use super::setcover::SetCoverInstance;
use crate::error::{Error, Result};

/// Largest search, in candidate assignments or set selections.
pub const ORACLE_BUDGET: u64 = 1 << 26;

fn check_budget(items: usize) -> Result<()> {
    if items >= 64 || (1u64 << items) > ORACLE_BUDGET {
        return Err(Error::BudgetExceeded { budget: ORACLE_BUDGET });
    }
    Ok(())
}

/// A satisfying assignment by exhaustive enumeration, or `None`.
pub fn oracle_sat(cnf: &CnfInstance) -> Result<Option<Vec<bool>>> {
    let n = cnf.variable_count;
    check_budget(n)?;
    let masks: Vec<(u64, u64)> = cnf
        .clauses
        .iter()
        .map(|c| {
            c.iter().fold((0, 0), |(p, q), &l| {
                let bit = 1u64 << (l.unsigned_abs() - 1);
                if l > 0 {
                    (p | bit, q)
                } else {
                    (p, q | bit)
                }
            })
        })
        .collect();
    Ok((0..1u64 << n)
        .find(|&a| masks.iter().all(|&(p, q)| a & p != 0 || !a & q != 0))
        .map(|a| (0..n).map(|i| a >> i & 1 == 1).collect()))
}

fn element_masks(sc: &SetCoverInstance) -> Result<(Vec<u64>, u64)> {
    if sc.element_count() > 64 {
        return Err(Error::BudgetExceeded { budget: ORACLE_BUDGET });
    }
    let masks = sc.sets().iter().map(|s| s.iter().fold(0u64, |m, &e| m | 1 << e)).collect();
    let full = if sc.element_count() == 64 { u64::MAX } else { (1u64 << sc.element_count()) - 1 };
    Ok((masks, full))
}

/// Size of a smallest cover, or `None` when the sets miss some element.
pub fn oracle_min_cover(sc: &SetCoverInstance) -> Result<Option<usize>> {
    oracle_min_cover_witness(sc).map(|w| w.map(|c| c.len()))
}

/// A smallest cover (set indices), or `None` when none exists.
pub fn oracle_min_cover_witness(sc: &SetCoverInstance) -> Result<Option<Vec<usize>>> {
    let n = sc.sets().len();
    check_budget(n)?;
    let (masks, full) = element_masks(sc)?;
    let mut best: Option<u64> = None;
    // Unions of all subsets, built incrementally from the lowest set bit.
    let mut union = vec![0u64; 1 << n];
    for s in 1..1usize << n {
        let low = s.trailing_zeros() as usize;
        union[s] = union[s & (s - 1)] | masks[low];
        if union[s] == full && best.is_none_or(|b| s.count_ones() < b.count_ones()) {
            best = Some(s as u64);
        }
    }
    if full == 0 {
        return Ok(Some(vec![]));
    }
    Ok(best.map(|s| (0..n).filter(|&i| s >> i & 1 == 1).collect()))
}

/// Whether at most `k` pairwise disjoint sets cover every element.
pub fn oracle_has_exact_cover(sc: &SetCoverInstance, k: usize) -> Result<bool> {
    oracle_exact_cover_witness(sc, k).map(|w| w.is_some())
}

/// Depth-first over the lowest uncovered element; the budget counts search nodes.
pub fn oracle_exact_cover_witness(sc: &SetCoverInstance, k: usize) -> Result<Option<Vec<usize>>> {
    let (masks, full) = element_masks(sc)?;
    struct Search<'a> {
        masks: &'a [u64],
        full: u64,
        nodes: u64,
        chosen: Vec<usize>,
    }
    impl Search<'_> {
        fn go(&mut self, covered: u64, left: usize) -> Result<bool> {
            self.nodes += 1;
            if self.nodes > ORACLE_BUDGET {
                return Err(Error::BudgetExceeded { budget: ORACLE_BUDGET });
            }
            if covered == self.full {
                return Ok(true);
            }
            if left == 0 {
                return Ok(false);
            }
            let e = (!covered & self.full).trailing_zeros();
            for i in 0..self.masks.len() {
                let m = self.masks[i];
                if m >> e & 1 == 1 && m & covered == 0 {
                    self.chosen.push(i);
                    if self.go(covered | m, left - 1)? {
                        return Ok(true);
                    }
                    self.chosen.pop();
                }
            }
            Ok(false)
        }
    }
    let mut search = Search { masks: &masks, full, nodes: 0, chosen: Vec::new() };
    Ok(search.go(0, k)?.then_some(search.chosen))
}
