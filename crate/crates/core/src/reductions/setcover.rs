//! Set cover instances, the subset enrichment that makes covers exact, and
//! the Blackout board built from a pure instance.
//!
//! Documents are JSON with 1-based elements:
//!
//! ```json
//! {"elements": 3, "sets": [[1, 2, 3], [2, 3]], "k": 1}
//! ```

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::blackout::{Bits, BlackoutPosition, Side};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SetCoverDocument", into = "SetCoverDocument")]
pub struct SetCoverInstance {
    element_count: usize,
    /// 0-based, sorted, no repeats.
    sets: Vec<Vec<usize>>,
    k: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetCoverDocument {
    pub elements: usize,
    pub sets: Vec<Vec<usize>>,
    pub k: usize,
}

impl TryFrom<SetCoverDocument> for SetCoverInstance {
    type Error = Error;

    fn try_from(d: SetCoverDocument) -> Result<SetCoverInstance> {
        if let Some(bad) = d.sets.iter().flatten().find(|&&e| e == 0 || e > d.elements) {
            return Err(Error::parse(format!("element {bad} is outside 1..={}", d.elements)));
        }
        SetCoverInstance::new(
            d.elements,
            d.sets.into_iter().map(|s| s.into_iter().map(|e| e - 1).collect()).collect(),
            d.k,
        )
    }
}

impl From<SetCoverInstance> for SetCoverDocument {
    fn from(s: SetCoverInstance) -> SetCoverDocument {
        SetCoverDocument {
            elements: s.element_count,
            sets: s.sets.into_iter().map(|set| set.into_iter().map(|e| e + 1).collect()).collect(),
            k: s.k,
        }
    }
}

impl SetCoverInstance {
    /// Sets use 0-based elements.
    pub fn new(element_count: usize, sets: Vec<Vec<usize>>, k: usize) -> Result<SetCoverInstance> {
        if k == 0 {
            return Err(Error::precondition("k must be at least 1"));
        }
        let mut clean = Vec::with_capacity(sets.len());
        for mut s in sets {
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                return Err(Error::precondition("sets must be non-empty"));
            }
            if s.last().is_some_and(|&e| e >= element_count) {
                return Err(Error::precondition(format!("set {s:?} has an element outside 0..{element_count}")));
            }
            clean.push(s);
        }
        Ok(SetCoverInstance { element_count, sets: clean, k })
    }

    pub fn from_json(text: &str) -> Result<SetCoverInstance> {
        serde_json::from_str(text).map_err(|e| Error::parse(format!("set cover document: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("instances always serialize")
    }

    pub fn element_count(&self) -> usize {
        self.element_count
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn with_k(&self, k: usize) -> Result<SetCoverInstance> {
        SetCoverInstance::new(self.element_count, self.sets.clone(), k)
    }

    pub fn incidence(&self, set: usize) -> Bits {
        Bits::from_indices(self.element_count, self.sets[set].iter().copied())
    }

    /// Checks that `chosen` names at most `k` distinct sets covering every element.
    pub fn check_cover(&self, chosen: &[usize]) -> Result<()> {
        let distinct: HashSet<usize> = chosen.iter().copied().collect();
        if distinct.len() != chosen.len() || chosen.iter().any(|&i| i >= self.sets.len()) {
            return Err(Error::InvalidWitness("cover names an invalid or repeated set".into()));
        }
        if chosen.len() > self.k {
            return Err(Error::InvalidWitness(format!("cover uses {} sets, more than k = {}", chosen.len(), self.k)));
        }
        let covered: HashSet<usize> = chosen.iter().flat_map(|&i| self.sets[i].iter().copied()).collect();
        if covered.len() != self.element_count {
            return Err(Error::InvalidWitness("some element is not covered".into()));
        }
        Ok(())
    }

    /// [`SetCoverInstance::check_cover`] plus pairwise disjointness.
    pub fn check_exact_cover(&self, chosen: &[usize]) -> Result<()> {
        self.check_cover(chosen)?;
        let total: usize = chosen.iter().map(|&i| self.sets[i].len()).sum();
        if total != self.element_count {
            return Err(Error::InvalidWitness("cover is not exact: some element is covered twice".into()));
        }
        Ok(())
    }
}

/// Adds every non-empty proper subset of every set (all sets must have three
/// elements). Originals come first; repeats are dropped. `k` is unchanged.
pub fn setcover_to_pure(sc: &SetCoverInstance) -> Result<SetCoverInstance> {
    if let Some(s) = sc.sets.iter().find(|s| s.len() != 3) {
        return Err(Error::precondition(format!("not 3-uniform: set {s:?} has {} elements", s.len())));
    }
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut sets = Vec::new();
    let mut add = |s: Vec<usize>| {
        if seen.insert(s.clone()) {
            sets.push(s);
        }
    };
    for s in &sc.sets {
        add(s.clone());
    }
    for s in &sc.sets {
        for mask in [0b001, 0b010, 0b100, 0b011, 0b101, 0b110] {
            add((0..3).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect());
        }
    }
    SetCoverInstance::new(sc.element_count, sets, sc.k)
}

/// Turns a cover of the original instance into an exact cover of the
/// enriched one by trimming each chosen set to its not-yet-covered elements.
pub fn exact_cover_from_cover(
    original: &SetCoverInstance,
    pure: &SetCoverInstance,
    cover: &[usize],
) -> Result<Vec<usize>> {
    original.check_cover(cover)?;
    let mut covered = vec![false; original.element_count];
    let mut out = Vec::new();
    for &i in cover {
        let part: Vec<usize> = original.sets[i].iter().copied().filter(|&e| !covered[e]).collect();
        if part.is_empty() {
            continue;
        }
        part.iter().for_each(|&e| covered[e] = true);
        let j = pure
            .sets
            .iter()
            .position(|s| *s == part)
            .ok_or_else(|| Error::InvalidWitness(format!("enriched instance lacks the subset {part:?}")))?;
        out.push(j);
    }
    pure.check_exact_cover(&out)?;
    Ok(out)
}

/// The Blackout board for a pure set cover instance: all lights on, one
/// AllOff switch per set, `n - k - 1` OneOn copies of the first set plus one
/// OneOn switch wired to every light, and `k` passes.
///
/// AllOff moves first. OneOn's last switch then comes after `n - k` AllOff
/// moves, leaving AllOff exactly `k` switches to answer it with. With OneOn
/// moving first AllOff would keep `k + 1`, and a `k + 1` cover would win.
pub fn pure_setcover_to_blackout(sc: &SetCoverInstance) -> Result<BlackoutPosition> {
    let (n, k) = (sc.sets.len(), sc.k);
    if k == 0 || k >= n {
        return Err(Error::precondition(format!("k = {k} must satisfy 1 <= k < n = {n}")));
    }
    let all_off: Vec<Bits> = (0..n).map(|i| sc.incidence(i)).collect();
    let mut one_on = vec![sc.incidence(0); n - k - 1];
    one_on.push(Bits::ones(sc.element_count));
    BlackoutPosition::new(Bits::ones(sc.element_count), all_off, one_on, k as u32, Side::AllOff)
}
