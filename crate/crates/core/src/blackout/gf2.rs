use super::Bits;

/// A subset of `rows` whose XOR equals `target`, by Gaussian elimination
/// over GF(2). Returns sorted row indices, or `None` when no subset works.
pub fn gf2_solve(target: &Bits, rows: &[Bits]) -> Option<Vec<usize>> {
    // Each basis vector keeps the set of input rows it was built from.
    let mut basis: Vec<(usize, Bits, Bits)> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut v = row.clone();
        let mut combo = Bits::from_indices(rows.len(), [i]);
        for (pivot, b, c) in &basis {
            if v.get(*pivot) {
                v.xor_assign(b);
                combo.xor_assign(c);
            }
        }
        // Later basis vectors are clear on earlier pivots, so one pass in
        // insertion order fully reduces.
        if let Some(pivot) = v.first_one() {
            basis.push((pivot, v, combo));
        }
    }
    let mut rest = target.clone();
    let mut combo = Bits::zeros(rows.len());
    for (pivot, b, c) in &basis {
        if rest.get(*pivot) {
            rest.xor_assign(b);
            combo.xor_assign(c);
        }
    }
    rest.is_zero().then(|| combo.ones_iter().collect())
}
