use std::collections::{BTreeMap, HashSet};

use exact_algebra::Integer;
use num_integer::Integer as _;
use num_traits::{One, Zero};

use crate::tree::enumerate;
use crate::triple::{verify, EquationKind, Triple};
use crate::TreeError;

/// For every solution (up to order) with all components at most `max_value`,
/// how many solutions have each value as their maximum.
///
/// Completeness rests on every solution appearing in the tree; the pruning by
/// `max_value` is exact because children always exceed their parent's maximum.
pub fn max_multiplicity_census(
    kind: EquationKind,
    max_value: &Integer,
) -> BTreeMap<Integer, usize> {
    let mut seen: HashSet<[Integer; 3]> = HashSet::new();
    let mut counts = BTreeMap::new();
    for node in enumerate(kind, usize::MAX, Some(max_value.clone())) {
        let sorted = node.triple.sorted();
        let top = sorted[2].clone();
        if seen.insert(sorted) {
            *counts.entry(top).or_insert(0) += 1;
        }
    }
    counts
}

/// Extends `prefix` by `count` terms of `next = (last^2 + last + 1) / second_last`.
pub fn a101368_extend(prefix: &[Integer], count: usize) -> Result<Vec<Integer>, TreeError> {
    assert!(prefix.len() >= 2, "prefix needs at least two terms");
    let mut seq = prefix.to_vec();
    for _ in 0..count {
        let n = seq.len();
        let (prev, last) = (&seq[n - 2], &seq[n - 1]);
        let num = last * last + last + 1u32;
        let (q, r) = num.div_rem(prev);
        if !r.is_zero() {
            return Err(TreeError::NotDivisible {
                triple: Triple::new(Integer::one(), prev.clone(), last.clone()),
                position: 3,
            });
        }
        seq.push(q);
    }
    Ok(seq)
}

/// For a solution `(1, b, c)`: does `b` divide `1 + c + c^2` and `c` divide `1 + b + b^2`?
pub fn divisibility_check(t: &Triple) -> Result<bool, TreeError> {
    if !t.a().is_one() {
        return Err(TreeError::WrongShape(t.clone()));
    }
    if !verify(t, EquationKind::Twelve) {
        return Err(TreeError::NotASolution(t.clone()));
    }
    let (b, c) = (t.b(), t.c());
    let ok_b = ((c * c + c + 1u32) % b).is_zero();
    let ok_c = ((b * b + b + 1u32) % c).is_zero();
    Ok(ok_b && ok_c)
}
