//! Reference congruence computation by exhaustive search over partitions.
//! Exported so that test suites outside this crate can compare against it.

use crate::error::Result;
use crate::finset::algebra::FinAlgebra;
use crate::finset::congruence::Partition;
use crate::finset::monads::{enumerable_size, FiniteMonad};

/// Every partition of `{0..n}`, as restricted growth strings.
pub fn all_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut labels = vec![0; n];
    fn go(k: usize, max: usize, labels: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if k == labels.len() {
            out.push(Partition {
                class_of: labels.clone(),
                classes: if labels.is_empty() { 0 } else { max + 1 },
            });
            return;
        }
        let top = if k == 0 { 0 } else { max + 1 };
        for l in 0..=top {
            labels[k] = l;
            go(k + 1, max.max(l), labels, out);
        }
    }
    go(0, 0, &mut labels, &mut out);
    out
}

/// Whether `λ` descends along the projection of `p`: `T(q)(t) = T(q)(t')`
/// must imply `q(λ t) = q(λ t')` for all `t, t'` in `T(carrier)`.
pub fn is_congruence(a: &FinAlgebra, p: &Partition) -> Result<bool> {
    let m = a.monad();
    let size = enumerable_size(m, a.carrier())?;
    let q = p.projection();
    let mut seen = std::collections::HashMap::new();
    for t in 0..size {
        let key = m.map(&q, t);
        let val = q.apply(a.act(t)?);
        if *seen.entry(key).or_insert(val) != val {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The finest congruence relating every seed pair, found by checking all
/// partitions. Practical up to about eight elements.
pub fn brute_force_congruence(a: &FinAlgebra, seeds: &[(usize, usize)]) -> Result<Partition> {
    let mut candidates = Vec::new();
    for p in all_partitions(a.carrier()) {
        if seeds.iter().all(|&(x, y)| p.related(x, y)) && is_congruence(a, &p)? {
            candidates.push(p);
        }
    }
    let finest = candidates
        .iter()
        .max_by_key(|p| p.classes)
        .expect("the total relation is a congruence")
        .clone();
    debug_assert!(candidates.iter().all(|p| finest.refines(p)));
    Ok(finest)
}
