//! Kostka numbers by counting semistandard tableaux letter by letter.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::partition::Partition;

/// Number of SSYT of shape `shape` and content `content`.
///
/// Each letter fills a horizontal strip inside `shape`; tableaux that
/// share an intermediate shape are merged, so the work is bounded by the
/// number of subdiagrams rather than the number of tableaux.
pub fn kostka_count(shape: &Partition, content: &[u32]) -> BigInt {
    let total: u64 = content.iter().map(|&c| c as u64).sum();
    if total != shape.weight() {
        return BigInt::zero();
    }
    let outer = shape.parts();
    let mut layer: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
    layer.insert(Vec::new(), BigInt::one());
    for &size in content {
        let mut next: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (inner, count) in &layer {
            let mut cur = inner.clone();
            cur.resize(outer.len(), 0);
            horizontal_strips(outer, inner, 0, size, &mut cur, &mut |grown| {
                let len = grown.iter().rposition(|&x| x > 0).map_or(0, |p| p + 1);
                *next
                    .entry(grown[..len].to_vec())
                    .or_insert_with(BigInt::zero) += count;
            });
        }
        layer = next;
        if layer.is_empty() {
            return BigInt::zero();
        }
    }
    layer.remove(outer).unwrap_or_else(BigInt::zero)
}

/// Calls `emit` for every shape `κ ⊆ outer` with `κ/inner` a horizontal
/// strip of `remaining` boxes.
fn horizontal_strips(
    outer: &[u32],
    inner: &[u32],
    r: usize,
    remaining: u32,
    cur: &mut Vec<u32>,
    emit: &mut dyn FnMut(&[u32]),
) {
    if remaining == 0 {
        emit(cur);
        return;
    }
    if r >= outer.len() {
        return;
    }
    let old = inner.get(r).copied().unwrap_or(0);
    let above = if r == 0 {
        u32::MAX
    } else {
        inner.get(r - 1).copied().unwrap_or(0)
    };
    let cap = outer[r].min(above).saturating_sub(old).min(remaining);
    for a in (0..=cap).rev() {
        cur[r] = old + a;
        horizontal_strips(outer, inner, r + 1, remaining - a, cur, emit);
    }
    cur[r] = old;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn known_values() {
        assert_eq!(kostka_count(&p(&[2, 1]), &[1, 1, 1]), BigInt::from(2));
        assert_eq!(kostka_count(&p(&[1, 1]), &[2]), BigInt::from(0));
        assert_eq!(kostka_count(&p(&[3, 2]), &[2, 2, 1]), BigInt::from(2));
        assert_eq!(kostka_count(&p(&[3, 3]), &[1; 6]), BigInt::from(5));
        assert_eq!(kostka_count(&Partition::empty(), &[]), BigInt::from(1));
        assert_eq!(kostka_count(&p(&[2]), &[1]), BigInt::from(0));
    }

    #[test]
    fn content_order_does_not_matter() {
        assert_eq!(
            kostka_count(&p(&[3, 2, 1]), &[1, 2, 3]),
            kostka_count(&p(&[3, 2, 1]), &[3, 2, 1])
        );
    }
}
