//! Littlewood–Richardson kernel.
//!
//! An LR tableau of shape `ν/λ` and content `μ` is grown one letter at a
//! time: letter `i` occupies a horizontal strip of `μ_i` boxes. Writing
//! `a[r][i]` for the number of `i`s in row `r`, the reverse reading word is a
//! lattice word exactly when
//!
//! ```text
//! a[0][i+1] + ... + a[r][i+1] <= a[0][i] + ... + a[r-1][i]   for every r, i
//! ```
//!
//! so the whole search only tracks per-row counts of the previous letter.

use std::collections::BTreeMap;

use crate::partition::{Partition, Rectangle};

/// Row capacities the growing shape may never exceed.
struct Container {
    caps: Vec<u32>,
}

impl Container {
    fn for_product(lambda: &Partition, mu: &Partition, bound: Option<Rectangle>) -> Self {
        let mut rows = lambda.len() + mu.len();
        let mut cols = u32::MAX;
        if let Some(rect) = bound {
            rows = rows.min(rect.rows as usize);
            cols = rect.cols;
        }
        Container {
            caps: vec![cols; rows],
        }
    }

    fn for_target(nu: &Partition) -> Self {
        Container {
            caps: nu.parts().to_vec(),
        }
    }

    fn admits(&self, lambda: &Partition) -> bool {
        lambda.len() <= self.caps.len()
            && lambda.parts().iter().zip(&self.caps).all(|(p, c)| p <= c)
    }
}

struct Search<'a> {
    content: &'a [u32],
    container: &'a Container,
    out: BTreeMap<Vec<u32>, u64>,
}

impl Search<'_> {
    fn letter(&mut self, i: usize, shape: &[u32], prev: &[u32]) {
        if i == self.content.len() {
            *self.out.entry(shape.to_vec()).or_insert(0) += 1;
            return;
        }
        let rows = (shape.len() + 1).min(self.container.caps.len());
        let mut next = shape.to_vec();
        next.resize(rows, 0);
        let mut counts = vec![0u32; rows];
        self.row(
            i,
            shape,
            prev,
            0,
            0,
            0,
            self.content[i],
            &mut next,
            &mut counts,
        );
    }

    /// Distributes the remaining copies of letter `i` over rows `r..`.
    /// `placed` counts copies of `i` already in rows `< r`; `prev_before`
    /// counts copies of `i - 1` in rows `< r`.
    #[allow(clippy::too_many_arguments)]
    fn row(
        &mut self,
        i: usize,
        shape: &[u32],
        prev: &[u32],
        r: usize,
        placed: u32,
        prev_before: u32,
        remaining: u32,
        next: &mut Vec<u32>,
        counts: &mut Vec<u32>,
    ) {
        if remaining == 0 {
            let len = next.iter().rposition(|&x| x > 0).map_or(0, |p| p + 1);
            let new_shape = next[..len].to_vec();
            let counts = counts.clone();
            self.letter(i + 1, &new_shape, &counts);
            return;
        }
        if r >= next.len() {
            return;
        }
        let old = shape.get(r).copied().unwrap_or(0);
        let strip_cap = if r == 0 {
            u32::MAX
        } else {
            shape.get(r - 1).copied().unwrap_or(0)
        };
        let mut cap = strip_cap
            .min(self.container.caps[r])
            .saturating_sub(old)
            .min(remaining);
        if i > 0 {
            cap = cap.min(prev_before.saturating_sub(placed));
        }
        let prev_here = prev.get(r).copied().unwrap_or(0);
        for a in (0..=cap).rev() {
            next[r] = old + a;
            counts[r] = a;
            self.row(
                i,
                shape,
                prev,
                r + 1,
                placed + a,
                prev_before + prev_here,
                remaining - a,
                next,
                counts,
            );
        }
        next[r] = old;
        counts[r] = 0;
    }
}

fn run(lambda: &Partition, mu: &Partition, container: &Container) -> BTreeMap<Vec<u32>, u64> {
    if !container.admits(lambda) {
        return BTreeMap::new();
    }
    let mut search = Search {
        content: mu.parts(),
        container,
        out: BTreeMap::new(),
    };
    search.letter(0, lambda.parts(), &[]);
    search.out
}

/// Expansion of `s_λ s_μ` as `(ν, c^ν_{λμ})` pairs, dropping every `ν` that
/// does not fit `bound`. Growth is monotone, so pruning during the search is
/// the same as filtering afterwards.
pub fn lr_product(
    lambda: &Partition,
    mu: &Partition,
    bound: Option<Rectangle>,
) -> Vec<(Partition, u64)> {
    // c^ν_{λμ} = c^ν_{μλ}; use the smaller one as content
    let (base, content) = if mu.weight() <= lambda.weight() {
        (lambda, mu)
    } else {
        (mu, lambda)
    };
    let container = Container::for_product(base, content, bound);
    run(base, content, &container)
        .into_iter()
        .map(|(k, v)| (Partition::from_sorted(k), v))
        .collect()
}

/// `c^ν_{λμ}` by counting LR tableaux on `ν/λ` with content `μ`.
pub fn lr_count(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if lambda.weight() + mu.weight() != nu.weight() || !nu.contains(lambda) || !nu.contains(mu) {
        return 0;
    }
    let container = Container::for_target(nu);
    run(lambda, mu, &container)
        .get(nu.parts())
        .copied()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn small_products() {
        let prod = lr_product(&p(&[1]), &p(&[1]), None);
        assert_eq!(prod, vec![(p(&[1, 1]), 1), (p(&[2]), 1)]);
        let prod = lr_product(&p(&[2, 1]), &p(&[2, 1]), None);
        let total: u64 = prod.iter().map(|(_, c)| c).sum();
        assert_eq!(prod.iter().find(|(n, _)| *n == p(&[3, 2, 1])).unwrap().1, 2);
        assert_eq!(total, 8);
    }

    #[test]
    fn targeted_count_matches_product() {
        for (l, m) in [
            (p(&[2, 1]), p(&[2, 1])),
            (p(&[3, 1]), p(&[2, 2])),
            (p(&[2, 2]), p(&[2, 2])),
        ] {
            for (nu, c) in lr_product(&l, &m, None) {
                assert_eq!(lr_count(&l, &m, &nu), c, "{l} {m} {nu}");
            }
        }
        assert_eq!(lr_count(&p(&[1]), &p(&[1]), &p(&[3])), 0);
    }

    #[test]
    fn bounded_product_truncates() {
        let rect = Rectangle::new(2, 2).unwrap();
        let prod = lr_product(&p(&[2]), &p(&[2]), Some(rect));
        assert_eq!(prod, vec![(p(&[2, 2]), 1)]);
        assert!(lr_product(&p(&[2, 2]), &p(&[1]), Some(rect)).is_empty());
    }
}
