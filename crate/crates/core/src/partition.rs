//! Integer partitions and Young-diagram operations.
//!
//! Partitions are stored without trailing zeros. The total order on
//! [`Partition`] is graded lexicographic: weight first, then the part
//! sequence compared lexicographically, so `[1,1,1] < [2,1] < [3] < [1,1,1,1]`.
//! Every sorted container in the crate inherits this order, which keeps
//! matrix blocks, cache files and JSON output deterministic.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

/// An `rows x cols` box; a partition fits when it has at most `rows` parts,
/// each at most `cols`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rectangle {
    pub rows: u32,
    pub cols: u32,
}

impl Rectangle {
    pub fn new(rows: u32, cols: u32) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyRectangle { rows, cols });
        }
        Ok(Rectangle { rows, cols })
    }

    pub fn transposed(self) -> Self {
        Rectangle {
            rows: self.cols,
            cols: self.rows,
        }
    }

    /// The full rectangle as a partition: `rows` parts equal to `cols`.
    pub fn full(self) -> Partition {
        Partition::rectangle(self.rows, self.cols)
    }

    pub fn area(self) -> u64 {
        self.rows as u64 * self.cols as u64
    }
}

impl fmt::Display for Rectangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.rows, self.cols)
    }
}

impl Partition {
    /// Validates and normalizes (trailing zeros are dropped).
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::NotAPartition(parts));
        }
        Ok(Partition { parts })
    }

    /// Caller guarantees weakly decreasing input; zeros are stripped.
    pub(crate) fn from_sorted(mut parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition { parts }
    }

    /// Builds a partition from parts in any order.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::from_sorted(parts)
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// `rows` parts, each equal to `cols`.
    pub fn rectangle(rows: u32, cols: u32) -> Self {
        if cols == 0 {
            return Partition::empty();
        }
        Partition {
            parts: vec![cols; rows as usize],
        }
    }

    /// The column `1^r`.
    pub fn column(r: u32) -> Self {
        Partition::rectangle(r, 1)
    }

    /// The single row `(r)`.
    pub fn row(r: u32) -> Self {
        Partition::rectangle(1, r)
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// Largest part, 0 for the empty partition.
    pub fn width(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// `i`-th part (0-based), 0 past the end.
    pub fn get(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn fits(&self, rect: Rectangle) -> bool {
        self.len() <= rect.rows as usize && self.width() <= rect.cols
    }

    /// Diagram containment `other ⊆ self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(o, s)| o <= s)
    }

    /// Conjugate partition.
    pub fn transpose(&self) -> Partition {
        let width = self.width() as usize;
        let mut out = vec![0u32; width];
        for &p in &self.parts {
            for c in out.iter_mut().take(p as usize) {
                *c += 1;
            }
        }
        Partition { parts: out }
    }

    /// The 180-degree rotated complement inside `rect`:
    /// `out_i = cols - self_{rows + 1 - i}`.
    pub fn complement(&self, rect: Rectangle) -> Result<Partition> {
        self.check_fits(rect)?;
        let rows = rect.rows as usize;
        let parts = (0..rows)
            .map(|i| rect.cols - self.get(rows - 1 - i))
            .collect();
        Ok(Partition::from_sorted(parts))
    }

    /// `transpose(complement(self, rect))`, a partition fitting the
    /// transposed rectangle.
    pub fn transpose_complement(&self, rect: Rectangle) -> Result<Partition> {
        Ok(self.complement(rect)?.transpose())
    }

    /// Dominance order `self ⊵ other`. Weights must agree.
    pub fn dominates(&self, other: &Partition) -> Result<bool> {
        if self.weight() != other.weight() {
            return Err(Error::WeightMismatch {
                left: self.clone(),
                right: other.clone(),
            });
        }
        let n = self.len().max(other.len());
        let (mut a, mut b) = (0u64, 0u64);
        for i in 0..n {
            a += self.get(i) as u64;
            b += other.get(i) as u64;
            if a < b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Multiset union of parts; `e_λ e_μ = e_{λ ⊎ μ}`.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = Vec::with_capacity(self.len() + other.len());
        parts.extend_from_slice(&self.parts);
        parts.extend_from_slice(&other.parts);
        Partition::from_unsorted(parts)
    }

    fn check_fits(&self, rect: Rectangle) -> Result<()> {
        if self.fits(rect) {
            Ok(())
        } else {
            Err(Error::NotContained {
                partition: self.clone(),
                rect,
            })
        }
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParsePartition(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        if parts.contains(&0) {
            return Err(bad());
        }
        Partition::new(parts).map_err(|_| bad())
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// All partitions fitting `rect`, in graded lexicographic order. There are
/// `binom(rows + cols, rows)` of them.
pub fn enumerate_in_rect(rect: Rectangle) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(rect.rows as usize);
    fill_bounded(rect.rows as usize, rect.cols, &mut current, &mut out);
    out.sort();
    out
}

fn fill_bounded(rows_left: usize, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    out.push(Partition {
        parts: current.clone(),
    });
    if rows_left == 0 {
        return;
    }
    for p in 1..=max_part {
        current.push(p);
        fill_bounded(rows_left - 1, p, current, out);
        current.pop();
    }
}

/// All partitions of `n`, in graded lexicographic order.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill_weight(n, n, &mut current, &mut out);
    out.sort();
    out
}

/// Partitions of `n` with at most `max_len` parts.
pub fn partitions_of_bounded(n: u32, max_len: usize) -> Vec<Partition> {
    partitions_of(n)
        .into_iter()
        .filter(|p| p.len() <= max_len)
        .collect()
}

fn fill_weight(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    for p in (1..=max_part.min(remaining)).rev() {
        current.push(p);
        fill_weight(remaining - p, p, current, out);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn rect(r: u32, c: u32) -> Rectangle {
        Rectangle::new(r, c).unwrap()
    }

    #[test]
    fn construction_normalizes() {
        assert_eq!(p(&[3, 1, 0, 0]).parts(), &[3, 1]);
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0, 1]).is_err());
        assert!(Rectangle::new(0, 3).is_err());
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(p(&[2, 1]).transpose(), p(&[2, 1]));
        assert_eq!(p(&[3, 1]).transpose(), p(&[2, 1, 1]));
        assert_eq!(
            Partition::rectangle(2, 5).transpose(),
            Partition::rectangle(5, 2)
        );
        assert_eq!(Partition::empty().transpose(), Partition::empty());
    }

    #[test]
    fn complement_examples() {
        let sq = rect(2, 2);
        assert_eq!(Partition::empty().complement(sq).unwrap(), p(&[2, 2]));
        assert_eq!(p(&[2, 1]).complement(sq).unwrap(), p(&[1]));
        assert_eq!(p(&[2, 2]).complement(sq).unwrap(), Partition::empty());
        assert_eq!(p(&[2]).complement(sq).unwrap(), p(&[2]));
        assert_eq!(p(&[3, 1]).complement(rect(2, 4)).unwrap(), p(&[3, 1]));
        assert!(matches!(
            p(&[3]).complement(sq),
            Err(Error::NotContained { .. })
        ));
        assert!(p(&[1, 1, 1]).complement(sq).is_err());
    }

    #[test]
    fn transpose_complement_examples() {
        let sq = rect(2, 2);
        assert_eq!(
            Partition::empty().transpose_complement(sq).unwrap(),
            p(&[2, 2])
        );
        assert_eq!(p(&[1]).transpose_complement(sq).unwrap(), p(&[2, 1]));
        assert_eq!(
            p(&[2, 2]).transpose_complement(sq).unwrap(),
            Partition::empty()
        );
        assert!(p(&[3]).transpose_complement(sq).is_err());
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_in_rect(rect(2, 2)).len(), 6);
        assert_eq!(
            enumerate_in_rect(rect(1, 3)),
            vec![Partition::empty(), p(&[1]), p(&[2]), p(&[3])]
        );
        assert_eq!(enumerate_in_rect(rect(3, 2)).len(), 10);
    }

    #[test]
    fn dominance_examples() {
        assert!(p(&[2, 1]).dominates(&p(&[1, 1, 1])).unwrap());
        assert!(!p(&[1, 1, 1]).dominates(&p(&[2, 1])).unwrap());
        assert!(p(&[3, 1]).dominates(&p(&[3, 1])).unwrap());
        assert!(!p(&[3, 3]).dominates(&p(&[4, 1, 1])).unwrap());
        assert!(!p(&[4, 1, 1]).dominates(&p(&[3, 3])).unwrap());
        assert!(matches!(
            p(&[2]).dominates(&p(&[1])),
            Err(Error::WeightMismatch { .. })
        ));
    }

    #[test]
    fn graded_lex_order() {
        let all = partitions_of(4);
        let shown: Vec<String> = all.iter().map(|x| x.to_string()).collect();
        assert_eq!(shown, ["[1,1,1,1]", "[2,1,1]", "[2,2]", "[3,1]", "[4]"]);
        assert!(p(&[3]) < p(&[1, 1, 1, 1]));
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        assert_eq!(partitions_of(10).len(), 42);
    }

    #[test]
    fn text_encoding() {
        assert_eq!(p(&[3, 1, 1]).to_string(), "[3,1,1]");
        assert_eq!(Partition::empty().to_string(), "[]");
        assert_eq!("[3, 1,1]".parse::<Partition>().unwrap(), p(&[3, 1, 1]));
        assert_eq!("[]".parse::<Partition>().unwrap(), Partition::empty());
        assert!("[1,2]".parse::<Partition>().is_err());
        assert!("3,1".parse::<Partition>().is_err());
        assert!("[2,0]".parse::<Partition>().is_err());
    }

    #[test]
    fn union_is_multiset_union() {
        assert_eq!(p(&[2, 1]).union(&p(&[3, 1])), p(&[3, 2, 1, 1]));
        assert_eq!(Partition::empty().union(&p(&[1])), p(&[1]));
    }
}
