//! Chow rings of Grassmannians and of products of two Grassmannians.
//!
//! `CH*(G(m, N))` is spanned by Schubert classes `σ_λ` with `λ` inside the
//! `m x (N - m)` rectangle; products are Littlewood–Richardson products with
//! every shape outside the rectangle deleted.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::{enumerate_in_rect, Partition, Rectangle};
use crate::symfunc::{schur_product_terms, BiBound, BiElement};

/// The Grassmannian `G(m, N)` of `m`-planes in an `N`-dimensional space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ChowRingSpec {
    pub subspace_dim: u32,
    pub ambient_dim: u32,
}

impl ChowRingSpec {
    pub fn new(subspace_dim: u32, ambient_dim: u32) -> Result<Self> {
        if subspace_dim == 0 || subspace_dim >= ambient_dim {
            return Err(Error::InvalidSpec {
                m: subspace_dim,
                ambient: ambient_dim,
            });
        }
        Ok(ChowRingSpec {
            subspace_dim,
            ambient_dim,
        })
    }

    /// The `m x (N - m)` truncation rectangle.
    pub fn rect(self) -> Rectangle {
        Rectangle {
            rows: self.subspace_dim,
            cols: self.ambient_dim - self.subspace_dim,
        }
    }

    /// Partition of the point class.
    pub fn point(self) -> Partition {
        self.rect().full()
    }

    pub fn dimension(self) -> u64 {
        self.rect().area()
    }

    fn check_same(self, other: ChowRingSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SpecMismatch(
                self.subspace_dim,
                self.ambient_dim,
                other.subspace_dim,
                other.ambient_dim,
            ))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChowClass {
    spec: ChowRingSpec,
    terms: BTreeMap<Partition, BigInt>,
}

impl ChowClass {
    pub fn zero(spec: ChowRingSpec) -> Self {
        ChowClass {
            spec,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(spec: ChowRingSpec) -> Self {
        Self::sigma(spec, Partition::empty()).expect("empty partition always fits")
    }

    /// The Schubert class `σ_λ`.
    pub fn sigma(spec: ChowRingSpec, lam: Partition) -> Result<Self> {
        if !lam.fits(spec.rect()) {
            return Err(Error::NotContained {
                partition: lam,
                rect: spec.rect(),
            });
        }
        let mut terms = BTreeMap::new();
        terms.insert(lam, BigInt::one());
        Ok(ChowClass { spec, terms })
    }

    pub fn point(spec: ChowRingSpec) -> Self {
        Self::sigma(spec, spec.point()).expect("point fits by construction")
    }

    pub fn spec(&self) -> ChowRingSpec {
        self.spec
    }

    pub fn terms(&self) -> &BTreeMap<Partition, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, lam: &Partition) -> BigInt {
        self.terms.get(lam).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn pow(&self, exp: u32) -> ChowClass {
        let mut acc = ChowClass::one(self.spec);
        for _ in 0..exp {
            acc = chow_multiply(&acc, self).expect("same spec");
        }
        acc
    }
}

/// Product in `CH*(G(m, N))`.
pub fn chow_multiply(a: &ChowClass, b: &ChowClass) -> Result<ChowClass> {
    a.spec.check_same(b.spec)?;
    let rect = a.spec.rect();
    let mut terms: BTreeMap<Partition, BigInt> = BTreeMap::new();
    for (lam, ca) in &a.terms {
        for (mu, cb) in &b.terms {
            let coeff = ca * cb;
            for (nu, c) in schur_product_terms(lam, mu, Some(rect)).iter() {
                *terms.entry(nu.clone()).or_insert_with(BigInt::zero) += &coeff * BigInt::from(*c);
            }
        }
    }
    terms.retain(|_, c| !c.is_zero());
    Ok(ChowClass {
        spec: a.spec,
        terms,
    })
}

/// Coefficient of the point class `σ_{(N-m)^m}`.
pub fn point_coefficient(a: &ChowClass) -> BigInt {
    a.coefficient(&a.spec.point())
}

/// A class on `G(m, N) x G(m', N')`, in the basis `σ_λ σ'_μ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiChowClass {
    first: ChowRingSpec,
    second: ChowRingSpec,
    inner: BiElement,
}

/// One serialized term: `coeff * σ_first σ'_second`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BiTerm {
    pub first: Partition,
    pub second: Partition,
    pub coeff: String,
}

impl BiChowClass {
    /// Wraps `inner` after truncating it to the two rectangles.
    pub fn new(first: ChowRingSpec, second: ChowRingSpec, inner: &BiElement) -> Self {
        let bound = (Some(first.rect()), Some(second.rect()));
        BiChowClass {
            first,
            second,
            inner: inner.truncate(bound),
        }
    }

    pub fn specs(&self) -> (ChowRingSpec, ChowRingSpec) {
        (self.first, self.second)
    }

    pub fn element(&self) -> &BiElement {
        &self.inner
    }

    pub fn len(&self) -> usize {
        self.inner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.is_zero()
    }

    pub fn coefficient(&self, a: &Partition, b: &Partition) -> BigInt {
        self.inner.coefficient(a, b)
    }

    fn bound(&self) -> BiBound {
        (Some(self.first.rect()), Some(self.second.rect()))
    }

    /// Terms in basis order with decimal-string coefficients.
    pub fn to_terms(&self) -> Vec<BiTerm> {
        self.inner
            .terms()
            .iter()
            .map(|((a, b), c)| BiTerm {
                first: a.clone(),
                second: b.clone(),
                coeff: c.to_str_radix(10),
            })
            .collect()
    }
}

/// Factorwise product on the product of Grassmannians.
pub fn bichow_multiply(a: &BiChowClass, b: &BiChowClass) -> Result<BiChowClass> {
    a.first.check_same(b.first)?;
    a.second.check_same(b.second)?;
    Ok(BiChowClass {
        first: a.first,
        second: a.second,
        inner: a.inner.multiply(&b.inner, a.bound()),
    })
}

/// Coefficient of `σ_point σ'_point`.
pub fn bipoint_coefficient(a: &BiChowClass) -> BigInt {
    a.inner.coefficient(&a.first.point(), &a.second.point())
}

fn segre_specs(m: u32, n: u32) -> Result<(ChowRingSpec, ChowRingSpec)> {
    Ok((ChowRingSpec::new(m, m + n)?, ChowRingSpec::new(n, m + n)?))
}

/// Pullback of `σ_{1^{mn}}` along `G(m, m+n) x G(n, m+n) -> G(mn, (m+n)^2)`
/// as the closed sum `Σ_{λ ⊆ m x n} σ_λ σ'_{λ̃*}`.
pub fn segre_pullback_sum(m: u32, n: u32) -> Result<BiChowClass> {
    let (first, second) = segre_specs(m, n)?;
    let rect = Rectangle::new(m, n)?;
    let mut inner = BiElement::zero();
    for lam in enumerate_in_rect(rect) {
        let dual = lam.transpose_complement(rect)?;
        inner.add_term(lam, dual, BigInt::one());
    }
    Ok(BiChowClass::new(first, second, &inner))
}

/// The Sylvester determinant of `Σ (-1)^i σ_{1^i} x^{m-i}` and
/// `Σ σ'_{1^j} x^{n-j}`, expanded in `CH*(G(m, ∞)) ⊗ CH*(G(n, ∞))`: row
/// counts are bounded by `m` and `n` but columns are not. The overall sign is
/// fixed so that `σ'_{m^n}` (the `λ = ∅` term) has coefficient `+1`.
pub fn segre_resultant_stable(m: u32, n: u32) -> Result<BiElement> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidInput(format!(
            "pullback needs m, n >= 1, got ({m}, {n})"
        )));
    }
    let size = (m + n) as usize;
    let bound: BiBound = (
        Some(Rectangle {
            rows: m,
            cols: u32::MAX,
        }),
        Some(Rectangle {
            rows: n,
            cols: u32::MAX,
        }),
    );
    let mut matrix = vec![vec![BiElement::zero(); size]; size];
    for (i, row) in matrix.iter_mut().enumerate().take(n as usize) {
        for t in 0..=m {
            let sign = if t % 2 == 0 {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            row[i + t as usize].add_term(Partition::column(t), Partition::empty(), sign);
        }
    }
    for j in 0..m as usize {
        let row = &mut matrix[n as usize + j];
        for t in 0..=n {
            row[j + t as usize].add_term(Partition::empty(), Partition::column(t), BigInt::one());
        }
    }
    let mut memo: BTreeMap<u32, BiElement> = BTreeMap::new();
    let det = laplace(&matrix, 0, 0, bound, &mut memo);

    let anchor = det.coefficient(&Partition::empty(), &Partition::rectangle(n, m));
    let det = if anchor == -BigInt::one() {
        det.scale(&-BigInt::one())
    } else if anchor.is_one() {
        det
    } else {
        return Err(Error::InvalidInput(format!(
            "resultant anchor coefficient is {anchor}, expected a unit"
        )));
    };
    Ok(det)
}

/// Determinant of the minor on rows `row..` and the columns absent from
/// `used`, by expansion along the first remaining row.
fn laplace(
    matrix: &[Vec<BiElement>],
    row: usize,
    used: u32,
    bound: BiBound,
    memo: &mut BTreeMap<u32, BiElement>,
) -> BiElement {
    let size = matrix.len();
    if row == size {
        return BiElement::one();
    }
    if let Some(hit) = memo.get(&used) {
        return hit.clone();
    }
    let mut total = BiElement::zero();
    let mut position = 0;
    for col in 0..size {
        if used & (1 << col) != 0 {
            continue;
        }
        let entry = &matrix[row][col];
        if !entry.is_zero() {
            let minor = laplace(matrix, row + 1, used | (1 << col), bound, memo);
            if !minor.is_zero() {
                let mut term = entry.multiply(&minor, bound);
                if position % 2 == 1 {
                    term = term.scale(&-BigInt::one());
                }
                total = total.add(&term);
            }
        }
        position += 1;
    }
    memo.insert(used, total.clone());
    total
}

/// [`segre_resultant_stable`] restricted to `G(m, m+n) x G(n, m+n)`.
pub fn segre_pullback_resultant(m: u32, n: u32) -> Result<BiChowClass> {
    let (first, second) = segre_specs(m, n)?;
    Ok(BiChowClass::new(
        first,
        second,
        &segre_resultant_stable(m, n)?,
    ))
}

/// Whether every term of a stable expansion has first factor with at most
/// `n` columns and second factor with at most `m` columns.
pub fn is_stable(expansion: &BiElement, m: u32, n: u32) -> bool {
    expansion
        .terms()
        .keys()
        .all(|(a, b)| a.width() <= n && b.width() <= m)
}

/// Whether a class has only nonnegative coefficients.
pub fn is_effective(a: &BiChowClass) -> bool {
    a.inner.terms().values().all(|c| !c.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn g(m: u32, n: u32) -> ChowRingSpec {
        ChowRingSpec::new(m, n).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(ChowRingSpec::new(0, 3).is_err());
        assert!(ChowRingSpec::new(3, 3).is_err());
        assert_eq!(g(2, 5).rect(), Rectangle::new(2, 3).unwrap());
        assert!(ChowClass::sigma(g(2, 4), p(&[3])).is_err());
    }

    #[test]
    fn multiply_examples() {
        let s = g(2, 4);
        let s1 = ChowClass::sigma(s, p(&[1])).unwrap();
        let sq = chow_multiply(&s1, &s1).unwrap();
        assert_eq!(sq.terms().len(), 2);
        assert_eq!(sq.coefficient(&p(&[2])), BigInt::one());
        assert_eq!(sq.coefficient(&p(&[1, 1])), BigInt::one());

        let s2 = ChowClass::sigma(s, p(&[2])).unwrap();
        assert_eq!(chow_multiply(&s2, &s2).unwrap(), ChowClass::point(s));

        let top = ChowClass::sigma(s, p(&[2, 2])).unwrap();
        assert!(chow_multiply(&top, &s1).unwrap().is_zero());

        let other = ChowClass::sigma(g(2, 5), p(&[1])).unwrap();
        assert!(matches!(
            chow_multiply(&s1, &other),
            Err(Error::SpecMismatch(..))
        ));
    }

    #[test]
    fn point_coefficient_examples() {
        assert_eq!(point_coefficient(&ChowClass::point(g(3, 7))), BigInt::one());
        let s1 = ChowClass::sigma(g(2, 4), p(&[1])).unwrap();
        assert_eq!(point_coefficient(&s1.pow(4)), BigInt::from(2));
        let s1 = ChowClass::sigma(g(2, 5), p(&[1])).unwrap();
        assert_eq!(point_coefficient(&s1.pow(6)), BigInt::from(5));
    }

    #[test]
    fn pullback_sum_examples() {
        let one = segre_pullback_sum(1, 1).unwrap();
        assert_eq!(one.len(), 2);
        assert_eq!(
            one.coefficient(&Partition::empty(), &p(&[1])),
            BigInt::one()
        );
        assert_eq!(
            one.coefficient(&p(&[1]), &Partition::empty()),
            BigInt::one()
        );
        // ∅, [1], [2]
        let a = segre_pullback_sum(1, 2).unwrap();
        assert_eq!(a.len(), 3);
        assert!(a.element().terms().values().all(|c| c.is_one()));
        assert_eq!(segre_pullback_sum(2, 2).unwrap().len(), 6);
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(
            segre_pullback_resultant(1, 1).unwrap(),
            segre_pullback_sum(1, 1).unwrap()
        );
        assert_eq!(
            segre_pullback_resultant(2, 2).unwrap(),
            segre_pullback_sum(2, 2).unwrap()
        );
        assert_eq!(
            segre_pullback_resultant(2, 3).unwrap(),
            segre_pullback_sum(2, 3).unwrap()
        );
    }

    #[test]
    fn bipoint_examples() {
        for (m, n, want) in [(1, 1, 2), (2, 2, 6), (3, 3, 20)] {
            let sum = segre_pullback_sum(m, n).unwrap();
            let sq = bichow_multiply(&sum, &sum).unwrap();
            assert_eq!(bipoint_coefficient(&sq), BigInt::from(want), "({m},{n})");
        }
        let a = segre_pullback_sum(1, 2).unwrap();
        let b = segre_pullback_sum(2, 1).unwrap();
        assert!(bichow_multiply(&a, &b).is_err());
    }

    #[test]
    fn serialized_terms() {
        let terms = segre_pullback_sum(1, 1).unwrap().to_terms();
        assert_eq!(
            terms[0],
            BiTerm {
                first: Partition::empty(),
                second: p(&[1]),
                coeff: "1".into()
            }
        );
    }
}
