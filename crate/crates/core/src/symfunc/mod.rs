//! The ring of symmetric functions with integer coefficients.
//!
//! Elements are sparse maps from partitions to exact integers, tagged with
//! the basis they are written in. Multiplication and the Hall inner product
//! are defined on the Schur basis; the other bases are reached through
//! [`to_basis`]. Products in `Λ ⊗ Λ` live in [`BiElement`].

pub mod cache;
pub mod kostka;
pub mod lr;
pub mod transition;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

pub use cache::{global as global_cache, CacheStats, CoefficientCache, CACHE_HEADER};
pub use transition::TransitionBlock;

use crate::error::{Error, Result};
use crate::partition::{Partition, Rectangle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisTag {
    Schur,
    Elementary,
    Monomial,
}

impl BasisTag {
    fn symbol(self) -> char {
        match self {
            BasisTag::Schur => 's',
            BasisTag::Elementary => 'e',
            BasisTag::Monomial => 'm',
        }
    }
}

impl fmt::Display for BasisTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BasisTag::Schur => "schur",
            BasisTag::Elementary => "elementary",
            BasisTag::Monomial => "monomial",
        })
    }
}

/// A finite integer combination of basis functions. Zero coefficients are
/// never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymElement {
    basis: BasisTag,
    terms: BTreeMap<Partition, BigInt>,
}

impl SymElement {
    pub fn zero(basis: BasisTag) -> Self {
        SymElement {
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(basis: BasisTag) -> Self {
        Self::basis_element(basis, Partition::empty())
    }

    pub fn basis_element(basis: BasisTag, p: Partition) -> Self {
        let mut out = Self::zero(basis);
        out.terms.insert(p, BigInt::one());
        out
    }

    pub fn schur(p: Partition) -> Self {
        Self::basis_element(BasisTag::Schur, p)
    }

    pub fn from_terms(
        basis: BasisTag,
        terms: impl IntoIterator<Item = (Partition, BigInt)>,
    ) -> Self {
        let mut out = Self::zero(basis);
        for (p, c) in terms {
            out.add_term(p, c);
        }
        out
    }

    pub fn basis(&self) -> BasisTag {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<Partition, BigInt> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Same as [`Self::is_zero`].
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &Partition) -> BigInt {
        self.terms.get(p).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, p: Partition, c: BigInt) {
        add_into(&mut self.terms, p, c);
    }

    pub fn add(&self, other: &SymElement) -> Result<SymElement> {
        same_basis(self.basis, other.basis)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> SymElement {
        SymElement::from_terms(
            self.basis,
            self.terms.iter().map(|(p, c)| (p.clone(), c * k)),
        )
    }

    fn require(&self, basis: BasisTag) -> Result<()> {
        same_basis(basis, self.basis)
    }
}

impl fmt::Display for SymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i > 0 {
                write!(f, " {sign} ")?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            let mag = c.abs();
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "{}{p}", self.basis.symbol())?;
        }
        Ok(())
    }
}

fn same_basis(expected: BasisTag, found: BasisTag) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::BasisMismatch { expected, found })
    }
}

fn add_into<K: Ord>(map: &mut BTreeMap<K, BigInt>, key: K, c: BigInt) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn merge_maps<K: Ord>(mut a: BTreeMap<K, BigInt>, b: BTreeMap<K, BigInt>) -> BTreeMap<K, BigInt> {
    if a.len() < b.len() {
        return merge_maps(b, a);
    }
    for (k, v) in b {
        add_into(&mut a, k, v);
    }
    a
}

/// Number of semistandard Young tableaux of shape `lam` and content `mu`.
/// Zero when the weights differ.
pub fn kostka(lam: &Partition, mu: &Partition) -> BigInt {
    let cache = global_cache();
    let key = (lam.clone(), mu.clone());
    if let Some(v) = cache.kostka.get(&key) {
        return v.clone();
    }
    let v = kostka::kostka_count(lam, mu.parts());
    cache.kostka.insert(key, v.clone());
    v
}

/// The Littlewood–Richardson coefficient `c^ν_{λμ}`.
pub fn lr_coefficient(lam: &Partition, mu: &Partition, nu: &Partition) -> BigInt {
    if lam.weight() + mu.weight() != nu.weight() || !nu.contains(lam) || !nu.contains(mu) {
        return BigInt::zero();
    }
    let cache = global_cache();
    let key = (lam.clone(), mu.clone(), nu.clone());
    if let Some(v) = cache.lr.get(&key) {
        return v.clone();
    }
    let v = BigInt::from(lr::lr_count(lam, mu, nu));
    cache.lr.insert(key, v.clone());
    v
}

/// `s_λ s_μ` expanded in Schur functions, keeping only shapes inside
/// `bound`. Memoized per `(λ, μ, bound)`.
pub fn schur_product_terms(
    lam: &Partition,
    mu: &Partition,
    bound: Option<Rectangle>,
) -> Arc<Vec<(Partition, u64)>> {
    let cache = global_cache();
    let key = if lam <= mu {
        (lam.clone(), mu.clone(), bound)
    } else {
        (mu.clone(), lam.clone(), bound)
    };
    if let Some(v) = cache.products.get(&key) {
        return Arc::clone(&v);
    }
    let v = Arc::new(lr::lr_product(lam, mu, bound));
    cache.products.insert(key, Arc::clone(&v));
    v
}

/// Product in the Schur basis.
pub fn schur_multiply(a: &SymElement, b: &SymElement) -> Result<SymElement> {
    schur_multiply_bounded(a, b, None)
}

/// Product in the Schur basis with every shape outside `bound` dropped.
/// With a rectangle bound this is the product in the truncated ring.
pub fn schur_multiply_bounded(
    a: &SymElement,
    b: &SymElement,
    bound: Option<Rectangle>,
) -> Result<SymElement> {
    a.require(BasisTag::Schur)?;
    b.require(BasisTag::Schur)?;
    let left: Vec<_> = a.terms.iter().collect();
    let terms = left
        .par_iter()
        .map(|(lam, ca)| {
            let mut acc = BTreeMap::new();
            for (mu, cb) in &b.terms {
                let coeff = *ca * cb;
                for (nu, c) in schur_product_terms(lam, mu, bound).iter() {
                    add_into(&mut acc, nu.clone(), &coeff * BigInt::from(*c));
                }
            }
            acc
        })
        .reduce(BTreeMap::new, merge_maps);
    Ok(SymElement {
        basis: BasisTag::Schur,
        terms,
    })
}

/// `a^exp` in the Schur basis by repeated multiplication with `a`, so every
/// LR call has a factor of `a` as its content. Fails once the support
/// exceeds `budget` terms.
pub fn schur_power(
    a: &SymElement,
    exp: u32,
    bound: Option<Rectangle>,
    budget: u64,
) -> Result<SymElement> {
    a.require(BasisTag::Schur)?;
    let mut acc = SymElement::one(BasisTag::Schur);
    for _ in 0..exp {
        acc = schur_multiply_bounded(&acc, a, bound)?;
        if acc.len() as u64 > budget {
            return Err(Error::BudgetExhausted {
                stage: "schur power",
                reached: acc.len() as u128,
                limit: budget,
            });
        }
    }
    Ok(acc)
}

/// Hall inner product: Schur functions are orthonormal.
pub fn hall_inner(a: &SymElement, b: &SymElement) -> Result<BigInt> {
    a.require(BasisTag::Schur)?;
    b.require(BasisTag::Schur)?;
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    Ok(small
        .terms
        .iter()
        .filter_map(|(p, c)| large.terms.get(p).map(|d| c * d))
        .sum())
}

/// Transition data at degree `d`, built once and shared.
pub fn transition_block(d: u32) -> Arc<TransitionBlock> {
    let cache = global_cache();
    if let Some(b) = cache.blocks.get(&d) {
        return Arc::clone(&b);
    }
    let block = Arc::new(TransitionBlock::build(d, kostka));
    cache.blocks.insert(d, Arc::clone(&block));
    block
}

fn degree_of(p: &Partition) -> u32 {
    u32::try_from(p.weight()).expect("partition weight exceeds u32")
}

/// `M^{se}_{λμ}`: coefficient of `e_μ` in `s_λ`. Zero across degrees.
pub fn m_se(lam: &Partition, mu: &Partition) -> BigInt {
    if lam.weight() != mu.weight() {
        return BigInt::zero();
    }
    transition_block(degree_of(lam)).m_se(lam, mu)
}

/// `M^{es}_{μλ}`: coefficient of `s_λ` in `e_μ`, i.e. `K_{λ̃ μ}`. Uses the
/// memoized Kostka table directly, so it stays cheap at degrees where a full
/// block would be large.
pub fn m_es(mu: &Partition, lam: &Partition) -> BigInt {
    if lam.weight() != mu.weight() {
        return BigInt::zero();
    }
    kostka(&lam.transpose(), mu)
}

/// Exact change of basis. Each degree is handled by its own block.
pub fn to_basis(a: &SymElement, target: BasisTag) -> SymElement {
    if a.basis == target {
        return a.clone();
    }
    let schur = match a.basis {
        BasisTag::Schur => a.terms.clone(),
        source => convert(&a.terms, |block, p, q| match source {
            BasisTag::Elementary => block.m_es(p, q),
            _ => block.kostka_inverse(p, q),
        }),
    };
    let terms = match target {
        BasisTag::Schur => schur,
        BasisTag::Elementary => convert(&schur, |block, p, q| block.m_se(p, q)),
        BasisTag::Monomial => convert(&schur, |block, p, q| block.kostka(p, q)),
    };
    SymElement {
        basis: target,
        terms,
    }
}

/// Applies a degree-preserving transition given entrywise.
fn convert(
    terms: &BTreeMap<Partition, BigInt>,
    entry: impl Fn(&TransitionBlock, &Partition, &Partition) -> BigInt,
) -> BTreeMap<Partition, BigInt> {
    let mut out = BTreeMap::new();
    for (p, c) in terms {
        let block = transition_block(degree_of(p));
        for q in &block.basis {
            let k = entry(&block, p, q);
            if !k.is_zero() {
                add_into(&mut out, q.clone(), c * k);
            }
        }
    }
    out
}

/// Element of `Λ ⊗ Λ` in the Schur ⊗ Schur basis.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BiElement {
    terms: BTreeMap<(Partition, Partition), BigInt>,
}

/// Optional truncation boxes for the two tensor factors.
pub type BiBound = (Option<Rectangle>, Option<Rectangle>);

impl BiElement {
    pub fn zero() -> Self {
        BiElement::default()
    }

    pub fn one() -> Self {
        let mut out = BiElement::zero();
        out.add_term(Partition::empty(), Partition::empty(), BigInt::one());
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((Partition, Partition), BigInt)>) -> Self {
        let mut out = BiElement::zero();
        for ((a, b), c) in terms {
            out.add_term(a, b, c);
        }
        out
    }

    pub fn terms(&self) -> &BTreeMap<(Partition, Partition), BigInt> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Same as [`Self::is_zero`].
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, a: Partition, b: Partition, c: BigInt) {
        add_into(&mut self.terms, (a, b), c);
    }

    pub fn coefficient(&self, a: &Partition, b: &Partition) -> BigInt {
        self.terms
            .get(&(a.clone(), b.clone()))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, other: &BiElement) -> BiElement {
        BiElement {
            terms: merge_maps(self.terms.clone(), other.terms.clone()),
        }
    }

    pub fn scale(&self, k: &BigInt) -> BiElement {
        BiElement::from_terms(self.terms.iter().map(|(key, c)| (key.clone(), c * k)))
    }

    /// Keeps only terms whose factors fit the given boxes.
    pub fn truncate(&self, bound: BiBound) -> BiElement {
        BiElement {
            terms: self
                .terms
                .iter()
                .filter(|((a, b), _)| {
                    bound.0.is_none_or(|r| a.fits(r)) && bound.1.is_none_or(|r| b.fits(r))
                })
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// Factorwise Schur product, truncated to `bound`.
    pub fn multiply(&self, other: &BiElement, bound: BiBound) -> BiElement {
        let left: Vec<_> = self.terms.iter().collect();
        let terms = left
            .par_iter()
            .map(|((a1, b1), c1)| {
                let mut acc = BTreeMap::new();
                for ((a2, b2), c2) in &other.terms {
                    let first = schur_product_terms(a1, a2, bound.0);
                    if first.is_empty() {
                        continue;
                    }
                    let second = schur_product_terms(b1, b2, bound.1);
                    let coeff = *c1 * c2;
                    for (x, cx) in first.iter() {
                        let cx = &coeff * BigInt::from(*cx);
                        for (y, cy) in second.iter() {
                            add_into(&mut acc, (x.clone(), y.clone()), &cx * BigInt::from(*cy));
                        }
                    }
                }
                acc
            })
            .reduce(BTreeMap::new, merge_maps);
        BiElement { terms }
    }

    /// `self^exp` by repeated multiplication with `self`; fails when the
    /// support exceeds `budget`.
    pub fn power(&self, exp: u32, bound: BiBound, budget: u64) -> Result<BiElement> {
        let mut acc = BiElement::one().truncate(bound);
        for _ in 0..exp {
            acc = acc.multiply(self, bound);
            if acc.len() as u64 > budget {
                return Err(Error::BudgetExhausted {
                    stage: "tensor power",
                    reached: acc.len() as u128,
                    limit: budget,
                });
            }
        }
        Ok(acc)
    }
}
