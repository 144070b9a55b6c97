//! Change-of-basis matrices between the Schur, elementary and monomial
//! bases at a fixed degree.
//!
//! Rows and columns are indexed by the partitions of the degree in graded
//! lexicographic order. Lex order refines dominance, so the Kostka matrix
//! `K` (with `s_λ = Σ K_{λμ} m_μ`) is lower unitriangular in this indexing
//! and inverts by substitution over the integers.
//!
//! With `J_{λμ} = δ_{λ̃ μ}`:
//!
//! * `M^{es} = K^T J`, i.e. `M^{es}_{ρτ} = K_{τ̃ ρ}`;
//! * `M^{se} = J (K^T)^{-1}`, i.e. `M^{se}_{λμ} = (K^{-1})_{μ λ̃}`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::partition::{partitions_of, Partition};

pub struct TransitionBlock {
    pub degree: u32,
    pub basis: Vec<Partition>,
    index: HashMap<Partition, usize>,
    kostka: Vec<Vec<BigInt>>,
    kostka_inv: Vec<Vec<BigInt>>,
}

impl TransitionBlock {
    pub fn build(degree: u32, kostka: impl Fn(&Partition, &Partition) -> BigInt) -> Self {
        let basis = partitions_of(degree);
        let n = basis.len();
        let index = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let mut k = vec![vec![BigInt::zero(); n]; n];
        for (i, lam) in basis.iter().enumerate() {
            for (j, mu) in basis.iter().enumerate().take(i + 1) {
                k[i][j] = kostka(lam, mu);
            }
        }
        let kostka_inv = invert_lower_unitriangular(&k);
        TransitionBlock {
            degree,
            basis,
            index,
            kostka: k,
            kostka_inv,
        }
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// `K_{λμ}`.
    pub fn kostka(&self, lam: &Partition, mu: &Partition) -> BigInt {
        match (self.index_of(lam), self.index_of(mu)) {
            (Some(i), Some(j)) => self.kostka[i][j].clone(),
            _ => BigInt::zero(),
        }
    }

    /// `(K^{-1})_{λμ}`: the coefficient of `s_μ` in `m_λ`.
    pub fn kostka_inverse(&self, lam: &Partition, mu: &Partition) -> BigInt {
        match (self.index_of(lam), self.index_of(mu)) {
            (Some(i), Some(j)) => self.kostka_inv[i][j].clone(),
            _ => BigInt::zero(),
        }
    }

    /// Coefficient of `e_μ` in `s_λ`.
    pub fn m_se(&self, lam: &Partition, mu: &Partition) -> BigInt {
        self.kostka_inverse(mu, &lam.transpose())
    }

    /// Coefficient of `s_λ` in `e_μ`.
    pub fn m_es(&self, mu: &Partition, lam: &Partition) -> BigInt {
        self.kostka(&lam.transpose(), mu)
    }

    /// Row `λ` of `M^{se}` as nonzero `(μ, value)` pairs in basis order.
    pub fn m_se_row(&self, lam: &Partition) -> Vec<(Partition, BigInt)> {
        self.basis
            .iter()
            .map(|mu| (mu.clone(), self.m_se(lam, mu)))
            .filter(|(_, v)| !v.is_zero())
            .collect()
    }
}

/// Inverse of a lower unitriangular integer matrix.
#[allow(clippy::needless_range_loop)]
fn invert_lower_unitriangular(l: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = l.len();
    let mut x = vec![vec![BigInt::zero(); n]; n];
    for j in 0..n {
        x[j][j] = BigInt::one();
        for i in j + 1..n {
            let mut acc = BigInt::zero();
            for t in j..i {
                if !l[i][t].is_zero() && !x[t][j].is_zero() {
                    acc += &l[i][t] * &x[t][j];
                }
            }
            x[i][j] = -acc;
        }
    }
    x
}
