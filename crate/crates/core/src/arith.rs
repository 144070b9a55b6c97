//! Exact integer helpers and p-adic valuations.
//!
//! Every quantity that can grow (multinomials, Catalan numbers, `g(m, n)`)
//! is a [`BigInt`]. Valuations are kept as [`Valuation`] so the valuation of
//! zero never masquerades as a small number.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact arbitrary-precision integer used for all coefficients.
pub type ExactInt = BigInt;

/// p-adic valuation of an integer. `Infinite` is the valuation of zero and
/// compares above every finite amount.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u64),
    Infinite,
}

impl Valuation {
    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    /// `self >= bound`, with infinity dominating everything.
    pub fn at_least(self, bound: u64) -> bool {
        self >= Valuation::Finite(bound)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Checks that `p` is usable as a prime modulus. Only trial division, and
/// only below 2^16; larger values are trusted.
pub fn check_prime(p: u64) -> Result<()> {
    if p < 2 {
        return Err(Error::InvalidPrime(p));
    }
    if p < (1 << 16) {
        let mut d = 2;
        while d * d <= p {
            if p.is_multiple_of(d) {
                return Err(Error::InvalidPrime(p));
            }
            d += 1;
        }
    }
    Ok(())
}

/// Largest `t` with `p^t | x`.
pub fn val_p(x: &BigInt, p: u64) -> Result<Valuation> {
    check_prime(p)?;
    Ok(val_p_unchecked(x, p))
}

pub(crate) fn val_p_unchecked(x: &BigInt, p: u64) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    if p == 2 {
        // trailing_zeros is Some for every nonzero value
        return Valuation::Finite(x.magnitude().trailing_zeros().unwrap_or(0));
    }
    let p_big = BigUint::from(p);
    let mut rest = x.magnitude().clone();
    let mut count = 0;
    loop {
        let (q, r) = rest.div_rem(&p_big);
        if !r.is_zero() {
            break;
        }
        rest = q;
        count += 1;
    }
    Valuation::Finite(count)
}

/// Sum of the base-`p` digits of `n`.
pub fn digit_sum(mut n: u64, p: u64) -> u64 {
    assert!(p >= 2, "digit base must be at least 2");
    let mut s = 0;
    while n > 0 {
        s += n % p;
        n /= p;
    }
    s
}

fn check_parts(n: u64, parts: &[u64]) -> Result<()> {
    let total: u64 = parts.iter().sum();
    if total != n {
        return Err(Error::PartsSumMismatch {
            expected: n,
            actual: total,
        });
    }
    Ok(())
}

/// Multinomial coefficient `n! / prod(parts!)`.
///
/// Built as a product of binomials so intermediate values stay exact and
/// never exceed the result by more than the current binomial.
pub fn multinomial(n: u64, parts: &[u64]) -> Result<BigInt> {
    check_parts(n, parts)?;
    let mut acc = BigInt::one();
    let mut filled = 0;
    for &k in parts {
        filled += k;
        acc *= binomial(filled, k);
    }
    Ok(acc)
}

/// `binom(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    BigInt::from(acc)
}

/// Legendre/Kummer: the p-adic valuation of `multinomial(n, parts)` from
/// base-`p` digit sums alone.
pub fn kummer_valuation(n: u64, parts: &[u64], p: u64) -> Result<u64> {
    check_prime(p)?;
    check_parts(n, parts)?;
    let excess: u64 = parts.iter().map(|&k| digit_sum(k, p)).sum::<u64>() - digit_sum(n, p);
    debug_assert_eq!(excess % (p - 1), 0);
    Ok(excess / (p - 1))
}

/// Catalan number `C_k = binom(2k, k) / (k + 1)`.
pub fn catalan(k: u64) -> BigInt {
    binomial(2 * k, k) / BigInt::from(k + 1)
}

/// Table of Catalan numbers `C_0..=C_max`.
pub fn catalan_table(max: u64) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(max as usize + 1);
    let mut c = BigInt::one();
    out.push(c.clone());
    for k in 0..max {
        // C_{k+1} = C_k * 2(2k+1) / (k+2)
        c = c * BigInt::from(2 * (2 * k + 1)) / BigInt::from(k + 2);
        out.push(c.clone());
    }
    out
}

/// Decimal string rendering used by every serialized report.
pub fn decimal(x: &BigInt) -> String {
    x.to_str_radix(10)
}
