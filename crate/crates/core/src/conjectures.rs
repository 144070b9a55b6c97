//! Evaluators of `g(m, n)` and the divisibility checks built on them.
//!
//! `g(m, n) = ⟨s_{m^{n-m}} s_{(n-m)^m}, s_{m^m}^{2(k-1)}⟩` for `n = km` is
//! computed three ways:
//!
//! * [`g_direct`]: the Hall pairing, with the power formed in the Schur basis;
//! * [`g_cauchy`]: the coefficient of `s_T ⊗ s_T`, `T = (n-m)^m`, in
//!   `(Σ_{λ ⊆ m x m} s_λ ⊗ s_{λ̃*})^{2(k-1)}`;
//! * [`g_two_rows`]: for `m = 2`, the closed septuple sum.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::arith::{self, catalan_table, digit_sum, multinomial, val_p_unchecked, Valuation};
use crate::error::{Error, Result};
use crate::partition::{enumerate_in_rect, Partition, Rectangle};
use crate::symfunc::{self, hall_inner, schur_multiply, schur_power, BiElement, SymElement};

/// Default cap on the support of any intermediate expansion.
pub const DEFAULT_TERM_BUDGET: u64 = 5_000_000;

/// `(m, n)` with `n = k m`, `k >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GInput {
    pub m: u32,
    pub n: u32,
    pub k: u32,
}

impl GInput {
    pub fn new(m: u32, n: u32) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidInput(format!(
                "m and n must be positive, got ({m}, {n})"
            )));
        }
        if !n.is_multiple_of(m) {
            return Err(Error::InvalidInput(format!(
                "m = {m} does not divide n = {n}"
            )));
        }
        let k = n / m;
        if k < 2 {
            return Err(Error::InvalidInput(format!("need n >= 2m, got ({m}, {n})")));
        }
        Ok(GInput { m, n, k })
    }

    /// Exponent `2(k - 1)` of the square.
    pub fn exponent(self) -> u32 {
        2 * (self.k - 1)
    }

    /// `T = (n-m)^m`: `m` rows of length `n - m`.
    pub fn target(self) -> Partition {
        Partition::rectangle(self.m, self.n - self.m)
    }

    pub fn square(self) -> Partition {
        Partition::rectangle(self.m, self.m)
    }
}

/// `g(m, n)` as a Hall inner product. Every factor only grows shapes, and
/// the pairing partner fits an `n x n` box, so the power is pruned to that
/// box without changing the result.
pub fn g_direct(input: GInput, budget: u64) -> Result<BigInt> {
    let GInput { m, n, .. } = input;
    let left = schur_multiply(
        &SymElement::schur(Partition::rectangle(n - m, m)),
        &SymElement::schur(input.target()),
    )?;
    let frame = Rectangle::new(n, n)?;
    let power = schur_power(
        &SymElement::schur(input.square()),
        input.exponent(),
        Some(frame),
        budget,
    )?;
    hall_inner(&left, &power)
}

/// `Σ_{λ ⊆ m x m} s_λ ⊗ s_{λ̃*}`, the transpose-dual taken in the square.
pub fn cauchy_kernel(m: u32) -> Result<BiElement> {
    let sq = Rectangle::new(m, m)?;
    let mut out = BiElement::zero();
    for lam in enumerate_in_rect(sq) {
        let dual = lam.transpose_complement(sq)?;
        out.add_term(lam, dual, BigInt::one());
    }
    Ok(out)
}

/// `g(m, n)` through the coproduct of `s_{m^m}`. Both factors are truncated
/// to the `m x (n-m)` box holding the target, i.e. the computation runs in
/// `CH*(G(m, n)) ⊗ CH*(G(m, n))`.
pub fn g_cauchy(input: GInput, budget: u64) -> Result<BigInt> {
    let rect = Rectangle::new(input.m, input.n - input.m)?;
    let power =
        cauchy_kernel(input.m)?.power(input.exponent(), (Some(rect), Some(rect)), budget)?;
    let t = input.target();
    Ok(power.coefficient(&t, &t))
}

/// A septuple `(a, b, c, d, e, f, g)` indexing one term of the two-row sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Septuple {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
    pub e: u64,
    pub f: u64,
    pub g: u64,
}

impl Septuple {
    pub fn parts(&self) -> [u64; 7] {
        [self.a, self.b, self.c, self.d, self.e, self.f, self.g]
    }

    pub fn total(&self) -> u64 {
        self.parts().iter().sum()
    }

    /// Both constraints: total `2ℓ` and `d + 2f = e + 2g`.
    pub fn is_valid(&self, l: u64) -> bool {
        self.total() == 2 * l && self.d + 2 * self.f == self.e + 2 * self.g
    }

    /// The involution `(a, d, f) <-> (b, e, g)`.
    pub fn swapped(&self) -> Septuple {
        Septuple {
            a: self.b,
            b: self.a,
            c: self.c,
            d: self.e,
            e: self.d,
            f: self.g,
            g: self.f,
        }
    }

    pub fn is_fixed(&self) -> bool {
        self.swapped() == *self
    }

    /// `(-2)^c · multinomial(2ℓ; a..g) · C_{a+(d+e)/2} · C_{b+(d+e)/2}`.
    pub fn term(&self, catalans: &[BigInt]) -> BigInt {
        let half = (self.d + self.e) / 2;
        let mut v = multinomial(self.total(), &self.parts()).expect("parts sum to total");
        v *= &catalans[(self.a + half) as usize];
        v *= &catalans[(self.b + half) as usize];
        let two_c = BigInt::from(2u8).pow(self.c as u32);
        if self.c % 2 == 1 {
            -(v * two_c)
        } else {
            v * two_c
        }
    }
}

/// All septuples satisfying both constraints, in lexicographic order.
pub fn valid_septuples(l: u64) -> Vec<Septuple> {
    let total = 2 * l;
    let mut out = Vec::new();
    for a in 0..=total {
        for b in 0..=total - a {
            for c in 0..=total - a - b {
                let r1 = total - a - b - c;
                for d in 0..=r1 {
                    for e in 0..=r1 - d {
                        let r2 = r1 - d - e;
                        // f + g = r2 and d + 2f = e + 2g  =>  4f = 2 r2 + e - d
                        let num = 2 * r2 as i64 + e as i64 - d as i64;
                        if num < 0 || num % 4 != 0 {
                            continue;
                        }
                        let f = (num / 4) as u64;
                        if f > r2 {
                            continue;
                        }
                        out.push(Septuple {
                            a,
                            b,
                            c,
                            d,
                            e,
                            f,
                            g: r2 - f,
                        });
                    }
                }
            }
        }
    }
    out
}

/// One term of an enumerated sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermRecord<I> {
    pub index: I,
    #[serde(serialize_with = "ser_decimal")]
    pub value: BigInt,
    pub valuation: Valuation,
}

/// Every term of the two-row sum with its exact value and 2-adic valuation.
pub fn septuple_terms(l: u64) -> Vec<TermRecord<Septuple>> {
    let catalans = catalan_table(2 * l + 1);
    valid_septuples(l)
        .into_par_iter()
        .map(|s| {
            let value = s.term(&catalans);
            let valuation = val_p_unchecked(&value, 2);
            TermRecord {
                index: s,
                value,
                valuation,
            }
        })
        .collect()
}

/// The two-row closed form for `g(2, 2ℓ + 2)`.
pub fn g_two_rows(l: u64) -> Result<BigInt> {
    if l == 0 {
        return Err(Error::InvalidInput("ℓ must be at least 1".into()));
    }
    Ok(septuple_terms(l).into_iter().map(|t| t.value).sum())
}

/// Whether `(a,d,f) <-> (b,e,g)` maps valid septuples to valid septuples
/// with the same term value.
pub fn involution_check(l: u64) -> bool {
    let catalans = catalan_table(2 * l + 1);
    valid_septuples(l).par_iter().all(|s| {
        let t = s.swapped();
        t.is_valid(l) && s.term(&catalans) == t.term(&catalans)
    })
}

/// Whether replacing `(a, c)` by `(a + c, 0)` never raises the 2-adic
/// valuation of a term.
pub fn absorb_c_check(l: u64) -> bool {
    let catalans = catalan_table(2 * l + 1);
    valid_septuples(l).par_iter().all(|s| {
        let merged = Septuple {
            a: s.a + s.c,
            c: 0,
            ..*s
        };
        val_p_unchecked(&merged.term(&catalans), 2) <= val_p_unchecked(&s.term(&catalans), 2)
    })
}

/// Report parameters; absent fields are omitted from JSON.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ReportParams {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    /// Valuation threshold being checked.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_valuation: Option<u64>,
    /// What one enumerated term is indexed by.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub granularity: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RouteCheck {
    pub route: String,
    /// `None` when the route was skipped for budget reasons.
    #[serde(serialize_with = "ser_opt_decimal")]
    pub value: Option<BigInt>,
    pub agrees: Option<bool>,
}

/// Aggregate valuation data for one conjecture instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValuationReport {
    pub params: ReportParams,
    #[serde(serialize_with = "ser_decimal")]
    pub total: BigInt,
    pub total_valuation: Valuation,
    /// `None` when the report has no term decomposition.
    pub min_term_valuation: Option<Valuation>,
    #[serde(serialize_with = "ser_opt_count")]
    pub count_at_min: Option<u128>,
    #[serde(serialize_with = "ser_opt_count")]
    pub term_count: Option<u128>,
    pub route_checks: Vec<RouteCheck>,
    pub holds: bool,
}

fn ser_decimal<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

fn ser_opt_decimal<S: Serializer>(
    x: &Option<BigInt>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

fn ser_opt_count<S: Serializer>(x: &Option<u128>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

/// Running minimum-valuation tally, mergeable in enumeration order.
#[derive(Clone, Debug, Default)]
struct Tally {
    total: BigInt,
    min: Option<Valuation>,
    count_at_min: u128,
    terms: u128,
}

impl Tally {
    fn push(&mut self, value: &BigInt, valuation: Valuation) {
        self.total += value;
        self.terms += 1;
        self.note(valuation, 1);
    }

    fn note(&mut self, valuation: Valuation, count: u128) {
        match self.min {
            Some(cur) if valuation > cur => {}
            Some(cur) if valuation == cur => self.count_at_min += count,
            _ => {
                self.min = Some(valuation);
                self.count_at_min = count;
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.total += other.total;
        self.terms += other.terms;
        if let Some(v) = other.min {
            self.note(v, other.count_at_min);
        }
        self
    }
}

/// Valuation report over the septuple terms for `ℓ`: the sum has 2-adic
/// valuation `digit_sum(ℓ, 2)`, every term reaches at least that, and an odd
/// number of terms attain it.
pub fn septuple_report(l: u64) -> Result<ValuationReport> {
    if l == 0 {
        return Err(Error::InvalidInput("ℓ must be at least 1".into()));
    }
    let expected = digit_sum(l, 2);
    let tally = septuple_terms(l).iter().fold(Tally::default(), |mut t, r| {
        t.push(&r.value, r.valuation);
        t
    });
    let total_valuation = val_p_unchecked(&tally.total, 2);
    let min = tally.min.unwrap_or(Valuation::Infinite);
    let holds = total_valuation == Valuation::Finite(expected)
        && min == Valuation::Finite(expected)
        && tally.count_at_min % 2 == 1;
    Ok(ValuationReport {
        params: ReportParams {
            kind: "two-rows".into(),
            p: Some(2),
            l: Some(l),
            m: Some(2),
            n: u32::try_from(2 * l + 2).ok(),
            expected_valuation: Some(expected),
            granularity: Some("septuple".into()),
            ..Default::default()
        },
        total: tally.total,
        total_valuation,
        min_term_valuation: Some(min),
        count_at_min: Some(tally.count_at_min),
        term_count: Some(tally.terms),
        route_checks: Vec::new(),
        holds,
    })
}

fn prime_power(p: u64, e: u32) -> Result<u32> {
    p.checked_pow(e)
        .and_then(|v| u32::try_from(v).ok())
        .ok_or_else(|| Error::InvalidInput(format!("{p}^{e} is too large")))
}

fn check_pef(p: u64, e: u32, f: u32) -> Result<(u32, u32)> {
    arith::check_prime(p)?;
    if e == 0 || e >= f {
        return Err(Error::InvalidInput(format!(
            "need 0 < e < f, got e = {e}, f = {f}"
        )));
    }
    Ok((prime_power(p, e)?, prime_power(p, f)?))
}

fn route_check(route: &str, value: Result<BigInt>, reference: &BigInt) -> Result<RouteCheck> {
    match value {
        Ok(v) => {
            let agrees = Some(&v == reference);
            Ok(RouteCheck {
                route: route.into(),
                value: Some(v),
                agrees,
            })
        }
        Err(err) if err.is_budget() => Ok(RouteCheck {
            route: route.into(),
            value: None,
            agrees: None,
        }),
        Err(err) => Err(err),
    }
}

/// Checks `val_p g(p^e, p^f) = f - e`. The direct route is authoritative;
/// the Cauchy route (and the two-row sum when `m = 2`) are cross-checks that
/// are skipped, not failed, when they exceed the budget. A disagreeing
/// cross-check makes the instance fail.
pub fn verify_conj2(p: u64, e: u32, f: u32, budget: u64) -> Result<ValuationReport> {
    let (m, n) = check_pef(p, e, f)?;
    let input = GInput::new(m, n)?;
    let value = g_direct(input, budget)?;
    let mut checks = vec![RouteCheck {
        route: "direct".into(),
        value: Some(value.clone()),
        agrees: Some(true),
    }];
    checks.push(route_check("cauchy", g_cauchy(input, budget), &value)?);
    if m == 2 {
        checks.push(route_check(
            "two-rows",
            g_two_rows(u64::from(n / 2 - 1)),
            &value,
        )?);
    }
    let expected = u64::from(f - e);
    let total_valuation = val_p_unchecked(&value, p);
    let consistent = checks.iter().all(|c| c.agrees != Some(false));
    Ok(ValuationReport {
        params: ReportParams {
            kind: "c2".into(),
            p: Some(p),
            e: Some(e),
            f: Some(f),
            m: Some(m),
            n: Some(n),
            expected_valuation: Some(expected),
            ..Default::default()
        },
        holds: consistent && total_valuation == Valuation::Finite(expected),
        total: value,
        total_valuation,
        min_term_valuation: None,
        count_at_min: None,
        term_count: None,
        route_checks: checks,
    })
}

/// How the elementary expansion of the kernel is indexed when taking the
/// multinomial expansion of its power.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Granularity {
    /// One index per elementary monomial `e_μ ⊗ e_ν`, coefficients of equal
    /// monomials combined.
    #[default]
    Monomial,
    /// One index per triple `(λ, μ, ν)`, nothing combined.
    Triple,
}

impl Granularity {
    pub fn as_str(self) -> &'static str {
        match self {
            Granularity::Monomial => "monomial",
            Granularity::Triple => "triple",
        }
    }
}

/// One index of the elementary expansion
/// `Σ_λ s_λ ⊗ s_{λ̃*} = Σ M^{se}_{λμ} M^{se}_{λ̃* ν} e_μ ⊗ e_ν`.
/// `lambda` is absent when equal monomials have been combined.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelTerm {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Partition>,
    pub mu: Partition,
    pub nu: Partition,
    #[serde(serialize_with = "ser_decimal")]
    pub coeff: BigInt,
}

/// Nonzero indices of the elementary expansion of [`cauchy_kernel`].
/// Triples come in `(λ, μ, ν)` order, monomials in `(μ, ν)` order.
pub fn kernel_terms(m: u32, granularity: Granularity) -> Result<Vec<KernelTerm>> {
    let sq = Rectangle::new(m, m)?;
    let mut triples = Vec::new();
    for lambda in enumerate_in_rect(sq) {
        let dual = lambda.transpose_complement(sq)?;
        let left = symfunc::transition_block(lambda.weight() as u32).m_se_row(&lambda);
        let right = symfunc::transition_block(dual.weight() as u32).m_se_row(&dual);
        for (mu, a) in &left {
            for (nu, b) in &right {
                triples.push(KernelTerm {
                    lambda: Some(lambda.clone()),
                    mu: mu.clone(),
                    nu: nu.clone(),
                    coeff: a * b,
                });
            }
        }
    }
    if granularity == Granularity::Triple {
        return Ok(triples);
    }
    let mut combined: std::collections::BTreeMap<(Partition, Partition), BigInt> =
        Default::default();
    for t in triples {
        *combined.entry((t.mu, t.nu)).or_insert_with(BigInt::zero) += t.coeff;
    }
    Ok(combined
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((mu, nu), coeff)| KernelTerm {
            lambda: None,
            mu,
            nu,
            coeff,
        })
        .collect())
}

/// A multinomial tuple: one multiplicity per kernel index.
pub type Tuple = Vec<u32>;

/// Result of [`termwise_scan`].
#[derive(Clone, Debug)]
pub struct ScanOutcome {
    pub report: ValuationReport,
    pub kernel: Vec<KernelTerm>,
    /// Nonzero terms, when requested, in lexicographic tuple order.
    pub terms: Option<Vec<TermRecord<Tuple>>>,
    /// Number of tuples whose term is nonzero.
    pub nonzero_terms: u128,
    /// Number of terms not divisible by `p^{f-e}`.
    pub failures: u128,
}

struct ScanCtx<'a> {
    kernel: &'a [KernelTerm],
    /// `|μ|` for each kernel index.
    weights: Vec<u64>,
    target: Partition,
    target_weight: u64,
    depth: u32,
    threshold: u64,
    p: u64,
    keep: bool,
}

#[derive(Default)]
struct ScanPart {
    tally: Tally,
    nonzero: u128,
    failures: u128,
    records: Vec<TermRecord<Tuple>>,
}

impl ScanPart {
    fn merge(mut self, other: ScanPart) -> ScanPart {
        self.tally = self.tally.merge(other.tally);
        self.nonzero += other.nonzero;
        self.failures += other.failures;
        self.records.extend(other.records);
        self
    }
}

/// Number of ways to write `total` as an ordered sum of `slots` naturals.
fn count_compositions(total: u32, slots: usize) -> u128 {
    if slots == 0 {
        return u128::from(total == 0);
    }
    // binom(total + slots - 1, slots - 1)
    let n = total as u128 + slots as u128 - 1;
    let k = (slots as u128 - 1).min(total as u128);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

impl ScanCtx<'_> {
    /// Enumerates completions of `prefix` (multiplicities for indices `< idx`).
    fn walk(&self, idx: usize, prefix: &mut Tuple, left: u32, weight: u64, out: &mut ScanPart) {
        if weight > self.target_weight {
            // every completion has a μ-union heavier than the target: all zero
            let n = count_compositions(left, self.kernel.len() - idx);
            out.tally.terms += n;
            out.tally.note(Valuation::Infinite, n);
            return;
        }
        if idx + 1 == self.kernel.len() {
            prefix.push(left);
            let w = weight + u64::from(left) * self.weights[idx];
            self.leaf(prefix, w, out);
            prefix.pop();
            return;
        }
        for c in 0..=left {
            prefix.push(c);
            self.walk(
                idx + 1,
                prefix,
                left - c,
                weight + u64::from(c) * self.weights[idx],
                out,
            );
            prefix.pop();
        }
    }

    fn leaf(&self, tuple: &Tuple, weight: u64, out: &mut ScanPart) {
        let value = if weight == self.target_weight {
            self.term_value(tuple)
        } else {
            BigInt::zero()
        };
        let valuation = val_p_unchecked(&value, self.p);
        if !value.is_zero() {
            out.nonzero += 1;
            if self.keep {
                out.records.push(TermRecord {
                    index: tuple.clone(),
                    value: value.clone(),
                    valuation,
                });
            }
        }
        if !valuation.at_least(self.threshold) {
            out.failures += 1;
        }
        out.tally.push(&value, valuation);
    }

    /// `multinomial · Π coeff^c · M^{es}_{⊎μ, T} · M^{es}_{⊎ν, T}`.
    fn term_value(&self, tuple: &Tuple) -> BigInt {
        let counts: Vec<u64> = tuple.iter().map(|&c| u64::from(c)).collect();
        let mut value = multinomial(u64::from(self.depth), &counts).expect("tuple sums to depth");
        let mut mus = Vec::new();
        let mut nus = Vec::new();
        for (t, &c) in self.kernel.iter().zip(tuple) {
            if c == 0 {
                continue;
            }
            value *= t.coeff.pow(c);
            for _ in 0..c {
                mus.extend_from_slice(t.mu.parts());
                nus.extend_from_slice(t.nu.parts());
            }
        }
        if value.is_zero() {
            return value;
        }
        let mu = Partition::from_unsorted(mus);
        let nu = Partition::from_unsorted(nus);
        value *= symfunc::m_es(&mu, &self.target);
        if value.is_zero() {
            return value;
        }
        value * symfunc::m_es(&nu, &self.target)
    }
}

/// Expands the kernel in the elementary basis, takes the multinomial
/// expansion of its `2(k-1)`-th power and pairs every term with
/// `s_T ⊗ s_T`. Checks that `p^{f-e}` divides each term and that the terms
/// sum to `g_direct`.
pub fn termwise_scan(
    p: u64,
    e: u32,
    f: u32,
    granularity: Granularity,
    budget: u64,
    keep_terms: bool,
) -> Result<ScanOutcome> {
    let (m, n) = check_pef(p, e, f)?;
    let input = GInput::new(m, n)?;
    let depth = input.exponent();
    let kernel = kernel_terms(m, granularity)?;
    let tuple_count = count_compositions(depth, kernel.len());
    if tuple_count > u128::from(budget) {
        return Err(Error::BudgetExhausted {
            stage: "tuple scan",
            reached: tuple_count,
            limit: budget,
        });
    }
    let target = input.target();
    let threshold = u64::from(f - e);
    let ctx = ScanCtx {
        weights: kernel.iter().map(|t| t.mu.weight()).collect(),
        kernel: &kernel,
        target_weight: target.weight(),
        target,
        depth,
        threshold,
        p,
        keep: keep_terms,
    };

    // split on the first two coordinates; collected parts stay in
    // lexicographic tuple order
    let mut seeds: Vec<Tuple> = Vec::new();
    if kernel.len() >= 3 {
        for c0 in 0..=depth {
            for c1 in 0..=depth - c0 {
                seeds.push(vec![c0, c1]);
            }
        }
    } else {
        seeds.push(Vec::new());
    }
    let parts: Vec<ScanPart> = seeds
        .into_par_iter()
        .map(|seed| {
            let mut part = ScanPart::default();
            let used: u32 = seed.iter().sum();
            let weight: u64 = seed
                .iter()
                .zip(&ctx.weights)
                .map(|(&c, &w)| u64::from(c) * w)
                .sum();
            let mut prefix = seed.clone();
            ctx.walk(seed.len(), &mut prefix, depth - used, weight, &mut part);
            part
        })
        .collect();
    let scan = parts.into_iter().fold(ScanPart::default(), ScanPart::merge);

    let direct = route_check("direct", g_direct(input, budget), &scan.tally.total)?;
    let sums_match = direct.agrees != Some(false);
    let checks = vec![
        RouteCheck {
            route: "termwise-sum".into(),
            value: Some(scan.tally.total.clone()),
            agrees: direct.agrees,
        },
        direct,
    ];

    let total_valuation = val_p_unchecked(&scan.tally.total, p);
    let report = ValuationReport {
        params: ReportParams {
            kind: "c5".into(),
            p: Some(p),
            e: Some(e),
            f: Some(f),
            m: Some(m),
            n: Some(n),
            expected_valuation: Some(threshold),
            granularity: Some(granularity.as_str().into()),
            ..Default::default()
        },
        total: scan.tally.total,
        total_valuation,
        min_term_valuation: scan.tally.min,
        count_at_min: Some(scan.tally.count_at_min),
        term_count: Some(scan.tally.terms),
        route_checks: checks,
        holds: scan.failures == 0 && sums_match,
    };
    Ok(ScanOutcome {
        report,
        kernel,
        terms: if keep_terms { Some(scan.records) } else { None },
        nonzero_terms: scan.nonzero,
        failures: scan.failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const B: u64 = DEFAULT_TERM_BUDGET;

    fn gi(m: u32, n: u32) -> GInput {
        GInput::new(m, n).unwrap()
    }

    #[test]
    fn input_validation() {
        assert!(GInput::new(2, 5).is_err());
        assert!(GInput::new(2, 2).is_err());
        assert!(GInput::new(0, 2).is_err());
        let g = gi(2, 6);
        assert_eq!((g.k, g.exponent()), (3, 4));
        assert_eq!(g.target(), Partition::rectangle(2, 4));
    }

    #[test]
    fn g_direct_examples() {
        assert_eq!(g_direct(gi(1, 2), B).unwrap(), BigInt::from(2));
        assert_eq!(g_direct(gi(2, 4), B).unwrap(), BigInt::from(6));
        assert_eq!(g_direct(gi(3, 6), B).unwrap(), BigInt::from(20));
    }

    #[test]
    fn g_cauchy_examples() {
        assert_eq!(g_cauchy(gi(1, 2), B).unwrap(), BigInt::from(2));
        assert_eq!(g_cauchy(gi(2, 4), B).unwrap(), BigInt::from(6));
        assert_eq!(
            g_cauchy(gi(2, 6), B).unwrap(),
            g_direct(gi(2, 6), B).unwrap()
        );
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            g_direct(gi(2, 8), 3),
            Err(Error::BudgetExhausted { .. })
        ));
        assert!(matches!(
            g_cauchy(gi(2, 8), 3),
            Err(Error::BudgetExhausted { .. })
        ));
        assert!(matches!(
            termwise_scan(2, 1, 3, Granularity::Monomial, 10, false),
            Err(Error::BudgetExhausted { .. })
        ));
    }

    #[test]
    fn two_rows_examples() {
        assert_eq!(g_two_rows(1).unwrap(), BigInt::from(6));
        assert_eq!(g_two_rows(2).unwrap(), g_direct(gi(2, 6), B).unwrap());
        let g3 = g_two_rows(3).unwrap();
        assert_eq!(arith::val_p(&g3, 2).unwrap(), Valuation::Finite(2));
        assert!(g_two_rows(0).is_err());
    }

    #[test]
    fn septuple_examples() {
        let terms = septuple_terms(1);
        let fg = Septuple {
            a: 0,
            b: 0,
            c: 0,
            d: 0,
            e: 0,
            f: 1,
            g: 1,
        };
        let hit = terms.iter().find(|t| t.index == fg).unwrap();
        assert_eq!(hit.value, BigInt::from(2));
        assert_eq!(hit.valuation, Valuation::Finite(1));
        assert!(septuple_terms(3).iter().all(|t| t.valuation.at_least(2)));
        assert!(terms.iter().all(|t| t.index.is_valid(1)));
    }

    #[test]
    fn septuple_enumeration_is_complete() {
        for l in 1..=3u64 {
            let total = 2 * l;
            let mut brute = Vec::new();
            for a in 0..=total {
                for b in 0..=total {
                    for c in 0..=total {
                        for d in 0..=total {
                            for e in 0..=total {
                                for f in 0..=total {
                                    for g in 0..=total {
                                        let s = Septuple {
                                            a,
                                            b,
                                            c,
                                            d,
                                            e,
                                            f,
                                            g,
                                        };
                                        if s.is_valid(l) {
                                            brute.push(s);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
            assert_eq!(valid_septuples(l), brute);
        }
    }

    #[test]
    fn involution_examples() {
        assert!(involution_check(1));
        assert!(involution_check(4));
        for l in 1..=6 {
            for s in valid_septuples(l).iter().filter(|s| s.is_fixed()) {
                assert_eq!((s.a, s.d, s.f), (s.b, s.e, s.g));
                assert_eq!(s.c % 2, 0, "{s:?}");
            }
        }
    }

    #[test]
    fn septuple_report_small() {
        let r = septuple_report(3).unwrap();
        assert!(r.holds);
        assert_eq!(r.total_valuation, Valuation::Finite(2));
        assert_eq!(r.min_term_valuation, Some(Valuation::Finite(2)));
        assert_eq!(r.count_at_min.unwrap() % 2, 1);
    }

    #[test]
    fn tally_merge_matches_sequential() {
        let vals = [(3, 1), (5, 0), (8, 3), (7, 0), (0, 0)];
        let mut seq = Tally::default();
        for (v, _) in vals {
            let b = BigInt::from(v);
            seq.push(&b, val_p_unchecked(&b, 2));
        }
        let mut a = Tally::default();
        let mut b = Tally::default();
        for (i, (v, _)) in vals.iter().enumerate() {
            let x = BigInt::from(*v);
            if i < 2 {
                a.push(&x, val_p_unchecked(&x, 2))
            } else {
                b.push(&x, val_p_unchecked(&x, 2))
            }
        }
        let merged = a.merge(b);
        assert_eq!(
            (merged.total, merged.min, merged.count_at_min, merged.terms),
            (seq.total, seq.min, seq.count_at_min, seq.terms)
        );
    }

    #[test]
    fn composition_counts() {
        assert_eq!(count_compositions(2, 12), 78);
        assert_eq!(count_compositions(6, 12), 12376);
        assert_eq!(count_compositions(0, 5), 1);
        assert_eq!(count_compositions(3, 1), 1);
    }

    #[test]
    fn kernel_terms_for_two() {
        let triples = kernel_terms(2, Granularity::Triple).unwrap();
        assert_eq!(triples.len(), 12);
        let monomials = kernel_terms(2, Granularity::Monomial).unwrap();
        // e_2 ⊗ e_2 collects -1 from λ = [1,1] and -1 from λ = [2]
        let ee = monomials
            .iter()
            .find(|t| t.mu == Partition::row(2) && t.nu == Partition::row(2))
            .unwrap();
        assert_eq!(ee.coeff, BigInt::from(-2));
        assert_eq!(monomials.len(), 11);
        // both indexings expand back to the kernel in the Schur basis
        for terms in [&triples, &monomials] {
            let mut rebuilt = BiElement::zero();
            for t in terms.iter() {
                let left = symfunc::to_basis(
                    &SymElement::basis_element(symfunc::BasisTag::Elementary, t.mu.clone()),
                    symfunc::BasisTag::Schur,
                );
                let right = symfunc::to_basis(
                    &SymElement::basis_element(symfunc::BasisTag::Elementary, t.nu.clone()),
                    symfunc::BasisTag::Schur,
                );
                for (a, ca) in left.terms() {
                    for (b, cb) in right.terms() {
                        rebuilt.add_term(a.clone(), b.clone(), &t.coeff * ca * cb);
                    }
                }
            }
            assert_eq!(rebuilt, cauchy_kernel(2).unwrap());
        }
    }

    #[test]
    fn termwise_smallest_case() {
        let out = termwise_scan(2, 1, 2, Granularity::Monomial, B, true).unwrap();
        assert!(out.report.holds);
        assert_eq!(out.report.total, BigInt::from(6));
        assert_eq!(out.report.term_count, Some(66));
        let recs = out.terms.unwrap();
        assert_eq!(recs.len() as u128, out.nonzero_terms);
        assert!(recs.iter().all(|r| r.valuation.at_least(1)));
        let sum: BigInt = recs.iter().map(|r| &r.value).sum();
        assert_eq!(sum, BigInt::from(6));
    }

    #[test]
    fn triple_indexing_splits_divisible_terms() {
        // e_2 ⊗ e_2 from two different λ: each square alone is odd
        let out = termwise_scan(2, 1, 2, Granularity::Triple, B, true).unwrap();
        assert_eq!(out.report.total, BigInt::from(6));
        assert_eq!(out.report.term_count, Some(78));
        assert_eq!(out.report.min_term_valuation, Some(Valuation::Finite(0)));
        assert_eq!(out.failures, 2);
        assert!(!out.report.holds);
    }
}
