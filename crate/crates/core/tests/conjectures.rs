use num_bigint::BigInt;
use num_traits::Zero;
use schurforge::arith::{binomial, digit_sum, val_p, Valuation};
use schurforge::conjectures::{
    absorb_c_check, g_cauchy, g_direct, g_two_rows, involution_check, septuple_report,
    septuple_terms, termwise_scan, verify_conj2, GInput, Granularity, DEFAULT_TERM_BUDGET as B,
};

fn input(m: u32, n: u32) -> GInput {
    GInput::new(m, n).unwrap()
}

/// The two-row sum with plain integer arithmetic and seven nested loops.
fn two_rows_oracle(l: u64) -> i128 {
    let n = 2 * l;
    let fact = |k: u64| (1..=k).map(i128::from).product::<i128>();
    let cat = |k: u64| fact(2 * k) / (fact(k) * fact(k + 1));
    let mut total = 0;
    for a in 0..=n {
        for b in 0..=n - a {
            for c in 0..=n - a - b {
                for d in 0..=n - a - b - c {
                    for e in 0..=n - a - b - c - d {
                        for f in 0..=n - a - b - c - d - e {
                            let g = n - a - b - c - d - e - f;
                            if d + 2 * f != e + 2 * g {
                                continue;
                            }
                            let multi = fact(n)
                                / [a, b, c, d, e, f, g]
                                    .iter()
                                    .map(|&x| fact(x))
                                    .product::<i128>();
                            let sign = if c % 2 == 0 { 1 } else { -1 };
                            let h = (d + e) / 2;
                            total += sign * (1i128 << c) * multi * cat(a + h) * cat(b + h);
                        }
                    }
                }
            }
        }
    }
    total
}

#[test]
fn central_binomial_values() {
    for m in 1..=4u32 {
        let expected = binomial(2 * u64::from(m), u64::from(m));
        assert_eq!(g_direct(input(m, 2 * m), B).unwrap(), expected, "m={m}");
        assert_eq!(g_cauchy(input(m, 2 * m), B).unwrap(), expected, "m={m}");
    }
}

#[test]
fn single_column_values() {
    // s_{1^{n-1}} s_{n-1} is a sum of two hooks, so g(1, n) = binom(2n-2, n-1)
    for n in 2..=8u32 {
        let expected = binomial(2 * u64::from(n) - 2, u64::from(n) - 1);
        assert_eq!(g_direct(input(1, n), B).unwrap(), expected, "n={n}");
    }
}

#[test]
fn three_routes_agree() {
    for l in 1..=5u64 {
        let n = 2 * l as u32 + 2;
        let direct = g_direct(input(2, n), B).unwrap();
        assert_eq!(g_cauchy(input(2, n), B).unwrap(), direct, "l={l}");
        assert_eq!(g_two_rows(l).unwrap(), direct, "l={l}");
        assert_eq!(direct, BigInt::from(two_rows_oracle(l)), "l={l}");
    }
}

#[test]
fn cauchy_route_matches_direct() {
    for (m, n) in [(1, 2), (2, 4), (2, 6), (3, 6), (2, 8), (1, 5), (3, 9)] {
        assert_eq!(
            g_cauchy(input(m, n), B).unwrap(),
            g_direct(input(m, n), B).unwrap(),
            "({m},{n})"
        );
    }
}

#[test]
fn two_adic_valuation_law() {
    for l in 1..=12u64 {
        let g = g_two_rows(l).unwrap();
        assert_eq!(
            val_p(&g, 2).unwrap(),
            Valuation::Finite(digit_sum(l, 2)),
            "l={l}"
        );
    }
}

#[test]
fn septuple_termwise_bound() {
    for l in 1..=8u64 {
        let v = digit_sum(l, 2);
        let terms = septuple_terms(l);
        let min = terms.iter().map(|t| t.valuation).min().unwrap();
        assert_eq!(min, Valuation::Finite(v), "l={l}");
        let at_min = terms.iter().filter(|t| t.valuation == min).count();
        assert_eq!(at_min % 2, 1, "l={l}");
        let total: BigInt = terms.iter().map(|t| &t.value).sum();
        assert_eq!(total, g_two_rows(l).unwrap());
        assert!(septuple_report(l).unwrap().holds);
        assert!(involution_check(l));
    }
}

#[test]
fn absorbing_c_never_raises_valuation() {
    for l in 1..=5 {
        assert!(absorb_c_check(l), "l={l}");
    }
}

#[test]
fn divisibility_instances() {
    for (p, e, f, v) in [(2, 1, 2, 1), (2, 1, 3, 2), (2, 2, 3, 1), (3, 1, 2, 1)] {
        let report = verify_conj2(p, e, f, B).unwrap();
        assert!(report.holds, "({p},{e},{f})");
        assert_eq!(val_p(&report.total, p).unwrap(), Valuation::Finite(v));
        assert!(report.route_checks.iter().all(|c| c.agrees != Some(false)));
    }
}

#[test]
fn termwise_scans() {
    for (e, f) in [(1, 2), (1, 3)] {
        let out = termwise_scan(2, e, f, Granularity::Monomial, B, true).unwrap();
        assert!(out.report.holds, "(2,{e},{f})");
        assert_eq!(out.failures, 0);
        let m = 2u32.pow(e);
        let n = 2u32.pow(f);
        assert_eq!(out.report.total, g_direct(input(m, n), B).unwrap());
        let terms = out.terms.unwrap();
        assert!(terms.iter().all(|t| t.valuation.at_least(u64::from(f - e))));
        assert!(terms.iter().all(|t| !t.value.is_zero()));
        let sum: BigInt = terms.iter().map(|t| &t.value).sum();
        assert_eq!(sum, out.report.total);
    }
}

#[test]
fn triple_indexing_keeps_the_total() {
    for (e, f) in [(1, 2), (1, 3)] {
        let mono = termwise_scan(2, e, f, Granularity::Monomial, B, false).unwrap();
        let triple = termwise_scan(2, e, f, Granularity::Triple, B, false).unwrap();
        assert_eq!(mono.report.total, triple.report.total);
    }
}
