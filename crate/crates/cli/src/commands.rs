use num_bigint::BigInt;
use rayon::prelude::*;
use schurforge::arith::{binomial, digit_sum, val_p};
use schurforge::conjectures::{
    g_cauchy, g_direct, g_two_rows, septuple_report, termwise_scan, verify_conj2, GInput,
    RouteCheck, ValuationReport,
};
use schurforge::schubert::{
    bichow_multiply, bipoint_coefficient, segre_pullback_resultant, segre_pullback_sum, BiChowClass,
};
use schurforge::symfunc::{global_cache, transition_block, TransitionBlock};
use schurforge::{Error, Partition, Result};
use serde_json::{json, Value};

use crate::args::{CacheAction, Conjecture, GranularityArg, Route};
use crate::render::{Rendered, Table};
use crate::store::{line_count, Store};

pub struct Outcome {
    pub rendered: Rendered,
    /// False when the computed instance contradicts what was checked.
    pub holds: bool,
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

fn show(v: &Option<BigInt>) -> String {
    v.as_ref().map_or("-".into(), BigInt::to_string)
}

fn route_table(checks: &[RouteCheck]) -> Table {
    let mut t = Table::new(&["route", "value", "agrees"]);
    for c in checks {
        let agrees = match c.agrees {
            Some(b) => yes_no(b),
            None => "skipped".into(),
        };
        t.push(vec![c.route.clone(), show(&c.value), agrees]);
    }
    t
}

fn run_route(route: Route, input: GInput, budget: u64) -> Result<BigInt> {
    match route {
        Route::Direct => g_direct(input, budget),
        Route::Cauchy => g_cauchy(input, budget),
        Route::TwoRows => {
            if input.m != 2 {
                return Err(Error::InvalidInput(format!(
                    "the two-row route needs m = 2, got m = {}",
                    input.m
                )));
            }
            g_two_rows(u64::from(input.n / 2 - 1))
        }
        Route::Auto => unreachable!("auto is expanded by the caller"),
    }
}

fn route_name(route: Route) -> &'static str {
    match route {
        Route::Auto => "auto",
        Route::Direct => "direct",
        Route::Cauchy => "cauchy",
        Route::TwoRows => "two-rows",
    }
}

pub fn g(m: u32, n: u32, route: Route, budget: u64) -> Result<Outcome> {
    let input = GInput::new(m, n)?;
    let routes: Vec<Route> = match route {
        Route::Auto if m == 2 => vec![Route::Direct, Route::Cauchy, Route::TwoRows],
        Route::Auto => vec![Route::Direct, Route::Cauchy],
        single => vec![single],
    };
    let mut values = Vec::new();
    let mut last_budget_error = None;
    for r in &routes {
        match run_route(*r, input, budget) {
            Ok(v) => values.push((*r, Some(v))),
            Err(err) if err.is_budget() && route == Route::Auto => {
                values.push((*r, None));
                last_budget_error = Some(err);
            }
            Err(err) => return Err(err),
        }
    }
    let Some(value) = values.iter().find_map(|(_, v)| v.clone()) else {
        return Err(last_budget_error.expect("every route was skipped for budget"));
    };
    let checks: Vec<RouteCheck> = values
        .into_iter()
        .map(|(r, v)| RouteCheck {
            route: route_name(r).into(),
            agrees: v.as_ref().map(|x| *x == value),
            value: v,
        })
        .collect();
    let agree = checks.iter().all(|c| c.agrees != Some(false));

    let mut valuations = serde_json::Map::new();
    let mut fields = vec![
        ("m", m.to_string()),
        ("n", n.to_string()),
        ("k", input.k.to_string()),
        ("route", route_name(route).to_string()),
        ("value", value.to_string()),
    ];
    for (p, label) in [(2u64, "val_2"), (3, "val_3"), (5, "val_5")] {
        let v = val_p(&value, p)?;
        valuations.insert(p.to_string(), json!(v));
        fields.push((label, v.to_string()));
    }
    fields.push(("routes_agree", yes_no(agree)));
    let json = json!({
        "m": m,
        "n": n,
        "k": input.k,
        "route": route_name(route),
        "value": value.to_string(),
        "valuations": valuations,
        "route_checks": checks,
        "routes_agree": agree,
    });
    Ok(Outcome {
        rendered: Rendered {
            json,
            tables: vec![Table::fields(fields), route_table(&checks)],
        },
        holds: agree,
    })
}

fn report_fields(r: &ValuationReport) -> Vec<(&'static str, String)> {
    let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
    let p = &r.params;
    vec![
        ("kind", p.kind.clone()),
        ("p", opt(p.p.map(|x| x.to_string()))),
        ("e", opt(p.e.map(|x| x.to_string()))),
        ("f", opt(p.f.map(|x| x.to_string()))),
        ("m", opt(p.m.map(|x| x.to_string()))),
        ("n", opt(p.n.map(|x| x.to_string()))),
        ("granularity", opt(p.granularity.clone())),
        ("total", r.total.to_string()),
        ("total_valuation", r.total_valuation.to_string()),
        (
            "expected_valuation",
            opt(p.expected_valuation.map(|x| x.to_string())),
        ),
        (
            "min_term_valuation",
            opt(r.min_term_valuation.map(|x| x.to_string())),
        ),
        ("count_at_min", opt(r.count_at_min.map(|x| x.to_string()))),
        ("term_count", opt(r.term_count.map(|x| x.to_string()))),
        ("holds", yes_no(r.holds)),
    ]
}

pub fn verify(
    conjecture: Conjecture,
    p: u64,
    e: u32,
    f: u32,
    granularity: GranularityArg,
    budget: u64,
) -> Result<Outcome> {
    match conjecture {
        Conjecture::C2 => {
            let report = verify_conj2(p, e, f, budget)?;
            let json = serde_json::to_value(&report).expect("report serializes");
            let tables = vec![
                Table::fields(report_fields(&report)),
                route_table(&report.route_checks),
            ];
            Ok(Outcome {
                rendered: Rendered { json, tables },
                holds: report.holds,
            })
        }
        Conjecture::C5 => {
            let scan = termwise_scan(p, e, f, granularity.into(), budget, false)?;
            let mut json = serde_json::to_value(&scan.report).expect("report serializes");
            let obj = json.as_object_mut().expect("report is an object");
            obj.insert("kernel_size".into(), json!(scan.kernel.len()));
            obj.insert(
                "nonzero_terms".into(),
                json!(scan.nonzero_terms.to_string()),
            );
            obj.insert("failures".into(), json!(scan.failures.to_string()));
            let mut fields = report_fields(&scan.report);
            fields.push(("kernel_size", scan.kernel.len().to_string()));
            fields.push(("nonzero_terms", scan.nonzero_terms.to_string()));
            fields.push(("failures", scan.failures.to_string()));
            let tables = vec![
                Table::fields(fields),
                route_table(&scan.report.route_checks),
            ];
            Ok(Outcome {
                rendered: Rendered { json, tables },
                holds: scan.report.holds,
            })
        }
    }
}

pub fn scan(lmax: u64) -> Result<Outcome> {
    let reports: Vec<ValuationReport> = (1..=lmax)
        .into_par_iter()
        .map(septuple_report)
        .collect::<Result<_>>()?;
    let mut table = Table::new(&[
        "l",
        "g",
        "val_2",
        "v(l)",
        "min_term_val",
        "count_at_min",
        "parity",
        "holds",
    ]);
    let mut rows = Vec::new();
    for (l, r) in (1..=lmax).zip(&reports) {
        let count = r.count_at_min.unwrap_or(0);
        let parity = if count % 2 == 1 { "odd" } else { "even" };
        let min = r.min_term_valuation.map_or("-".into(), |v| v.to_string());
        table.push(vec![
            l.to_string(),
            r.total.to_string(),
            r.total_valuation.to_string(),
            digit_sum(l, 2).to_string(),
            min.clone(),
            count.to_string(),
            parity.into(),
            yes_no(r.holds),
        ]);
        rows.push(json!({
            "l": l,
            "g": r.total.to_string(),
            "val_2": r.total_valuation,
            "v": digit_sum(l, 2),
            "min_term_valuation": min,
            "count_at_min": count.to_string(),
            "parity": parity,
            "term_count": r.term_count.unwrap_or(0).to_string(),
            "holds": r.holds,
        }));
    }
    let holds = reports.iter().all(|r| r.holds);
    let json = json!({ "lmax": lmax, "rows": rows, "all_hold": holds });
    Ok(Outcome {
        rendered: Rendered {
            json,
            tables: vec![table],
        },
        holds,
    })
}

fn class_table(title: &str, class: &BiChowClass) -> Table {
    let mut t = Table::new(&["first", "second", "coeff"]).titled(title);
    for term in class.to_terms() {
        t.push(vec![
            term.first.to_string(),
            term.second.to_string(),
            term.coeff,
        ]);
    }
    t
}

pub fn pullback(m: u32, n: u32, max_size: u32) -> Result<Outcome> {
    if m > max_size || n > max_size {
        return Err(Error::InvalidInput(format!(
            "pullback sizes are limited to {max_size}, got ({m}, {n})"
        )));
    }
    let sum = segre_pullback_sum(m, n)?;
    let det = segre_pullback_resultant(m, n)?;
    let agree = sum == det;
    let square = bichow_multiply(&sum, &sum)?;
    let bipoint = bipoint_coefficient(&square);
    let expected = binomial(u64::from(m + n), u64::from(m));
    let matches = bipoint == expected;
    let json = json!({
        "m": m,
        "n": n,
        "sum": sum.to_terms(),
        "resultant": det.to_terms(),
        "routes_agree": agree,
        "square_bipoint": bipoint.to_string(),
        "binomial": expected.to_string(),
        "bipoint_matches": matches,
    });
    let summary = Table::fields(vec![
        ("m", m.to_string()),
        ("n", n.to_string()),
        ("terms", sum.len().to_string()),
        ("routes_agree", yes_no(agree)),
        ("square_bipoint", bipoint.to_string()),
        ("binomial", expected.to_string()),
        ("bipoint_matches", yes_no(matches)),
    ]);
    let tables = vec![
        summary,
        class_table("closed sum", &sum),
        class_table("resultant", &det),
    ];
    Ok(Outcome {
        rendered: Rendered { json, tables },
        holds: agree && matches,
    })
}

fn matrix(
    block: &TransitionBlock,
    entry: impl Fn(&Partition, &Partition) -> BigInt,
) -> Vec<Vec<String>> {
    block
        .basis
        .iter()
        .map(|r| {
            block
                .basis
                .iter()
                .map(|c| entry(r, c).to_string())
                .collect()
        })
        .collect()
}

pub fn tables(max_weight: u32) -> Result<Outcome> {
    let mut blocks = Vec::new();
    let mut out = Vec::new();
    for d in 0..=max_weight {
        let block = transition_block(d);
        let basis: Vec<String> = block.basis.iter().map(Partition::to_string).collect();
        let mats = [
            ("kostka", matrix(&block, |a, b| block.kostka(a, b))),
            ("m_se", matrix(&block, |a, b| block.m_se(a, b))),
            ("m_es", matrix(&block, |a, b| block.m_es(a, b))),
        ];
        let mut obj = serde_json::Map::new();
        obj.insert("weight".into(), json!(d));
        obj.insert("basis".into(), json!(basis));
        for (name, rows) in &mats {
            obj.insert(name.to_string(), json!(rows));
            let mut header = vec![""];
            header.extend(basis.iter().map(String::as_str));
            let mut t = Table::new(&header).titled(format!("{name} weight {d}"));
            for (label, row) in basis.iter().zip(rows) {
                let mut cells = vec![label.clone()];
                cells.extend(row.iter().cloned());
                t.push(cells);
            }
            out.push(t);
        }
        blocks.push(Value::Object(obj));
    }
    let json = json!({ "max_weight": max_weight, "blocks": blocks });
    Ok(Outcome {
        rendered: Rendered { json, tables: out },
        holds: true,
    })
}

pub fn cache(action: CacheAction, store: &Store) -> Result<Outcome> {
    let cache_path = store.cache_path();
    let ledger_path = store.ledger_path();
    let json = match action {
        CacheAction::Inspect => {
            let exists = cache_path.exists();
            let stats = if exists {
                global_cache().load(&cache_path)?
            } else {
                Default::default()
            };
            json!({
                "dir": store.dir.display().to_string(),
                "cache_file": cache_path.display().to_string(),
                "exists": exists,
                "lr_records": stats.lr,
                "kostka_records": stats.kostka,
                "ledger_file": ledger_path.display().to_string(),
                "ledger_runs": line_count(&ledger_path),
            })
        }
        CacheAction::Clear => {
            let existed = cache_path.exists();
            if existed {
                std::fs::remove_file(&cache_path)?;
            }
            global_cache().clear();
            json!({ "cache_file": cache_path.display().to_string(), "removed": existed })
        }
    };
    let fields = json
        .as_object()
        .expect("object")
        .iter()
        .map(|(k, v)| {
            (
                k.as_str(),
                v.as_str().map_or_else(|| v.to_string(), str::to_string),
            )
        })
        .collect::<Vec<_>>();
    let table = Table::fields(fields);
    Ok(Outcome {
        rendered: Rendered {
            json,
            tables: vec![table],
        },
        holds: true,
    })
}
