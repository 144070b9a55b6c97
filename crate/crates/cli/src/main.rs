//! Command-line driver: computes `g(m, n)`, checks divisibility instances,
//! and dumps the underlying tables.
//!
//! Exit codes: 0 computed or verified, 1 usage error, 2 instance violated,
//! 3 term budget exhausted.

mod args;
mod commands;
mod render;
mod store;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use args::{Cli, Command, Threads};
use commands::Outcome;
use render::emit;
use store::Store;

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_VIOLATED: u8 = 2;
const EXIT_BUDGET: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(if err.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_OK
            });
        }
    };

    let threads = match cli.global.threads {
        Threads::Auto => std::thread::available_parallelism().map_or(1, |n| n.get()),
        Threads::Count(n) => n,
    };
    if let Err(err) = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
    {
        eprintln!("error: cannot start worker pool: {err}");
        return ExitCode::from(EXIT_USAGE);
    }

    let store = Store::new(cli.global.cache_dir.clone());
    let budget = cli.global.budget;
    let (name, result) = match cli.command {
        Command::Cache { action } => ("cache", commands::cache(action, &store)),
        command => {
            store.load_cache();
            let ran = match command {
                Command::G { m, n, route } => ("g", commands::g(m, n, route, budget)),
                Command::Verify {
                    conjecture,
                    p,
                    e,
                    f,
                    granularity,
                } => (
                    "verify",
                    commands::verify(conjecture, p, e, f, granularity, budget),
                ),
                Command::Scan { lmax } => ("scan", commands::scan(lmax)),
                Command::Pullback { m, n, max_size } => {
                    ("pullback", commands::pullback(m, n, max_size))
                }
                Command::Tables { max_weight } => ("tables", commands::tables(max_weight)),
                Command::Cache { .. } => unreachable!(),
            };
            store.save_cache();
            ran
        }
    };
    let records = matches!(name, "g" | "verify" | "scan" | "pullback");

    match result {
        Ok(Outcome { rendered, holds }) => {
            let code = if holds { EXIT_OK } else { EXIT_VIOLATED };
            let mut stdout = std::io::stdout().lock();
            if let Err(err) =
                emit(&mut stdout, &rendered, cli.global.output).and_then(|_| stdout.flush())
            {
                eprintln!("error: {err}");
                return ExitCode::from(EXIT_USAGE);
            }
            if records {
                store.record_run(
                    name,
                    &render::stringify_numbers(rendered.json),
                    i32::from(code),
                );
            }
            ExitCode::from(code)
        }
        Err(err) => {
            eprintln!("error: {err}");
            let code = if err.is_budget() {
                EXIT_BUDGET
            } else {
                EXIT_USAGE
            };
            if records {
                store.record_run(name, &json!({ "error": err.to_string() }), i32::from(code));
            }
            ExitCode::from(code)
        }
    }
}
