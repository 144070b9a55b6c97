use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use schurforge::conjectures::{Granularity, DEFAULT_TERM_BUDGET};

#[derive(Parser, Debug)]
#[command(
    name = "schurforge",
    version,
    about = "Exact computations of g(m, n) and its p-adic divisibility"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Largest support any intermediate expansion may reach.
    #[arg(long, global = true, default_value_t = DEFAULT_TERM_BUDGET,
          value_parser = clap::value_parser!(u64).range(1000..))]
    pub budget: u64,

    /// Worker threads: a positive count or `auto` for all logical cores.
    #[arg(long, global = true, default_value = "auto", value_parser = parse_threads)]
    pub threads: Threads,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    pub output: OutputFormat,

    /// Directory holding the coefficient cache and the run ledger.
    #[arg(long, global = true, env = "SCHURFORGE_CACHE")]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Threads {
    Auto,
    Count(usize),
}

fn parse_threads(s: &str) -> Result<Threads, String> {
    if s == "auto" {
        return Ok(Threads::Auto);
    }
    match s.parse::<usize>() {
        Ok(0) | Err(_) => Err(format!("expected a positive integer or `auto`, got `{s}`")),
        Ok(n) => Ok(Threads::Count(n)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute g(m, n) for n a multiple of m.
    G {
        m: u32,
        n: u32,
        #[arg(long, value_enum, default_value_t = Route::Auto)]
        route: Route,
    },
    /// Check one instance of a divisibility conjecture.
    Verify {
        #[arg(value_enum)]
        conjecture: Conjecture,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        e: u32,
        #[arg(long)]
        f: u32,
        /// Term indexing for the termwise scan.
        #[arg(long, value_enum, default_value_t = GranularityArg::Monomial)]
        granularity: GranularityArg,
    },
    /// Tabulate the two-row valuation law for ℓ = 1..=lmax.
    Scan {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        lmax: u64,
    },
    /// Compare both expansions of the Segre pullback class.
    Pullback {
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// Largest accepted m and n.
        #[arg(long, default_value_t = 6)]
        max_size: u32,
    },
    /// Dump Kostka, M^se and M^es blocks.
    Tables {
        /// Largest weight to dump.
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(0..=12))]
        max_weight: u32,
    },
    /// Inspect or clear the coefficient cache.
    Cache {
        #[arg(value_enum)]
        action: CacheAction,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Route {
    Auto,
    Direct,
    Cauchy,
    TwoRows,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Conjecture {
    C2,
    C5,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GranularityArg {
    Monomial,
    Triple,
}

impl From<GranularityArg> for Granularity {
    fn from(g: GranularityArg) -> Self {
        match g {
            GranularityArg::Monomial => Granularity::Monomial,
            GranularityArg::Triple => Granularity::Triple,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CacheAction {
    Inspect,
    Clear,
}
