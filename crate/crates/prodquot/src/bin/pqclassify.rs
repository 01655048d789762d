//! Command-line front end for the product-quotient classification.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::Parser;

use prodquot::baskets::EnumStrategy;
use prodquot::fixtures;
use prodquot::groups::Catalogue;
use prodquot::pipeline::{classify, emit_report, ReportFormat, RunConfig, DEFAULT_SKIP_ORDERS};

/// Classify product-quotient surfaces of general type with p_g = 0 for a
/// fixed K^2: enumerate baskets and signatures, sweep the group catalogue for
/// pairs of spherical generating vectors, verify the induced singularities,
/// and report one representative per equivalence class with its invariants.
#[derive(Parser)]
#[command(name = "pqclassify", version)]
struct Args {
    /// Value of K^2 to classify, between 1 and 8.
    #[arg(long)]
    k2: Option<i64>,

    /// Directory of `*.group` files; defaults to the built-in catalogue or
    /// the PQCLASSIFY_CATALOGUE environment variable.
    #[arg(long)]
    catalogue: Option<PathBuf>,

    /// Largest group order to search.
    #[arg(long, default_value_t = 2000)]
    max_order: u64,

    /// Comma-separated group orders to skip (1024 is always skipped).
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_SKIP_ORDERS)]
    skip_orders: Vec<u64>,

    /// Sweep only these catalogue groups.
    #[arg(long, value_delimiter = ',')]
    only: Vec<String>,

    /// Skip the first-homology computation.
    #[arg(long)]
    no_h1: bool,

    /// Output format.
    #[arg(long, default_value = "json", value_parser = ["json", "csv"])]
    emit: String,

    /// Verify a fixtures file (or the built-in set with `builtin`) instead
    /// of classifying.
    #[arg(long)]
    fixtures: Option<String>,

    /// Worker threads for the per-triple searches.
    #[arg(long, default_value_t = 1)]
    jobs: usize,

    /// Replace the catalogue sweep by the complete census of groups of
    /// order at most 16.
    #[arg(long)]
    small_groups: bool,

    /// Use the memoized basket enumeration instead of the greedy recursion.
    #[arg(long)]
    memoized_baskets: bool,

    /// Cap for the automorphism search; larger groups are refused.
    #[arg(long, default_value_t = 512)]
    aut_cap: u64,

    /// Zero the timing fields so repeated runs emit identical bytes.
    #[arg(long)]
    zero_timings: bool,
}

fn load_catalogue(args: &Args) -> Result<Catalogue, String> {
    let path = args.catalogue.clone().or_else(|| {
        std::env::var_os("PQCLASSIFY_CATALOGUE").map(PathBuf::from)
    });
    match path {
        Some(dir) => Catalogue::load_dir(&dir).map_err(|e| format!("catalogue {dir:?}: {e}")),
        None => Catalogue::builtin().map_err(|e| format!("builtin catalogue: {e}")),
    }
}

fn run() -> Result<ExitCode, String> {
    let args = Args::parse();
    let catalogue = Arc::new(load_catalogue(&args)?);

    if let Some(spec) = &args.fixtures {
        let fixtures = if spec == "builtin" {
            fixtures::builtin_fixtures()
        } else {
            let text = std::fs::read_to_string(spec).map_err(|e| format!("{spec}: {e}"))?;
            fixtures::parse_fixtures(&text).map_err(|e| format!("{spec}: {e}"))?
        };
        let mut failures = 0;
        for (i, f) in fixtures.iter().enumerate() {
            match fixtures::verify(f, &catalogue, !args.no_h1) {
                Ok(()) => println!("fixture {:2} k2={} {:12} ok", i + 1, f.k2, f.group),
                Err(e) => {
                    failures += 1;
                    println!("fixture {:2} k2={} {:12} FAILED: {e}", i + 1, f.k2, f.group);
                }
            }
        }
        return Ok(if failures == 0 {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        });
    }

    let k2 = args.k2.ok_or("--k2 is required (or use --fixtures)")?;
    if !(1..=8).contains(&k2) {
        return Err(format!("K^2 must lie in 1..=8, got {k2}"));
    }
    let mut cfg = RunConfig::new(k2, catalogue);
    cfg.max_order = args.max_order;
    cfg.skip_orders = args.skip_orders.iter().copied().collect::<BTreeSet<_>>();
    if !args.only.is_empty() {
        cfg.allowlist = Some(args.only.iter().cloned().collect());
    }
    cfg.compute_h1 = !args.no_h1;
    cfg.small_group_sweep = args.small_groups;
    cfg.basket_strategy = if args.memoized_baskets {
        EnumStrategy::Memoized
    } else {
        EnumStrategy::Greedy
    };
    cfg.aut_cap = args.aut_cap;
    cfg.jobs = args.jobs;
    cfg.zero_timings = args.zero_timings;

    let report = classify(&cfg);
    let format = if args.emit == "csv" {
        ReportFormat::Csv
    } else {
        ReportFormat::Json
    };
    let bytes = emit_report(&report, format);
    use std::io::Write;
    std::io::stdout()
        .write_all(&bytes)
        .map_err(|e| e.to_string())?;
    Ok(if report.refusals.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
