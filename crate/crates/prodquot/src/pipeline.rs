//! The end-to-end classification driver.
//!
//! For a fixed `K^2` the pipeline enumerates possible baskets, compatible
//! signatures, and unordered signature pairs with integral group order;
//! orders above the cap or on the skip list land in the skipped ledger,
//! every other order is swept against the catalogue (or, behind a flag, a
//! database-free census for orders up to 16). Surviving triples go through
//! the generating-vector search, the singularity check, invariants,
//! minimality and first homology, and the result is emitted as JSON or a
//! table-shaped CSV.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::baskets::{basket_table_form, enumerate_baskets_strategy, Basket, EnumStrategy};
use crate::genvec::{exists_gen_vector, find_surfaces};
use crate::groups::{
    automorphisms, groups_of_order_upto_16, isomorphic, Catalogue, FiniteGroup, GroupError,
    GroupMap, DEFAULT_AUT_CAP, DEFAULT_ELEMENT_CAP,
};
use crate::homology::h1;
use crate::signatures::{group_order, signatures_for_basket, Signature};
use crate::singtypes::Rational;
use crate::surface::{classify_minimality, compute_invariants, Minimality};

/// Orders the search skips by default: no usable group list at these sizes.
pub const DEFAULT_SKIP_ORDERS: [u64; 9] = [256, 512, 768, 1152, 1280, 1536, 1728, 1792, 1920];

#[derive(Clone)]
pub struct RunConfig {
    pub k2: i64,
    pub catalogue: Arc<Catalogue>,
    /// Orders above this are recorded as skipped, never searched.
    pub max_order: u64,
    /// Skip list; 1024 is always added.
    pub skip_orders: BTreeSet<u64>,
    /// When set, only catalogue entries with these names are swept.
    pub allowlist: Option<BTreeSet<String>>,
    pub compute_h1: bool,
    pub compute_minimality: bool,
    /// Sweep all isomorphism classes of order <= 16 instead of the catalogue.
    pub small_group_sweep: bool,
    pub basket_strategy: EnumStrategy,
    pub aut_cap: u64,
    /// Worker threads for the per-triple searches.
    pub jobs: usize,
    /// Zero out wall-clock fields so repeated runs emit identical bytes.
    pub zero_timings: bool,
}

impl RunConfig {
    pub fn new(k2: i64, catalogue: Arc<Catalogue>) -> RunConfig {
        RunConfig {
            k2,
            catalogue,
            max_order: DEFAULT_ELEMENT_CAP,
            skip_orders: DEFAULT_SKIP_ORDERS.into_iter().collect(),
            allowlist: None,
            compute_h1: true,
            compute_minimality: true,
            small_group_sweep: false,
            basket_strategy: EnumStrategy::Greedy,
            aut_cap: DEFAULT_AUT_CAP,
            jobs: 1,
            zero_timings: false,
        }
    }
}

/// A (basket, signature pair, group) candidate that passed the existence sweep.
#[derive(Clone)]
pub struct AdmissibleTriple {
    pub basket: Basket,
    pub t1: Signature,
    pub t2: Signature,
    pub group_name: String,
    pub group: Arc<FiniteGroup>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkippedCase {
    pub basket: Vec<String>,
    pub t1: String,
    pub t2: String,
    pub order: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceRecord {
    pub k2: i64,
    pub basket: Vec<String>,
    pub t1: String,
    pub t2: String,
    pub group: String,
    pub vectors: (Vec<String>, Vec<String>),
    pub g1: i64,
    pub g2: i64,
    pub h1: Option<Vec<u64>>,
    pub minimal: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub stages: Vec<StageTime>,
    pub peak_memory_mb: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageTime {
    pub stage: String,
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub k2: i64,
    pub accepted: Vec<SurfaceRecord>,
    pub skipped: Vec<SkippedCase>,
    pub refusals: Vec<String>,
    pub timings: Timings,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

fn basket_strings(b: &Basket) -> Vec<String> {
    b.sings().iter().map(|q| q.to_string()).collect()
}

fn groups_for_order(cfg: &RunConfig, order: u64) -> Vec<(String, Arc<FiniteGroup>)> {
    if cfg.small_group_sweep && (1..=16).contains(&order) {
        let census = &groups_of_order_upto_16()[order as usize];
        return census
            .iter()
            .map(|g| {
                // reuse the table name when the census class matches a
                // catalogue entry
                let name = cfg
                    .catalogue
                    .entries()
                    .iter()
                    .filter(|e| e.sweep && e.group.order() == order)
                    .find(|e| isomorphic(&e.group, g))
                    .map(|e| e.name.clone())
                    .or_else(|| g.name().map(|s| s.to_string()))
                    .unwrap_or_else(|| format!("order{order}"));
                (name, g.clone())
            })
            .collect();
    }
    cfg.catalogue
        .by_order(order)
        .into_iter()
        .filter(|e| {
            cfg.allowlist
                .as_ref()
                .map_or(true, |names| names.contains(&e.name))
        })
        .map(|e| (e.name.clone(), e.group.clone()))
        .collect()
}

/// Step 3 of the pipeline: all (basket, unordered signature pair, group)
/// triples with integral order whose group admits generating vectors of both
/// signatures, plus the ledger of cases skipped for their order.
pub fn list_admissible_triples(cfg: &RunConfig) -> (Vec<AdmissibleTriple>, Vec<SkippedCase>) {
    let (triples, skipped) = sweep(cfg, &mut Timings::default());
    (triples, skipped)
}

fn sweep(cfg: &RunConfig, timings: &mut Timings) -> (Vec<AdmissibleTriple>, Vec<SkippedCase>) {
    assert!((1..=8).contains(&cfg.k2), "K^2 must lie in 1..=8");
    let sig237 = Signature::new([2, 3, 7]);
    let mut skip = cfg.skip_orders.clone();
    skip.insert(1024);

    let t0 = Instant::now();
    let target = Rational::from_integer(3 * (8 - cfg.k2));
    let baskets = enumerate_baskets_strategy(target, cfg.basket_strategy);
    push_stage(timings, "baskets", t0.elapsed().as_secs_f64());

    let t0 = Instant::now();
    let mut with_sigs: Vec<(Basket, Vec<Signature>)> = Vec::new();
    for basket in baskets {
        let sigs = signatures_for_basket(&basket);
        if !sigs.is_empty() {
            with_sigs.push((basket, sigs));
        }
    }
    push_stage(timings, "signatures", t0.elapsed().as_secs_f64());

    let t0 = Instant::now();
    let mut triples = Vec::new();
    let mut skipped = Vec::new();
    for (basket, sigs) in &with_sigs {
        for i in 0..sigs.len() {
            for j in i..sigs.len() {
                let (t1, t2) = (&sigs[i], &sigs[j]);
                let ord = group_order(t1, t2, basket);
                if !ord.is_integer() || ord < Rational::from_integer(1) {
                    continue;
                }
                let ord = ord.to_integer() as u64;
                let candidates = if ord > cfg.max_order || skip.contains(&ord) {
                    Vec::new()
                } else {
                    groups_for_order(cfg, ord)
                };
                if candidates.is_empty() {
                    // over the cap, on the skip list, or no group of this
                    // order available to test
                    skipped.push(SkippedCase {
                        basket: basket_strings(basket),
                        t1: t1.table_form(),
                        t2: t2.table_form(),
                        order: ord,
                    });
                    continue;
                }
                for (name, g) in candidates {
                    // a quotient of the (2,3,7) polygonal group is perfect
                    if (*t1 == sig237 || *t2 == sig237) && !g.is_perfect() {
                        continue;
                    }
                    if exists_gen_vector(&g, t1) && (t1 == t2 || exists_gen_vector(&g, t2)) {
                        triples.push(AdmissibleTriple {
                            basket: basket.clone(),
                            t1: t1.clone(),
                            t2: t2.clone(),
                            group_name: name,
                            group: g,
                        });
                    }
                }
            }
        }
    }
    push_stage(timings, "group-search", t0.elapsed().as_secs_f64());
    (triples, skipped)
}

fn push_stage(timings: &mut Timings, stage: &str, seconds: f64) {
    timings.stages.push(StageTime {
        stage: stage.to_string(),
        seconds,
    });
}

fn aut_table(
    cfg: &RunConfig,
    triples: &[AdmissibleTriple],
    refusals: &mut Vec<String>,
) -> HashMap<String, Arc<Vec<GroupMap>>> {
    let mut out: HashMap<String, Arc<Vec<GroupMap>>> = HashMap::new();
    for triple in triples {
        if out.contains_key(&triple.group_name) {
            continue;
        }
        let preloaded = cfg
            .catalogue
            .lookup(&triple.group_name)
            .ok()
            .and_then(|e| e.preloaded_auts.clone());
        let auts = match preloaded {
            Some(a) => Ok(a),
            None => automorphisms(&triple.group, cfg.aut_cap),
        };
        match auts {
            Ok(a) => {
                out.insert(triple.group_name.clone(), Arc::new(a));
            }
            Err(GroupError::AutCapExceeded { order, cap }) => {
                refusals.push(format!(
                    "automorphism search refused for {} (order {order} exceeds cap {cap})",
                    triple.group_name
                ));
            }
            Err(e) => refusals.push(format!("{}: {e}", triple.group_name)),
        }
    }
    out
}

/// Steps 4-6: search every admissible triple for inequivalent vector pairs
/// with the prescribed singularities and assemble the records.
pub fn classify(cfg: &RunConfig) -> ClassificationReport {
    let mut timings = Timings::default();
    let (triples, skipped) = sweep(cfg, &mut timings);
    let mut refusals = Vec::new();
    let auts = aut_table(cfg, &triples, &mut refusals);

    let t0 = Instant::now();
    let work = |triple: &AdmissibleTriple| -> Vec<(AdmissibleTriple, Vec<u16>, Vec<u16>)> {
        let Some(auts) = auts.get(&triple.group_name) else {
            return Vec::new();
        };
        find_surfaces(&triple.group, &triple.basket, &triple.t1, &triple.t2, auts)
            .into_iter()
            .map(|(v1, v2)| (triple.clone(), v1, v2))
            .collect()
    };
    let found: Vec<(AdmissibleTriple, Vec<u16>, Vec<u16>)> = if cfg.jobs <= 1 {
        triples.iter().flat_map(|t| work(t)).collect()
    } else {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .expect("worker pool");
        pool.install(|| triples.par_iter().flat_map_iter(|t| work(t)).collect())
    };
    push_stage(&mut timings, "find-surfaces", t0.elapsed().as_secs_f64());

    let t0 = Instant::now();
    let mut accepted = Vec::new();
    for (triple, v1, v2) in &found {
        let g = &triple.group;
        let inv = compute_invariants(g, &triple.basket, &triple.t1, &triple.t2);
        debug_assert_eq!(inv.k2, cfg.k2);
        let h1_val = if cfg.compute_h1 {
            let inv = h1(g, v1, v2);
            assert_eq!(inv.free_rank, 0, "first Betti number must vanish");
            Some(inv.torsion)
        } else {
            None
        };
        let minimal = if cfg.compute_minimality {
            classify_minimality(&triple.basket)
        } else {
            Minimality::Unknown
        };
        let cycles =
            |v: &[u16]| -> Vec<String> { v.iter().map(|&e| g.element(e).to_cycles()).collect() };
        accepted.push(SurfaceRecord {
            k2: cfg.k2,
            basket: basket_strings(&triple.basket),
            t1: triple.t1.table_form(),
            t2: triple.t2.table_form(),
            group: triple.group_name.clone(),
            vectors: (cycles(v1), cycles(v2)),
            g1: inv.g1,
            g2: inv.g2,
            h1: h1_val,
            minimal: minimal.to_string(),
        });
    }
    push_stage(&mut timings, "h1", t0.elapsed().as_secs_f64());

    accepted.sort_by(|a, b| {
        (&a.basket, &a.t1, &a.t2, &a.group, &a.vectors)
            .cmp(&(&b.basket, &b.t1, &b.t2, &b.group, &b.vectors))
    });
    refusals.sort();
    refusals.dedup();

    timings.peak_memory_mb = peak_memory_mb();
    if cfg.zero_timings {
        for s in &mut timings.stages {
            s.seconds = 0.0;
        }
        timings.peak_memory_mb = None;
    }
    ClassificationReport {
        k2: cfg.k2,
        accepted,
        skipped,
        refusals,
        timings,
    }
}

/// Per-stage wall time and best-effort peak memory for a full run.
pub fn timing_stats(cfg: &RunConfig) -> Timings {
    classify(cfg).timings
}

fn peak_memory_mb() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    for line in status.lines() {
        if let Some(rest) = line.strip_prefix("VmHWM:") {
            let kb: u64 = rest.trim().trim_end_matches("kB").trim().parse().ok()?;
            return Some(kb / 1024);
        }
    }
    None
}

pub fn emit_report(report: &ClassificationReport, format: ReportFormat) -> Vec<u8> {
    match format {
        ReportFormat::Json => {
            let mut bytes = serde_json::to_vec_pretty(report).expect("report serializes");
            bytes.push(b'\n');
            bytes
        }
        ReportFormat::Csv => {
            let mut out = String::from("K2, Sing X, t1, t2, G, N, H1\n");
            let key = |r: &SurfaceRecord| {
                (
                    r.basket.clone(),
                    r.t1.clone(),
                    r.t2.clone(),
                    r.group.clone(),
                    r.h1.clone(),
                    r.minimal.clone(),
                )
            };
            let mut i = 0;
            while i < report.accepted.len() {
                let mut j = i;
                while j < report.accepted.len()
                    && key(&report.accepted[j]) == key(&report.accepted[i])
                {
                    j += 1;
                }
                let r = &report.accepted[i];
                let basket = Basket::parse(&format!("{{{}}}", r.basket.join(",")))
                    .expect("records carry valid baskets");
                let sing = if basket.is_empty() {
                    "-".to_string()
                } else {
                    basket_table_form(&basket).replace(", ", " ")
                };
                let h1 = match &r.h1 {
                    Some(t) => crate::homology::AbelianInvariants {
                        free_rank: 0,
                        torsion: t.clone(),
                    }
                    .table_form(),
                    None => "-".to_string(),
                };
                out.push_str(&format!(
                    "{}, {}, {}, {}, {}, {}, {}\n",
                    r.k2,
                    sing,
                    r.t1.replace(", ", " "),
                    r.t2.replace(", ", " "),
                    r.group,
                    j - i,
                    h1
                ));
                i = j;
            }
            out.into_bytes()
        }
    }
}

pub fn parse_report(bytes: &[u8]) -> Result<ClassificationReport, serde_json::Error> {
    serde_json::from_slice(bytes)
}
