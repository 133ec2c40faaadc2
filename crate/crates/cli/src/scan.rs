use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;
use zsig_core::arith::{gcd, FactorEffort};
use zsig_core::cyclotomic::Triple;
use zsig_core::zsigmondy::{analyze, ExceptionCase, ZsigReport};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanConfig {
    pub a_max: u64,
    pub n_max: u64,
    pub trial_division_bound: u64,
    pub rho_step_budget: u64,
    pub ecm_curves: u32,
    /// Worker count; 1 runs on the calling thread without a pool.
    pub parallelism: usize,
    pub output_format: OutputFormat,
}

impl ScanConfig {
    pub fn new(a_max: u64, n_max: u64) -> Self {
        let effort = FactorEffort::default();
        ScanConfig {
            a_max,
            n_max,
            trial_division_bound: effort.trial_bound,
            rho_step_budget: effort.rho_steps,
            ecm_curves: effort.ecm_curves,
            parallelism: 1,
            output_format: OutputFormat::Json,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.a_max < 2 || self.n_max < 2 {
            return Err(CliError::Invalid("a_max and n_max must be at least 2".into()));
        }
        if self.trial_division_bound == 0 || self.rho_step_budget == 0 {
            return Err(CliError::Invalid("factoring bounds must be positive".into()));
        }
        if self.parallelism == 0 {
            return Err(CliError::Invalid("--jobs must be at least 1".into()));
        }
        Ok(())
    }

    pub fn effort(&self) -> FactorEffort {
        FactorEffort {
            trial_bound: self.trial_division_bound,
            rho_steps: self.rho_step_budget,
            ecm_curves: self.ecm_curves,
        }
    }

    /// Coprime pairs `(a, b)` with `1 <= b < a <= a_max`, in canonical order.
    pub fn pairs(&self) -> Vec<(u64, u64)> {
        (2..=self.a_max)
            .flat_map(|a| (1..a).map(move |b| (a, b)))
            .filter(|&(a, b)| gcd(&a, &b) == 1)
            .collect()
    }
}

/// One scanned triple, reduced to what the reports need.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleOutcome {
    pub a: u64,
    pub b: u64,
    pub n: u64,
    pub phi_value: BigUint,
    pub zsig_primes: Vec<BigUint>,
    pub large_primes: Vec<BigUint>,
    pub exception: ExceptionCase,
    pub witness: String,
    pub complete: bool,
    pub cofactor: Option<BigUint>,
    pub factored_large: Option<bool>,
    pub fast_large: bool,
    pub has_large: bool,
}

impl TripleOutcome {
    fn from_report(a: u64, b: u64, t: &Triple, r: &ZsigReport) -> Self {
        TripleOutcome {
            a,
            b,
            n: t.n(),
            phi_value: r.phi_value.clone(),
            zsig_primes: r.zsig_primes.iter().map(|(q, _)| q.clone()).collect(),
            large_primes: r.large_zsig_primes.clone(),
            exception: r.exception,
            witness: r.exception.witness(t),
            complete: r.factorization_complete,
            cofactor: r.factorization.cofactor().cloned(),
            factored_large: r.factored_decision(),
            fast_large: r.fast.has_large,
            has_large: r.has_large,
        }
    }

    pub fn table_large(&self) -> bool {
        !self.exception.is_exception()
    }

    /// Any of the table, fast and factored decisions disagree.
    pub fn is_mismatch(&self) -> bool {
        let table = self.table_large();
        self.fast_large != table || self.factored_large.is_some_and(|f| f != table)
    }

    /// Per-triple status: 2 incomplete, 1 no large prime, 0 otherwise.
    pub fn exit_status(&self) -> i32 {
        if !self.complete {
            2
        } else if self.has_large {
            0
        } else {
            1
        }
    }
}

#[derive(Debug, Clone)]
pub struct ScanReport {
    pub config: ScanConfig,
    /// Every triple, sorted by `(a, b, n)`.
    pub rows: Vec<TripleOutcome>,
    pub elapsed: Duration,
}

impl ScanReport {
    pub fn triples_scanned(&self) -> usize {
        self.rows.len()
    }

    /// Triples without a large Zsigmondy prime, as computed.
    pub fn exceptions(&self) -> impl Iterator<Item = &TripleOutcome> {
        self.rows.iter().filter(|r| !r.has_large)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &TripleOutcome> {
        self.rows.iter().filter(|r| r.is_mismatch())
    }

    pub fn incomplete(&self) -> impl Iterator<Item = &TripleOutcome> {
        self.rows.iter().filter(|r| !r.complete)
    }

    pub fn verified(&self) -> bool {
        self.mismatches().next().is_none() && self.incomplete().next().is_none()
    }

    pub fn exit_code(&self) -> i32 {
        if self.mismatches().next().is_some() {
            1
        } else if self.incomplete().next().is_some() {
            2
        } else {
            0
        }
    }
}

fn scan_pair(a: u64, b: u64, n_max: u64, effort: &FactorEffort) -> Result<Vec<TripleOutcome>, CliError> {
    (2..=n_max)
        .map(|n| {
            let t = Triple::new(a, b, n)?;
            let r = analyze(&t, effort, 1)?;
            Ok(TripleOutcome::from_report(a, b, &t, &r))
        })
        .collect()
}

struct Progress {
    total: usize,
    done: std::sync::atomic::AtomicUsize,
    enabled: bool,
}

impl Progress {
    fn tick(&self) {
        let done = self.done.fetch_add(1, std::sync::atomic::Ordering::Relaxed) + 1;
        let step = (self.total / 20).max(1);
        if self.enabled && (done % step == 0 || done == self.total) {
            eprintln!("scan: {done}/{} pairs", self.total);
        }
    }
}

/// Runs the scan. Rows are canonically sorted, so the result does not
/// depend on `parallelism`.
pub fn run_scan(config: &ScanConfig, show_progress: bool) -> Result<ScanReport, CliError> {
    config.validate()?;
    let start = Instant::now();
    let effort = config.effort();
    let pairs = config.pairs();
    let progress = Progress {
        total: pairs.len(),
        done: Default::default(),
        enabled: show_progress,
    };
    let work = |&(a, b): &(u64, u64)| {
        let rows = scan_pair(a, b, config.n_max, &effort);
        progress.tick();
        rows
    };
    let chunks: Vec<Vec<TripleOutcome>> = if config.parallelism == 1 {
        pairs.iter().map(work).collect::<Result<_, _>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.parallelism)
            .build()
            .map_err(|e| CliError::Invalid(e.to_string()))?;
        pool.install(|| pairs.par_iter().map(work).collect::<Result<_, _>>())?
    };
    let mut rows: Vec<TripleOutcome> = chunks.into_iter().flatten().collect();
    rows.sort_by_key(|r| (r.a, r.b, r.n));
    Ok(ScanReport {
        config: config.clone(),
        rows,
        elapsed: start.elapsed(),
    })
}
