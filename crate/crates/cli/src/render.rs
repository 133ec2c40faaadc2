//! Report serialization. JSON and CSV are byte-identical for identical
//! configurations; elapsed time only ever goes to standard error.

use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::Serialize;

use crate::scan::{ScanConfig, ScanReport, TripleOutcome};

#[derive(Serialize)]
struct JsonReport<'a> {
    config: &'a ScanConfig,
    summary: Summary,
    exceptions: Vec<ExceptionEntry>,
    mismatches: Vec<MismatchEntry>,
    incomplete: Vec<IncompleteEntry>,
}

#[derive(Serialize)]
struct Summary {
    triples_scanned: usize,
    exceptions_found: usize,
    mismatches: usize,
    incomplete: usize,
    verified: bool,
}

#[derive(Serialize)]
struct ExceptionEntry {
    a: u64,
    b: u64,
    n: u64,
    /// Table case; "None" when the table predicts a large prime.
    case: &'static str,
    witness: String,
}

#[derive(Serialize)]
struct MismatchEntry {
    a: u64,
    b: u64,
    n: u64,
    phi_value: String,
    table_case: &'static str,
    table_large: bool,
    fast_large: bool,
    factored_large: Option<bool>,
}

#[derive(Serialize)]
struct IncompleteEntry {
    a: u64,
    b: u64,
    n: u64,
    cofactor: Option<String>,
}

fn exception_entry(r: &TripleOutcome) -> ExceptionEntry {
    let witness = if r.exception.is_exception() {
        r.witness.clone()
    } else {
        format!("Phi={}", r.phi_value)
    };
    ExceptionEntry {
        a: r.a,
        b: r.b,
        n: r.n,
        case: r.exception.name(),
        witness,
    }
}

pub fn to_json(report: &ScanReport) -> String {
    let doc = JsonReport {
        config: &report.config,
        summary: Summary {
            triples_scanned: report.triples_scanned(),
            exceptions_found: report.exceptions().count(),
            mismatches: report.mismatches().count(),
            incomplete: report.incomplete().count(),
            verified: report.verified(),
        },
        exceptions: report.exceptions().map(exception_entry).collect(),
        mismatches: report
            .mismatches()
            .map(|r| MismatchEntry {
                a: r.a,
                b: r.b,
                n: r.n,
                phi_value: r.phi_value.to_string(),
                table_case: r.exception.name(),
                table_large: r.table_large(),
                fast_large: r.fast_large,
                factored_large: r.factored_large,
            })
            .collect(),
        incomplete: report
            .incomplete()
            .map(|r| IncompleteEntry {
                a: r.a,
                b: r.b,
                n: r.n,
                cofactor: r.cofactor.as_ref().map(|c| c.to_string()),
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("report serializes");
    out.push('\n');
    out
}

fn join(xs: &[BigUint]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";")
}

pub const CSV_HEADER: &str = "a,b,n,phi_value,zsig_primes,large_primes,exception,exit-status";

pub fn to_csv(report: &ScanReport) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in &report.rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.a,
            r.b,
            r.n,
            r.phi_value,
            join(&r.zsig_primes),
            join(&r.large_primes),
            r.exception.name(),
            r.exit_status()
        )
        .unwrap();
    }
    out
}

pub fn to_text(report: &ScanReport) -> String {
    let mut out = String::new();
    let c = &report.config;
    writeln!(out, "scan a <= {}, n <= {}", c.a_max, c.n_max).unwrap();
    writeln!(out, "triples scanned: {}", report.triples_scanned()).unwrap();
    writeln!(out, "exceptions ({}):", report.exceptions().count()).unwrap();
    for r in report.exceptions() {
        let e = exception_entry(r);
        writeln!(out, "  ({}, {}, {})  {}  {}", e.a, e.b, e.n, e.case, e.witness).unwrap();
    }
    writeln!(out, "mismatches ({}):", report.mismatches().count()).unwrap();
    for r in report.mismatches() {
        writeln!(
            out,
            "  ({}, {}, {})  Phi={}  table={} fast={} factored={:?}",
            r.a,
            r.b,
            r.n,
            r.phi_value,
            r.exception.name(),
            r.fast_large,
            r.factored_large
        )
        .unwrap();
    }
    writeln!(out, "incomplete ({}):", report.incomplete().count()).unwrap();
    for r in report.incomplete() {
        writeln!(out, "  ({}, {}, {})", r.a, r.b, r.n).unwrap();
    }
    writeln!(out, "verified: {}", report.verified()).unwrap();
    out
}
