use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigUint;
use zsig_cli::scan::OutputFormat;
use zsig_cli::{exit, render, run_scan, CliError, ScanConfig};
use zsig_core::arith::{euler_phi, FactorEffort};
use zsig_core::cyclotomic::{cyclotomic_coeffs, eval_homogeneous, Triple};
use zsig_core::zsigmondy::{analyze, sufficiency_check, DivisorCase, ZsigReport};

/// Zsigmondy and large Zsigmondy primes of a^n - b^n.
///
/// Exit codes: 0 success (or a large prime exists), 1 no large prime or a
/// disagreement with the exception table, 2 incomplete factorization, 3
/// invalid input.
#[derive(Parser)]
#[command(name = "zsig", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficients of the n-th cyclotomic polynomial, constant term first.
    Coeffs { n: u64 },
    /// The homogeneous value Phi_n(a, b).
    Eval { n: u64, a: BigUint, b: BigUint },
    /// Factor Phi_n(a, b) and classify its prime divisors.
    Analyze {
        a: BigUint,
        b: BigUint,
        n: u64,
        /// Also list Zsigmondy primes q with q^2 | a^n - b^n or q > M n + 1.
        #[arg(long = "M", default_value_t = 1)]
        m: u64,
        #[arg(long, default_value_t = FactorEffort::default().trial_bound)]
        trial_bound: u64,
        #[arg(long, default_value_t = FactorEffort::default().rho_steps)]
        rho_budget: u64,
        #[arg(long, default_value_t = FactorEffort::default().ecm_curves)]
        ecm_curves: u32,
    },
    /// Analyze every coprime triple with b < a <= a-max, 2 <= n <= n-max.
    Scan {
        #[arg(long)]
        a_max: u64,
        #[arg(long)]
        n_max: u64,
        #[arg(long, value_enum, env = "ZSIG_FORMAT", default_value = "json")]
        format: OutputFormat,
        /// Worker threads; 1 scans serially. Defaults to the available cores.
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, default_value_t = FactorEffort::default().trial_bound)]
        trial_bound: u64,
        /// Pollard rho iterations per composite before falling back to ECM.
        #[arg(long, default_value_t = FactorEffort::default().rho_steps)]
        rho_budget: u64,
        /// ECM curves per composite before giving up.
        #[arg(long, default_value_t = FactorEffort::default().ecm_curves)]
        ecm_curves: u32,
        /// Suppress progress on standard error.
        #[arg(long)]
        quiet: bool,
    },
}

fn list(xs: impl IntoIterator<Item = String>) -> String {
    let v: Vec<String> = xs.into_iter().collect();
    if v.is_empty() {
        "none".into()
    } else {
        v.join(", ")
    }
}

fn print_report(r: &ZsigReport) -> Result<(), CliError> {
    let t = &r.triple;
    println!("Phi_{}({}, {}) = {}", t.n(), t.a(), t.b(), r.phi_value);
    let mut parts: Vec<String> = r
        .factorization
        .factors()
        .iter()
        .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
        .collect();
    if let Some(c) = r.factorization.cofactor() {
        parts.push(format!("[unfactored {c}]"));
    }
    println!("factorization: {}", if parts.is_empty() { "1".into() } else { parts.join(" * ") });
    for c in &r.classes {
        let case = match c.case {
            DivisorCase::TwoPower => "two-power",
            DivisorCase::Zsigmondy => "Zsigmondy",
            DivisorCase::LargestPrime => "largest-prime",
        };
        println!("  {}: {case}, order {}, beta {}", c.p, c.k, c.beta);
    }
    println!(
        "Zsigmondy primes: {}",
        list(r.zsig_primes.iter().map(|(q, e)| format!("{q} (v={e})")))
    );
    println!("large Zsigmondy primes: {}", list(r.large_zsig_primes.iter().map(|q| q.to_string())));
    if r.multiplier != 1 {
        println!(
            "M-large primes (M={}): {}",
            r.multiplier,
            list(r.m_large_primes.iter().map(|q| q.to_string()))
        );
    }
    let stripped = match r.fast.stripped {
        Some((p, e)) => format!("{p}^{e}"),
        None => "nothing".into(),
    };
    println!(
        "fast decision: stripped {stripped}, Zsigmondy part {}, large {}",
        r.fast.zsigmondy_part, r.fast.has_large
    );
    if t.n() >= 3 {
        println!("sufficient bound (n+1)P(n) < Phi: {}", sufficiency_check(t)?);
    }
    let witness = r.exception.witness(t);
    println!("exception: {} {witness}", r.exception.name());
    println!("has large Zsigmondy prime: {}", r.has_large);
    if !r.decisions_agree() {
        println!("decisions disagree with the exception table");
    }
    Ok(())
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Coeffs { n } => {
            let poly = cyclotomic_coeffs(n)?;
            let coeffs: Vec<String> = poly.coeffs().iter().map(|c| c.to_string()).collect();
            println!("{}", coeffs.join(" "));
            println!("degree {}, phi({n}) = {}", poly.degree(), euler_phi(n)?);
            Ok(exit::OK)
        }
        Command::Eval { n, a, b } => {
            println!("{}", eval_homogeneous(&Triple::new(a, b, n)?)?);
            Ok(exit::OK)
        }
        Command::Analyze {
            a,
            b,
            n,
            m,
            trial_bound,
            rho_budget,
            ecm_curves,
        } => {
            if m == 0 {
                return Err(CliError::Invalid("--M must be positive".into()));
            }
            let effort = FactorEffort {
                trial_bound,
                rho_steps: rho_budget,
                ecm_curves,
            };
            let r = analyze(&Triple::new(a, b, n)?, &effort, m)?;
            print_report(&r)?;
            Ok(if !r.factorization_complete {
                exit::INCOMPLETE
            } else if r.has_large && r.decisions_agree() {
                exit::OK
            } else {
                exit::EXCEPTION
            })
        }
        Command::Scan {
            a_max,
            n_max,
            format,
            jobs,
            trial_bound,
            rho_budget,
            ecm_curves,
            quiet,
        } => {
            let config = ScanConfig {
                a_max,
                n_max,
                trial_division_bound: trial_bound,
                rho_step_budget: rho_budget,
                ecm_curves,
                parallelism: jobs.unwrap_or_else(|| {
                    std::thread::available_parallelism().map_or(1, |n| n.get())
                }),
                output_format: format,
            };
            let report = run_scan(&config, !quiet)?;
            let out = match format {
                OutputFormat::Json => render::to_json(&report),
                OutputFormat::Csv => render::to_csv(&report),
                OutputFormat::Text => render::to_text(&report),
            };
            print!("{out}");
            if !quiet {
                eprintln!("scan: {:.2}s", report.elapsed.as_secs_f64());
            }
            Ok(report.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::INVALID as u8 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(CliError::Core(zsig_core::Error::IncompleteFactorization { .. })) => {
            eprintln!("error: factorization incomplete");
            ExitCode::from(exit::INCOMPLETE as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit::INVALID as u8)
        }
    }
}
