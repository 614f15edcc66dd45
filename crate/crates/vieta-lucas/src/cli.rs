//! Command-line front end: evaluation, decision, witness search, period
//! data, coefficient expansion, certification sweeps, and the named
//! verification suites, with machine-readable output.
//!
//! Exit codes: 0 success (including "not solvable"), 1 usage or
//! precondition error, 2 budget exceeded, 3 verification counterexample.

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::closurelab::{
    anti_derived_find_budgeted, lemma33_check_budgeted, lemma41_check_budgeted, prop21_check,
    DEFAULT_K_MAX,
};
use crate::fieldcore::{
    ext_build, legendre_fp, odd_primes_up_to, FieldElement, OddPrime, DEFAULT_SCAN_BUDGET,
};
use crate::lucas::{lucas_uv_fast, v_parameter_shift_check, LucasParams};
use crate::periods::{lemma12_check, restricted_period, s_value};
use crate::solver::{
    brute_force_solvable_budgeted, decide_solvable, find_solution, somer_maximal_count,
    theorem13_equiv_sweep_with, theorem14_check,
};
use crate::vieta::vieta_coeffs;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
    Plain,
}

#[derive(Parser, Debug)]
#[command(name = "vieta-lucas", version, about = "Lucas sequences modulo primes: evaluation, periods, and solvability of V_n(X,1) = C")]
struct Cli {
    /// Output format for results on stdout.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    output_format: OutputFormat,
    /// Cap on exhaustive scans (field elements visited per scan).
    #[arg(long, global = true, default_value_t = DEFAULT_SCAN_BUDGET)]
    scan_budget: u64,
    /// Cap on the extension degree searched by the extension-field checks.
    #[arg(long, global = true, default_value_t = DEFAULT_K_MAX)]
    k_max: usize,
    /// Worker count for sweeps; 1 means fully sequential.
    #[arg(long, global = true, default_value_t = 1)]
    parallelism: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate U_n(P,Q) and V_n(P,Q) modulo p.
    Eval {
        #[arg(long)]
        p: u64,
        #[arg(long = "P", allow_negative_numbers = true)]
        big_p: i128,
        #[arg(long = "Q", allow_negative_numbers = true)]
        big_q: i128,
        #[arg(long)]
        n: u128,
    },
    /// Decide solvability of V_n(X,1) = C (mod p).
    Decide {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
        #[arg(long = "C", allow_negative_numbers = true)]
        c: i128,
        /// Answer excluded C (p | C(C^2-4)) by brute-force scan.
        #[arg(long)]
        fallback_scan: bool,
    },
    /// Produce an explicit solution of V_n(x,1) = C (mod p), if any.
    Solve {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
        #[arg(long = "C", allow_negative_numbers = true)]
        c: i128,
    },
    /// Restricted period, multiplier, full period, and s(p).
    Period {
        #[arg(long)]
        p: u64,
        #[arg(long = "P", allow_negative_numbers = true)]
        big_p: i128,
        #[arg(long = "Q", allow_negative_numbers = true)]
        big_q: i128,
    },
    /// Exact integer coefficients of V_m(X,1), lowest degree first.
    Coeffs {
        #[arg(long)]
        m: u32,
    },
    /// Certification sweeps of the fast decision against the scan oracle.
    Sweep {
        #[command(subcommand)]
        which: SweepKind,
    },
    /// Named verification suites over exhaustive small grids.
    Verify {
        /// One of: lemma11, lemma12, lemma24, prop21, lemma31, lemma33,
        /// lemma41, theorem14, somer.
        check: String,
        /// Largest prime in the verification grid.
        #[arg(long, default_value_t = 13)]
        grid: u64,
    },
}

#[derive(Subcommand, Debug)]
enum SweepKind {
    /// Exhaustive decision-vs-oracle sweep.
    Theorem13 {
        #[arg(long)]
        p_max: u64,
        #[arg(long)]
        n_max: u64,
    },
}

/// Parse `argv` and execute; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    #[cfg(feature = "parallel")]
    if cli.parallelism > 1 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.parallelism)
            .build_global();
    }
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            match e {
                Error::ScanBudgetExceeded { .. } | Error::BudgetExceeded { .. } => 2,
                _ => 1,
            }
        }
    }
}

fn prime(p: u64) -> Result<OddPrime> {
    OddPrime::new(p)
}

fn execute(cli: &Cli) -> Result<i32> {
    let value = match &cli.command {
        Command::Eval {
            p,
            big_p,
            big_q,
            n,
        } => {
            let params = LucasParams::from_ints(prime(*p)?, *big_p, *big_q);
            let pair = lucas_uv_fast(&params, *n);
            json!({
                "p": p,
                "P": params.p.value(),
                "Q": params.q.value(),
                "n": n.to_string(),
                "U": pair.u.value(),
                "V": pair.v.value(),
            })
        }
        Command::Decide {
            p,
            n,
            c,
            fallback_scan,
        } => {
            let p = prime(*p)?;
            let verdict = match decide_solvable(*n, *c, p) {
                Err(Error::ExcludedC) if *fallback_scan => {
                    brute_force_solvable_budgeted(*n, *c, p, cli.scan_budget)?
                }
                other => other?,
            };
            serde_json::to_value(&verdict).expect("verdict serializes")
        }
        Command::Solve { p, n, c } => {
            let witness = find_solution(*n, *c, prime(*p)?)?;
            json!({
                "solvable": witness.is_some(),
                "witness": witness.map(|w| w.value()),
            })
        }
        Command::Period { p, big_p, big_q } => {
            let params = LucasParams::from_ints(prime(*p)?, *big_p, *big_q);
            let data = s_value(&params)?;
            serde_json::to_value(&data).expect("period data serializes")
        }
        Command::Coeffs { m } => {
            let poly = vieta_coeffs(*m)?;
            Value::from(poly.coeff_strings())
        }
        Command::Sweep {
            which: SweepKind::Theorem13 { p_max, n_max },
        } => {
            let report = theorem13_equiv_sweep_with(*p_max, *n_max, cli.parallelism > 1);
            let bad = !report.counterexamples.is_empty();
            let value = serde_json::to_value(&report).expect("report serializes");
            emit(&value, cli.output_format);
            return Ok(if bad { 3 } else { 0 });
        }
        Command::Verify { check, grid } => {
            let (cases, counterexamples) = run_verify(check, *grid, cli.k_max, cli.scan_budget)?;
            let bad = !counterexamples.is_empty();
            let value = json!({
                "check": check,
                "grid": grid,
                "cases_checked": cases,
                "counterexamples": counterexamples,
            });
            emit(&value, cli.output_format);
            return Ok(if bad { 3 } else { 0 });
        }
    };
    emit(&value, cli.output_format);
    Ok(0)
}

fn emit(value: &Value, format: OutputFormat) {
    match format {
        OutputFormat::Json => {
            println!("{}", serde_json::to_string(value).expect("valid JSON"));
        }
        OutputFormat::Csv => {
            let (header, row) = flatten(value);
            println!("{}", header.join(","));
            println!("{}", row.join(","));
        }
        OutputFormat::Plain => {
            let (header, row) = flatten(value);
            for (k, v) in header.iter().zip(&row) {
                println!("{k} = {v}");
            }
        }
    }
}

/// Flatten a JSON value into parallel key and value rows; nested values are
/// rendered as compact JSON.
fn flatten(value: &Value) -> (Vec<String>, Vec<String>) {
    match value {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| (k.clone(), scalar(v)))
            .unzip(),
        Value::Array(items) => items
            .iter()
            .enumerate()
            .map(|(i, v)| (i.to_string(), scalar(v)))
            .unzip(),
        other => (vec!["value".into()], vec![scalar(other)]),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => serde_json::to_string(other).expect("valid JSON"),
    }
}

/// Admissible (P, Q) pairs for period-structure checks: `p` divides none of
/// `P`, `Q`, `D`.
fn admissible_pairs(p: OddPrime) -> Vec<LucasParams<crate::fieldcore::FpElem>> {
    let mut out = Vec::new();
    for pp in 1..p.get() {
        for qq in 1..p.get() {
            let params = LucasParams::from_ints(p, pp as i128, qq as i128);
            if !params.disc().is_zero() {
                out.push(params);
            }
        }
    }
    out
}

fn run_verify(check: &str, grid: u64, k_max: usize, budget: u64) -> Result<(u64, Vec<Value>)> {
    let mut cases = 0u64;
    let mut bad = Vec::new();
    match check {
        "lemma11" => {
            // r divides p - (D/p)
            for p in odd_primes_up_to(grid) {
                for params in admissible_pairs(p) {
                    cases += 1;
                    let (r, _) = restricted_period(&params)?;
                    let eps = legendre_fp(params.disc());
                    let span = (p.get() as i128 - eps as i128) as u64;
                    if span % r != 0 {
                        bad.push(json!({
                            "p": p.get(), "P": params.p.value(), "Q": params.q.value(), "r": r,
                        }));
                    }
                }
            }
        }
        "lemma12" => {
            for p in odd_primes_up_to(grid) {
                for params in admissible_pairs(p) {
                    cases += 1;
                    if !lemma12_check(&params)? {
                        bad.push(json!({
                            "p": p.get(), "P": params.p.value(), "Q": params.q.value(),
                        }));
                    }
                }
            }
        }
        "lemma24" => {
            for p in odd_primes_up_to(grid) {
                for y in 1..p.get() {
                    let y = p.elem(y as i128);
                    if y == y.from_int(4) {
                        continue;
                    }
                    for r in 1..=12u64 {
                        cases += 1;
                        if !v_parameter_shift_check(&y, r)? {
                            bad.push(json!({"p": p.get(), "y": y.value(), "r": r}));
                        }
                    }
                }
            }
        }
        "prop21" => {
            for p in odd_primes_up_to(grid) {
                let ctx = ext_build(p, 2, 0)?;
                if ctx.order() > budget as u128 {
                    return Err(Error::ScanBudgetExceeded {
                        needed: ctx.order(),
                        cap: budget,
                    });
                }
                for pp in ctx.elements() {
                    for qq in ctx.elements() {
                        let params = LucasParams::new(pp.clone(), qq.clone());
                        if pp.is_zero() || qq.is_zero() || params.disc().is_zero() {
                            continue;
                        }
                        cases += 1;
                        if !prop21_check(&pp, &qq)? {
                            bad.push(json!({"p": p.get(), "P": format!("{pp:?}"), "Q": format!("{qq:?}")}));
                        }
                    }
                }
            }
        }
        "lemma31" | "lemma33" | "lemma41" => {
            for p in odd_primes_up_to(grid) {
                for params in admissible_pairs(p) {
                    let eps = legendre_fp(params.disc());
                    let span = (p.get() as i128 - eps as i128) as u64;
                    for r in [2u64, 3, 4, 6] {
                        if r % p.get() == 0 {
                            continue;
                        }
                        let outcome = match check {
                            "lemma31" => {
                                cases += 1;
                                anti_derived_find_budgeted(&params, r, k_max, budget).map(|_| true)
                            }
                            "lemma33" => {
                                if span % r != 0 {
                                    continue;
                                }
                                cases += 1;
                                lemma33_check_budgeted(params.p, params.q, r, k_max, budget)
                            }
                            _ => {
                                cases += 1;
                                lemma41_check_budgeted(params.p, params.q, r, k_max, budget)
                            }
                        };
                        match outcome {
                            Ok(true) => {}
                            Ok(false) => bad.push(json!({
                                "p": p.get(), "P": params.p.value(), "Q": params.q.value(), "r": r,
                                "reason": "biconditional failed",
                            })),
                            Err(Error::NotFoundWithinDegree { k_max }) => bad.push(json!({
                                "p": p.get(), "P": params.p.value(), "Q": params.q.value(), "r": r,
                                "reason": format!("no witness within degree {k_max}"),
                            })),
                            Err(e) => return Err(e),
                        }
                    }
                }
            }
        }
        "theorem14" => {
            for p in odd_primes_up_to(grid) {
                for params in admissible_pairs(p) {
                    let eps = legendre_fp(params.disc());
                    let span = (p.get() as i128 - eps as i128) as u64;
                    for m in crate::periods::divisors_sorted(span) {
                        cases += 1;
                        if !theorem14_check(params.p, params.q, m)? {
                            bad.push(json!({
                                "p": p.get(), "P": params.p.value(), "Q": params.q.value(), "m": m,
                            }));
                        }
                    }
                }
            }
        }
        "somer" => {
            for p in odd_primes_up_to(grid) {
                cases += 1;
                let (count, expected) = somer_maximal_count(p);
                if count != expected {
                    bad.push(json!({"p": p.get(), "count": count, "expected": expected}));
                }
            }
        }
        _ => {
            return Err(Error::PreconditionViolated(
                "unknown check name; see --help for the list",
            ));
        }
    }
    Ok((cases, bad))
}
