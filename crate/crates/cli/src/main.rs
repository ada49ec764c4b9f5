//! `tracecodes`: construct trace codes over `F_p + uF_p` (`u^2 = u`), export
//! Gray generator matrices, and verify the codes' weight distributions,
//! Griesmer optimality, dual distance and secret-sharing structure.
//!
//! Exit codes: 0 all applicable assertions pass, 1 assertion mismatch,
//! 2 invalid input, 3 budget refusal, 4 unsupported regime.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use trace_codes::charsums;
use trace_codes::codes::{self, Mode, TraceCode, Variant, WeightDistribution};
use trace_codes::field::ExtField;
use trace_codes::ring::RingElem;
use trace_codes::theory::{Regime, RegimeTag};
use trace_codes::verify::{run_verification, VerificationReport, VerifyOptions};
use trace_codes::Error;

#[derive(Parser)]
#[command(
    name = "tracecodes",
    version,
    about = "Trace codes over F_p + uF_p and their p-ary Gray images: construction and verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the Gray generator matrix of one code as CSV
    Construct(ConstructArgs),
    /// Check one instance against its closed-form distribution and bounds
    Verify(VerifyArgs),
    /// Compare closed-form and empirical Gauss sums and periods
    Gauss(GaussArgs),
    /// Verify a parameter range, one CSV row per instance
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    #[value(name = "L")]
    L,
    #[value(name = "Lprime")]
    Lprime,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::L => Variant::L,
            VariantArg::Lprime => Variant::Lprime,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    #[value(name = "full")]
    Full,
    #[value(name = "by_class")]
    ByClass,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Full => Mode::Full,
            ModeArg::ByClass => Mode::ByClass,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    #[value(name = "json")]
    Json,
    #[value(name = "csv")]
    Csv,
    #[value(name = "text")]
    Text,
}

#[derive(Args)]
struct ConstructArgs {
    /// Odd prime characteristic
    #[arg(short)]
    p: u64,
    /// Extension degree
    #[arg(short)]
    m: u32,
    #[arg(long, value_enum)]
    variant: VariantArg,
    /// Directory the matrix file is written into
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Cap on coordinate evaluations
    #[arg(long, default_value_t = codes::DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(short)]
    p: u64,
    #[arg(short)]
    m: u32,
    #[arg(long, value_enum)]
    variant: VariantArg,
    #[arg(long, value_enum, default_value = "full")]
    mode: ModeArg,
    /// Worker threads for enumeration; 0 uses all cores
    #[arg(long, default_value_t = 0)]
    workers: usize,
    #[arg(long, default_value_t = codes::DEFAULT_BUDGET)]
    budget: u64,
    /// Seed for randomized spot checks and class sampling
    #[arg(long, default_value_t = codes::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    /// Report file; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GaussArgs {
    #[arg(short)]
    p: u64,
    #[arg(short)]
    m: u32,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
}

#[derive(Args)]
struct SweepArgs {
    /// Comma-separated primes, e.g. 3,7,11 (empty for none)
    #[arg(short)]
    p: String,
    /// Comma-separated degrees, e.g. 1,2,3 (empty for none)
    #[arg(short)]
    m: String,
    /// L, Lprime or both
    #[arg(long, default_value = "both")]
    variant: String,
    /// full, by_class or auto (full when it fits the budget)
    #[arg(long, default_value = "auto")]
    mode: String,
    #[arg(long, default_value_t = 0)]
    workers: usize,
    #[arg(long, default_value_t = codes::DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, default_value_t = codes::DEFAULT_SEED)]
    seed: u64,
    /// CSV file; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Construct(args) => cmd_construct(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Gauss(args) => cmd_gauss(&args),
        Command::Sweep(args) => cmd_sweep(&args),
    };
    std::process::exit(code);
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => 3,
        Error::UnsupportedRegime { .. } => 4,
        Error::NotOddPrime(_)
        | Error::ZeroDegree
        | Error::FieldTooLarge { .. }
        | Error::BadModulus { .. }
        | Error::ReducibleModulus(_) => 2,
        _ => 1,
    }
}

fn fail(e: &Error) -> i32 {
    eprintln!("error: {e}");
    exit_code_for(e)
}

fn resolve_workers(requested: usize) -> usize {
    if requested == 0 {
        std::thread::available_parallelism().map_or(1, |n| n.get())
    } else {
        requested
    }
}

/// Defining-set size for given parameters, without building anything.
fn set_size(p: u64, m: u32, variant: Variant) -> u128 {
    let q = (p as u128).pow(m);
    let sq = (q - 1) * (q - 1);
    match variant {
        Variant::L => sq / 2,
        Variant::Lprime => sq,
    }
}

/// Estimated coordinate evaluations for a verification run; guards the
/// defining-set construction itself against runaway parameters.
fn estimated_cost(p: u64, m: u32, variant: Variant, mode: Mode) -> u128 {
    let q = (p as u128).pow(m);
    let n = set_size(p, m, variant);
    match mode {
        Mode::Full => q * q * n,
        // class representatives, generator rows and the dual scan are all
        // small multiples of n
        Mode::ByClass => 128 * n,
    }
}

fn cmd_construct(args: &ConstructArgs) -> i32 {
    let variant: Variant = args.variant.into();
    let field = match ExtField::new(args.p, args.m, None) {
        Ok(f) => f,
        Err(e) => return fail(&e),
    };
    let cost = 2 * args.m as u128 * set_size(args.p, args.m, variant);
    if cost > args.budget as u128 {
        return fail(&Error::BudgetExceeded {
            needed: cost,
            budget: args.budget,
        });
    }
    let code = match TraceCode::new(&field, variant) {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };
    let matrix = code.gray_generator_matrix();
    let mut csv = String::new();
    for row in &matrix {
        let line: Vec<String> = row.iter().map(|e| e.to_string()).collect();
        csv.push_str(&line.join(","));
        csv.push('\n');
    }
    let path = args
        .out
        .join(format!("gmatrix_p{}_m{}_{}.csv", args.p, args.m, variant));
    if let Err(e) = std::fs::write(&path, csv) {
        eprintln!("error: cannot write {}: {e}", path.display());
        return 2;
    }
    println!("[{}, {}]", code.gray_length(), code.dimension());
    0
}

fn cmd_verify(args: &VerifyArgs) -> i32 {
    let variant: Variant = args.variant.into();
    let mode: Mode = args.mode.into();
    let field = match ExtField::new(args.p, args.m, None) {
        Ok(f) => f,
        Err(e) => return fail(&e),
    };
    let cost = estimated_cost(args.p, args.m, variant, mode);
    if cost > args.budget as u128 {
        return fail(&Error::BudgetExceeded {
            needed: cost,
            budget: args.budget,
        });
    }
    let opts = VerifyOptions {
        mode,
        workers: resolve_workers(args.workers),
        budget: args.budget,
        seed: args.seed,
        class_reps: codes::DEFAULT_CLASS_REPS,
    };
    let report = match run_verification(&field, variant, &opts) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    let rendered = match args.format {
        FormatArg::Json => {
            let mut s = serde_json::to_string_pretty(&report_json(&report)).expect("valid json");
            s.push('\n');
            s
        }
        FormatArg::Text => render_text(&report),
        FormatArg::Csv => render_distribution_csv(&report),
    };
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 2;
            }
        }
        None => print!("{rendered}"),
    }
    if !report.failures.is_empty() {
        for f in &report.failures {
            eprintln!("FAIL: {f}");
        }
        if !report.matched {
            eprint!(
                "{}",
                distribution_diff(&report.predicted, &report.empirical)
            );
        }
        return 1;
    }
    0
}

fn report_json(r: &VerificationReport) -> serde_json::Value {
    let pairs =
        |d: &WeightDistribution| -> Vec<[u64; 2]> { d.iter().map(|(w, f)| [w, f]).collect() };
    json!({
        "p": r.p,
        "m": r.m,
        "variant": r.variant.as_str(),
        "regime": r.regime.to_string(),
        "length": r.length,
        "dimension": r.dimension,
        "predicted": pairs(&r.predicted),
        "empirical": pairs(&r.empirical),
        "match": r.matched,
        "min_distance": r.min_distance,
        "griesmer": {
            "sum_d": u64::try_from(r.bound.sum_d).expect("desk-scale bound"),
            "sum_d1": u64::try_from(r.bound.sum_d_plus_1).expect("desk-scale bound"),
            "optimal": r.bound.optimal,
        },
        "dual_lee_distance": r.dual.as_ref().map(|d| d.distance),
        "ab_minimal": r.ab_minimal,
        "brute_minimal": r.minimality.as_ref().map(|m| m.all_minimal),
        "sss": r.sss.as_ref().map(|s| json!({
            "participants": s.participants,
            "access_sets": u64::try_from(s.minimal_access_sets).expect("desk-scale count"),
            "coverage": u64::try_from(s.coverage).expect("desk-scale count"),
            "dictatorial_count": s.dictatorial_positions.len() as u64,
        })),
    })
}

fn fmt_base_elem(x: RingElem) -> String {
    let (a, b) = (x.a.index(), x.b.index());
    match (a, b) {
        (0, 0) => "0".to_string(),
        (_, 0) => a.to_string(),
        (0, 1) => "u".to_string(),
        (0, _) => format!("{b}u"),
        (_, 1) => format!("{a}+u"),
        (_, _) => format!("{a}+{b}u"),
    }
}

fn render_text(r: &VerificationReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "trace code p={} m={} variant={} regime={}",
        r.p, r.m, r.variant, r.regime
    );
    let _ = writeln!(
        s,
        "gray image: [{}, {}, {}] over F_{}",
        r.length, r.dimension, r.min_distance, r.p
    );
    let _ = writeln!(
        s,
        "{:>12} | {:>12} | {:>12}",
        "weight", "predicted", "empirical"
    );
    let mut weights: Vec<u64> = r.predicted.iter().map(|(w, _)| w).collect();
    for (w, _) in r.empirical.iter() {
        if !weights.contains(&w) {
            weights.push(w);
        }
    }
    weights.sort();
    for w in weights {
        let pf = r.predicted.frequency(w);
        let ef = r.empirical.frequency(w);
        let mark = if pf == ef { ' ' } else { '!' };
        let _ = writeln!(s, "{w:>12} | {pf:>12} | {ef:>12}{mark}");
    }
    let _ = writeln!(
        s,
        "distribution match: {}",
        if r.matched { "yes" } else { "NO" }
    );
    let _ = writeln!(
        s,
        "griesmer: sum(d)={} sum(d+1)={} N={} optimal={}{}",
        r.bound.sum_d,
        r.bound.sum_d_plus_1,
        r.length,
        if r.bound.optimal { "yes" } else { "no" },
        if r.optimality_guaranteed {
            " (asserted)"
        } else {
            " (reported)"
        }
    );
    match &r.dual {
        Some(d) => {
            let witness: Vec<String> = d
                .witness
                .iter()
                .map(|(pos, c)| format!("{} at {}", fmt_base_elem(*c), pos))
                .collect();
            let _ = writeln!(
                s,
                "dual Lee distance: {} ({}; witness: {})",
                d.distance,
                if r.dual_asserted {
                    "asserted"
                } else {
                    "reported"
                },
                witness.join(", ")
            );
        }
        None => {
            let _ = writeln!(s, "dual Lee distance: not determined");
        }
    }
    let _ = writeln!(
        s,
        "AB minimality condition: {}",
        if r.ab_minimal { "yes" } else { "no" }
    );
    match &r.minimality {
        Some(m) if m.all_minimal => {
            let _ = writeln!(
                s,
                "brute force: all {} nonzero codewords minimal",
                m.checked
            );
        }
        Some(m) => {
            let _ = writeln!(
                s,
                "brute force: covered codewords exist ({} checked, e.g. {:?})",
                m.checked,
                m.counterexamples.first()
            );
        }
        None => {
            let _ = writeln!(s, "brute force: skipped (over the codeword limit)");
        }
    }
    match &r.sss {
        Some(sss) => {
            let _ = writeln!(
                s,
                "secret sharing: participants={} minimal_access_sets={} coverage={} dictatorial={}",
                sss.participants,
                sss.minimal_access_sets,
                sss.coverage,
                sss.dictatorial_positions.len()
            );
        }
        None => {
            let _ = writeln!(s, "secret sharing: preconditions not established");
        }
    }
    let _ = writeln!(
        s,
        "correlation identities: {}",
        if r.correlation_ok { "pass" } else { "FAIL" }
    );
    let _ = writeln!(
        s,
        "timings: enumeration {}ms, dual {}ms, minimality {}ms, total {}ms",
        r.timings.enumeration_ms, r.timings.dual_ms, r.timings.minimality_ms, r.timings.total_ms
    );
    s
}

fn render_distribution_csv(r: &VerificationReport) -> String {
    let mut s = String::from("weight,predicted,empirical\n");
    let mut weights: Vec<u64> = r.predicted.iter().map(|(w, _)| w).collect();
    for (w, _) in r.empirical.iter() {
        if !weights.contains(&w) {
            weights.push(w);
        }
    }
    weights.sort();
    for w in weights {
        let _ = writeln!(
            s,
            "{w},{},{}",
            r.predicted.frequency(w),
            r.empirical.frequency(w)
        );
    }
    s
}

fn distribution_diff(predicted: &WeightDistribution, empirical: &WeightDistribution) -> String {
    let mut s = String::from("weight   predicted   empirical\n");
    let mut weights: Vec<u64> = predicted.iter().map(|(w, _)| w).collect();
    for (w, _) in empirical.iter() {
        if !weights.contains(&w) {
            weights.push(w);
        }
    }
    weights.sort();
    for w in weights {
        let pf = predicted.frequency(w);
        let ef = empirical.frequency(w);
        if pf != ef {
            let _ = writeln!(s, "{w:<8} {pf:<11} {ef:<11} <- differs");
        } else {
            let _ = writeln!(s, "{w:<8} {pf:<11} {ef:<11}");
        }
    }
    s
}

fn cmd_gauss(args: &GaussArgs) -> i32 {
    let field = match ExtField::new(args.p, args.m, None) {
        Ok(f) => f,
        Err(e) => return fail(&e),
    };
    let p = args.p;
    let m = args.m;
    let closed = charsums::gauss_quadratic_closed(p, m).expect("validated above");
    let empirical = charsums::gauss_quadratic_empirical(&field);
    let (q_closed, n_closed) = charsums::gaussian_periods_closed(p, m).expect("validated above");
    let (q_emp, n_emp) = charsums::gaussian_periods_empirical(&field);
    let tol = charsums::tolerance(field.q() as usize);
    let gauss_diff = (closed - empirical).norm();
    let q_diff = (q_closed - q_emp).norm();
    let n_diff = (n_closed - n_emp).norm();
    let period_sum = q_emp + n_emp;
    let period_dev = ((period_sum.re + 1.0).powi(2) + period_sum.im.powi(2)).sqrt();
    let ok = gauss_diff <= tol && q_diff <= tol && n_diff <= tol && period_dev <= tol;

    match args.format {
        FormatArg::Json => {
            let v = json!({
                "p": p,
                "m": m,
                "q": field.q(),
                "gauss_closed": [closed.re, closed.im],
                "gauss_empirical": [empirical.re, empirical.im],
                "gauss_diff": gauss_diff,
                "period_q_closed": [q_closed.re, q_closed.im],
                "period_q_empirical": [q_emp.re, q_emp.im],
                "period_n_closed": [n_closed.re, n_closed.im],
                "period_n_empirical": [n_emp.re, n_emp.im],
                "tolerance": tol,
                "pass": ok,
            });
            println!("{}", serde_json::to_string_pretty(&v).expect("valid json"));
        }
        _ => {
            println!("quadratic Gauss sum, p={p} m={m} (q={})", field.q());
            println!("  closed form : {:+.7}{:+.7}i", closed.re, closed.im);
            println!("  empirical   : {:+.7}{:+.7}i", empirical.re, empirical.im);
            println!("  |difference|: {gauss_diff:.3e} (tolerance {tol:.3e})");
            println!("  period over squares     : closed {:+.7}{:+.7}i, empirical {:+.7}{:+.7}i, diff {q_diff:.3e}",
                q_closed.re, q_closed.im, q_emp.re, q_emp.im);
            println!("  period over non-squares : closed {:+.7}{:+.7}i, empirical {:+.7}{:+.7}i, diff {n_diff:.3e}",
                n_closed.re, n_closed.im, n_emp.re, n_emp.im);
            println!("  period sum + 1          : {period_dev:.3e}");
            println!("  verdict: {}", if ok { "PASS" } else { "FAIL" });
        }
    }
    if ok {
        0
    } else {
        1
    }
}

fn parse_u64_list(s: &str) -> Result<Vec<u64>, String> {
    let trimmed = s.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<u64>()
                .map_err(|e| format!("bad list entry '{part}': {e}"))
        })
        .collect()
}

fn cmd_sweep(args: &SweepArgs) -> i32 {
    let ps = match parse_u64_list(&args.p) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let ms = match parse_u64_list(&args.m) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let variants: Vec<Variant> = match args.variant.as_str() {
        "L" => vec![Variant::L],
        "Lprime" => vec![Variant::Lprime],
        "both" => vec![Variant::L, Variant::Lprime],
        other => {
            eprintln!("error: unknown variant '{other}', expected L, Lprime or both");
            return 2;
        }
    };
    if !matches!(args.mode.as_str(), "auto" | "full" | "by_class") {
        eprintln!(
            "error: unknown mode '{}', expected auto, full or by_class",
            args.mode
        );
        return 2;
    }

    let mut csv = String::from("p,m,variant,regime,N,K,d,match,optimal,dual,runtime_ms\n");
    let mut any_failed = false;
    for &p in &ps {
        for &m in &ms {
            let m = m as u32;
            for &variant in &variants {
                let regime = Regime::of(variant, p, m);
                if regime.tag == RegimeTag::Unsupported {
                    let _ = writeln!(csv, "{p},{m},{variant},unsupported,,,,,,,");
                    continue;
                }
                let field = match ExtField::new(p, m, None) {
                    Ok(f) => f,
                    Err(e) => {
                        any_failed = true;
                        let _ = writeln!(csv, "{p},{m},{variant},error({e}),,,,,,,");
                        continue;
                    }
                };
                let mode = match args.mode.as_str() {
                    "full" => Mode::Full,
                    "by_class" => Mode::ByClass,
                    _ => {
                        if estimated_cost(p, m, variant, Mode::Full) <= args.budget as u128 {
                            Mode::Full
                        } else {
                            Mode::ByClass
                        }
                    }
                };
                let opts = VerifyOptions {
                    mode,
                    workers: resolve_workers(args.workers),
                    budget: args.budget,
                    seed: args.seed,
                    class_reps: codes::DEFAULT_CLASS_REPS,
                };
                match run_verification(&field, variant, &opts) {
                    Ok(report) => {
                        let failed = !report.failures.is_empty();
                        any_failed |= failed;
                        let dual = report
                            .dual
                            .as_ref()
                            .map(|d| d.distance.to_string())
                            .unwrap_or_default();
                        let _ = writeln!(
                            csv,
                            "{p},{m},{variant},{},{},{},{},{},{},{},{}",
                            report.regime,
                            report.length,
                            report.dimension,
                            report.min_distance,
                            report.matched,
                            report.bound.optimal,
                            dual,
                            report.timings.total_ms
                        );
                    }
                    Err(e) => {
                        any_failed = true;
                        let _ = writeln!(csv, "{p},{m},{variant},error({e}),,,,,,,");
                    }
                }
            }
        }
    }
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &csv) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 2;
            }
        }
        None => print!("{csv}"),
    }
    if any_failed {
        1
    } else {
        0
    }
}
