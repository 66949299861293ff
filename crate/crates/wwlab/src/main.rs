//! Command-line surface: series evaluation, theorem verification,
//! enumeration, dilation, and bijection tracing, with deterministic text or
//! JSON output suitable for golden-file testing.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use wwlab::bijection::{self, PartitionPair};
use wwlab::closed_forms::{finite_capparelli, finite_primc, product_capparelli, product_primc};
use wwlab::enumeration::{ColouredPartition, DilationRule, EnumSpec};
use wwlab::qseries::{ColourMonomial, QSeries, Substitution, Var};
use wwlab::recurrences::{capparelli_system, h_sequence, primc_system};
use wwlab::verify::{run_all, run_theorem, TheoremId, VerificationReport, VerifyParams};

#[derive(Parser)]
#[command(
    name = "wwlab",
    about = "Exact computation and verification for the weighted-words Capparelli and Primc partition identities",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a generating series in canonical text or JSON form.
    Series(SeriesArgs),
    /// Verify a named identity and report one verdict per parameter set.
    Verify(VerifyArgs),
    /// Run the colour-exchange bijection forwards or backwards.
    Bijection(BijectionArgs),
    /// List the members of a partition family, optionally dilated.
    Enumerate(EnumerateArgs),
}

#[derive(Args)]
struct SeriesArgs {
    /// One of GC, GP, H, U, CLOSED-GC, CLOSED-GP, PRODUCT-CAPA, PRODUCT-PRIMC.
    #[arg(long)]
    family: String,
    /// Series index (largest part bound, or the u-sequence index for U).
    #[arg(long, allow_hyphen_values = true)]
    k: Option<i64>,
    /// Exclusive q-truncation order.
    #[arg(long, default_value_t = 20)]
    trunc: usize,
    /// Substitutions VAR=EXPR, e.g. `b=c`, `b=1`, `a=a*q^-1`, `q=q^2`.
    #[arg(long = "set")]
    set: Vec<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Theorem id (see `--theorem list`), or `all`.
    #[arg(long)]
    theorem: String,
    /// Single index `K` or inclusive range `A..B`.
    #[arg(long, alias = "k-range")]
    k: Option<String>,
    #[arg(long)]
    trunc: Option<usize>,
    #[arg(long)]
    max_weight: Option<u32>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BijectionArgs {
    /// `forward` or `inverse`.
    #[arg(long)]
    direction: String,
    /// Capparelli component (forward direction).
    #[arg(long, default_value = "")]
    lambda: String,
    /// Unrestricted c-coloured component (forward direction).
    #[arg(long, default_value = "")]
    mu: String,
    /// Primc partition (inverse direction).
    #[arg(long, default_value = "")]
    nu: String,
    /// Print every intermediate stage.
    #[arg(long)]
    trace: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct EnumerateArgs {
    /// One of C, P, CT, PDIL2, M1, M2.
    #[arg(long)]
    family: String,
    #[arg(long)]
    max_weight: u32,
    /// Largest-part bound; defaults to the weight bound.
    #[arg(long)]
    max_part: Option<u32>,
    /// Apply a part dilation to each member: primc, capparelli, or aag.
    #[arg(long)]
    dilate: Option<String>,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("WWLAB_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global();
        }
    }
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Series(args) => cmd_series(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Bijection(args) => cmd_bijection(&args),
        Command::Enumerate(args) => cmd_enumerate(&args),
    };
    match outcome {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn require_k(args: &SeriesArgs, at_least: i64) -> Result<i64, String> {
    match args.k {
        Some(k) if k >= at_least => Ok(k),
        Some(k) => Err(format!(
            "family {} needs --k >= {at_least}, got {k}",
            args.family
        )),
        None => Err(format!("family {} needs --k", args.family)),
    }
}

fn cmd_series(args: &SeriesArgs) -> Result<ExitCode, String> {
    let trunc = args.trunc;
    if trunc == 0 {
        return Err("--trunc must be at least 1".into());
    }
    let family = args.family.to_ascii_uppercase();
    let series: QSeries = match family.as_str() {
        "GC" => {
            let k = require_k(args, 0)?;
            capparelli_system(k as u32, trunc)
                .map_err(|e| e.to_string())?
                .g(k as i32, wwlab::enumeration::Colour::D)
                .expect("computed")
                .clone()
        }
        "GP" => {
            let k = require_k(args, 0)?;
            primc_system(k as u32, trunc)
                .map_err(|e| e.to_string())?
                .g(k as i32, wwlab::enumeration::Colour::D)
                .expect("computed")
                .clone()
        }
        "H" => {
            let k = require_k(args, -1)?;
            h_sequence(k.max(0) as u32, trunc)
                .map_err(|e| e.to_string())?
                .h(k as i32)
                .clone()
        }
        "U" => {
            let n = require_k(args, 0)? as usize;
            wwlab::closed_forms::u_by_recurrence(n, trunc)
                .map_err(|e| e.to_string())?
                .u(n)
                .clone()
        }
        "CLOSED-GC" => {
            let k = require_k(args, 0)?;
            finite_capparelli(k as u32, trunc).map_err(|e| e.to_string())?
        }
        "CLOSED-GP" => {
            let k = require_k(args, 0)?;
            finite_primc(k as u32, trunc).map_err(|e| e.to_string())?
        }
        "PRODUCT-CAPA" => product_capparelli(trunc).map_err(|e| e.to_string())?,
        "PRODUCT-PRIMC" => product_primc(trunc).map_err(|e| e.to_string())?,
        other => {
            return Err(format!(
                "unknown family `{other}` (expected GC, GP, H, U, CLOSED-GC, CLOSED-GP, PRODUCT-CAPA, PRODUCT-PRIMC)"
            ))
        }
    };
    let series = if args.set.is_empty() {
        series
    } else {
        let substitution = parse_substitutions(&args.set)?;
        substitution.apply(&series).map_err(|e| e.to_string())?
    };
    if args.json {
        let mut value = series.to_json();
        value["schema"] = json!(1);
        println!("{value}");
    } else {
        println!("{series}");
    }
    Ok(ExitCode::SUCCESS)
}

/// Parses `VAR=EXPR` clauses into one simultaneous substitution. `EXPR` is a
/// colour monomial times an optional q-power: `c`, `1`, `a*q^-1`, `d*q`;
/// `q=q^M` sets the global dilation.
fn parse_substitutions(clauses: &[String]) -> Result<Substitution, String> {
    let mut substitution = Substitution::new();
    for clause in clauses {
        let (var, expr) = clause
            .split_once('=')
            .ok_or_else(|| format!("--set expects VAR=EXPR, got `{clause}`"))?;
        let var = var.trim();
        let expr = expr.trim();
        if var == "q" {
            let m = match expr.strip_prefix("q^") {
                Some(power) => power
                    .parse::<usize>()
                    .map_err(|_| format!("bad dilation `{expr}`"))?,
                None if expr == "q" => 1,
                _ => return Err(format!("q can only map to a positive power, got `{expr}`")),
            };
            if m == 0 {
                return Err("q-dilation must be at least q^1".into());
            }
            substitution = substitution.dilate_q(m);
            continue;
        }
        let target = Var::from_letter(var.chars().next().unwrap_or(' '))
            .filter(|_| var.len() == 1)
            .ok_or_else(|| format!("unknown variable `{var}` in --set"))?;
        let (mono, shift) = parse_monomial_expr(expr)?;
        substitution = substitution.map_var(target, mono, shift);
    }
    Ok(substitution)
}

fn parse_monomial_expr(expr: &str) -> Result<(ColourMonomial, i64), String> {
    let mut mono = ColourMonomial::ONE;
    let mut shift = 0i64;
    for factor in expr.split('*') {
        let factor = factor.trim();
        if factor == "1" {
            continue;
        }
        let (symbol, power) = match factor.split_once('^') {
            Some((s, p)) => (
                s,
                p.parse::<i64>()
                    .map_err(|_| format!("bad exponent in `{factor}`"))?,
            ),
            None => (factor, 1),
        };
        if symbol == "q" {
            shift += power;
        } else if let Some(v) = Var::from_letter(symbol.chars().next().unwrap_or(' ')) {
            if symbol.len() != 1 {
                return Err(format!("unknown factor `{factor}`"));
            }
            *mono.exp_mut(v) += i32::try_from(power).map_err(|_| "exponent overflow")?;
        } else {
            return Err(format!("unknown factor `{factor}`"));
        }
    }
    Ok((mono, shift))
}

fn parse_k_range(spec: &str) -> Result<(u32, u32), String> {
    if let Some((lo, hi)) = spec.split_once("..") {
        let lo = lo.parse().map_err(|_| format!("bad range `{spec}`"))?;
        let hi = hi.parse().map_err(|_| format!("bad range `{spec}`"))?;
        if lo > hi {
            return Err(format!("empty range `{spec}`"));
        }
        Ok((lo, hi))
    } else {
        let k = spec.parse().map_err(|_| format!("bad index `{spec}`"))?;
        Ok((k, k))
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode, String> {
    let params = VerifyParams {
        k_range: args.k.as_deref().map(parse_k_range).transpose()?,
        trunc: args.trunc,
        max_weight: args.max_weight,
    };
    let started = std::time::Instant::now();
    let reports: Vec<VerificationReport> = if args.theorem == "all" {
        run_all(&params).map_err(|e| e.to_string())?
    } else {
        let id = TheoremId::parse(&args.theorem).map_err(|e| {
            let names: Vec<&str> = TheoremId::ALL.iter().map(|t| t.name()).collect();
            format!("{e}; known theorems: {}, all", names.join(", "))
        })?;
        run_theorem(id, &params).map_err(|e| e.to_string())?
    };
    let all_passed = reports.iter().all(|r| r.pass);
    if args.json {
        let value = json!({
            "schema": 1,
            "all_passed": all_passed,
            "reports": reports,
        });
        println!("{value}");
    } else {
        for report in &reports {
            println!("{}", report.text_line());
        }
    }
    eprintln!(
        "{} report(s), {} failed, {:.1} ms",
        reports.len(),
        reports.iter().filter(|r| !r.pass).count(),
        started.elapsed().as_secs_f64() * 1e3
    );
    Ok(if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_bijection(args: &BijectionArgs) -> Result<ExitCode, String> {
    let trace = match args.direction.as_str() {
        "forward" => {
            let lambda = ColouredPartition::parse(&args.lambda).map_err(|e| e.to_string())?;
            let mu = ColouredPartition::parse(&args.mu).map_err(|e| e.to_string())?;
            bijection::forward(&PartitionPair { lambda, mu }).map_err(|e| e.to_string())?
        }
        "inverse" => {
            let nu = ColouredPartition::parse(&args.nu).map_err(|e| e.to_string())?;
            bijection::inverse(&nu).map_err(|e| e.to_string())?
        }
        other => return Err(format!("direction must be forward or inverse, got `{other}`")),
    };
    if args.json {
        let value = json!({
            "schema": 1,
            "direction": match trace.direction {
                bijection::Direction::Forward => "forward",
                bijection::Direction::Inverse => "inverse",
            },
            "lambda": trace.lambda.to_string(),
            "mu": trace.mu.to_string(),
            "mu_prime": trace.mu_prime.to_string(),
            "nu1": trace.nu1.to_string(),
            "nu2": trace.nu2.to_string(),
            "nu3": trace.nu3.to_string(),
        });
        println!("{value}");
        return Ok(ExitCode::SUCCESS);
    }
    if args.trace {
        println!("lambda: {}", trace.lambda);
        println!("mu: {}", trace.mu);
        println!("mu_prime: {}", trace.mu_prime);
        println!("nu1: {}", trace.nu1);
        println!("nu2: {}", trace.nu2);
        println!("nu3: {}", trace.nu3);
    } else {
        match trace.direction {
            bijection::Direction::Forward => println!("{}", trace.nu3),
            bijection::Direction::Inverse => {
                println!("lambda: {}", trace.lambda);
                println!("mu: {}", trace.mu);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_enumerate(args: &EnumerateArgs) -> Result<ExitCode, String> {
    let max_part = args.max_part.unwrap_or(args.max_weight);
    let spec = match args.family.to_ascii_uppercase().as_str() {
        "C" => EnumSpec::capparelli(max_part),
        "P" => EnumSpec::primc(max_part),
        "CT" => EnumSpec::capparelli_tilde(max_part),
        "PDIL2" => EnumSpec::primc_dil2(max_part),
        "M1" => EnumSpec::m1_family(max_part),
        "M2" => EnumSpec::m2_family(max_part),
        other => {
            return Err(format!(
                "unknown family `{other}` (expected C, P, CT, PDIL2, M1, M2)"
            ))
        }
    };
    let rule = match args.dilate.as_deref() {
        None => None,
        Some("primc") => Some(DilationRule::primc()),
        Some("capparelli") => Some(DilationRule::capparelli()),
        Some("aag") => Some(DilationRule::capparelli_tilde()),
        Some(other) => {
            return Err(format!(
                "unknown dilation `{other}` (expected primc, capparelli, aag)"
            ))
        }
    };
    let mut lines = Vec::new();
    for p in spec.enumerate(args.max_weight) {
        let p = match &rule {
            Some(rule) => rule.apply(&p).map_err(|e| e.to_string())?,
            None => p,
        };
        lines.push(p.to_string());
    }
    if args.json {
        let value = json!({ "schema": 1, "partitions": lines });
        println!("{value}");
    } else {
        for line in lines {
            println!("{line}");
        }
    }
    Ok(ExitCode::SUCCESS)
}
