use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use coxdunkl::cli::{parse_config, render_report, run_suite, CheckName, ReportFormat, SuiteConfig};
use coxdunkl::coxeter::{
    compute_degrees, enumerate_group, poincare_polynomial, rank2_parabolics, CoxeterDiagram, RootSystem,
};
use coxdunkl::mmintegral::{gamma_product_rhs, mm_monte_carlo, McParams, StatCheck, DEFAULT_SIGMA};
use coxdunkl::polynomials::PolyRing;

#[derive(Parser)]
#[command(name = "coxdunkl", version, about = "Exact and statistical checks for Coxeter groups and Dunkl operators")]
struct Cli {
    /// Worker threads (overrides COXDUNKL_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Print |W|, |S|, degrees, psi and the rank-two parabolic census.
    Info {
        #[arg(long = "type")]
        ty: String,
        #[arg(long, default_value_t = coxdunkl::coxeter::DEFAULT_GROUP_BUDGET)]
        budget: usize,
    },
    /// Run one check on one type.
    Verify {
        #[arg(long)]
        check: String,
        #[arg(long = "type")]
        ty: String,
        /// Also write the JSON report here.
        #[arg(long)]
        json: Option<String>,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 16)]
        shards: u32,
        #[arg(long)]
        heavy: bool,
    },
    /// Monte Carlo estimate of F(k) next to the gamma product.
    Integrate {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        k: f64,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 16)]
        shards: u32,
    },
    /// Run the configured suite.
    Suite {
        #[arg(long)]
        config: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn threads(flag: Option<usize>) -> Result<Option<usize>, String> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var("COXDUNKL_THREADS") {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| format!("invalid COXDUNKL_THREADS `{v}`")),
        Err(_) => Ok(None),
    }
}

fn parse_type(ty: &str) -> Result<CoxeterDiagram, ExitCode> {
    ty.parse().map_err(usage)
}

fn write_output(path: &str, text: &str) -> Result<(), ExitCode> {
    std::fs::write(path, text).map_err(|e| usage(format!("cannot write {path}: {e}")))
}

fn info(ty: &str, budget: usize) -> Result<ExitCode, ExitCode> {
    let d = parse_type(ty)?;
    let rs = match RootSystem::build(&d) {
        Ok(rs) => rs,
        Err(e) => return Ok(budget_or_fail(e)),
    };
    let el = match enumerate_group(&rs, budget) {
        Ok(el) => el,
        Err(e) => return Ok(budget_or_fail(e)),
    };
    let dd = compute_degrees(&rs, &poincare_polynomial(&el)).map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(1)
    })?;
    let mut census = std::collections::BTreeMap::new();
    for p in rank2_parabolics(&rs) {
        *census.entry(p.m).or_insert(0usize) += 1;
    }
    let census: Vec<_> = census.into_iter().map(|(m, count)| json!({"m": m, "count": count})).collect();
    let doc = json!({
        "type": d.type_label(),
        "rank": rs.rank(),
        "field": rs.field().generator_name(),
        "order": dd.order,
        "num_reflections": dd.num_reflections,
        "degrees": dd.degrees,
        "psi": dd.psi().to_string(),
        "rank2_parabolics": census,
    });
    println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
    Ok(ExitCode::SUCCESS)
}

fn budget_or_fail(e: coxdunkl::Error) -> ExitCode {
    eprintln!("error: {e}");
    if matches!(e, coxdunkl::Error::BudgetExceeded { .. }) {
        ExitCode::from(3)
    } else {
        ExitCode::from(1)
    }
}

fn integrate(ty: &str, k: f64, p: McParams) -> Result<ExitCode, ExitCode> {
    if !(k >= 0.0) {
        return Err(usage("k must be nonnegative"));
    }
    let d = parse_type(ty)?;
    let rs = RootSystem::build(&d).map_err(budget_or_fail)?;
    let el = enumerate_group(&rs, coxdunkl::coxeter::DEFAULT_GROUP_BUDGET).map_err(budget_or_fail)?;
    let dd = compute_degrees(&rs, &poincare_polynomial(&el)).map_err(budget_or_fail)?;
    let est = mm_monte_carlo(&PolyRing::new(&rs), k, &p);
    let expected = gamma_product_rhs(&dd, k);
    let c = StatCheck::new(est.mean, est.std_error, expected, DEFAULT_SIGMA, est.samples);
    let doc = json!({
        "type": d.type_label(),
        "k": k,
        "mean": est.mean,
        "std_error": est.std_error,
        "samples": est.samples,
        "seed": est.seed,
        "shards": est.shards,
        "rejected": est.rejected,
        "gamma_product": expected,
        "z_score": if c.z.is_finite() { json!(c.z) } else { json!(null) },
    });
    println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
    Ok(if c.passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn suite(cfg: &SuiteConfig, format: ReportFormat, json_path: Option<&str>) -> Result<ExitCode, ExitCode> {
    let outcome = run_suite(cfg).map_err(usage)?;
    let text = render_report(&outcome.reports, cfg.seed, format);
    print!("{text}");
    if format == ReportFormat::Json {
        println!();
    }
    if let Some(path) = json_path {
        write_output(path, &render_report(&outcome.reports, cfg.seed, ReportFormat::Json))?;
    }
    Ok(ExitCode::from(outcome.exit_code as u8))
}

fn run(cli: Cli) -> Result<ExitCode, ExitCode> {
    match cli.command {
        Command::Info { ty, budget } => info(&ty, budget),
        Command::Verify { check, ty, json, samples, seed, shards, heavy } => {
            let check: CheckName = check.parse().map_err(usage)?;
            parse_type(&ty)?;
            let cfg = SuiteConfig {
                groups: vec![ty],
                checks: vec![check],
                mc_samples: samples.max(1),
                seed,
                shards: shards.max(1),
                heavy_types_enabled: heavy,
                ..SuiteConfig::default()
            };
            suite(&cfg, ReportFormat::Table, json.as_deref())
        }
        Command::Integrate { ty, k, samples, seed, shards } => integrate(&ty, k, McParams::new(samples.max(1), seed, shards)),
        Command::Suite { config, format } => {
            let text = match &config {
                Some(path) => std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {path}: {e}")))?,
                None => String::new(),
            };
            let cfg = parse_config(&text).map_err(usage)?;
            let format = match format {
                Format::Json => ReportFormat::Json,
                Format::Table => ReportFormat::Table,
            };
            suite(&cfg, format, cfg.output_path.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match threads(cli.threads) {
        Ok(Some(n)) if n > 0 => {
            if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                return usage(e);
            }
        }
        Ok(_) => {}
        Err(e) => return usage(e),
    }
    run(cli).unwrap_or_else(|code| code)
}
