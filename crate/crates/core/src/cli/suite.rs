use std::sync::{Arc, OnceLock};
use std::time::Instant;

use num_rational::BigRational;
use rayon::prelude::*;

use super::config::{CheckName, SuiteConfig};
use super::report::{count_failures, CheckReport, Mode};
use crate::coxeter::{
    chevalley_q_identity, compute_degrees, enumerate_group, poincare_polynomial, verify_psi_identities, CoxeterDiagram,
    DegreeData, GroupElement, RootSystem,
};
use crate::dunkl::{b_poly_with_budget, verify_algebra_relations, BFactorization, BPoly, B_POLY_MAX_REFLECTIONS};
use crate::error::{Error, Result};
use crate::mmintegral::{
    check_against_gamma, check_functional_equation, gamma_integral_cross_check, gamma_product_exact,
    log_variance_check, mm_exact, mm_log_moments, predicted_relative_variance, McParams, StatCheck,
    DEFAULT_FACTOR_BUDGET,
};
use crate::polynomials::{MultiPoly, PolyRing};
use crate::scalars::{IntPoly, KPoly};

/// Statistical checks are skipped when `Var(|Δ|^{2k}) / F(k)²` exceeds this.
pub const MAX_RELATIVE_VARIANCE: f64 = 2000.0;

/// Band used by the log-variance check.
pub const LOG_VARIANCE_SIGMA: f64 = 5.0;

/// Test-only switches for exercising failure paths.
#[derive(Clone, Copy, Debug, Default)]
pub struct SuiteHooks {
    pub corrupt_closed_form: bool,
}

#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub reports: Vec<CheckReport>,
    pub budget_exhausted: bool,
    pub exit_code: i32,
}

struct GroupCtx {
    label: String,
    rs: RootSystem,
    ring: Arc<PolyRing>,
    elements: Vec<GroupElement>,
    dd: DegreeData,
    b: OnceLock<std::result::Result<BPoly, String>>,
}

impl GroupCtx {
    fn build(diagram: &CoxeterDiagram, budget: usize) -> Result<Self> {
        let rs = RootSystem::build(diagram)?;
        let elements = enumerate_group(&rs, budget)?;
        let dd = compute_degrees(&rs, &poincare_polynomial(&elements))?;
        let ring = PolyRing::new(&rs);
        Ok(GroupCtx { label: diagram.type_label().to_string(), rs, ring, elements, dd, b: OnceLock::new() })
    }

    fn b(&self, heavy: bool) -> std::result::Result<&BPoly, String> {
        let limit = if heavy { usize::MAX } else { B_POLY_MAX_REFLECTIONS };
        self.b
            .get_or_init(|| b_poly_with_budget(&self.ring, &self.dd, limit).map_err(|e| e.to_string()))
            .as_ref()
            .map_err(Clone::clone)
    }
}

enum Slot {
    Ready(GroupCtx),
    Skip(String, bool),
}

pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteOutcome> {
    run_suite_with_hooks(cfg, SuiteHooks::default())
}

/// Runs every configured check on every configured group. Reports come back
/// in (group, check) order whatever order the tasks finish in.
pub fn run_suite_with_hooks(cfg: &SuiteConfig, hooks: SuiteHooks) -> Result<SuiteOutcome> {
    let diagrams = cfg.diagrams()?;
    let slots: Vec<Slot> = diagrams
        .par_iter()
        .map(|d| {
            if d.is_heavy() && !cfg.heavy_types_enabled {
                return Slot::Skip("heavy type; set heavy_types_enabled = true".into(), false);
            }
            match GroupCtx::build(d, cfg.enumeration_budget) {
                Ok(ctx) => Slot::Ready(ctx),
                Err(e @ Error::BudgetExceeded { .. }) => Slot::Skip(e.to_string(), true),
                Err(e) => Slot::Skip(format!("setup failed: {e}"), false),
            }
        })
        .collect();
    let mut budget_exhausted = false;
    let mut tasks = Vec::new();
    for (gi, slot) in slots.iter().enumerate() {
        if let Slot::Skip(_, budget) = slot {
            budget_exhausted |= budget;
        }
        for &check in &cfg.checks {
            tasks.push((gi, check));
        }
    }
    let results: Vec<Vec<CheckReport>> = tasks
        .par_iter()
        .map(|&(gi, check)| match &slots[gi] {
            Slot::Skip(reason, _) => {
                vec![CheckReport::skipped(check.as_str(), &cfg.groups[gi], mode_of(check), reason.clone())]
            }
            Slot::Ready(ctx) => {
                let start = Instant::now();
                let mut reps = run_check(ctx, check, cfg, hooks);
                let ms = start.elapsed().as_millis() as u64;
                for r in &mut reps {
                    r.runtime_ms = ms;
                }
                reps
            }
        })
        .collect();
    let reports: Vec<CheckReport> = results.into_iter().flatten().collect();
    let exit_code = if count_failures(&reports) > 0 {
        1
    } else if budget_exhausted {
        3
    } else {
        0
    };
    Ok(SuiteOutcome { reports, budget_exhausted, exit_code })
}

fn mode_of(check: CheckName) -> Mode {
    match check {
        CheckName::MmMonteCarlo
        | CheckName::FunctionalEquation
        | CheckName::GammaCrossCheck
        | CheckName::LogMoments
        | CheckName::LogVariance => Mode::Statistical,
        _ => Mode::Exact,
    }
}

fn run_check(ctx: &GroupCtx, check: CheckName, cfg: &SuiteConfig, hooks: SuiteHooks) -> Vec<CheckReport> {
    let name = check.as_str();
    let g = ctx.label.as_str();
    let params = McParams::new(cfg.mc_samples, cfg.seed, cfg.shards);
    let result = match check {
        CheckName::PoincareIdentity => Ok(vec![poincare(ctx)]),
        CheckName::DegreesConsistency => Ok(vec![degrees(ctx)]),
        CheckName::Chevalley => chevalley_q_identity(&ctx.rs, &ctx.elements, &ctx.dd)
            .map(|w| vec![CheckReport::exact(name, g, w.holds, w.rhs.to_string(), w.lhs.to_string())]),
        CheckName::PsiIdentities => verify_psi_identities(&ctx.rs, &ctx.dd).map(|rep| {
            let actual = format!(
                "rank-2 sum {}, 24*sum 1/(r - Tr w) = {} over {} rotations",
                rep.parabolic_sum, rep.trace_sum, rep.w2_size
            );
            vec![CheckReport::exact(name, g, rep.holds(), rep.psi.to_string(), actual)]
        }),
        CheckName::AlgebraRelations => verify_algebra_relations(&ctx.ring, 3, 10, cfg.seed).map(|rep| {
            let actual = format!(
                "{} polynomials; failures: commutativity {}, heisenberg {}, euler {}",
                rep.trials, rep.commutativity_failures, rep.heisenberg_failures, rep.euler_failures
            );
            vec![CheckReport::exact(name, g, rep.passed(), "all relations hold".into(), actual)]
        }),
        CheckName::BPoly => Ok(vec![b_report(ctx, cfg, hooks)]),
        CheckName::MmExact => mm_exact_reports(ctx),
        CheckName::MmMonteCarlo => Ok([0.25, 0.5, 0.75]
            .iter()
            .map(|&k| {
                let label = format!("mm_monte_carlo[k={k}]");
                gated(&label, g, &ctx.dd, k, || {
                    let (_, c) = check_against_gamma(&ctx.ring, &ctx.dd, k, &params);
                    stat_report(&label, g, &c, "gamma product")
                })
            })
            .collect()),
        CheckName::FunctionalEquation => Ok(functional_equation_reports(ctx, cfg, &params)),
        CheckName::GammaCrossCheck => gamma_cross_reports(ctx, &params),
        CheckName::LogMoments => {
            let c = mm_log_moments(&ctx.ring, &params);
            Ok(vec![stat_report(name, g, &c, "-euler_gamma*|S|")])
        }
        CheckName::LogVariance => {
            let c = log_variance_check(&ctx.ring, &ctx.dd, &params, LOG_VARIANCE_SIGMA);
            Ok(vec![stat_report(name, g, &c, "(pi^2/6)*sum(d^2-1)")])
        }
    };
    result.unwrap_or_else(|e| vec![CheckReport::exact(name, g, false, "no error".into(), e.to_string())])
}

fn stat_report(name: &str, group: &str, c: &StatCheck, what: &str) -> CheckReport {
    CheckReport::statistical(
        name,
        group,
        c.passed,
        format!("{:.9} ({what})", c.expected),
        format!("{:.9} +- {:.3e} (n={})", c.estimate, c.std_error, c.samples),
        c.z,
        c.tolerance_sigma,
    )
}

fn gated(name: &str, group: &str, dd: &DegreeData, k: f64, run: impl FnOnce() -> CheckReport) -> CheckReport {
    let v = predicted_relative_variance(dd, k);
    if v > MAX_RELATIVE_VARIANCE {
        CheckReport::skipped(
            name,
            group,
            Mode::Statistical,
            format!("relative variance of the estimator at k={k} is {v:.3e} (limit {MAX_RELATIVE_VARIANCE})"),
        )
    } else {
        run()
    }
}

fn q_poly_string(p: &IntPoly) -> String {
    p.to_string_in("q")
}

fn poincare(ctx: &GroupCtx) -> CheckReport {
    let r = ctx.rs.rank();
    let one_minus_q = IntPoly::new(vec![1, -1]);
    let lhs = (0..r).fold(poincare_polynomial(&ctx.elements), |acc, _| acc.mul(&one_minus_q));
    let rhs = ctx.dd.degrees.iter().fold(IntPoly::one(), |acc, &d| {
        acc.mul(&IntPoly::one().sub(&IntPoly::monomial(1, d as usize)))
    });
    let longest = ctx.elements.iter().map(GroupElement::length).max().unwrap_or(0);
    let ok = lhs == rhs && longest == ctx.rs.num_reflections();
    CheckReport::exact(
        "poincare_identity",
        &ctx.label,
        ok,
        format!("{}; longest length {}", q_poly_string(&rhs), ctx.rs.num_reflections()),
        format!("{}; longest length {longest}", q_poly_string(&lhs)),
    )
}

fn degrees(ctx: &GroupCtx) -> CheckReport {
    let dd = &ctx.dd;
    let prod: u64 = dd.degrees.iter().map(|&d| d as u64).product();
    let sum: usize = dd.degrees.iter().map(|&d| d as usize - 1).sum();
    let ok = prod == dd.order && sum == ctx.rs.num_reflections() && dd.degrees.len() == ctx.rs.rank();
    CheckReport::exact(
        "degrees_consistency",
        &ctx.label,
        ok,
        format!("prod d = |W| = {}, sum (d-1) = |S| = {}", dd.order, ctx.rs.num_reflections()),
        format!("degrees {:?}: prod {prod}, sum (d-1) {sum}", dd.degrees),
    )
}

fn b_report(ctx: &GroupCtx, cfg: &SuiteConfig, hooks: SuiteHooks) -> CheckReport {
    let g = ctx.label.as_str();
    let b = match ctx.b(cfg.heavy_types_enabled) {
        Ok(b) => b,
        Err(e) if e.starts_with("budget exceeded") => {
            return CheckReport::skipped("b_poly", g, Mode::Exact, e);
        }
        Err(e) => return CheckReport::exact("b_poly", g, false, "b(k) computed".into(), e),
    };
    let mut closed = b.closed_form.clone();
    if hooks.corrupt_closed_form {
        closed = closed.add(&KPoly::one(closed.field()));
    }
    let ok = b.holds() && b.computed == closed;
    let expected = BFactorization::of(&closed).map(|f| f.render()).unwrap_or_else(|_| closed.to_string());
    let mut actual = b.factorization.render();
    if !b.roots_match {
        actual.push_str("; roots differ from -m/d_i");
    }
    if !b.division_certified {
        actual.push_str("; division by (d_i k + m) not exact");
    }
    CheckReport::exact("b_poly", g, ok, expected, actual)
}

fn mm_exact_reports(ctx: &GroupCtx) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    let s = ctx.rs.num_reflections();
    for k in 1..=2u32 {
        let name = format!("mm_exact[k={k}]");
        if 2 * k as usize * s > DEFAULT_FACTOR_BUDGET {
            if k == 1 {
                out.push(CheckReport::skipped(
                    name,
                    &ctx.label,
                    Mode::Exact,
                    format!("2k|S| = {} exceeds the Wick factor budget {DEFAULT_FACTOR_BUDGET}", 2 * s),
                ));
            }
            continue;
        }
        let v = mm_exact(&ctx.ring, k, DEFAULT_FACTOR_BUDGET)?;
        let expected = gamma_product_exact(&ctx.dd, k);
        out.push(CheckReport::exact(name, &ctx.label, v.as_rational() == Some(&expected), expected.to_string(), v.to_string()));
    }
    Ok(out)
}

fn functional_equation_reports(ctx: &GroupCtx, cfg: &SuiteConfig, params: &McParams) -> Vec<CheckReport> {
    let g = ctx.label.as_str();
    let b = match ctx.b(cfg.heavy_types_enabled) {
        Ok(b) => b.computed.clone(),
        Err(e) => return vec![CheckReport::skipped("functional_equation", g, Mode::Statistical, e)],
    };
    let mut out = Vec::new();
    let name0 = "functional_equation[k=0]";
    if 2 * ctx.rs.num_reflections() <= DEFAULT_FACTOR_BUDGET {
        let b0 = b.eval_rational(&BigRational::from_integer(0.into()));
        match mm_exact(&ctx.ring, 1, DEFAULT_FACTOR_BUDGET) {
            Ok(f1) => out.push(CheckReport::exact(name0, g, f1 == b0, format!("b(0) = {b0}"), format!("F(1) = {f1}"))),
            Err(e) => out.push(CheckReport::exact(name0, g, false, format!("b(0) = {b0}"), e.to_string())),
        }
    } else {
        out.push(CheckReport::skipped(name0, g, Mode::Exact, "F(1) exceeds the Wick factor budget".into()));
    }
    for k in [0.25, 0.5] {
        let name = format!("functional_equation[k={k}]");
        let worst = if predicted_relative_variance(&ctx.dd, k + 1.0) > predicted_relative_variance(&ctx.dd, k) {
            k + 1.0
        } else {
            k
        };
        out.push(gated(&name, g, &ctx.dd, worst, || {
            let rep = check_functional_equation(&ctx.ring, &b, k, params);
            CheckReport::statistical(
                &name,
                g,
                rep.check.passed,
                format!("F(k+1) - b(k) F(k) = 0 with b({k}) = {:.9}", rep.b_k),
                format!(
                    "F({}) = {:.9} +- {:.3e}, F({k}) = {:.9} +- {:.3e}, diff {:.3e} +- {:.3e}",
                    k + 1.0,
                    rep.f_k1.mean,
                    rep.f_k1.std_error,
                    rep.f_k.mean,
                    rep.f_k.std_error,
                    rep.check.estimate,
                    rep.check.std_error
                ),
                rep.check.z,
                rep.check.tolerance_sigma,
            )
        }));
    }
    out
}

/// The fixed regression pairs `(u_1², 1)` and `(u_1, u_r)`.
pub fn cross_check_pairs(ring: &Arc<PolyRing>) -> Vec<(MultiPoly, MultiPoly)> {
    let u1 = MultiPoly::var(ring, 0);
    let ur = MultiPoly::var(ring, ring.rank() - 1);
    vec![(u1.pow(2), MultiPoly::one(ring)), (u1, ur)]
}

fn gamma_cross_reports(ctx: &GroupCtx, params: &McParams) -> Result<Vec<CheckReport>> {
    let g = ctx.label.as_str();
    let mut out = Vec::new();
    for (f, h) in cross_check_pairs(&ctx.ring) {
        for (num, den) in [(0i64, 1i64), (1, 2), (1, 1)] {
            let k = BigRational::new(num.into(), den.into());
            let kf = num as f64 / den as f64;
            let name = format!("gamma_cross_check[f={f},g={h},k={kf}]");
            let mut err = None;
            let rep = gated(&name, g, &ctx.dd, kf, || match gamma_integral_cross_check(&f, &h, &k, params) {
                Ok(c) => stat_report(&name, g, &c, "exact gamma_k(f,g)"),
                Err(e) => {
                    err = Some(e);
                    CheckReport::skipped(&name, g, Mode::Statistical, String::new())
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
            out.push(rep);
        }
    }
    Ok(out)
}
