use std::fmt;
use std::str::FromStr;

use crate::coxeter::{CoxeterDiagram, DEFAULT_GROUP_BUDGET};
use crate::error::{Error, Result};

/// The checks the suite knows how to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckName {
    PoincareIdentity,
    DegreesConsistency,
    Chevalley,
    PsiIdentities,
    AlgebraRelations,
    BPoly,
    MmExact,
    MmMonteCarlo,
    FunctionalEquation,
    GammaCrossCheck,
    LogMoments,
    LogVariance,
}

impl CheckName {
    pub const ALL: [CheckName; 12] = [
        CheckName::PoincareIdentity,
        CheckName::DegreesConsistency,
        CheckName::Chevalley,
        CheckName::PsiIdentities,
        CheckName::AlgebraRelations,
        CheckName::BPoly,
        CheckName::MmExact,
        CheckName::MmMonteCarlo,
        CheckName::FunctionalEquation,
        CheckName::GammaCrossCheck,
        CheckName::LogMoments,
        CheckName::LogVariance,
    ];

    /// Everything except the loose-tolerance log-variance check.
    pub fn defaults() -> Vec<CheckName> {
        Self::ALL.iter().copied().filter(|c| *c != CheckName::LogVariance).collect()
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            CheckName::PoincareIdentity => "poincare_identity",
            CheckName::DegreesConsistency => "degrees_consistency",
            CheckName::Chevalley => "chevalley",
            CheckName::PsiIdentities => "psi_identities",
            CheckName::AlgebraRelations => "algebra_relations",
            CheckName::BPoly => "b_poly",
            CheckName::MmExact => "mm_exact",
            CheckName::MmMonteCarlo => "mm_monte_carlo",
            CheckName::FunctionalEquation => "functional_equation",
            CheckName::GammaCrossCheck => "gamma_cross_check",
            CheckName::LogMoments => "log_moments",
            CheckName::LogVariance => "log_variance",
        }
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown check `{s}`")))
    }
}

pub const DEFAULT_GROUPS: [&str; 9] = ["A1", "A2", "A3", "B2", "B3", "D4", "I2(5)", "I2(7)", "H3"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub groups: Vec<String>,
    pub checks: Vec<CheckName>,
    pub mc_samples: u64,
    pub seed: u64,
    pub shards: u32,
    pub enumeration_budget: usize,
    pub heavy_types_enabled: bool,
    pub output_path: Option<String>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            groups: DEFAULT_GROUPS.iter().map(|s| s.to_string()).collect(),
            checks: CheckName::defaults(),
            mc_samples: 10_000_000,
            seed: 42,
            shards: 16,
            enumeration_budget: DEFAULT_GROUP_BUDGET,
            heavy_types_enabled: false,
            output_path: None,
        }
    }
}

impl SuiteConfig {
    /// Parsed diagrams, in configuration order.
    pub fn diagrams(&self) -> Result<Vec<CoxeterDiagram>> {
        self.groups.iter().map(|g| g.parse()).collect()
    }
}

fn line_err(line: usize, msg: impl fmt::Display) -> Error {
    Error::InvalidArgument(format!("line {line}: {msg}"))
}

fn list(value: &str) -> Vec<&str> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn number<T: FromStr>(line: usize, key: &str, value: &str) -> Result<T> {
    value.replace('_', "").parse().map_err(|_| line_err(line, format!("invalid value `{value}` for `{key}`")))
}

/// Parses `key = value` lines; `#` starts a comment and lists are
/// comma-separated. Unset keys keep their defaults.
pub fn parse_config(text: &str) -> Result<SuiteConfig> {
    let mut cfg = SuiteConfig::default();
    for (idx, raw) in text.lines().enumerate() {
        let n = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| line_err(n, "expected `key = value`"))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "groups" => {
                let groups = list(value);
                for g in &groups {
                    g.parse::<CoxeterDiagram>().map_err(|e| line_err(n, e))?;
                }
                cfg.groups = groups.into_iter().map(String::from).collect();
            }
            "checks" => {
                cfg.checks = list(value).into_iter().map(|c| c.parse().map_err(|e| line_err(n, e))).collect::<Result<_>>()?;
            }
            "mc_samples" => {
                cfg.mc_samples = number(n, key, value)?;
                if cfg.mc_samples == 0 {
                    return Err(line_err(n, "mc_samples must be positive"));
                }
            }
            "seed" => cfg.seed = number(n, key, value)?,
            "shards" => {
                cfg.shards = number(n, key, value)?;
                if cfg.shards == 0 {
                    return Err(line_err(n, "shards must be positive"));
                }
            }
            "enumeration_budget" => cfg.enumeration_budget = number(n, key, value)?,
            "heavy_types_enabled" => {
                cfg.heavy_types_enabled = match value {
                    "true" | "yes" | "1" => true,
                    "false" | "no" | "0" => false,
                    _ => return Err(line_err(n, format!("invalid boolean `{value}`"))),
                }
            }
            "output_path" => cfg.output_path = (!value.is_empty()).then(|| value.to_string()),
            _ => return Err(line_err(n, format!("unknown key `{key}`"))),
        }
    }
    Ok(cfg)
}

/// Inverse of [`parse_config`].
pub fn render_config(cfg: &SuiteConfig) -> String {
    let checks: Vec<&str> = cfg.checks.iter().map(CheckName::as_str).collect();
    let mut out = format!(
        "groups = {}\nchecks = {}\nmc_samples = {}\nseed = {}\nshards = {}\nenumeration_budget = {}\nheavy_types_enabled = {}\n",
        cfg.groups.join(", "),
        checks.join(", "),
        cfg.mc_samples,
        cfg.seed,
        cfg.shards,
        cfg.enumeration_budget,
        cfg.heavy_types_enabled
    );
    if let Some(p) = &cfg.output_path {
        out.push_str(&format!("output_path = {p}\n"));
    }
    out
}
