//! The verification suite behind the `coxdunkl` binary: configuration,
//! orchestration and report rendering.

mod config;
mod report;
mod suite;

pub use config::{parse_config, render_config, CheckName, SuiteConfig, DEFAULT_GROUPS};
pub use report::{count_failures, render_report, CheckReport, Mode, ReportFormat, Status};
pub use suite::{
    cross_check_pairs, run_suite, run_suite_with_hooks, SuiteHooks, SuiteOutcome, LOG_VARIANCE_SIGMA,
    MAX_RELATIVE_VARIANCE,
};
