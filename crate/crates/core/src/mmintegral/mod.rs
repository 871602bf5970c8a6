//! The Macdonald–Mehta integral `F(k) = E[|Δ(x)|^{2k}]` over the standard
//! Gaussian on the reflection representation.
//!
//! Integer `k` is handled exactly by Wick's theorem, whose covariances are
//! the exact inner products `(α, β)`. Real `k` uses a seeded, sharded Monte
//! Carlo estimator with reproducible substreams.

mod checks;
mod montecarlo;
mod special;
mod wick;

pub use checks::{
    check_against_gamma, check_functional_equation, gamma_integral_cross_check, log_variance_check, mm_log_moments,
    predicted_relative_variance, FunctionalEquationReport, StatCheck, DEFAULT_SIGMA,
};
pub use montecarlo::{
    disc_weight, log_disc_sq, mm_monte_carlo, mm_monte_carlo_tagged, sample_moments, GaussianSampler, McEstimate,
    McParams, Moments,
};
pub use special::{gamma, gamma_product_exact, gamma_product_rhs, ln_gamma, EULER_GAMMA};
pub use wick::{mm_exact, wick_moment, WickState, DEFAULT_FACTOR_BUDGET};
