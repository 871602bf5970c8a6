use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::montecarlo::{disc_weight, log_disc_sq, sample_moments, GaussianSampler, McEstimate, McParams};
use super::special::{gamma_product_rhs, EULER_GAMMA};
use crate::coxeter::DegreeData;
use crate::dunkl::gamma_form;
use crate::error::Result;
use crate::polynomials::{MultiPoly, PolyRing};
use crate::scalars::KPoly;

/// Default acceptance band, in standard errors.
pub const DEFAULT_SIGMA: f64 = 4.0;

/// Comparison of a statistical estimate with a reference value.
#[derive(Clone, Debug, PartialEq)]
pub struct StatCheck {
    pub estimate: f64,
    pub std_error: f64,
    pub expected: f64,
    pub z: f64,
    pub tolerance_sigma: f64,
    pub samples: u64,
    pub passed: bool,
}

impl StatCheck {
    pub fn new(estimate: f64, std_error: f64, expected: f64, tolerance_sigma: f64, samples: u64) -> Self {
        let diff = estimate - expected;
        let z = if std_error > 0.0 {
            diff / std_error
        } else if diff.abs() <= 1e-12 * expected.abs().max(1.0) {
            0.0
        } else {
            f64::INFINITY.copysign(diff)
        };
        StatCheck { estimate, std_error, expected, z, tolerance_sigma, samples, passed: z.abs() <= tolerance_sigma }
    }
}

/// `Var(|Δ|^{2k}) / F(k)² = F(2k)/F(k)² - 1`, from the closed form.
pub fn predicted_relative_variance(dd: &DegreeData, k: f64) -> f64 {
    gamma_product_rhs(dd, 2.0 * k) / gamma_product_rhs(dd, k).powi(2) - 1.0
}

/// Monte Carlo `F(k)` against `∏ Γ(1 + k d_i)/Γ(1 + k)`.
pub fn check_against_gamma(ring: &PolyRing, dd: &DegreeData, k: f64, p: &McParams) -> (McEstimate, StatCheck) {
    let est = super::montecarlo::mm_monte_carlo(ring, k, p);
    let check = StatCheck::new(est.mean, est.std_error, gamma_product_rhs(dd, k), DEFAULT_SIGMA, est.samples);
    (est, check)
}

/// `F̂(k+1) - b(k) F̂(k)` with the two estimates drawn on disjoint substreams.
#[derive(Clone, Debug)]
pub struct FunctionalEquationReport {
    pub k: f64,
    pub f_k: McEstimate,
    pub f_k1: McEstimate,
    pub b_k: f64,
    pub check: StatCheck,
}

pub fn check_functional_equation(ring: &PolyRing, b: &KPoly, k: f64, p: &McParams) -> FunctionalEquationReport {
    let f_k = super::montecarlo::mm_monte_carlo_tagged(ring, k, p, 1);
    let f_k1 = super::montecarlo::mm_monte_carlo_tagged(ring, k + 1.0, p, 2);
    let b_k = b.eval_f64(k);
    let diff = f_k1.mean - b_k * f_k.mean;
    let sigma = (f_k1.std_error.powi(2) + (b_k * f_k.std_error).powi(2)).sqrt();
    let check = StatCheck::new(diff, sigma, 0.0, DEFAULT_SIGMA, f_k.samples);
    FunctionalEquationReport { k, f_k, f_k1, b_k, check }
}

/// Exact `γ_k(f, g)` at a rational `k` against the ratio estimator
/// `E[f g |Δ|^{2k}] / E[|Δ|^{2k}]`, with a delta-method standard error.
pub fn gamma_integral_cross_check(f: &MultiPoly, g: &MultiPoly, k: &BigRational, p: &McParams) -> Result<StatCheck> {
    let exact = gamma_form(f, g)?.eval_rational(k).to_f64();
    let kf = k.to_f64().unwrap_or(f64::NAN);
    let fg = f.mul(g).to_float(kf);
    let sampler = GaussianSampler::new(f.ring());
    let m = sample_moments(&sampler, p, 3, 2, |u, vals, out| {
        let w = disc_weight(vals, kf);
        out[0] = fg.eval(u) * w;
        out[1] = w;
    });
    let (num, den) = (m.mean[0], m.mean[1]);
    let ratio = num / den;
    let n = m.n as f64;
    let var = (m.covariance(0, 0) - 2.0 * ratio * m.covariance(0, 1) + ratio * ratio * m.covariance(1, 1)) / (den * den);
    Ok(StatCheck::new(ratio, (var.max(0.0) / n).sqrt(), exact, DEFAULT_SIGMA, m.n))
}

/// `E[log Δ²]`, which equals `F'(0)`, against `-γ |S|`.
pub fn mm_log_moments(ring: &PolyRing, p: &McParams) -> StatCheck {
    let sampler = GaussianSampler::new(ring);
    let m = sample_moments(&sampler, p, 4, 1, |_, vals, out| out[0] = log_disc_sq(vals));
    let est = m.estimate(0, p);
    StatCheck::new(est.mean, est.std_error, -EULER_GAMMA * ring.num_roots() as f64, DEFAULT_SIGMA, m.n)
}

/// `Var(log Δ²)` against `(π²/6) Σ (d_i² - 1)`, the second cumulant of
/// `log Δ²`, at a `tolerance_sigma` band.
pub fn log_variance_check(ring: &PolyRing, dd: &DegreeData, p: &McParams, tolerance_sigma: f64) -> StatCheck {
    let sampler = GaussianSampler::new(ring);
    let centre = -EULER_GAMMA * ring.num_roots() as f64;
    let m = sample_moments(&sampler, p, 5, 2, |_, vals, out| {
        let d = log_disc_sq(vals) - centre;
        out[0] = d;
        out[1] = d * d;
    });
    let n = m.n as f64;
    let (m1, m2) = (m.mean[0], m.mean[1]);
    let var_hat = (m2 - m1 * m1) * n / (n - 1.0);
    // Delta method on (m1, m2) ↦ m2 - m1².
    let v = 4.0 * m1 * m1 * m.covariance(0, 0) - 4.0 * m1 * m.covariance(0, 1) + m.covariance(1, 1);
    let expected =
        std::f64::consts::PI.powi(2) / 6.0 * dd.degrees.iter().map(|&d| (d * d - 1) as f64).sum::<f64>();
    StatCheck::new(var_hat, (v.max(0.0) / n).sqrt(), expected, tolerance_sigma, m.n)
}
