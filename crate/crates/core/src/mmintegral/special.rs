use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::coxeter::DegreeData;

/// The Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const STIRLING: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
];

/// `ln Γ(x)` for `x > 0`: Stirling series after shifting the argument past 15.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma needs a positive argument, got {x}");
    let mut shift = 1.0;
    let mut y = x;
    while y < 15.0 {
        shift *= y;
        y += 1.0;
    }
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut p = inv;
    for c in STIRLING {
        series += c * p;
        p *= inv2;
    }
    (y - 0.5) * y.ln() - y + 0.5 * (2.0 * std::f64::consts::PI).ln() + series - shift.ln()
}

pub fn gamma(x: f64) -> f64 {
    ln_gamma(x).exp()
}

/// `∏_i Γ(1 + k d_i) / Γ(1 + k)`.
pub fn gamma_product_rhs(dd: &DegreeData, k: f64) -> f64 {
    let r = dd.degrees.len() as f64;
    let s: f64 = dd.degrees.iter().map(|&d| ln_gamma(1.0 + k * d as f64)).sum();
    (s - r * ln_gamma(1.0 + k)).exp()
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `∏_i (k d_i)! / (k!)^r` for integer `k`.
pub fn gamma_product_exact(dd: &DegreeData, k: u32) -> BigRational {
    let num = dd.degrees.iter().fold(BigInt::one(), |acc, &d| acc * factorial(k as u64 * d as u64));
    let den = num_traits::pow(factorial(k as u64), dd.degrees.len());
    BigRational::new(num, den)
}
