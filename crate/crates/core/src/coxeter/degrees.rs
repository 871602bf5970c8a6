use num_bigint::BigInt;
use num_rational::BigRational;

use super::root_system::RootSystem;
use crate::error::{Error, Result};
use crate::scalars::IntPoly;

/// Degrees of the basic invariants together with `|W|` and `|S|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeData {
    pub degrees: Vec<u32>,
    pub order: u64,
    pub num_reflections: usize,
}

impl DegreeData {
    /// `∏ d_i = |W|` and `Σ (d_i - 1) = |S|`.
    pub fn check_invariants(&self) -> Result<()> {
        let prod: u64 = self.degrees.iter().map(|&d| d as u64).product();
        if prod != self.order {
            return Err(Error::Factorization(format!("product of degrees {prod} != |W| = {}", self.order)));
        }
        let sum: usize = self.degrees.iter().map(|&d| d as usize - 1).sum();
        if sum != self.num_reflections {
            return Err(Error::Factorization(format!(
                "sum of (d_i - 1) = {sum} != |S| = {}",
                self.num_reflections
            )));
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    /// `ψ(W) = 3|S|² - Σ (d_i² - 1)`.
    pub fn psi(&self) -> BigRational {
        psi_invariant(self)
    }
}

/// Splits the Poincaré polynomial into `q`-integers `[d]_q`, largest first,
/// and validates the result against `|W|` and `|S|`.
pub fn compute_degrees(rs: &RootSystem, poincare: &IntPoly) -> Result<DegreeData> {
    let order: i64 = poincare.coeffs().iter().sum();
    let mut rest = poincare.clone();
    let mut degrees = Vec::new();
    let top = poincare.degree().unwrap_or(0) + 1;
    for d in (2..=top).rev() {
        let qd = IntPoly::q_integer(d);
        loop {
            if rest.degree().unwrap_or(0) + 1 < d {
                break;
            }
            let (quot, rem) = rest.div_rem_monic(&qd);
            if !rem.is_zero() {
                break;
            }
            degrees.push(d as u32);
            rest = quot;
        }
    }
    if rest != IntPoly::one() {
        return Err(Error::Factorization(format!("leftover factor {rest} after extracting q-integers")));
    }
    degrees.sort_unstable();
    if degrees.len() != rs.rank() {
        return Err(Error::Factorization(format!(
            "found {} degrees for a rank {} group",
            degrees.len(),
            rs.rank()
        )));
    }
    let dd = DegreeData { degrees, order: order as u64, num_reflections: rs.num_reflections() };
    dd.check_invariants()?;
    Ok(dd)
}

pub fn psi_invariant(dd: &DegreeData) -> BigRational {
    let s = BigInt::from(dd.num_reflections);
    let sum: BigInt = dd.degrees.iter().map(|&d| BigInt::from(d) * BigInt::from(d) - 1).sum();
    BigRational::from_integer(BigInt::from(3) * &s * &s - sum)
}
