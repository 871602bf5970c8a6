use std::collections::HashMap;

use crate::coxeter::row_dot;
use crate::error::{Error, Result};
use crate::polynomials::PolyRing;
use crate::scalars::FieldElement;

/// Default cap on the number of linear factors in a Wick moment.
pub const DEFAULT_FACTOR_BUDGET: usize = 20;

/// Remaining factors as multiplicities per positive root, with a memo of
/// already evaluated states.
pub struct WickState<'a> {
    ring: &'a PolyRing,
    pairings: Vec<Vec<FieldElement>>,
    memo: HashMap<Vec<u8>, FieldElement>,
}

impl<'a> WickState<'a> {
    pub fn new(ring: &'a PolyRing) -> Self {
        let g = ring.gram();
        let n = ring.num_roots();
        let gc: Vec<Vec<FieldElement>> = (0..n).map(|j| g.apply(&ring.root_form(j).coeffs)).collect();
        let pairings = (0..n).map(|i| (0..n).map(|j| row_dot(&ring.root_form(i).coeffs, &gc[j])).collect()).collect();
        WickState { ring, pairings, memo: HashMap::new() }
    }

    /// `(α_i, α_j)`.
    pub fn pairing(&self, i: usize, j: usize) -> &FieldElement {
        &self.pairings[i][j]
    }

    /// `E[∏ (α, x)^{mult_α}]` under the standard Gaussian.
    pub fn moment(&mut self, mult: &[u8]) -> FieldElement {
        let field = self.ring.field();
        let total: usize = mult.iter().map(|&m| m as usize).sum();
        if total == 0 {
            return FieldElement::one(field);
        }
        if total % 2 == 1 {
            return FieldElement::zero(field);
        }
        if let Some(v) = self.memo.get(mult) {
            return v.clone();
        }
        let i = mult.iter().position(|&m| m > 0).unwrap();
        let mut rest = mult.to_vec();
        rest[i] -= 1;
        let mut acc = FieldElement::zero(field);
        for j in 0..rest.len() {
            if rest[j] == 0 || self.pairings[i][j].is_zero() {
                continue;
            }
            let count = FieldElement::from_int(field, rest[j] as i64);
            let w = &self.pairings[i][j] * &count;
            rest[j] -= 1;
            let sub = self.moment(&rest);
            rest[j] += 1;
            acc = &acc + &(&w * &sub);
        }
        self.memo.insert(mult.to_vec(), acc.clone());
        acc
    }
}

/// `E[∏_j (α_j, x)]` over a multiset of positive-root indices.
pub fn wick_moment(ring: &PolyRing, factors: &[usize], budget: usize) -> Result<FieldElement> {
    if factors.len() > budget {
        return Err(Error::BudgetExceeded { what: "Wick factors".into(), limit: budget });
    }
    let mut mult = vec![0u8; ring.num_roots()];
    for &f in factors {
        mult[f] += 1;
    }
    Ok(WickState::new(ring).moment(&mult))
}

/// `F(k) = E[Δ(x)^{2k}]` for a nonnegative integer `k`.
pub fn mm_exact(ring: &PolyRing, k: u32, budget: usize) -> Result<FieldElement> {
    let n = 2 * k as usize * ring.num_roots();
    if n > budget {
        return Err(Error::BudgetExceeded { what: "Wick factors".into(), limit: budget });
    }
    let mult = vec![(2 * k) as u8; ring.num_roots()];
    Ok(WickState::new(ring).moment(&mult))
}
