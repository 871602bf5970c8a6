use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::degrees::DegreeData;
use super::matrix::FieldMatrix;
use super::root_system::RootSystem;
use crate::error::{Error, Result};
use crate::scalars::FieldElement;

/// A rank-two parabolic subgroup, identified with the codimension-two flat
/// fixed by it. It is dihedral of order `2m`, `m` = number of mirrors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank2Parabolic {
    pub flat_id: String,
    pub m: usize,
    pub member_roots: Vec<usize>,
}

/// Whether `gamma` lies in the span of `a` and `b` (assumed independent).
fn in_span(a: &[FieldElement], b: &[FieldElement], gamma: &[FieldElement]) -> bool {
    let n = a.len();
    // Find a nonsingular 2x2 minor.
    for p in 0..n {
        for q in p + 1..n {
            let det = &(&a[p] * &b[q]) - &(&a[q] * &b[p]);
            if det.is_zero() {
                continue;
            }
            let inv = det.inv().expect("nonzero");
            let s = &(&(&gamma[p] * &b[q]) - &(&gamma[q] * &b[p])) * &inv;
            let t = &(&(&a[p] * &gamma[q]) - &(&a[q] * &gamma[p])) * &inv;
            return (0..n).all(|i| gamma[i] == &(&s * &a[i]) + &(&t * &b[i]));
        }
    }
    // Rank one: a and b are proportional, which distinct positive roots are not.
    false
}

/// One entry per codimension-two flat cut out by a pair of mirrors.
pub fn rank2_parabolics(rs: &RootSystem) -> Vec<Rank2Parabolic> {
    let n = rs.num_reflections();
    let roots = rs.positive_roots();
    let mut assigned = vec![vec![false; n]; n];
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if assigned[i][j] {
                continue;
            }
            let members: Vec<usize> = (0..n)
                .filter(|&g| g == i || g == j || in_span(&roots[i], &roots[j], &roots[g]))
                .collect();
            for &x in &members {
                for &y in &members {
                    assigned[x][y] = true;
                }
            }
            let id = members.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(",");
            out.push(Rank2Parabolic { flat_id: format!("{{{id}}}"), m: members.len(), member_roots: members });
        }
    }
    out.sort_by(|a, b| a.member_roots.cmp(&b.member_roots));
    out
}

/// Report of both rank-two decompositions of `ψ(W)`.
#[derive(Clone, Debug)]
pub struct PsiReport {
    pub psi: BigRational,
    /// `Σ_G ψ(G) = Σ (2m² - 2)` over rank-two parabolics.
    pub parabolic_sum: BigRational,
    /// `24 Σ_{w ∈ W₂} 1/(r - Tr w)`.
    pub trace_sum: FieldElement,
    pub w2_size: usize,
    pub pair_partition_ok: bool,
    pub traces_positive: bool,
}

impl PsiReport {
    pub fn parabolic_identity_holds(&self) -> bool {
        self.psi == self.parabolic_sum && self.pair_partition_ok
    }

    pub fn trace_identity_holds(&self) -> bool {
        self.trace_sum.as_rational() == Some(&self.psi) && self.traces_positive
    }

    pub fn holds(&self) -> bool {
        self.parabolic_identity_holds() && self.trace_identity_holds()
    }
}

/// `W₂`: distinct elements `s_α s_β` with `α ≠ β`.
pub fn products_of_two_reflections(rs: &RootSystem) -> Vec<FieldMatrix> {
    let refl: Vec<FieldMatrix> = (0..rs.num_reflections()).map(|i| rs.reflection_matrix(i)).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (i, a) in refl.iter().enumerate() {
        for (j, b) in refl.iter().enumerate() {
            if i == j {
                continue;
            }
            let m = a.mul(b);
            if seen.insert(m.clone()) {
                out.push(m);
            }
        }
    }
    out
}

pub fn verify_psi_identities(rs: &RootSystem, dd: &DegreeData) -> Result<PsiReport> {
    let field = rs.field();
    let psi = dd.psi();
    let pars = rank2_parabolics(rs);
    let parabolic_sum: BigInt = pars.iter().map(|p| BigInt::from(2 * p.m * p.m) - 2).sum();
    let pairs: usize = pars.iter().map(|p| p.m * (p.m - 1) / 2).sum();
    let s = rs.num_reflections();
    let pair_partition_ok = pairs == s * (s - 1) / 2;

    let r = FieldElement::from_int(field, rs.rank() as i64);
    let w2 = products_of_two_reflections(rs);
    let mut acc = FieldElement::zero(field);
    let mut traces_positive = true;
    for m in &w2 {
        let gap = &r - &m.trace();
        if !gap.is_positive()? {
            traces_positive = false;
            if gap.is_zero() {
                return Err(Error::InvalidArgument("r - Tr(w) vanished on W2".into()));
            }
        }
        acc = &acc + &gap.inv()?;
    }
    let trace_sum = &acc * &FieldElement::from_int(field, 24);
    Ok(PsiReport {
        psi,
        parabolic_sum: BigRational::from_integer(parabolic_sum),
        trace_sum,
        w2_size: w2.len(),
        pair_partition_ok,
        traces_positive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{compute_degrees, enumerate_group, poincare_polynomial, DEFAULT_GROUP_BUDGET};

    fn census(label: &str) -> Vec<usize> {
        let rs = RootSystem::build(&label.parse().unwrap()).unwrap();
        let mut ms: Vec<usize> = rank2_parabolics(&rs).iter().map(|p| p.m).collect();
        ms.sort_unstable();
        ms
    }

    #[test]
    fn parabolic_census() {
        assert_eq!(census("A2"), vec![3]);
        assert_eq!(census("A3"), vec![2, 2, 2, 3, 3, 3, 3]);
        let mut b3 = vec![2; 6];
        b3.extend([3; 4]);
        b3.extend([4; 3]);
        assert_eq!(census("B3"), b3);
    }

    fn report(label: &str) -> PsiReport {
        let rs = RootSystem::build(&label.parse().unwrap()).unwrap();
        let el = enumerate_group(&rs, DEFAULT_GROUP_BUDGET).unwrap();
        let dd = compute_degrees(&rs, &poincare_polynomial(&el)).unwrap();
        verify_psi_identities(&rs, &dd).unwrap()
    }

    #[test]
    fn a2_rotations() {
        let rep = report("A2");
        assert_eq!(rep.w2_size, 2);
        assert_eq!(rep.psi, BigRational::from_integer(16.into()));
        assert!(rep.holds());
    }

    #[test]
    fn psi_decompositions() {
        for label in ["A3", "B3", "I2(8)", "H3"] {
            let rep = report(label);
            assert!(rep.holds(), "{label}: {rep:?}");
        }
    }
}
