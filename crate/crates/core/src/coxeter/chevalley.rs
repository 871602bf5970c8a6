use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::degrees::DegreeData;
use super::group::GroupElement;
use super::root_system::RootSystem;
use crate::error::Result;
use crate::scalars::{FieldElement, FieldSpec, KPoly};

/// Quotient of two polynomials in `q`, kept in lowest terms with a monic
/// denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    pub num: KPoly,
    pub den: KPoly,
}

impl RationalFunction {
    pub fn new(num: KPoly, den: KPoly) -> Result<Self> {
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_zero() || g.degree() == Some(0) {
            (num, den)
        } else {
            (num.div_exact(&g)?, den.div_exact(&g)?)
        };
        let lead = den.leading().cloned().ok_or(crate::Error::DivisionByZero)?.inv()?;
        num = num.scale(&lead);
        den = den.scale(&lead);
        Ok(RationalFunction { num, den })
    }

    pub fn zero(field: &Arc<FieldSpec>) -> Self {
        RationalFunction { num: KPoly::zero(field), den: KPoly::one(field) }
    }

    pub fn add(&self, other: &RationalFunction) -> Result<Self> {
        let g = self.den.gcd(&other.den);
        let a = self.den.div_exact(&g)?;
        let b = other.den.div_exact(&g)?;
        let num = self.num.mul(&b).add(&other.num.mul(&a));
        RationalFunction::new(num, a.mul(&other.den))
    }

    pub fn mul_poly(&self, p: &KPoly) -> Result<Self> {
        RationalFunction::new(self.num.mul(p), self.den.clone())
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num.to_string_in("q"), self.den.to_string_in("q"))
    }
}

/// Both sides of `(1-q)^r Σ_w det(1-qw)^{-1} = |W| ∏ (1-q)/(1-q^{d_i})`.
#[derive(Clone, Debug)]
pub struct ChevalleyWitness {
    pub lhs: RationalFunction,
    pub rhs: RationalFunction,
    pub holds: bool,
}

/// `det(1 - q M)` as a polynomial in `q`.
pub fn det_one_minus_q(m: &super::FieldMatrix) -> KPoly {
    let cp = m.characteristic_polynomial();
    let field = cp[0].spec().clone();
    let rev: Vec<FieldElement> = cp.into_iter().rev().collect();
    KPoly::from_coeffs(field, rev)
}

fn one_minus_q_pow(field: &Arc<FieldSpec>, d: usize) -> KPoly {
    let mut c = vec![FieldElement::zero(field); d + 1];
    c[0] = FieldElement::one(field);
    c[d] = FieldElement::from_int(field, -1);
    KPoly::from_coeffs(field.clone(), c)
}

/// Verifies the Chevalley identity exactly as rational functions in `q`.
pub fn chevalley_q_identity(rs: &RootSystem, elements: &[GroupElement], dd: &DegreeData) -> Result<ChevalleyWitness> {
    let field = rs.field();
    let r = rs.rank();
    // det(1 - qw) only depends on the characteristic polynomial of w.
    let mut classes: HashMap<KPoly, i64> = HashMap::new();
    for e in elements {
        *classes.entry(det_one_minus_q(&e.matrix)).or_insert(0) += 1;
    }
    let mut sum = RationalFunction::zero(field);
    for (den, count) in &classes {
        let term = RationalFunction::new(KPoly::constant(FieldElement::from_int(field, *count)), den.clone())?;
        sum = sum.add(&term)?;
    }
    let one_minus_q = one_minus_q_pow(field, 1);
    let lhs = sum.mul_poly(&one_minus_q.pow(r as u32))?;
    let rhs_den = dd.degrees.iter().fold(KPoly::one(field), |acc, &d| acc.mul(&one_minus_q_pow(field, d as usize)));
    let rhs_num = one_minus_q.pow(r as u32).scale(&FieldElement::from_int(field, dd.order as i64));
    let rhs = RationalFunction::new(rhs_num, rhs_den)?;
    let holds = lhs == rhs;
    Ok(ChevalleyWitness { lhs, rhs, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{compute_degrees, enumerate_group, poincare_polynomial, DEFAULT_GROUP_BUDGET};

    fn witness(label: &str) -> ChevalleyWitness {
        let rs = RootSystem::build(&label.parse().unwrap()).unwrap();
        let el = enumerate_group(&rs, DEFAULT_GROUP_BUDGET).unwrap();
        let dd = compute_degrees(&rs, &poincare_polynomial(&el)).unwrap();
        chevalley_q_identity(&rs, &el, &dd).unwrap()
    }

    #[test]
    fn a1_both_sides_are_two_over_one_plus_q() {
        let w = witness("A1");
        assert!(w.holds);
        let f = w.lhs.num.field().clone();
        assert_eq!(w.lhs.num, KPoly::constant(FieldElement::from_int(&f, 2)));
        assert_eq!(w.lhs.den, KPoly::linear(&f, 1, 1));
    }

    #[test]
    fn holds_for_small_types() {
        for label in ["A2", "B2", "A3", "I2(5)", "H3"] {
            assert!(witness(label).holds, "{label}");
        }
    }

    #[test]
    fn wrong_degrees_break_the_identity() {
        let rs = RootSystem::build(&"A2".parse().unwrap()).unwrap();
        let el = enumerate_group(&rs, DEFAULT_GROUP_BUDGET).unwrap();
        let fake = DegreeData { degrees: vec![2, 2], order: 6, num_reflections: 3 };
        assert!(!chevalley_q_identity(&rs, &el, &fake).unwrap().holds);
    }
}
