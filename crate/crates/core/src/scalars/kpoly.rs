//! Univariate polynomials over a number field.
//!
//! The main use is the deformation parameter `k`, but the same type carries
//! the `q`-polynomials of the Chevalley identity.

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{FieldElement, FieldSpec};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct KPoly {
    field: Arc<FieldSpec>,
    coeffs: Vec<FieldElement>,
}

impl KPoly {
    pub fn zero(field: &Arc<FieldSpec>) -> Self {
        KPoly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Arc<FieldSpec>) -> Self {
        Self::constant(FieldElement::one(field))
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::from_coeffs(c.spec().clone(), vec![c])
    }

    /// The polynomial `k` itself.
    pub fn var(field: &Arc<FieldSpec>) -> Self {
        Self::from_coeffs(field.clone(), vec![FieldElement::zero(field), FieldElement::one(field)])
    }

    /// `a*k + b` with integer coefficients.
    pub fn linear(field: &Arc<FieldSpec>, a: i64, b: i64) -> Self {
        Self::from_coeffs(field.clone(), vec![FieldElement::from_int(field, b), FieldElement::from_int(field, a)])
    }

    pub fn from_coeffs(field: Arc<FieldSpec>, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        KPoly { field, coeffs }
    }

    pub fn from_rationals(field: &Arc<FieldSpec>, coeffs: &[BigRational]) -> Self {
        let c = coeffs.iter().map(|q| FieldElement::from_rational(field, q.clone())).collect();
        Self::from_coeffs(field.clone(), c)
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| FieldElement::zero(&self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &KPoly) -> KPoly {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() { (self, other) } else { (other, self) };
        let mut c = long.coeffs.clone();
        for (i, b) in short.coeffs.iter().enumerate() {
            c[i] = &c[i] + b;
        }
        KPoly::from_coeffs(self.field.clone(), c)
    }

    pub fn add_assign(&mut self, other: &KPoly) {
        if other.coeffs.len() > self.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), FieldElement::zero(&self.field));
        }
        for (i, b) in other.coeffs.iter().enumerate() {
            if !b.is_zero() {
                self.coeffs[i] = &self.coeffs[i] + b;
            }
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn sub(&self, other: &KPoly) -> KPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> KPoly {
        KPoly { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &KPoly) -> KPoly {
        if self.is_zero() || other.is_zero() {
            return KPoly::zero(&self.field);
        }
        let mut c = vec![FieldElement::zero(&self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] = &c[i + j] + &(a * b);
                }
            }
        }
        KPoly::from_coeffs(self.field.clone(), c)
    }

    pub fn scale(&self, s: &FieldElement) -> KPoly {
        if s.is_zero() {
            return KPoly::zero(&self.field);
        }
        KPoly::from_coeffs(self.field.clone(), self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn scale_rational(&self, q: &BigRational) -> KPoly {
        if q.is_zero() {
            return KPoly::zero(&self.field);
        }
        KPoly { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c.scale(q)).collect() }
    }

    /// Multiplication by `k`.
    pub fn shift(&self) -> KPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = Vec::with_capacity(self.coeffs.len() + 1);
        c.push(FieldElement::zero(&self.field));
        c.extend(self.coeffs.iter().cloned());
        KPoly { field: self.field.clone(), coeffs: c }
    }

    pub fn pow(&self, e: u32) -> KPoly {
        let mut acc = KPoly::one(&self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> KPoly {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| a.scale(&BigRational::from_integer((i as i64).into())))
            .collect();
        KPoly::from_coeffs(self.field.clone(), c)
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::zero(&self.field), |acc, c| &(&acc * x) + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> FieldElement {
        self.eval(&FieldElement::from_rational(&self.field, x.clone()))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64())
    }

    /// Coefficients as rationals, if every coefficient lies in ℚ.
    pub fn rational_coeffs(&self) -> Option<Vec<BigRational>> {
        self.coeffs.iter().map(|c| c.as_rational().cloned()).collect()
    }

    /// Euclidean division.
    pub fn div_rem(&self, divisor: &KPoly) -> Result<(KPoly, KPoly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = divisor.coeffs[dd].inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((KPoly::zero(&self.field), self.clone()));
        }
        let mut quot = vec![FieldElement::zero(&self.field); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let t = &rem[i] * &lead_inv;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] = &rem[i - dd + j] - &(&t * d);
            }
            quot[i - dd] = t;
        }
        Ok((KPoly::from_coeffs(self.field.clone(), quot), KPoly::from_coeffs(self.field.clone(), rem)))
    }

    /// Exact division, failing if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &KPoly) -> Result<KPoly> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::InexactDivision(r.to_string()));
        }
        Ok(q)
    }

    pub fn monic(&self) -> Result<KPoly> {
        let lead = self.leading().ok_or(Error::DivisionByZero)?.inv()?;
        Ok(self.scale(&lead))
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &KPoly) -> KPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic().expect("nonzero")
        }
    }

    /// Renders the polynomial in variable `var`, highest power first.
    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, body) = match c.as_rational() {
                Some(q) => (q.is_negative(), q.abs().to_string()),
                None => (false, format!("({c})")),
            };
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let unit = body == "1";
            match i {
                0 => s.push_str(&body),
                _ => {
                    if !unit {
                        s.push_str(&body);
                        s.push('*');
                    }
                    s.push_str(var);
                    if i > 1 {
                        s.push_str(&format!("^{i}"));
                    }
                }
            }
        }
        s
    }
}

impl PartialEq for KPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for KPoly {}

impl std::hash::Hash for KPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for KPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KPoly({})", self.to_string_in("k"))
    }
}

impl fmt::Display for KPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("k"))
    }
}

/// Renders `lead * ∏ (d k + m)` style factored forms, e.g. `6*(2k+1)*(3k+1)*(3k+2)`,
/// with factors ordered by `(d, m)`.
pub fn render_factored(lead: &BigRational, roots: &[(BigRational, usize)]) -> String {
    let mut parts = vec![lead.to_string()];
    let mut ordered: Vec<&(BigRational, usize)> = roots.iter().collect();
    ordered.sort_by(|(a, _), (b, _)| (a.denom(), -a.numer()).cmp(&(b.denom(), -b.numer())));
    for (root, mult) in ordered {
        // factor (k - root) rescaled to integer form (d k + m)
        let d = root.denom().clone();
        let m = -(root.numer().clone());
        let factor = if m.is_zero() {
            "k".to_string()
        } else if d.is_one() {
            format!("(k{}{})", if m.is_positive() { "+" } else { "-" }, m.abs())
        } else {
            format!("({d}k{}{})", if m.is_positive() { "+" } else { "-" }, m.abs())
        };
        for _ in 0..*mult {
            parts.push(factor.clone());
        }
    }
    parts.join("*")
}

/// Leading constant after rewriting `lead ∏(k - r)` as `b0 ∏(d k + m)`.
pub fn integer_factored_lead(lead: &BigRational, roots: &[(BigRational, usize)]) -> BigRational {
    let mut b0 = lead.clone();
    for (root, mult) in roots {
        let d = BigRational::from_integer(root.denom().clone());
        for _ in 0..*mult {
            b0 /= &d;
        }
    }
    b0
}
