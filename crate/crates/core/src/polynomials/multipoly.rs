use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Signed;

use crate::coxeter::{FieldMatrix, RootSystem};
use crate::error::{Error, Result};
use crate::scalars::{FieldElement, FieldSpec, KPoly};

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn one(rank: usize) -> Self {
        Monomial(vec![0; rank])
    }

    pub fn new(exps: Vec<u16>) -> Self {
        Monomial(exps)
    }

    pub fn exps(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    fn bumped(&self, i: usize, delta: i32) -> Monomial {
        let mut e = self.0.clone();
        e[i] = (e[i] as i32 + delta) as u16;
        Monomial(e)
    }

    fn product(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A linear functional `(α, x) = Σ c_j u_j` on the reflection representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    pub coeffs: Vec<FieldElement>,
}

/// Shared context for polynomials on the reflection representation of one
/// root system: coordinates `u_j = (α_j, x)` and the positive roots.
#[derive(Debug)]
pub struct PolyRing {
    label: String,
    field: Arc<FieldSpec>,
    gram: FieldMatrix,
    root_forms: Vec<LinearForm>,
    // (α_j, α) for each root α: the direction of u ↦ u - (α,x)·g in s_α.
    reflection_dirs: Vec<Vec<FieldElement>>,
}

impl PolyRing {
    pub fn new(rs: &RootSystem) -> Arc<PolyRing> {
        let root_forms =
            rs.positive_roots().iter().map(|a| LinearForm { coeffs: a.clone() }).collect();
        let reflection_dirs = (0..rs.num_reflections()).map(|i| rs.simple_pairings(i)).collect();
        Arc::new(PolyRing {
            label: rs.diagram().type_label().to_string(),
            field: rs.field().clone(),
            gram: rs.gram().clone(),
            root_forms,
            reflection_dirs,
        })
    }

    pub fn rank(&self) -> usize {
        self.gram.dim()
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn gram(&self) -> &FieldMatrix {
        &self.gram
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn num_roots(&self) -> usize {
        self.root_forms.len()
    }

    /// The linear form `(α, x)` of a positive root.
    pub fn root_form(&self, idx: usize) -> &LinearForm {
        &self.root_forms[idx]
    }

    /// `(α_j, α)` for every simple root `α_j`.
    pub fn reflection_direction(&self, idx: usize) -> &[FieldElement] {
        &self.reflection_dirs[idx]
    }
}

/// The operations exposed by [`MultiPoly::combine`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// Sparse polynomial in `u_1..u_r` with coefficients in `K[k]`.
#[derive(Clone)]
pub struct MultiPoly {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Monomial, KPoly>,
}

impl MultiPoly {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        MultiPoly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: KPoly) -> Self {
        let mut p = Self::zero(ring);
        p.add_term(Monomial::one(ring.rank()), c);
        p
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, KPoly::one(ring.field()))
    }

    /// The coordinate `u_i`.
    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        let mut e = vec![0; ring.rank()];
        e[i] = 1;
        Self::monomial(ring, Monomial(e), KPoly::one(ring.field()))
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: KPoly) -> Self {
        assert_eq!(m.0.len(), ring.rank());
        let mut p = Self::zero(ring);
        p.add_term(m, c);
        p
    }

    pub fn from_linear(ring: &Arc<PolyRing>, coeffs: &[FieldElement]) -> Self {
        let mut p = Self::zero(ring);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; ring.rank()];
                e[i] = 1;
                p.add_term(Monomial(e), KPoly::constant(c.clone()));
            }
        }
        p
    }

    /// Builds a polynomial from integer-coefficient terms.
    pub fn from_int_terms(ring: &Arc<PolyRing>, terms: &[(Vec<u16>, i64)]) -> Self {
        let mut p = Self::zero(ring);
        for (e, c) in terms {
            p.add_term(Monomial::new(e.clone()), KPoly::constant(FieldElement::from_int(ring.field(), *c)));
        }
        p
    }

    /// The linear form `(α, x)` of a positive root.
    pub fn root_form(ring: &Arc<PolyRing>, idx: usize) -> Self {
        Self::from_linear(ring, &ring.root_form(idx).coeffs.clone())
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &KPoly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> KPoly {
        self.terms.get(m).cloned().unwrap_or_else(|| KPoly::zero(self.ring.field()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Monomial, c: KPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                existing.add_assign(&c);
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// The common degree of all terms, if the polynomial is homogeneous.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let d = self.degree()?;
        self.terms.keys().all(|m| m.degree() == d).then_some(d)
    }

    /// Largest power of `k` among the coefficients.
    pub fn k_degree(&self) -> Option<usize> {
        self.terms.values().filter_map(KPoly::degree).max()
    }

    /// Value at the origin (the constant term).
    pub fn eval_zero(&self) -> KPoly {
        self.coeff(&Monomial::one(self.ring.rank()))
    }

    /// Homogeneous component of degree `d`.
    pub fn component(&self, d: usize) -> MultiPoly {
        let terms = self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect();
        MultiPoly { ring: self.ring.clone(), terms }
    }

    fn check_ring(&self, other: &MultiPoly) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Ring-checked arithmetic.
    pub fn combine(&self, other: &MultiPoly, op: PolyOp) -> Result<MultiPoly> {
        self.check_ring(other)?;
        Ok(match op {
            PolyOp::Add => {
                let mut out = self.clone();
                for (m, c) in &other.terms {
                    out.add_term(m.clone(), c.clone());
                }
                out
            }
            PolyOp::Sub => {
                let mut out = self.clone();
                for (m, c) in &other.terms {
                    out.add_term(m.clone(), c.neg());
                }
                out
            }
            PolyOp::Mul => {
                let mut out = MultiPoly::zero(&self.ring);
                for (m1, c1) in &self.terms {
                    for (m2, c2) in &other.terms {
                        out.add_term(m1.product(m2), c1.mul(c2));
                    }
                }
                out
            }
        })
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.combine(other, PolyOp::Add).expect("ring mismatch")
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.combine(other, PolyOp::Sub).expect("ring mismatch")
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.combine(other, PolyOp::Mul).expect("ring mismatch")
    }

    pub fn neg(&self) -> MultiPoly {
        self.map_coeffs(|c| c.neg())
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    fn map_coeffs(&self, f: impl Fn(&KPoly) -> KPoly) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let v = f(c);
                (!v.is_zero()).then(|| (m.clone(), v))
            })
            .collect();
        MultiPoly { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, s: &FieldElement) -> MultiPoly {
        if s.is_zero() {
            return MultiPoly::zero(&self.ring);
        }
        self.map_coeffs(|c| c.scale(s))
    }

    pub fn scale_rational(&self, q: &BigRational) -> MultiPoly {
        self.map_coeffs(|c| c.scale_rational(q))
    }

    pub fn scale_kpoly(&self, p: &KPoly) -> MultiPoly {
        self.map_coeffs(|c| c.mul(p))
    }

    /// Multiplication by the parameter `k`.
    pub fn mul_k(&self) -> MultiPoly {
        self.map_coeffs(KPoly::shift)
    }

    /// Multiplication by the linear form `Σ c_j u_j`.
    pub fn mul_linear(&self, coeffs: &[FieldElement]) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.ring);
        for (j, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (m, v) in &self.terms {
                out.add_term(m.bumped(j, 1), v.scale(c));
            }
        }
        out
    }

    /// `∂/∂u_i`, which is the derivative along the dual-basis vector `ω_i`.
    pub fn partial(&self, i: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e > 0 {
                out.add_term(m.bumped(i, -1), c.scale_rational(&BigRational::from_integer(e.into())));
            }
        }
        out
    }

    /// Derivative along `Σ v_i ω_i`, i.e. `Σ v_i ∂/∂u_i`.
    pub fn directional_derivative(&self, v: &[FieldElement]) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            for (i, vi) in v.iter().enumerate() {
                let e = m.0[i];
                if e == 0 || vi.is_zero() {
                    continue;
                }
                let s = vi.scale(&BigRational::from_integer(e.into()));
                out.add_term(m.bumped(i, -1), c.scale(&s));
            }
        }
        out
    }

    /// `f ∘ s_α` for the positive root with index `idx`.
    ///
    /// Under `s_α` the coordinates move as `u ↦ u - (α,x) g` with
    /// `g_j = (α_j, α)`, so `s_α f = Σ_n (-(α,x))^n D_g^n f / n!`, evaluated
    /// in Horner form.
    pub fn apply_reflection(&self, idx: usize) -> MultiPoly {
        let Some(d) = self.degree() else {
            return self.clone();
        };
        let ring = self.ring.clone();
        let dir = ring.reflection_direction(idx);
        let form = &ring.root_form(idx).coeffs;
        let mut derivs = Vec::with_capacity(d + 1);
        derivs.push(self.clone());
        for n in 1..=d {
            let next = derivs[n - 1].directional_derivative(dir);
            derivs.push(next);
        }
        let mut acc = derivs[d].clone();
        for n in (0..d).rev() {
            let inv = BigRational::new(1.into(), ((n + 1) as i64).into());
            acc = derivs[n].sub(&acc.mul_linear(form).scale_rational(&inv));
        }
        acc
    }

    /// Exact division by the linear form `Σ c_j u_j`, certified by a zero
    /// remainder.
    pub fn div_linear(&self, coeffs: &[FieldElement]) -> Result<MultiPoly> {
        let pivot = coeffs
            .iter()
            .rposition(|c| !c.is_zero())
            .ok_or(Error::DivisionByZero)?;
        let pivot_inv = coeffs[pivot].inv()?;
        let top = self.terms.keys().map(|m| m.0[pivot] as usize).max().unwrap_or(0);
        let mut buckets: Vec<BTreeMap<Monomial, KPoly>> = vec![BTreeMap::new(); top + 1];
        for (m, c) in &self.terms {
            buckets[m.0[pivot] as usize].insert(m.clone(), c.clone());
        }
        let mut quotient = MultiPoly::zero(&self.ring);
        for t in (1..=top).rev() {
            let bucket = std::mem::take(&mut buckets[t]);
            for (m, c) in bucket {
                if c.is_zero() {
                    continue;
                }
                let qc = c.scale(&pivot_inv);
                let qm = m.bumped(pivot, -1);
                for (l, cl) in coeffs.iter().enumerate() {
                    if l == pivot || cl.is_zero() {
                        continue;
                    }
                    let target = qm.bumped(l, 1);
                    let sub = qc.scale(cl).neg();
                    let slot = buckets[t - 1].entry(target).or_insert_with(|| KPoly::zero(self.ring.field()));
                    slot.add_assign(&sub);
                }
                quotient.add_term(qm, qc);
            }
        }
        let rest: Vec<_> = buckets[0].iter().filter(|(_, c)| !c.is_zero()).collect();
        if !rest.is_empty() {
            let (m, c) = rest[0];
            return Err(Error::InexactDivision(format!("{} terms left, e.g. ({c}) * {:?}", rest.len(), m.0)));
        }
        Ok(quotient)
    }

    /// `(f - s_α f) / (α, x)`.
    pub fn divided_difference(&self, idx: usize) -> Result<MultiPoly> {
        let diff = self.sub(&self.apply_reflection(idx));
        let form = self.ring.root_form(idx).coeffs.clone();
        diff.div_linear(&form)
    }

    /// Coefficients evaluated at a real `k`, for floating-point evaluation.
    pub fn to_float(&self, k: f64) -> FloatPoly {
        FloatPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.0.iter().map(|&e| e as i32).collect(), c.eval_f64(k)))
                .collect(),
        }
    }

    /// Coefficients evaluated at a rational `k`.
    pub fn eval_k(&self, k: &BigRational) -> MultiPoly {
        self.map_coeffs(|c| KPoly::constant(c.eval_rational(k)))
    }

    pub fn to_string_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            let (neg, body) = match c.degree() {
                Some(0) => match c.coeff(0).as_rational() {
                    Some(q) => (q.is_negative(), q.abs().to_string()),
                    None => (false, format!("({})", c.coeff(0))),
                },
                _ => (false, format!("({c})")),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("{var}{}", i + 1) } else { format!("{var}{}^{e}", i + 1) })
                .collect();
            if vars.is_empty() {
                out.push_str(&body);
            } else {
                if body != "1" {
                    out.push_str(&body);
                    out.push('*');
                }
                out.push_str(&vars.join("*"));
            }
        }
        out
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.ring.label, self.to_string_with("u"))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with("u"))
    }
}

/// A polynomial with real coefficients, for evaluation inside samplers.
#[derive(Clone, Debug)]
pub struct FloatPoly {
    terms: Vec<(Vec<i32>, f64)>,
}

impl FloatPoly {
    pub fn eval(&self, u: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| e.iter().zip(u).fold(*c, |acc, (&p, &x)| acc * x.powi(p)))
            .sum()
    }
}

/// `Δ = ∏_{α ∈ S} (α, x)`.
pub fn build_discriminant(ring: &Arc<PolyRing>) -> MultiPoly {
    (0..ring.num_roots()).fold(MultiPoly::one(ring), |acc, i| acc.mul(&MultiPoly::root_form(ring, i)))
}
