use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::operators::{dunkl_apply, exp_half_laplacian, DunklDirection};
use crate::coxeter::{DegreeData, FieldMatrix};
use crate::error::{Error, Result};
use crate::polynomials::{build_discriminant, Monomial, MultiPoly, PolyRing};
use crate::scalars::{integer_factored_lead, rational_roots, render_factored, FieldElement, FieldSpec, KPoly};

/// Value of `β_k` or `γ_k`: a polynomial in `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearValue {
    pub value: KPoly,
}

impl BilinearValue {
    pub fn eval_rational(&self, k: &BigRational) -> FieldElement {
        self.value.eval_rational(k)
    }

    pub fn eval_f64(&self, k: f64) -> f64 {
        self.value.eval_f64(k)
    }
}

impl fmt::Display for BilinearValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

/// `β_k(f, g) = [f(y) g](0)`, where `x_{α_j} = u_j` is replaced by the Dunkl
/// operator `y_{α_j}`.
pub fn beta_form(f: &MultiPoly, g: &MultiPoly) -> Result<BilinearValue> {
    if !Arc::ptr_eq(f.ring(), g.ring()) {
        return Err(Error::RingMismatch);
    }
    let ring = f.ring().clone();
    let ys: Vec<DunklDirection> = (0..ring.rank()).map(|j| DunklDirection::root(&ring, j)).collect();
    let mut by_degree: HashMap<usize, Vec<(&Monomial, &KPoly)>> = HashMap::new();
    for (m, c) in f.terms() {
        by_degree.entry(m.degree()).or_default().push((m, c));
    }
    let mut degrees: Vec<usize> = by_degree.keys().copied().collect();
    degrees.sort_unstable();
    let mut total = KPoly::zero(ring.field());
    for d in degrees {
        let base = g.component(d);
        if base.is_zero() {
            continue;
        }
        // y^m g_d, built up one Dunkl operator at a time and shared across monomials.
        let mut memo: HashMap<Monomial, MultiPoly> = HashMap::new();
        memo.insert(Monomial::one(ring.rank()), base);
        for (m, c) in &by_degree[&d] {
            let v = apply_monomial(m, &ys, &mut memo)?;
            total = total.add(&c.mul(&v.eval_zero()));
        }
    }
    Ok(BilinearValue { value: total })
}

fn apply_monomial(m: &Monomial, ys: &[DunklDirection], memo: &mut HashMap<Monomial, MultiPoly>) -> Result<MultiPoly> {
    if let Some(v) = memo.get(m) {
        return Ok(v.clone());
    }
    let j = m.exps().iter().rposition(|&e| e > 0).expect("constant monomial is memoised");
    let mut prev = m.exps().to_vec();
    prev[j] -= 1;
    let inner = apply_monomial(&Monomial::new(prev), ys, memo)?;
    let v = dunkl_apply(&ys[j], &inner)?;
    memo.insert(m.clone(), v.clone());
    Ok(v)
}

/// `γ_k(f, g) = β_k(exp(L/2) f, exp(L/2) g)`.
pub fn gamma_form(f: &MultiPoly, g: &MultiPoly) -> Result<BilinearValue> {
    beta_form(&exp_half_laplacian(f)?, &exp_half_laplacian(g)?)
}

/// All monomials of total degree `d`, in increasing graded-lex order.
pub fn monomial_basis(ring: &Arc<PolyRing>, d: usize) -> Vec<MultiPoly> {
    fn rec(pos: usize, left: usize, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if pos + 1 == cur.len() {
            cur[pos] = left as u16;
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[pos] = e as u16;
            rec(pos + 1, left - e, cur, out);
        }
    }
    let mut exps = Vec::new();
    rec(0, d, &mut vec![0; ring.rank()], &mut exps);
    exps.sort_by_key(|e| Monomial::new(e.clone()));
    exps.into_iter().map(|e| MultiPoly::monomial(ring, Monomial::new(e), KPoly::one(ring.field()))).collect()
}

/// Gram matrix of `β_k` at a rational `k` on the degree-`d` monomial basis.
pub fn beta_gram_matrix(ring: &Arc<PolyRing>, d: usize, k: &BigRational) -> Result<FieldMatrix> {
    let basis = monomial_basis(ring, d);
    let mut rows = Vec::with_capacity(basis.len());
    for f in &basis {
        let row = basis.iter().map(|g| Ok(beta_form(f, g)?.eval_rational(k))).collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(FieldMatrix::from_rows(rows))
}

/// Whether all leading principal minors are positive, via pivots of
/// elimination without row exchanges.
pub fn leading_minors_positive(m: &FieldMatrix) -> Result<bool> {
    let n = m.dim();
    let mut a: Vec<Vec<FieldElement>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    for p in 0..n {
        if !a[p][p].is_positive()? {
            return Ok(false);
        }
        let inv = a[p][p].inv()?;
        for i in p + 1..n {
            let factor = &a[i][p] * &inv;
            for j in p..n {
                let t = &factor * &a[p][j];
                a[i][j] = &a[i][j] - &t;
            }
        }
    }
    Ok(true)
}

/// `b(k) = β_k(Δ, Δ)`, computed as `(∏_α y_α) Δ` evaluated at 0.
pub fn discriminant_norm(ring: &Arc<PolyRing>) -> Result<KPoly> {
    let mut v = build_discriminant(ring);
    for idx in 0..ring.num_roots() {
        v = dunkl_apply(&DunklDirection::root(ring, idx), &v)?;
    }
    Ok(v.eval_zero())
}

/// `|W| ∏_i ∏_{m=1}^{d_i-1} (k d_i + m)`.
pub fn closed_form_b(field: &Arc<FieldSpec>, dd: &DegreeData) -> KPoly {
    let mut out = KPoly::constant(FieldElement::from_bigint(field, BigInt::from(dd.order)));
    for &d in &dd.degrees {
        for m in 1..d {
            out = out.mul(&KPoly::linear(field, d as i64, m as i64));
        }
    }
    out
}

/// The roots `-m/d_i` with multiplicities, sorted ascending.
pub fn expected_b_roots(dd: &DegreeData) -> Vec<(BigRational, usize)> {
    let mut counts: HashMap<BigRational, usize> = HashMap::new();
    for &d in &dd.degrees {
        for m in 1..d {
            *counts.entry(BigRational::new(-BigInt::from(m), BigInt::from(d))).or_default() += 1;
        }
    }
    let mut out: Vec<_> = counts.into_iter().collect();
    out.sort();
    out
}

/// `b(k) = b_0 ∏ (k - k_i)^{n_i}` over the rationals, with `b_0` the monic
/// leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BFactorization {
    pub leading: BigRational,
    pub roots: Vec<(BigRational, usize)>,
}

impl BFactorization {
    /// Factors a polynomial with rational coefficients into linear factors.
    pub fn of(p: &KPoly) -> Result<Self> {
        let coeffs = p
            .rational_coeffs()
            .ok_or_else(|| Error::Factorization("b(k) has irrational coefficients".into()))?;
        let leading = coeffs.last().cloned().ok_or(Error::DivisionByZero)?;
        let roots = rational_roots(&coeffs);
        let fac = BFactorization { leading, roots };
        if fac.expand(p.field()) != *p {
            return Err(Error::Factorization(format!("{p} does not split into rational linear factors")));
        }
        Ok(fac)
    }

    pub fn expand(&self, field: &Arc<FieldSpec>) -> KPoly {
        let mut out = KPoly::constant(FieldElement::from_rational(field, self.leading.clone()));
        for (r, n) in &self.roots {
            let factor = KPoly::from_rationals(field, &[-r.clone(), BigRational::one()]);
            out = out.mul(&factor.pow(*n as u32));
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.roots.iter().map(|(_, n)| n).sum()
    }

    pub fn all_roots_negative(&self) -> bool {
        self.roots.iter().all(|(r, _)| r.is_negative())
    }

    /// Leading constant in the `b_0 ∏ (d k + m)` normalisation.
    pub fn integer_lead(&self) -> BigRational {
        integer_factored_lead(&self.leading, &self.roots)
    }

    /// E.g. `6*(2k+1)*(3k+1)*(3k+2)`.
    pub fn render(&self) -> String {
        render_factored(&self.integer_lead(), &self.roots)
    }
}

/// Computed `b(k)` next to the closed form and its factorization.
#[derive(Clone, Debug)]
pub struct BPoly {
    pub computed: KPoly,
    pub closed_form: KPoly,
    pub factorization: BFactorization,
    /// The expected roots, as found by the factorization.
    pub roots_match: bool,
    /// Dividing out every `(d_i k + m)` leaves the constant `|W|`.
    pub division_certified: bool,
}

impl BPoly {
    pub fn holds(&self) -> bool {
        self.computed == self.closed_form
            && self.roots_match
            && self.division_certified
            && self.factorization.all_roots_negative()
    }
}

/// Largest `|S|` for which [`b_poly`] runs without an explicit opt-in.
pub const B_POLY_MAX_REFLECTIONS: usize = 15;

/// Computes `b(k)` and compares it with the closed form.
pub fn b_poly(ring: &Arc<PolyRing>, dd: &DegreeData) -> Result<BPoly> {
    b_poly_with_budget(ring, dd, B_POLY_MAX_REFLECTIONS)
}

pub fn b_poly_with_budget(ring: &Arc<PolyRing>, dd: &DegreeData, max_reflections: usize) -> Result<BPoly> {
    if ring.num_roots() > max_reflections {
        return Err(Error::BudgetExceeded { what: "discriminant degree".into(), limit: max_reflections });
    }
    let computed = discriminant_norm(ring)?;
    let closed_form = closed_form_b(ring.field(), dd);
    let factorization = BFactorization::of(&computed)?;
    let roots_match = factorization.roots == expected_b_roots(dd);
    let mut rest = computed.clone();
    let mut division_certified = true;
    for &d in &dd.degrees {
        for m in 1..d {
            match rest.div_exact(&KPoly::linear(ring.field(), d as i64, m as i64)) {
                Ok(q) => rest = q,
                Err(_) => division_certified = false,
            }
        }
    }
    let order = KPoly::constant(FieldElement::from_bigint(ring.field(), BigInt::from(dd.order)));
    division_certified &= rest == order;
    Ok(BPoly { computed, closed_form, factorization, roots_match, division_certified })
}
