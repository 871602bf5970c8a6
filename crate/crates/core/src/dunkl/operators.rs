use std::sync::Arc;

use num_rational::BigRational;
use rand::Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::polynomials::{Monomial, MultiPoly, PolyRing};
use crate::scalars::{FieldElement, KPoly};

/// A direction `a = Σ a_l ω_l` in the dual basis, with the pairings `(α, a)`
/// against every positive root.
#[derive(Clone, Debug)]
pub struct DunklDirection {
    coords: Vec<FieldElement>,
    pairings: Vec<FieldElement>,
}

impl DunklDirection {
    pub fn new(ring: &PolyRing, coords: Vec<FieldElement>) -> Self {
        assert_eq!(coords.len(), ring.rank());
        let pairings = (0..ring.num_roots())
            .map(|i| {
                ring.root_form(i)
                    .coeffs
                    .iter()
                    .zip(&coords)
                    .fold(FieldElement::zero(ring.field()), |acc, (c, a)| &acc + &(c * a))
            })
            .collect();
        DunklDirection { coords, pairings }
    }

    /// The dual-basis vector `ω_i`.
    pub fn omega(ring: &PolyRing, i: usize) -> Self {
        let mut coords = vec![FieldElement::zero(ring.field()); ring.rank()];
        coords[i] = FieldElement::one(ring.field());
        Self::new(ring, coords)
    }

    /// The positive root with index `idx`, written in the dual basis.
    pub fn root(ring: &PolyRing, idx: usize) -> Self {
        let c = &ring.root_form(idx).coeffs;
        let g = ring.gram();
        let coords = (0..ring.rank())
            .map(|l| (0..ring.rank()).fold(FieldElement::zero(ring.field()), |acc, j| &acc + &(&c[j] * g.get(j, l))))
            .collect();
        Self::new(ring, coords)
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    /// `(α, a)` for the positive root with index `idx`.
    pub fn pairing(&self, idx: usize) -> &FieldElement {
        &self.pairings[idx]
    }
}

/// All divided differences `(f - s_α f)/(α, x)`, one per positive root.
fn divided_differences(f: &MultiPoly) -> Result<Vec<MultiPoly>> {
    (0..f.ring().num_roots()).into_par_iter().map(|i| f.divided_difference(i)).collect()
}

fn combine(a: &DunklDirection, f: &MultiPoly, dds: &[MultiPoly]) -> MultiPoly {
    let mut reflection_part = MultiPoly::zero(f.ring());
    for (i, dd) in dds.iter().enumerate() {
        let p = a.pairing(i);
        if !p.is_zero() && !dd.is_zero() {
            reflection_part = reflection_part.add(&dd.scale(p));
        }
    }
    f.directional_derivative(a.coords()).add(&reflection_part.mul_k())
}

/// `T_a f = ∂_a f + k Σ_α (α, a) (f - s_α f)/(α, x)`.
pub fn dunkl_apply(a: &DunklDirection, f: &MultiPoly) -> Result<MultiPoly> {
    Ok(combine(a, f, &divided_differences(f)?))
}

/// `T_a f` for several directions, sharing the divided differences.
pub fn dunkl_apply_many(dirs: &[DunklDirection], f: &MultiPoly) -> Result<Vec<MultiPoly>> {
    let dds = divided_differences(f)?;
    Ok(dirs.iter().map(|a| combine(a, f, &dds)).collect())
}

/// `Σ_i T_{e_i}² f` over an orthonormal frame, computed as
/// `Σ_j T_{ω_j} y_{α_j} f`.
pub fn dunkl_laplacian(f: &MultiPoly) -> Result<MultiPoly> {
    let ring = f.ring().clone();
    let simple: Vec<DunklDirection> = (0..ring.rank()).map(|j| DunklDirection::root(&ring, j)).collect();
    let ys = dunkl_apply_many(&simple, f)?;
    let mut out = MultiPoly::zero(&ring);
    for (j, y) in ys.iter().enumerate() {
        out = out.add(&dunkl_apply(&DunklDirection::omega(&ring, j), y)?);
    }
    Ok(out)
}

/// `exp(L/2) f = Σ_n (L/2)^n f / n!`, a finite sum since `L` lowers degree by 2.
pub fn exp_half_laplacian(f: &MultiPoly) -> Result<MultiPoly> {
    let mut out = f.clone();
    let mut term = f.clone();
    let mut n = 0i64;
    while !term.is_zero() {
        n += 1;
        term = dunkl_laplacian(&term)?.scale_rational(&BigRational::new(1.into(), (2 * n).into()));
        out = out.add(&term);
    }
    Ok(out)
}

/// `Σ_d d f_d`, the Euler operator.
fn euler(f: &MultiPoly) -> MultiPoly {
    let mut out = MultiPoly::zero(f.ring());
    for (m, c) in f.terms() {
        let d = BigRational::from_integer((m.degree() as i64).into());
        out = out.add(&MultiPoly::monomial(f.ring(), m.clone(), c.scale_rational(&d)));
    }
    out
}

/// Outcome of the three algebra relations on one polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RelationOutcome {
    pub commutativity: bool,
    pub heisenberg: bool,
    pub euler: bool,
}

impl RelationOutcome {
    pub fn all(&self) -> bool {
        self.commutativity && self.heisenberg && self.euler
    }
}

/// Checks, for all dual-basis directions `a = ω_i` and `b = α_j`:
/// `T_a T_b f = T_b T_a f`, the deformed Heisenberg relation
/// `[T_a, x_b] f = (a,b) f + k Σ_α (α,a)(α,b) s_α f`, and the deformed Euler
/// identity `Σ_j u_j T_{ω_j} f = deg(f) f + k Σ_α (f - s_α f)`.
pub fn check_relations(f: &MultiPoly) -> Result<RelationOutcome> {
    let ring = f.ring().clone();
    let r = ring.rank();
    let omegas: Vec<DunklDirection> = (0..r).map(|i| DunklDirection::omega(&ring, i)).collect();
    let tf = dunkl_apply_many(&omegas, f)?;

    let mut commutativity = true;
    let ttf: Vec<Vec<MultiPoly>> = tf.iter().map(|t| dunkl_apply_many(&omegas, t)).collect::<Result<_>>()?;
    for i in 0..r {
        for j in i + 1..r {
            commutativity &= ttf[i][j] == ttf[j][i];
        }
    }

    let reflected: Vec<MultiPoly> = (0..ring.num_roots()).map(|a| f.apply_reflection(a)).collect();
    let mut heisenberg = true;
    for j in 0..r {
        let xf = f.mul(&MultiPoly::var(&ring, j));
        let txf = dunkl_apply_many(&omegas, &xf)?;
        for i in 0..r {
            let lhs = txf[i].sub(&tf[i].mul(&MultiPoly::var(&ring, j)));
            let mut sum = MultiPoly::zero(&ring);
            for (a, sf) in reflected.iter().enumerate() {
                let w = &ring.root_form(a).coeffs[i] * &ring.reflection_direction(a)[j];
                if !w.is_zero() {
                    sum = sum.add(&sf.scale(&w));
                }
            }
            let mut rhs = sum.mul_k();
            if i == j {
                rhs = rhs.add(f);
            }
            heisenberg &= lhs == rhs;
        }
    }

    let mut lhs = MultiPoly::zero(&ring);
    for (j, t) in tf.iter().enumerate() {
        lhs = lhs.add(&t.mul(&MultiPoly::var(&ring, j)));
    }
    let mut defect = MultiPoly::zero(&ring);
    for sf in &reflected {
        defect = defect.add(&f.sub(sf));
    }
    let euler_ok = lhs == euler(f).add(&defect.mul_k());

    Ok(RelationOutcome { commutativity, heisenberg, euler: euler_ok })
}

/// Aggregated relation checks over random polynomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationReport {
    pub trials: usize,
    pub commutativity_failures: usize,
    pub heisenberg_failures: usize,
    pub euler_failures: usize,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.commutativity_failures + self.heisenberg_failures + self.euler_failures == 0
    }
}

/// A random polynomial with small integer coefficients and total degree at
/// most `degree_cap`; homogeneous of degree exactly `degree_cap` if requested.
pub fn random_poly<R: Rng>(ring: &Arc<PolyRing>, degree_cap: usize, homogeneous: bool, rng: &mut R) -> MultiPoly {
    let r = ring.rank();
    let n_terms = rng.random_range(1..=5);
    let mut f = MultiPoly::zero(ring);
    for _ in 0..n_terms {
        let d = if homogeneous { degree_cap } else { rng.random_range(0..=degree_cap) };
        let mut e = vec![0u16; r];
        for _ in 0..d {
            e[rng.random_range(0..r)] += 1;
        }
        let c = rng.random_range(-4i64..=4);
        if c != 0 {
            let coeff = KPoly::constant(FieldElement::from_int(ring.field(), c));
            f = f.add(&MultiPoly::monomial(ring, Monomial::new(e), coeff));
        }
    }
    f
}

/// Runs [`check_relations`] on `trials` random polynomials of degree at most
/// `degree_cap`, drawn deterministically from `seed`.
pub fn verify_algebra_relations(ring: &Arc<PolyRing>, degree_cap: usize, trials: usize, seed: u64) -> Result<RelationReport> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let polys: Vec<MultiPoly> = (0..trials).map(|_| random_poly(ring, degree_cap, false, &mut rng)).collect();
    let outcomes: Vec<RelationOutcome> = polys.par_iter().map(check_relations).collect::<Result<_>>()?;
    let mut rep = RelationReport { trials, ..Default::default() };
    for o in outcomes {
        rep.commutativity_failures += usize::from(!o.commutativity);
        rep.heisenberg_failures += usize::from(!o.heisenberg);
        rep.euler_failures += usize::from(!o.euler);
    }
    Ok(rep)
}
