//! Real number fields `ℚ(2cos(π/m))` with a designated real embedding.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::minpoly::{minimal_poly_2cos, IntPoly};
use crate::error::{Error, Result};

/// Maximum precision used by [`FieldElement::sign`] before giving up.
pub const MAX_SIGN_BITS: u32 = 4096;

/// Closed interval with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn point(x: BigRational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn midpoint_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    pub fn scale(&self, q: &BigRational) -> Interval {
        let a = &self.lo * q;
        let b = &self.hi * q;
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let cands = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    pub fn magnitude(&self) -> BigRational {
        self.lo.abs().max(self.hi.abs())
    }
}

fn pow2_inv(bits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << bits as usize)
}

/// A real number field `ℚ[c]/(p(c))` where `p` is the minimal polynomial of
/// `c = 2cos(π/m)`, embedded so that `c` is its largest real root.
pub struct FieldSpec {
    generator_name: String,
    bond: u32,
    minimal_polynomial: IntPoly,
    embedding_value: f64,
    // Isolating interval for the designated root; refined on demand.
    root_interval: RwLock<(u32, Interval)>,
    // c^j reduced modulo p, for j in 0..2n-1.
    power_table: Vec<Vec<BigRational>>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("generator", &self.generator_name)
            .field("minimal_polynomial", &self.minimal_polynomial.to_string_in("c"))
            .field("embedding", &self.embedding_value)
            .finish()
    }
}

impl FieldSpec {
    /// The field generated by `2cos(π/m)`. Degree-one cases collapse to ℚ.
    pub fn two_cos(m: u32) -> Arc<FieldSpec> {
        let poly = minimal_poly_2cos(m);
        if poly.degree() == Some(1) {
            return Self::rationals();
        }
        let value = 2.0 * (std::f64::consts::PI / m as f64).cos();
        let spec = Self::build(format!("2cos(pi/{m})"), m, poly, value);
        Arc::new(spec)
    }

    pub fn rationals() -> Arc<FieldSpec> {
        Arc::new(Self::build("Q".into(), 2, IntPoly::new(vec![0, 1]), 0.0))
    }

    fn build(name: String, bond: u32, poly: IntPoly, value: f64) -> FieldSpec {
        let n = poly.degree().unwrap();
        let interval = if n == 1 {
            Interval::point(BigRational::from_integer((-poly.coeff(0)).into()))
        } else {
            let delta = 1e-9;
            let lo = BigRational::from_float(value - delta).unwrap();
            let hi = BigRational::from_float(value + delta).unwrap();
            let (slo, shi) = (eval_int_poly(&poly, &lo).signum(), eval_int_poly(&poly, &hi).signum());
            assert!(slo != shi && !slo.is_zero() && !shi.is_zero(), "root isolation failed");
            Interval { lo, hi }
        };
        let mut power_table = Vec::with_capacity(2 * n);
        let mut cur = vec![BigRational::zero(); n];
        cur[0] = BigRational::one();
        for _ in 0..(2 * n).saturating_sub(1).max(1) {
            power_table.push(cur.clone());
            // multiply by c and reduce
            let top = cur[n - 1].clone();
            let mut next = vec![BigRational::zero(); n];
            for i in (1..n).rev() {
                next[i] = cur[i - 1].clone();
            }
            if !top.is_zero() {
                for i in 0..n {
                    next[i] -= &top * BigRational::from_integer(poly.coeff(i).into());
                }
            }
            cur = next;
        }
        let spec = FieldSpec {
            generator_name: name,
            bond,
            minimal_polynomial: poly,
            embedding_value: value,
            root_interval: RwLock::new((0, interval)),
            power_table,
        };
        spec.root_interval_at(128);
        spec
    }

    pub fn degree(&self) -> usize {
        self.minimal_polynomial.degree().unwrap()
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    pub fn generator_name(&self) -> &str {
        &self.generator_name
    }

    /// The `m` with generator `2cos(π/m)`.
    pub fn bond(&self) -> u32 {
        self.bond
    }

    pub fn minimal_polynomial(&self) -> &IntPoly {
        &self.minimal_polynomial
    }

    pub fn embedding_value(&self) -> f64 {
        self.embedding_value
    }

    pub fn same_field(&self, other: &FieldSpec) -> bool {
        std::ptr::eq(self, other)
            || (self.is_rational() && other.is_rational())
            || self.minimal_polynomial == other.minimal_polynomial
    }

    /// Interval of width at most `2^-bits` around the designated root.
    pub fn root_interval_at(&self, bits: u32) -> Interval {
        {
            let guard = self.root_interval.read().unwrap();
            if guard.0 >= bits || self.is_rational() {
                return guard.1.clone();
            }
        }
        let mut guard = self.root_interval.write().unwrap();
        let target = pow2_inv(bits);
        let mut iv = guard.1.clone();
        let lo_sign = eval_int_poly(&self.minimal_polynomial, &iv.lo).signum();
        while iv.width() > target {
            let mid = iv.midpoint();
            let s = eval_int_poly(&self.minimal_polynomial, &mid).signum();
            if s.is_zero() {
                iv = Interval::point(mid);
                break;
            }
            if s == lo_sign {
                iv.lo = mid;
            } else {
                iv.hi = mid;
            }
        }
        if bits > guard.0 {
            *guard = (bits, iv.clone());
        }
        iv
    }
}

fn eval_int_poly(p: &IntPoly, x: &BigRational) -> BigRational {
    p.coeffs()
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, &c| acc * x + BigRational::from_integer(c.into()))
}

/// The arithmetic operations exposed by [`FieldElement::apply`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Exact element of a [`FieldSpec`], stored as its reduced coordinate vector
/// in the power basis `1, c, ..., c^{n-1}`.
#[derive(Clone)]
pub struct FieldElement {
    spec: Arc<FieldSpec>,
    coords: Vec<BigRational>,
}

impl FieldElement {
    pub fn zero(spec: &Arc<FieldSpec>) -> Self {
        FieldElement { spec: spec.clone(), coords: vec![BigRational::zero(); spec.degree()] }
    }

    pub fn one(spec: &Arc<FieldSpec>) -> Self {
        Self::from_rational(spec, BigRational::one())
    }

    pub fn from_int(spec: &Arc<FieldSpec>, n: i64) -> Self {
        Self::from_rational(spec, BigRational::from_integer(n.into()))
    }

    pub fn from_bigint(spec: &Arc<FieldSpec>, n: BigInt) -> Self {
        Self::from_rational(spec, BigRational::from_integer(n))
    }

    pub fn from_rational(spec: &Arc<FieldSpec>, q: BigRational) -> Self {
        let mut e = Self::zero(spec);
        e.coords[0] = q;
        e
    }

    pub fn from_ratio(spec: &Arc<FieldSpec>, num: i64, den: i64) -> Self {
        Self::from_rational(spec, BigRational::new(num.into(), den.into()))
    }

    /// The generator `c`. In ℚ this is the rational designated value.
    pub fn generator(spec: &Arc<FieldSpec>) -> Self {
        if spec.is_rational() {
            let iv = spec.root_interval_at(0);
            return Self::from_rational(spec, iv.lo);
        }
        let mut e = Self::zero(spec);
        e.coords[1] = BigRational::one();
        e
    }

    /// Builds an element from power-basis coordinates, reducing if needed.
    pub fn from_coords(spec: &Arc<FieldSpec>, coords: Vec<BigRational>) -> Self {
        let n = spec.degree();
        if coords.len() <= n {
            let mut c = coords;
            c.resize(n, BigRational::zero());
            return FieldElement { spec: spec.clone(), coords: c };
        }
        FieldElement { spec: spec.clone(), coords: reduce(spec, coords) }
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in ℚ.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coords[1..].iter().all(Zero::is_zero) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    fn check_same(&self, other: &FieldElement) -> Result<()> {
        if Arc::ptr_eq(&self.spec, &other.spec) || self.spec.same_field(&other.spec) {
            Ok(())
        } else {
            Err(Error::FieldMismatch(
                self.spec.generator_name.clone(),
                other.spec.generator_name.clone(),
            ))
        }
    }

    /// Checked binary arithmetic.
    pub fn apply(&self, other: &FieldElement, op: FieldOp) -> Result<FieldElement> {
        self.check_same(other)?;
        Ok(match op {
            FieldOp::Add => self.add_unchecked(other),
            FieldOp::Sub => self.sub_unchecked(other),
            FieldOp::Mul => self.mul_unchecked(other),
            FieldOp::Div => self.mul_unchecked(&other.inv()?),
        })
    }

    pub fn checked_div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.apply(other, FieldOp::Div)
    }

    fn add_unchecked(&self, other: &FieldElement) -> FieldElement {
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        FieldElement { spec: self.spec.clone(), coords }
    }

    fn sub_unchecked(&self, other: &FieldElement) -> FieldElement {
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect();
        FieldElement { spec: self.spec.clone(), coords }
    }

    fn mul_unchecked(&self, other: &FieldElement) -> FieldElement {
        let n = self.coords.len();
        if n == 1 {
            return FieldElement {
                spec: self.spec.clone(),
                coords: vec![&self.coords[0] * &other.coords[0]],
            };
        }
        let mut prod = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        FieldElement { spec: self.spec.clone(), coords: reduce(&self.spec, prod) }
    }

    /// Multiplication by a rational scalar.
    pub fn scale(&self, q: &BigRational) -> FieldElement {
        FieldElement { spec: self.spec.clone(), coords: self.coords.iter().map(|a| a * q).collect() }
    }

    /// Multiplicative inverse, by solving the multiplication-matrix system.
    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.coords.len();
        if n == 1 {
            return Ok(FieldElement { spec: self.spec.clone(), coords: vec![self.coords[0].recip()] });
        }
        // Column j = self * c^j.
        let mut mat: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); n + 1]; n];
        let mut basis = FieldElement::one(&self.spec);
        let gen = FieldElement::generator(&self.spec);
        for j in 0..n {
            let col = self.mul_unchecked(&basis);
            for i in 0..n {
                mat[i][j] = col.coords[i].clone();
            }
            basis = basis.mul_unchecked(&gen);
        }
        mat[0][n] = BigRational::one();
        let sol = solve_dense(mat).ok_or(Error::DivisionByZero)?;
        Ok(FieldElement { spec: self.spec.clone(), coords: sol })
    }

    pub fn pow(&self, e: u32) -> FieldElement {
        let mut acc = FieldElement::one(&self.spec);
        for _ in 0..e {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Enclosing interval under the designated embedding, of width at most
    /// `2^-bits * max(1, |a|)`.
    pub fn real_embed(&self, bits: u32) -> Interval {
        if let Some(q) = self.as_rational() {
            return Interval::point(q.clone());
        }
        let target_bits = bits.max(53);
        let mut extra = 8u32;
        loop {
            let root = self.spec.root_interval_at(target_bits + extra);
            let iv = self.eval_on(&root);
            let bound = pow2_inv(target_bits) * iv.magnitude().max(BigRational::one());
            if iv.width() <= bound {
                return iv;
            }
            extra += 32;
        }
    }

    fn eval_on(&self, root: &Interval) -> Interval {
        debug_assert!(root.lo.is_positive());
        let mut acc = Interval::point(BigRational::zero());
        let mut power = Interval::point(BigRational::one());
        for (i, q) in self.coords.iter().enumerate() {
            if i > 0 {
                power = Interval { lo: &power.lo * &root.lo, hi: &power.hi * &root.hi };
            }
            if !q.is_zero() {
                acc = acc.add(&power.scale(q));
            }
        }
        acc
    }

    /// Exact sign under the designated embedding.
    pub fn sign(&self) -> Result<Ordering> {
        if self.is_zero() {
            return Ok(Ordering::Equal);
        }
        if let Some(q) = self.as_rational() {
            return Ok(q.cmp(&BigRational::zero()));
        }
        let mut bits = 64;
        while bits <= MAX_SIGN_BITS {
            let iv = self.real_embed(bits);
            if iv.lo.is_positive() {
                return Ok(Ordering::Greater);
            }
            if iv.hi.is_negative() {
                return Ok(Ordering::Less);
            }
            bits *= 2;
        }
        Err(Error::SignUndecided(MAX_SIGN_BITS))
    }

    pub fn is_positive(&self) -> Result<bool> {
        Ok(self.sign()? == Ordering::Greater)
    }

    pub fn to_f64(&self) -> f64 {
        self.real_embed(64).midpoint_f64()
    }
}

fn reduce(spec: &FieldSpec, prod: Vec<BigRational>) -> Vec<BigRational> {
    let n = spec.degree();
    let mut out: Vec<BigRational> = prod.iter().take(n).cloned().collect();
    out.resize(n, BigRational::zero());
    for (j, q) in prod.iter().enumerate().skip(n) {
        if q.is_zero() {
            continue;
        }
        for (i, t) in spec.power_table[j].iter().enumerate() {
            if !t.is_zero() {
                out[i] += q * t;
            }
        }
    }
    out
}

/// Gauss-Jordan on an augmented `n x (n+1)` rational matrix.
fn solve_dense(mut m: Vec<Vec<BigRational>>) -> Option<Vec<BigRational>> {
    let n = m.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=n {
                    let t = &m[col][c] * &f;
                    m[r][c] -= t;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q}");
        }
        let mut first = true;
        for (i, q) in self.coords.iter().enumerate().rev() {
            if q.is_zero() {
                continue;
            }
            if !first {
                f.write_str(if q.is_negative() { " - " } else { " + " })?;
            } else if q.is_negative() {
                f.write_str("-")?;
            }
            first = false;
            let mag = q.abs();
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    f.write_str("c")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $op:expr) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.apply(rhs, $op).expect("field arithmetic")
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, FieldOp::Add);
forward_binop!(Sub, sub, FieldOp::Sub);
forward_binop!(Mul, mul, FieldOp::Mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { spec: self.spec.clone(), coords: self.coords.iter().map(|a| -a).collect() }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// `2cos(π/m)` expressed in `spec`, which must be generated by `2cos(π/m*)`
/// with `m | m*` (or `m ∈ {2, 3}`, where the value is rational).
pub fn two_cos_in(spec: &Arc<FieldSpec>, m: u32) -> Result<FieldElement> {
    match m {
        2 => return Ok(FieldElement::zero(spec)),
        3 => return Ok(FieldElement::one(spec)),
        _ => {}
    }
    let top = spec.bond();
    if spec.is_rational() || top % m != 0 {
        return Err(Error::UnsupportedDiagram(format!(
            "2cos(pi/{m}) is not in the field {}",
            spec.generator_name()
        )));
    }
    // 2cos(tθ) = V_t(2cosθ) with V_0 = 2, V_1 = c, V_{n+1} = c V_n - V_{n-1}.
    let t = top / m;
    let c = FieldElement::generator(spec);
    let mut prev = FieldElement::from_int(spec, 2);
    let mut cur = c.clone();
    for _ in 1..t {
        let next = &(&c * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}
