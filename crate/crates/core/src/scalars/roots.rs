//! Exact rational roots of polynomials with rational coefficients.
//!
//! Squarefree decomposition (Yun), Sturm isolation of every real root, and
//! recovery of rational roots as the simplest fraction in a small enough
//! isolating interval. Every reported root is confirmed by exact evaluation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{FieldElement, FieldSpec};
use super::kpoly::KPoly;

/// Rational roots with multiplicities, sorted ascending.
///
/// Irrational and complex roots are ignored. Panics on the zero polynomial.
pub fn rational_roots(coeffs: &[BigRational]) -> Vec<(BigRational, usize)> {
    let q = FieldSpec::rationals();
    let p = KPoly::from_rationals(&q, coeffs);
    assert!(!p.is_zero(), "zero polynomial has no finite root set");
    let mut out = Vec::new();
    for (mult, factor) in squarefree_decomposition(&p) {
        for root in squarefree_rational_roots(&factor) {
            out.push((root, mult));
        }
    }
    out.sort();
    out
}

/// Yun's algorithm: returns `(i, a_i)` with `p = c ∏ a_i^i`, each `a_i` monic
/// squarefree and of positive degree.
pub fn squarefree_decomposition(p: &KPoly) -> Vec<(usize, KPoly)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.div_exact(&a0).unwrap();
    let mut c = dp.div_exact(&a0).unwrap();
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((i, a.clone()));
        }
        b = b.div_exact(&a).unwrap();
        c = d.div_exact(&a).unwrap();
        d = c.sub(&b.derivative());
        i += 1;
    }
    out
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn sign_at(p: &KPoly, x: &BigRational) -> i8 {
    let v = p.eval_rational(x);
    let q = v.as_rational().expect("rational polynomial");
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

fn sturm_chain(p: &KPoly) -> Vec<KPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]).unwrap();
        if r.is_zero() {
            break;
        }
        chain.push(r.neg());
    }
    chain
}

fn variations(chain: &[KPoly], x: &BigRational) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for s in chain {
        let v = sign_at(s, x);
        if v == 0 {
            continue;
        }
        if last != 0 && v != last {
            count += 1;
        }
        last = v;
    }
    count
}

/// Leading coefficient of the primitive integer multiple of `p`.
fn primitive_leading(p: &KPoly) -> BigInt {
    let coeffs = p.rational_coeffs().expect("rational polynomial");
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    (ints.last().unwrap() / g).abs()
}

/// Fraction with the smallest denominator in the closed interval `[lo, hi]`.
pub fn simplest_rational_between(lo: &BigRational, hi: &BigRational) -> BigRational {
    debug_assert!(lo <= hi);
    if lo.is_integer() {
        return lo.clone();
    }
    let fl = lo.floor();
    let ce = &fl + BigRational::one();
    if &ce <= hi {
        return ce;
    }
    let inner = simplest_rational_between(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

fn squarefree_rational_roots(p: &KPoly) -> Vec<BigRational> {
    let mut roots = Vec::new();
    let mut p = p.clone();
    'restart: loop {
        if p.degree().unwrap_or(0) == 0 {
            return roots;
        }
        let coeffs = p.rational_coeffs().unwrap();
        let lead = coeffs.last().unwrap().clone();
        let bound = coeffs[..coeffs.len() - 1]
            .iter()
            .map(|c| (c / &lead).abs())
            .max()
            .unwrap_or_else(BigRational::zero)
            + BigRational::one();
        let lc = BigRational::from_integer(primitive_leading(&p));
        let resolution = (&lc * &lc * rat(2)).recip();
        let chain = sturm_chain(&p);
        let mut stack = vec![(-bound.clone(), bound)];
        while let Some((lo, hi)) = stack.pop() {
            let count = variations(&chain, &lo) - variations(&chain, &hi);
            if count == 0 {
                continue;
            }
            if count == 1 && &hi - &lo < resolution {
                let cand = simplest_rational_between(&lo, &hi);
                if sign_at(&p, &cand) == 0 {
                    roots.push(cand.clone());
                    p = p.div_exact(&root_factor(&cand)).unwrap();
                    continue 'restart;
                }
                continue;
            }
            let mid = (&lo + &hi) / rat(2);
            if sign_at(&p, &mid) == 0 {
                roots.push(mid.clone());
                p = p.div_exact(&root_factor(&mid)).unwrap();
                continue 'restart;
            }
            stack.push((mid.clone(), hi));
            stack.push((lo, mid));
        }
        return roots;
    }
}

fn root_factor(r: &BigRational) -> KPoly {
    let q = FieldSpec::rationals();
    KPoly::from_coeffs(q.clone(), vec![FieldElement::from_rational(&q, -r.clone()), FieldElement::one(&q)])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn expand(lead: i64, roots: &[(BigRational, usize)]) -> Vec<BigRational> {
        let mut p = vec![rat(lead)];
        for (root, m) in roots {
            for _ in 0..*m {
                let mut next = vec![BigRational::zero(); p.len() + 1];
                for (i, c) in p.iter().enumerate() {
                    next[i + 1] += c;
                    next[i] -= c * root;
                }
                p = next;
            }
        }
        p
    }

    #[test]
    fn recovers_repeated_negative_roots() {
        let roots = vec![(r(-3, 4), 1), (r(-1, 2), 3), (r(-1, 4), 1), (r(0, 1), 2), (r(5, 3), 1)];
        let p = expand(48, &roots);
        assert_eq!(rational_roots(&p), roots);
    }

    #[test]
    fn ignores_irrational_roots() {
        // (k^2 - 2)(3k + 1)
        let p = vec![rat(-2), r(-6, 1), rat(1), rat(3)];
        assert_eq!(rational_roots(&p), vec![(r(-1, 3), 1)]);
    }

    #[test]
    fn simplest_fraction() {
        assert_eq!(simplest_rational_between(&r(31, 100), &r(34, 100)), r(1, 3));
        assert_eq!(simplest_rational_between(&r(-7, 10), &r(-6, 10)), r(-2, 3));
        assert_eq!(simplest_rational_between(&r(2, 1), &r(5, 2)), r(2, 1));
    }
}
