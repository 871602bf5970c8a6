//! Integer polynomials and the minimal polynomial of `2cos(π/m)`.

use std::collections::HashMap;
use std::fmt;

/// Dense integer polynomial, `coeffs[i]` is the coefficient of `x^i`.
///
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn one() -> Self {
        IntPoly::new(vec![1])
    }

    pub fn monomial(coeff: i64, power: usize) -> Self {
        let mut c = vec![0; power + 1];
        c[power] = coeff;
        IntPoly::new(c)
    }

    /// `1 + q + ... + q^{d-1}`.
    pub fn q_integer(d: usize) -> Self {
        IntPoly::new(vec![1; d])
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> i64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::default();
        }
        let mut out = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j]
                    .checked_add(a.checked_mul(*b).expect("integer polynomial overflow"))
                    .expect("integer polynomial overflow");
            }
        }
        IntPoly::new(out)
    }

    /// Division by a monic divisor. Returns `(quotient, remainder)`.
    pub fn div_rem_monic(&self, divisor: &IntPoly) -> (IntPoly, IntPoly) {
        assert_eq!(divisor.leading(), 1, "divisor must be monic");
        let dd = divisor.degree().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (IntPoly::default(), self.clone());
        }
        let mut quot = vec![0i64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            quot[i - dd] = c;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] -= c * d;
            }
        }
        (IntPoly::new(quot), IntPoly::new(rem))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c as f64)
    }

    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if s.is_empty() {
                if c < 0 {
                    s.push('-');
                }
            } else {
                s.push_str(if c < 0 { " - " } else { " + " });
            }
            match i {
                0 => s.push_str(&mag.to_string()),
                _ => {
                    if mag != 1 {
                        s.push_str(&format!("{mag}*"));
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

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("q"))
    }
}

/// The `n`-th cyclotomic polynomial.
pub fn cyclotomic(n: usize) -> IntPoly {
    fn go(n: usize, memo: &mut HashMap<usize, IntPoly>) -> IntPoly {
        if let Some(p) = memo.get(&n) {
            return p.clone();
        }
        let mut num = IntPoly::monomial(1, n).sub(&IntPoly::one());
        for d in 1..n {
            if n % d == 0 {
                let phi_d = go(d, memo);
                let (q, r) = num.div_rem_monic(&phi_d);
                debug_assert!(r.is_zero());
                num = q;
            }
        }
        memo.insert(n, num.clone());
        num
    }
    assert!(n >= 1);
    go(n, &mut HashMap::new())
}

/// Minimal polynomial of `2cos(π/m)` over the rationals.
///
/// `2cos(π/m) = z + 1/z` for a primitive `2m`-th root of unity `z`, so the
/// palindromic cyclotomic polynomial `Φ_{2m}` is rewritten in `c = z + 1/z`.
pub fn minimal_poly_2cos(m: u32) -> IntPoly {
    assert!(m >= 2, "2cos(π/m) needs m >= 2");
    let phi = cyclotomic(2 * m as usize);
    let deg = phi.degree().unwrap();
    debug_assert!(deg % 2 == 0);
    let half = deg / 2;
    // Laurent coefficients: index half + j <-> z^j.
    let mut g: Vec<i64> = phi.coeffs().to_vec();
    let mut out = vec![0i64; half + 1];
    for j in (0..=half).rev() {
        let p = g[half + j];
        out[j] = p;
        if p == 0 {
            continue;
        }
        // subtract p * (z + 1/z)^j
        let mut binom = 1i64;
        for i in 0..=j {
            g[half + j - 2 * i] -= p * binom;
            binom = binom * (j - i) as i64 / (i + 1) as i64;
        }
    }
    debug_assert!(g.iter().all(|&x| x == 0));
    IntPoly::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_minimal_polynomials() {
        assert_eq!(minimal_poly_2cos(2), IntPoly::new(vec![0, 1]));
        assert_eq!(minimal_poly_2cos(3), IntPoly::new(vec![-1, 1]));
        assert_eq!(minimal_poly_2cos(4), IntPoly::new(vec![-2, 0, 1]));
        assert_eq!(minimal_poly_2cos(5), IntPoly::new(vec![-1, -1, 1]));
        assert_eq!(minimal_poly_2cos(6), IntPoly::new(vec![-3, 0, 1]));
    }

    #[test]
    fn cyclotomic_values() {
        assert_eq!(cyclotomic(1), IntPoly::new(vec![-1, 1]));
        assert_eq!(cyclotomic(6), IntPoly::new(vec![1, -1, 1]));
        assert_eq!(cyclotomic(12), IntPoly::new(vec![1, 0, -1, 0, 1]));
    }

    fn totient(n: usize) -> usize {
        (1..=n).filter(|&k| num_integer::gcd(k, n) == 1).count()
    }

    /// Independent oracle: the conjugates of 2cos(π/m) are 2cos(jπ/m) for
    /// odd j coprime to 2m; their product form, rounded to integers, must
    /// reproduce the minimal polynomial.
    fn conjugate_product(m: usize) -> Vec<i64> {
        let roots: Vec<f64> = (1..m)
            .filter(|&j| num_integer::gcd(j, 2 * m) == 1)
            .map(|j| 2.0 * (j as f64 * std::f64::consts::PI / m as f64).cos())
            .collect();
        let mut poly = vec![1.0f64];
        for r in roots {
            let mut next = vec![0.0; poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * r;
            }
            poly = next;
        }
        poly.iter().map(|c| c.round() as i64).collect()
    }

    #[test]
    fn matches_conjugate_product_and_vanishes() {
        for m in 2..=24u32 {
            let p = minimal_poly_2cos(m);
            assert_eq!(p.degree().unwrap(), totient(2 * m as usize) / 2);
            assert_eq!(p.leading(), 1);
            assert_eq!(p.coeffs(), conjugate_product(m as usize).as_slice(), "m={m}");
            let c = 2.0 * (std::f64::consts::PI / m as f64).cos();
            assert!(p.eval_f64(c).abs() < 1e-12, "m={m}");
        }
    }

    #[test]
    fn division_and_display() {
        let p = IntPoly::new(vec![1, 2, 2, 1]);
        let (q, r) = p.div_rem_monic(&IntPoly::q_integer(2));
        assert!(r.is_zero());
        assert_eq!(q, IntPoly::q_integer(3));
        assert_eq!(p.to_string(), "q^3 + 2*q^2 + 2*q + 1");
        assert_eq!(IntPoly::new(vec![-1, -1, 1]).to_string_in("c"), "c^2 - c - 1");
    }
}
