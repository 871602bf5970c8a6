use std::fmt;
use std::sync::Arc;

use crate::scalars::{FieldElement, FieldSpec};

/// Square matrix over a number field, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldMatrix {
    n: usize,
    data: Vec<FieldElement>,
}

impl FieldMatrix {
    pub fn identity(field: &Arc<FieldSpec>, n: usize) -> Self {
        let mut data = vec![FieldElement::zero(field); n * n];
        for i in 0..n {
            data[i * n + i] = FieldElement::one(field);
        }
        FieldMatrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Self {
        let n = rows.len();
        let data: Vec<_> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), n * n, "matrix must be square");
        FieldMatrix { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn mul(&self, other: &FieldMatrix) -> FieldMatrix {
        let n = self.n;
        let field = self.data[0].spec();
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = FieldElement::zero(field);
                for l in 0..n {
                    let a = self.get(i, l);
                    let b = other.get(l, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                data.push(acc);
            }
        }
        FieldMatrix { n, data }
    }

    pub fn apply(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        let field = self.data[0].spec();
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(FieldElement::zero(field), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    pub fn transpose(&self) -> FieldMatrix {
        let n = self.n;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(self.get(j, i).clone());
            }
        }
        FieldMatrix { n, data }
    }

    pub fn trace(&self) -> FieldElement {
        let field = self.data[0].spec();
        (0..self.n).fold(FieldElement::zero(field), |acc, i| &acc + self.get(i, i))
    }

    pub fn add_scalar_identity(&self, c: &FieldElement) -> FieldMatrix {
        let mut out = self.clone();
        for i in 0..self.n {
            out.data[i * self.n + i] = &out.data[i * self.n + i] + c;
        }
        out
    }

    /// Coefficients `c_0..c_n` of `det(t I - M) = Σ c_j t^j` (Faddeev-LeVerrier).
    pub fn characteristic_polynomial(&self) -> Vec<FieldElement> {
        let n = self.n;
        let field = self.data[0].spec().clone();
        let mut coeffs = vec![FieldElement::zero(&field); n + 1];
        coeffs[n] = FieldElement::one(&field);
        let mut mk = FieldMatrix { n, data: vec![FieldElement::zero(&field); n * n] };
        for k in 1..=n {
            mk = self.mul(&mk).add_scalar_identity(&coeffs[n - k + 1]);
            let t = self.mul(&mk).trace();
            let kq = crate::scalars::BigRational::from_integer((-(k as i64)).into());
            coeffs[n - k] = t.scale(&kq.recip());
        }
        coeffs
    }
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> =
            (0..self.n).map(|i| self.row(i).iter().map(|x| x.to_string()).collect()).collect();
        write!(f, "{rows:?}")
    }
}
