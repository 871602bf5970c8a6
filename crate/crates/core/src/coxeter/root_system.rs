use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Arc;

use super::diagram::CoxeterDiagram;
use super::matrix::FieldMatrix;
use crate::error::{Error, Result};
use crate::scalars::{two_cos_in, FieldElement, FieldSpec};

/// Default cap on the number of positive roots produced by orbit closure.
pub const DEFAULT_ROOT_BUDGET: usize = 1000;

/// Positive roots of a finite Coxeter group, all of norm 2, written in the
/// basis of simple roots.
#[derive(Clone, Debug)]
pub struct RootSystem {
    diagram: CoxeterDiagram,
    field: Arc<FieldSpec>,
    gram: FieldMatrix,
    positive_roots: Vec<Vec<FieldElement>>,
    simple_indices: Vec<usize>,
}

impl RootSystem {
    pub fn build(diagram: &CoxeterDiagram) -> Result<Self> {
        Self::build_with_budget(diagram, DEFAULT_ROOT_BUDGET)
    }

    /// Closes the simple roots under simple reflections, keeping positive
    /// representatives. Non-finite diagrams exhaust `budget`.
    pub fn build_with_budget(diagram: &CoxeterDiagram, budget: usize) -> Result<Self> {
        let r = diagram.rank();
        let field = FieldSpec::two_cos(diagram.max_bond());
        let mut rows = Vec::with_capacity(r);
        for i in 0..r {
            let mut row = Vec::with_capacity(r);
            for j in 0..r {
                if i == j {
                    row.push(FieldElement::from_int(&field, 2));
                } else {
                    row.push(-two_cos_in(&field, diagram.bond(i, j))?);
                }
            }
            rows.push(row);
        }
        let gram = FieldMatrix::from_rows(rows);

        let mut roots: Vec<Vec<FieldElement>> = (0..r)
            .map(|i| {
                let mut v = vec![FieldElement::zero(&field); r];
                v[i] = FieldElement::one(&field);
                v
            })
            .collect();
        let mut index: HashMap<Vec<FieldElement>, usize> =
            roots.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let mut cursor = 0;
        while cursor < roots.len() {
            let beta = roots[cursor].clone();
            for i in 0..r {
                if cursor == i {
                    continue;
                }
                let pairing = row_dot(gram.row(i), &beta);
                if pairing.is_zero() {
                    continue;
                }
                let mut image = beta.clone();
                image[i] = &image[i] - &pairing;
                if image[i].sign()? == Ordering::Less {
                    return Err(Error::UnsupportedDiagram(format!(
                        "{}: reflection produced a mixed-sign root",
                        diagram.type_label()
                    )));
                }
                if !index.contains_key(&image) {
                    if roots.len() >= budget {
                        return Err(Error::BudgetExceeded {
                            what: format!("positive roots of {}", diagram.type_label()),
                            limit: budget,
                        });
                    }
                    index.insert(image.clone(), roots.len());
                    roots.push(image);
                }
            }
            cursor += 1;
        }
        Ok(RootSystem {
            diagram: diagram.clone(),
            field,
            gram,
            positive_roots: roots,
            simple_indices: (0..r).collect(),
        })
    }

    pub fn diagram(&self) -> &CoxeterDiagram {
        &self.diagram
    }

    pub fn rank(&self) -> usize {
        self.diagram.rank()
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn gram(&self) -> &FieldMatrix {
        &self.gram
    }

    pub fn positive_roots(&self) -> &[Vec<FieldElement>] {
        &self.positive_roots
    }

    pub fn root(&self, idx: usize) -> &[FieldElement] {
        &self.positive_roots[idx]
    }

    pub fn simple_indices(&self) -> &[usize] {
        &self.simple_indices
    }

    /// `|S|`, the number of reflections.
    pub fn num_reflections(&self) -> usize {
        self.positive_roots.len()
    }

    /// Inner product of two vectors given in simple-root coordinates.
    pub fn inner(&self, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
        let gb = self.gram.apply(b);
        row_dot(a, &gb)
    }

    /// `(α, α_j)` for each simple root, i.e. the Gram matrix applied to `α`.
    pub fn simple_pairings(&self, idx: usize) -> Vec<FieldElement> {
        self.gram.apply(&self.positive_roots[idx])
    }

    /// `s_α(v) = v - (v, α) α` in simple-root coordinates.
    pub fn reflect(&self, idx: usize, v: &[FieldElement]) -> Vec<FieldElement> {
        let alpha = &self.positive_roots[idx];
        let p = self.inner(v, alpha);
        v.iter().zip(alpha).map(|(x, a)| x - &(&p * a)).collect()
    }

    /// Matrix of `s_α` acting on simple-root coordinates: `I - α (Gα)ᵀ`.
    pub fn reflection_matrix(&self, idx: usize) -> FieldMatrix {
        let r = self.rank();
        let alpha = &self.positive_roots[idx];
        let g_alpha = self.gram.apply(alpha);
        let mut m = FieldMatrix::identity(&self.field, r);
        for i in 0..r {
            for j in 0..r {
                let v = m.get(i, j) - &(&alpha[i] * &g_alpha[j]);
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn simple_reflection_matrix(&self, i: usize) -> FieldMatrix {
        self.reflection_matrix(self.simple_indices[i])
    }

    /// Locates `v` among `±positive_roots`: `(index, true)` for `+α`.
    pub fn find_root(&self, v: &[FieldElement]) -> Option<(usize, bool)> {
        if let Some(i) = self.positive_roots.iter().position(|a| a.as_slice() == v) {
            return Some((i, true));
        }
        let neg: Vec<FieldElement> = v.iter().map(|x| -x).collect();
        self.positive_roots.iter().position(|a| *a == neg).map(|i| (i, false))
    }

    /// Sign of a root-like vector: the sign of its first nonzero coordinate.
    pub fn vector_sign(v: &[FieldElement]) -> Result<Ordering> {
        for x in v {
            let s = x.sign()?;
            if s != Ordering::Equal {
                return Ok(s);
            }
        }
        Ok(Ordering::Equal)
    }

    /// Exact check of the root-system invariants: norms, permutation of
    /// `±S` by every reflection, and nonnegative coordinates.
    pub fn validate(&self) -> Result<()> {
        let two = FieldElement::from_int(&self.field, 2);
        for (i, alpha) in self.positive_roots.iter().enumerate() {
            if self.inner(alpha, alpha) != two {
                return Err(Error::InvalidArgument(format!("root {i} does not have norm 2")));
            }
            for x in alpha {
                if x.sign()? == Ordering::Less {
                    return Err(Error::InvalidArgument(format!("root {i} is not positive")));
                }
            }
        }
        for a in 0..self.num_reflections() {
            let mut hit = vec![false; self.num_reflections()];
            for beta in &self.positive_roots {
                let img = self.reflect(a, beta);
                let (j, _) = self
                    .find_root(&img)
                    .ok_or_else(|| Error::InvalidArgument(format!("s_{a} moves a root outside ±S")))?;
                if hit[j] {
                    return Err(Error::InvalidArgument(format!("s_{a} is not a permutation of ±S")));
                }
                hit[j] = true;
            }
        }
        Ok(())
    }
}

pub(crate) fn row_dot(a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    let field = a[0].spec();
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(FieldElement::zero(field), |acc, (x, y)| &acc + &(x * y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(label: &str) -> RootSystem {
        RootSystem::build(&label.parse().unwrap()).unwrap()
    }

    #[test]
    fn root_counts() {
        for (label, n) in [
            ("A1", 1),
            ("A2", 3),
            ("A3", 6),
            ("A4", 10),
            ("B2", 4),
            ("B3", 9),
            ("D4", 12),
            ("I2(5)", 5),
            ("I2(12)", 12),
            ("H3", 15),
            ("F4", 24),
            ("H4", 60),
            ("E6", 36),
        ] {
            let r = rs(label);
            assert_eq!(r.num_reflections(), n, "{label}");
            r.validate().unwrap();
        }
    }

    #[test]
    fn a2_roots_by_hand() {
        let r = rs("A2");
        let f = r.field().clone();
        let one = FieldElement::one(&f);
        let zero = FieldElement::zero(&f);
        assert_eq!(r.positive_roots()[0], vec![one.clone(), zero.clone()]);
        assert_eq!(r.positive_roots()[1], vec![zero, one.clone()]);
        assert_eq!(r.positive_roots()[2], vec![one.clone(), one]);
    }

    #[test]
    fn affine_diagram_exhausts_budget() {
        // Affine A2 (triangle of 3-bonds) is infinite.
        let d = CoxeterDiagram::from_bonds("affine", vec![vec![1, 3, 3], vec![3, 1, 3], vec![3, 3, 1]]).unwrap();
        assert!(matches!(RootSystem::build_with_budget(&d, 200), Err(Error::BudgetExceeded { .. })));
    }
}
