use std::cmp::Ordering;
use std::collections::HashSet;

use super::matrix::FieldMatrix;
use super::root_system::RootSystem;
use crate::error::{Error, Result};
use crate::scalars::IntPoly;

/// Default cap on `|W|` for [`enumerate_group`].
pub const DEFAULT_GROUP_BUDGET: usize = 20_000;

/// Group element as a matrix on simple-root coordinates with a reduced word.
#[derive(Clone, Debug)]
pub struct GroupElement {
    pub matrix: FieldMatrix,
    /// Indices of simple reflections; the matrix is `S_{w0} S_{w1} ...`.
    pub word: Vec<u8>,
}

impl GroupElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }

    /// Number of positive roots sent to negative roots.
    pub fn inversions(&self, rs: &RootSystem) -> Result<usize> {
        let mut n = 0;
        for beta in rs.positive_roots() {
            if RootSystem::vector_sign(&self.matrix.apply(beta))? == Ordering::Less {
                n += 1;
            }
        }
        Ok(n)
    }
}

/// All elements of `W`, breadth-first by word length.
///
/// Each level is produced in lexicographic order of words, and the first word
/// reaching an element is its lexicographically least reduced word.
pub fn enumerate_group(rs: &RootSystem, budget: usize) -> Result<Vec<GroupElement>> {
    let r = rs.rank();
    let gens: Vec<FieldMatrix> = (0..r).map(|i| rs.simple_reflection_matrix(i)).collect();
    let identity = FieldMatrix::identity(rs.field(), r);
    let mut seen: HashSet<FieldMatrix> = HashSet::new();
    seen.insert(identity.clone());
    let mut all = vec![GroupElement { matrix: identity, word: Vec::new() }];
    let mut level_start = 0;
    loop {
        let level_end = all.len();
        for idx in level_start..level_end {
            for (i, g) in gens.iter().enumerate() {
                let m = all[idx].matrix.mul(g);
                if seen.contains(&m) {
                    continue;
                }
                if all.len() >= budget {
                    return Err(Error::BudgetExceeded {
                        what: format!("elements of W({})", rs.diagram().type_label()),
                        limit: budget,
                    });
                }
                let mut word = all[idx].word.clone();
                word.push(i as u8);
                seen.insert(m.clone());
                all.push(GroupElement { matrix: m, word });
            }
        }
        if all.len() == level_end {
            break;
        }
        level_start = level_end;
    }
    Ok(all)
}

/// `Σ_w q^{l(w)}` from a complete element list.
pub fn poincare_polynomial(elements: &[GroupElement]) -> IntPoly {
    let max = elements.iter().map(GroupElement::length).max().unwrap_or(0);
    let mut counts = vec![0i64; max + 1];
    for e in elements {
        counts[e.length()] += 1;
    }
    IntPoly::new(counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn elements(label: &str) -> (RootSystem, Vec<GroupElement>) {
        let rs = RootSystem::build(&label.parse().unwrap()).unwrap();
        let el = enumerate_group(&rs, DEFAULT_GROUP_BUDGET).unwrap();
        (rs, el)
    }

    #[test]
    fn a2_histogram() {
        let (_, el) = elements("A2");
        assert_eq!(el.len(), 6);
        assert_eq!(poincare_polynomial(&el), IntPoly::new(vec![1, 2, 2, 1]));
    }

    #[test]
    fn small_poincare_polynomials() {
        let (_, el) = elements("A1");
        assert_eq!(poincare_polynomial(&el), IntPoly::new(vec![1, 1]));
        let (_, el) = elements("B2");
        assert_eq!(el.len(), 8);
        assert_eq!(poincare_polynomial(&el), IntPoly::new(vec![1, 2, 2, 2, 1]));
    }

    #[test]
    fn h3_longest_element() {
        let (rs, el) = elements("H3");
        assert_eq!(el.len(), 120);
        let longest = el.iter().map(GroupElement::length).max().unwrap();
        assert_eq!(longest, 15);
        assert_eq!(longest, rs.num_reflections());
    }

    #[test]
    fn words_are_lexicographic_and_lengths_match_inversions() {
        let (rs, el) = elements("B3");
        for pair in el.windows(2) {
            let key = |e: &GroupElement| (e.length(), e.word.clone());
            assert!(key(&pair[0]) < key(&pair[1]));
        }
        let gram = rs.gram();
        for e in el.iter().step_by(5) {
            assert_eq!(e.inversions(&rs).unwrap(), e.length());
            assert_eq!(&e.matrix.transpose().mul(gram).mul(&e.matrix), gram);
            let mut m = FieldMatrix::identity(rs.field(), rs.rank());
            for &i in &e.word {
                m = m.mul(&rs.simple_reflection_matrix(i as usize));
            }
            assert_eq!(m, e.matrix);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let rs = RootSystem::build(&"B3".parse().unwrap()).unwrap();
        assert!(matches!(enumerate_group(&rs, 40), Err(Error::BudgetExceeded { .. })));
    }
}
