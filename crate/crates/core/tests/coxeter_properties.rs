use coxdunkl::coxeter::{
    chevalley_q_identity, compute_degrees, enumerate_group, poincare_polynomial, products_of_two_reflections,
    rank2_parabolics, FieldMatrix, RootSystem, DEFAULT_GROUP_BUDGET,
};
use coxdunkl::scalars::{FieldElement, IntPoly};

const TYPES: [&str; 12] = ["A1", "A2", "A3", "A4", "B2", "B3", "D4", "I2(5)", "I2(8)", "I2(12)", "H3", "B4"];

fn build(label: &str) -> RootSystem {
    RootSystem::build(&label.parse().unwrap()).unwrap()
}

#[test]
fn elements_preserve_the_form_and_match_words() {
    for label in ["A3", "B3", "H3"] {
        let rs = build(label);
        let g = rs.gram();
        let el = enumerate_group(&rs, DEFAULT_GROUP_BUDGET).unwrap();
        let gens: Vec<FieldMatrix> = (0..rs.rank()).map(|i| rs.simple_reflection_matrix(i)).collect();
        for (n, e) in el.iter().enumerate() {
            assert_eq!(e.matrix.transpose().mul(g).mul(&e.matrix), *g, "{label}");
            let from_word = e.word.iter().fold(FieldMatrix::identity(rs.field(), rs.rank()), |acc, &i| acc.mul(&gens[i as usize]));
            assert_eq!(from_word, e.matrix);
            if n % 7 == 0 {
                assert_eq!(e.inversions(&rs).unwrap(), e.length());
            }
        }
    }
}

#[test]
fn enumeration_examples() {
    let a2 = enumerate_group(&build("A2"), DEFAULT_GROUP_BUDGET).unwrap();
    let mut hist = [0; 4];
    for e in &a2 {
        hist[e.length()] += 1;
    }
    assert_eq!(hist, [1, 2, 2, 1]);
    let b2 = enumerate_group(&build("B2"), DEFAULT_GROUP_BUDGET).unwrap();
    assert_eq!(b2.len(), 8);
    assert_eq!(b2.iter().map(|e| e.length()).max(), Some(4));
    assert_eq!(poincare_polynomial(&b2), IntPoly::new(vec![1, 2, 2, 2, 1]));
    let h3 = enumerate_group(&build("H3"), DEFAULT_GROUP_BUDGET).unwrap();
    assert_eq!(h3.len(), 120);
    assert_eq!(h3.iter().map(|e| e.length()).max(), Some(15));
}

#[test]
fn poincare_and_degree_identities() {
    for label in TYPES {
        let rs = build(label);
        let el = enumerate_group(&rs, DEFAULT_GROUP_BUDGET).unwrap();
        let p = poincare_polynomial(&el);
        let dd = compute_degrees(&rs, &p).unwrap();
        let lhs = (0..rs.rank()).fold(p, |acc, _| acc.mul(&IntPoly::new(vec![1, -1])));
        let rhs = dd.degrees.iter().fold(IntPoly::one(), |acc, &d| acc.mul(&IntPoly::one().sub(&IntPoly::monomial(1, d as usize))));
        assert_eq!(lhs, rhs, "{label}");
        assert_eq!(el.iter().map(|e| e.length()).max(), Some(rs.num_reflections()));
        assert_eq!(dd.degrees.iter().map(|&d| d as u64).product::<u64>(), dd.order);
        if rs.num_reflections() <= 16 {
            assert!(chevalley_q_identity(&rs, &el, &dd).unwrap().holds, "{label}");
        }
    }
}

#[test]
fn mirror_pairs_partition_and_rotations_are_positive() {
    for label in TYPES {
        let rs = build(label);
        let s = rs.num_reflections();
        let pairs: usize = rank2_parabolics(&rs).iter().map(|p| p.m * (p.m - 1) / 2).sum();
        assert_eq!(pairs, s * (s - 1) / 2, "{label}");
        let r = FieldElement::from_int(rs.field(), rs.rank() as i64);
        for w in products_of_two_reflections(&rs) {
            assert!((&r - &w.trace()).is_positive().unwrap(), "{label}");
        }
    }
}

#[test]
fn reflections_permute_roots() {
    for label in TYPES {
        build(label).validate().unwrap();
    }
}
