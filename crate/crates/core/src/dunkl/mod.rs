//! Dunkl operators, the contravariant form `β_k`, the Gaussian form `γ_k`,
//! and the polynomial `b(k) = β_k(Δ, Δ)`.
//!
//! Directions are written in the dual basis `ω_i`, so `T_{ω_i}` deforms
//! `∂/∂u_i`. The operator `y_{α_j}` is `T` along `α_j = Σ_l (α_j, α_l) ω_l`.

mod forms;
mod operators;

pub use forms::{
    b_poly, b_poly_with_budget, beta_form, beta_gram_matrix, closed_form_b, discriminant_norm, expected_b_roots,
    gamma_form, leading_minors_positive, monomial_basis, BFactorization, BPoly, BilinearValue, B_POLY_MAX_REFLECTIONS,
};
pub use operators::{
    check_relations, dunkl_apply, dunkl_apply_many, dunkl_laplacian, exp_half_laplacian, random_poly,
    verify_algebra_relations, DunklDirection, RelationOutcome, RelationReport,
};

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use num_rational::BigRational;
    use proptest::prelude::*;

    use super::*;
    use crate::coxeter::{compute_degrees, enumerate_group, poincare_polynomial, RootSystem, DEFAULT_GROUP_BUDGET};
    use crate::polynomials::{build_discriminant, MultiPoly, PolyRing};
    use crate::scalars::{FieldElement, KPoly};

    fn ring(label: &str) -> Arc<PolyRing> {
        PolyRing::new(&RootSystem::build(&label.parse().unwrap()).unwrap())
    }

    fn kpoly(r: &Arc<PolyRing>, coeffs: &[i64]) -> KPoly {
        let f = r.field();
        KPoly::from_coeffs(f.clone(), coeffs.iter().map(|&c| FieldElement::from_int(f, c)).collect())
    }

    fn konst(r: &Arc<PolyRing>, coeffs: &[i64]) -> MultiPoly {
        MultiPoly::constant(r, kpoly(r, coeffs))
    }

    #[test]
    fn rank_one_dunkl_operator() {
        let r = ring("A1");
        let t = DunklDirection::omega(&r, 0);
        let u = MultiPoly::var(&r, 0);
        assert!(dunkl_apply(&t, &MultiPoly::one(&r)).unwrap().is_zero());
        assert_eq!(dunkl_apply(&t, &u).unwrap(), konst(&r, &[1, 2]));
        assert_eq!(dunkl_apply(&t, &u.pow(2)).unwrap(), konst(&r, &[2]).mul(&u));
        assert_eq!(*t.pairing(0), FieldElement::one(r.field()));
        assert!(check_relations(&u).unwrap().all());
    }

    #[test]
    fn rank_one_forms() {
        let r = ring("A1");
        let u = MultiPoly::var(&r, 0);
        let one = MultiPoly::one(&r);
        assert_eq!(beta_form(&one, &one).unwrap().value, kpoly(&r, &[1]));
        assert!(beta_form(&u, &u.pow(2)).unwrap().value.is_zero());
        assert_eq!(beta_form(&u, &u).unwrap().value, kpoly(&r, &[2, 4]));
        assert!(dunkl_laplacian(&one).unwrap().is_zero());
        assert_eq!(dunkl_laplacian(&u.pow(2)).unwrap(), konst(&r, &[4, 8]));
        assert_eq!(gamma_form(&one, &one).unwrap().value, kpoly(&r, &[1]));
        assert_eq!(gamma_form(&u.pow(2), &one).unwrap().value, kpoly(&r, &[2, 4]));
    }

    #[test]
    fn pairings_match_root_coordinates() {
        let r = ring("B3");
        for i in 0..r.rank() {
            let w = DunklDirection::omega(&r, i);
            for a in 0..r.num_roots() {
                assert_eq!(w.pairing(a), &r.root_form(a).coeffs[i]);
            }
        }
    }

    #[test]
    fn laplacian_kills_discriminant() {
        for label in ["A2", "B2", "I2(5)", "A3"] {
            let r = ring(label);
            let delta = build_discriminant(&r);
            assert!(dunkl_laplacian(&delta).unwrap().is_zero(), "{label}");
        }
    }

    #[test]
    fn gamma_of_discriminant_equals_beta() {
        for label in ["A2", "B2"] {
            let r = ring(label);
            let delta = build_discriminant(&r);
            assert_eq!(gamma_form(&delta, &delta).unwrap(), beta_form(&delta, &delta).unwrap());
        }
    }

    fn b_of(label: &str) -> BPoly {
        let rs = RootSystem::build(&label.parse().unwrap()).unwrap();
        let el = enumerate_group(&rs, DEFAULT_GROUP_BUDGET).unwrap();
        let dd = compute_degrees(&rs, &poincare_polynomial(&el)).unwrap();
        b_poly(&PolyRing::new(&rs), &dd).unwrap()
    }

    #[test]
    fn small_b_polynomials() {
        let cases = [
            ("A1", "2*(2k+1)"),
            ("A2", "6*(2k+1)*(3k+1)*(3k+2)"),
            ("I2(4)", "16*(2k+1)*(2k+1)*(4k+1)*(4k+3)"),
        ];
        for (label, rendered) in cases {
            let b = b_of(label);
            assert!(b.holds(), "{label}: {b:?}");
            assert_eq!(b.factorization.render(), rendered);
        }
        let a1 = b_of("A1");
        assert_eq!(a1.computed, KPoly::linear(a1.computed.field(), 4, 2));
    }

    #[test]
    fn factored_route_matches_monomial_route() {
        for label in ["A1", "A2", "B2", "I2(5)"] {
            let r = ring(label);
            let delta = build_discriminant(&r);
            assert_eq!(discriminant_norm(&r).unwrap(), beta_form(&delta, &delta).unwrap().value, "{label}");
        }
    }

    #[test]
    fn positive_definite_at_zero() {
        for label in ["A1", "A2", "B2"] {
            let r = ring(label);
            for d in 0..=4 {
                let g = beta_gram_matrix(&r, d, &BigRational::from_integer(0.into())).unwrap();
                assert!(leading_minors_positive(&g).unwrap(), "{label} degree {d}");
            }
        }
    }

    #[test]
    fn a2_relations() {
        let rep = verify_algebra_relations(&ring("A2"), 3, 10, 7).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn factorization_rejects_irreducible_quadratics() {
        let r = ring("A1");
        assert!(BFactorization::of(&kpoly(&r, &[1, 0, 1])).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn beta_contravariance(seed in any::<u64>(), i in 0usize..2) {
            use rand::SeedableRng;
            let r = ring("B2");
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let f = random_poly(&r, 3, false, &mut rng);
            let g = random_poly(&r, 3, false, &mut rng);
            let a = DunklDirection::root(&r, i);
            let lhs = beta_form(&dunkl_apply(&a, &f).unwrap(), &g).unwrap();
            let rhs = beta_form(&f, &g.mul(&MultiPoly::var(&r, i))).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(beta_form(&f, &g).unwrap(), beta_form(&g, &f).unwrap());
        }
    }
}
