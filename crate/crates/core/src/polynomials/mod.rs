//! Polynomials on the reflection representation in the coordinates
//! `u_i = (α_i, x)`, with coefficients in `K[k]`.

mod multipoly;

pub use multipoly::{build_discriminant, FloatPoly, LinearForm, Monomial, MultiPoly, PolyOp, PolyRing};

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use num_rational::BigRational;
    use proptest::prelude::*;

    use super::*;
    use crate::coxeter::RootSystem;
    use crate::scalars::{FieldElement, KPoly};

    fn ring(label: &str) -> Arc<PolyRing> {
        PolyRing::new(&RootSystem::build(&label.parse().unwrap()).unwrap())
    }

    fn int(r: &Arc<PolyRing>, n: i64) -> MultiPoly {
        MultiPoly::constant(r, KPoly::constant(FieldElement::from_int(r.field(), n)))
    }

    #[test]
    fn partial_and_square() {
        let r = ring("A2");
        let (u1, u2) = (MultiPoly::var(&r, 0), MultiPoly::var(&r, 1));
        let f = u1.pow(2).mul(&u2);
        assert_eq!(f.partial(0), int(&r, 2).mul(&u1).mul(&u2));
        let sq = u1.add(&u2).pow(2);
        let expected = u1.pow(2).add(&int(&r, 2).mul(&u1).mul(&u2)).add(&u2.pow(2));
        assert_eq!(sq, expected);
        assert_eq!(sq.to_string(), "u1^2 + 2*u1*u2 + u2^2");
    }

    #[test]
    fn a2_discriminant() {
        let r = ring("A2");
        let d = build_discriminant(&r);
        assert_eq!(d.to_string(), "u1^2*u2 + u1*u2^2");
        assert_eq!(d.homogeneous_degree(), Some(3));
    }

    #[test]
    fn rank_one_reflection_and_divided_differences() {
        let r = ring("A1");
        let u = MultiPoly::var(&r, 0);
        assert_eq!(u.apply_reflection(0), u.neg());
        assert_eq!(u.pow(2).apply_reflection(0), u.pow(2));
        assert!(u.pow(2).divided_difference(0).unwrap().is_zero());
        assert_eq!(u.divided_difference(0).unwrap(), int(&r, 2));
        assert_eq!(u.pow(3).divided_difference(0).unwrap(), int(&r, 2).mul(&u.pow(2)));
        assert_eq!(build_discriminant(&r), u);
    }

    #[test]
    fn a2_simple_reflection_on_coordinates() {
        let r = ring("A2");
        let (u1, u2) = (MultiPoly::var(&r, 0), MultiPoly::var(&r, 1));
        assert_eq!(u1.apply_reflection(0), u1.neg());
        assert_eq!(u2.apply_reflection(0), u1.add(&u2));
    }

    #[test]
    fn discriminants_are_antisymmetric() {
        for label in ["A1", "A2", "B2", "A3", "I2(5)", "G2", "H3"] {
            let Ok(d) = label.parse() else { continue };
            let r = PolyRing::new(&RootSystem::build(&d).unwrap());
            let delta = build_discriminant(&r);
            assert_eq!(delta.homogeneous_degree(), Some(r.num_roots()));
            for a in 0..r.num_roots() {
                assert_eq!(delta.apply_reflection(a), delta.neg(), "{label} root {a}");
            }
        }
    }

    #[test]
    fn inexact_division_is_reported() {
        let r = ring("A2");
        let f = MultiPoly::var(&r, 0).add(&int(&r, 1));
        let form = r.root_form(2).coeffs.clone();
        assert!(f.div_linear(&form).is_err());
        let g = f.mul(&MultiPoly::from_linear(&r, &form));
        assert_eq!(g.div_linear(&form).unwrap(), f);
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let (a, b) = (ring("A2"), ring("A2"));
        assert!(MultiPoly::var(&a, 0).combine(&MultiPoly::var(&b, 0), PolyOp::Add).is_err());
    }

    #[test]
    fn float_evaluation_matches() {
        let r = ring("B2");
        let d = build_discriminant(&r);
        let fp = d.to_float(0.0);
        let u = [0.3, -1.1];
        let direct: f64 = (0..r.num_roots())
            .map(|i| r.root_form(i).coeffs.iter().zip(&u).map(|(c, x)| c.to_f64() * x).sum::<f64>())
            .product();
        assert!((fp.eval(&u) - direct).abs() < 1e-12);
        let k_half = d.mul_k().eval_k(&BigRational::new(1.into(), 2.into()));
        assert!((k_half.to_float(0.0).eval(&u) - 0.5 * direct).abs() < 1e-12);
    }

    fn poly_strategy(rank: usize, max_deg: u16) -> impl Strategy<Value = Vec<(Vec<u16>, i64)>> {
        prop::collection::vec((prop::collection::vec(0..=max_deg, rank), -5i64..=5), 0..6).prop_map(move |ts| {
            ts.into_iter()
                .map(|(mut e, c)| {
                    // Cap the total degree.
                    while e.iter().sum::<u16>() > max_deg {
                        let i = e.iter().position(|&x| x > 0).unwrap();
                        e[i] -= 1;
                    }
                    (e, c)
                })
                .collect()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn reflection_is_an_involutive_homomorphism(
            label in prop::sample::select(vec!["A2", "B2", "I2(5)"]),
            fa in poly_strategy(2, 5),
            ga in poly_strategy(2, 5),
            root in 0usize..4,
        ) {
            let r = ring(label);
            let root = root % r.num_roots();
            let f = MultiPoly::from_int_terms(&r, &fa);
            let g = MultiPoly::from_int_terms(&r, &ga);
            prop_assert_eq!(f.apply_reflection(root).apply_reflection(root), f.clone());
            prop_assert_eq!(f.mul(&g).apply_reflection(root), f.apply_reflection(root).mul(&g.apply_reflection(root)));
            prop_assert_eq!(f.add(&g).apply_reflection(root), f.apply_reflection(root).add(&g.apply_reflection(root)));
        }

        #[test]
        fn twisted_leibniz_and_degrees(
            label in prop::sample::select(vec!["A2", "B2", "A3"]),
            fa in poly_strategy(3, 5),
            ga in poly_strategy(3, 5),
            root in 0usize..6,
        ) {
            let r = ring(label);
            let n = r.rank();
            let trim = |ts: Vec<(Vec<u16>, i64)>| ts.into_iter().map(|(e, c)| (e[..n].to_vec(), c)).collect::<Vec<_>>();
            let f = MultiPoly::from_int_terms(&r, &trim(fa));
            let g = MultiPoly::from_int_terms(&r, &trim(ga));
            let root = root % r.num_roots();
            let dd = |p: &MultiPoly| p.divided_difference(root).unwrap();
            let lhs = dd(&f.mul(&g));
            let rhs = dd(&f).mul(&g).add(&f.apply_reflection(root).mul(&dd(&g)));
            prop_assert_eq!(lhs, rhs);
            if let (Some(df), Some(dg)) = (f.degree(), g.degree()) {
                prop_assert_eq!(f.mul(&g).degree(), Some(df + dg));
                if let Some(d) = dd(&f).degree() {
                    prop_assert!(d < df);
                }
            }
        }

        #[test]
        fn divided_difference_matches_series(
            fa in poly_strategy(2, 5),
            root in 0usize..4,
        ) {
            // Oracle: (f - s f)/L = Σ_{n≥1} (-1)^{n+1} L^{n-1} D^n f / n!.
            let r = ring("B2");
            let f = MultiPoly::from_int_terms(&r, &fa);
            let dir = r.reflection_direction(root).to_vec();
            let form = r.root_form(root).coeffs.clone();
            let mut deriv = f.clone();
            let mut lpow = MultiPoly::one(&r);
            let mut expected = MultiPoly::zero(&r);
            let mut fact = BigRational::from_integer(1.into());
            for n in 1..=f.degree().unwrap_or(0) {
                deriv = deriv.directional_derivative(&dir);
                fact *= BigRational::from_integer((n as i64).into());
                let mut term = lpow.mul(&deriv).scale_rational(&fact.recip());
                if n % 2 == 0 {
                    term = term.neg();
                }
                expected = expected.add(&term);
                lpow = lpow.mul_linear(&form);
            }
            prop_assert_eq!(f.divided_difference(root).unwrap(), expected);
        }
    }
}
