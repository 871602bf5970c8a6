//! Acceptance criteria, one line each. Run with `cargo test --test acceptance`.
//!
//! Set `COXDUNKL_HEAVY=1` to add F4 and H4 to the exact group checks.

use std::sync::Arc;
use std::time::Instant;

use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use coxdunkl::coxeter::{
    chevalley_q_identity, compute_degrees, enumerate_group, poincare_polynomial, verify_psi_identities, DegreeData,
    GroupElement, RootSystem, DEFAULT_GROUP_BUDGET,
};
use coxdunkl::dunkl::{
    b_poly, beta_form, check_relations, dunkl_apply, dunkl_laplacian, expected_b_roots, gamma_form, random_poly,
    BPoly, DunklDirection,
};
use coxdunkl::mmintegral::{
    check_against_gamma, check_functional_equation, gamma_integral_cross_check, gamma_product_exact,
    log_variance_check, mm_exact, mm_log_moments, McParams, StatCheck, DEFAULT_FACTOR_BUDGET,
};
use coxdunkl::polynomials::{build_discriminant, MultiPoly, PolyRing};
use coxdunkl::scalars::{IntPoly, KPoly};

const SAMPLES: u64 = 10_000_000;
const PARAMS: McParams = McParams { samples: SAMPLES, seed: 42, shards: 16 };

struct Group {
    label: String,
    rs: RootSystem,
    ring: Arc<PolyRing>,
    elements: Vec<GroupElement>,
    dd: DegreeData,
}

fn group(label: &str) -> Group {
    let rs = RootSystem::build(&label.parse().unwrap()).unwrap();
    let elements = enumerate_group(&rs, DEFAULT_GROUP_BUDGET).unwrap();
    let dd = compute_degrees(&rs, &poincare_polynomial(&elements)).unwrap();
    Group { label: label.to_string(), ring: PolyRing::new(&rs), rs, elements, dd }
}

fn dihedral(range: std::ops::RangeInclusive<u32>) -> Vec<String> {
    range.map(|m| format!("I2({m})")).collect()
}

fn labels(fixed: &[&str], dihedral_max: u32) -> Vec<String> {
    let mut v: Vec<String> = fixed.iter().map(|s| s.to_string()).collect();
    v.extend(dihedral(3..=dihedral_max));
    v
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, summary: String) -> Outcome {
    if failures.is_empty() {
        Outcome { ok: true, detail: summary }
    } else {
        Outcome { ok: false, detail: failures.join("; ") }
    }
}

fn fmt_stat(c: &StatCheck) -> String {
    format!("{:.6} vs {:.6} (z={:+.2})", c.estimate, c.expected, c.z)
}

fn b_values(b_cache: &mut Vec<(String, BPoly, f64)>) {
    for label in labels(&["A1", "A2", "A3", "A4", "B2", "B3", "D4"], 12).into_iter().chain(["H3".to_string()]) {
        let g = group(&label);
        let t = Instant::now();
        let b = b_poly(&g.ring, &g.dd).unwrap();
        b_cache.push((label, b, t.elapsed().as_secs_f64()));
    }
}

fn criterion_b_exact(b_cache: &[(String, BPoly, f64)]) -> Outcome {
    let mut fails = Vec::new();
    let mut slowest = (String::new(), 0.0);
    for (label, b, secs) in b_cache {
        if b.computed != b.closed_form {
            fails.push(format!("{label}: {} != {}", b.computed, b.closed_form));
        }
        if b.computed.degree() != Some(group(label).rs.num_reflections()) {
            fails.push(format!("{label}: degree {:?}", b.computed.degree()));
        }
        if *secs > slowest.1 {
            slowest = (label.clone(), *secs);
        }
    }
    outcome(fails, format!("{} types, slowest {} in {:.1}s", b_cache.len(), slowest.0, slowest.1))
}

fn criterion_b_roots(b_cache: &[(String, BPoly, f64)]) -> Outcome {
    let mut fails = Vec::new();
    for (label, b, _) in b_cache {
        let g = group(label);
        if b.factorization.roots != expected_b_roots(&g.dd) || !b.division_certified || !b.factorization.all_roots_negative() {
            fails.push(format!("{label}: roots {:?}", b.factorization.roots));
        }
    }
    outcome(fails, format!("roots -m/d_i confirmed by exact division for {} types", b_cache.len()))
}

fn criterion_mm_exact() -> Outcome {
    let mut fails = Vec::new();
    let mut count = 0;
    let mut k1 = labels(&["A1", "A2", "A3", "A4", "B2", "B3"], 10);
    k1.retain(|l| 2 * group(l).rs.num_reflections() <= DEFAULT_FACTOR_BUDGET);
    let cases = k1.iter().map(|l| (l.clone(), 1u32)).chain(labels(&["A1", "A2"], 5).into_iter().map(|l| (l, 2)));
    for (label, k) in cases {
        let g = group(&label);
        let v = mm_exact(&g.ring, k, DEFAULT_FACTOR_BUDGET).unwrap();
        let expected = gamma_product_exact(&g.dd, k);
        count += 1;
        if v.as_rational() != Some(&expected) {
            fails.push(format!("{label} k={k}: {v} != {expected}"));
        }
    }
    for (label, value) in [("A2", 12), ("B2", 48), ("A3", 288)] {
        let g = group(label);
        if gamma_product_exact(&g.dd, 1) != BigRational::from_integer(value.into()) {
            fails.push(format!("{label}: gamma product is not {value}"));
        }
    }
    outcome(fails, format!("{count} exact integrals"))
}

fn criterion_mc_real_k() -> Outcome {
    let mut fails = Vec::new();
    let mut worst: f64 = 0.0;
    for label in ["A1", "A2", "B2", "A3"] {
        let g = group(label);
        for k in [0.25, 0.5, 0.75] {
            let (_, c) = check_against_gamma(&g.ring, &g.dd, k, &PARAMS);
            worst = worst.max(c.z.abs());
            if !c.passed {
                fails.push(format!("{label} k={k}: {}", fmt_stat(&c)));
            }
        }
    }
    outcome(fails, format!("12 estimates, max |z| = {worst:.2}"))
}

fn criterion_functional_equation(b_cache: &[(String, BPoly, f64)]) -> Outcome {
    let mut fails = Vec::new();
    let mut worst: f64 = 0.0;
    for label in ["A1", "A2", "B2"] {
        let g = group(label);
        let b = &b_cache.iter().find(|(l, _, _)| l == label).unwrap().1.computed;
        for k in [0.25, 0.5] {
            let rep = check_functional_equation(&g.ring, b, k, &PARAMS);
            worst = worst.max(rep.check.z.abs());
            if !rep.check.passed {
                fails.push(format!("{label} k={k}: {}", fmt_stat(&rep.check)));
            }
        }
    }
    outcome(fails, format!("6 comparisons, max |z| = {worst:.2}"))
}

fn exact_group_labels() -> Vec<String> {
    let mut v = labels(&["A1", "A2", "A3", "A4", "B2", "B3", "B4", "D4", "H3"], 12);
    if std::env::var("COXDUNKL_HEAVY").is_ok_and(|v| v == "1") {
        v.extend(["F4".to_string(), "H4".to_string()]);
    }
    v
}

fn criterion_poincare_chevalley() -> Outcome {
    let mut fails = Vec::new();
    let types = exact_group_labels();
    for label in &types {
        let g = group(label);
        let lhs = (0..g.rs.rank()).fold(poincare_polynomial(&g.elements), |acc, _| acc.mul(&IntPoly::new(vec![1, -1])));
        let rhs = g.dd.degrees.iter().fold(IntPoly::one(), |acc, &d| acc.mul(&IntPoly::one().sub(&IntPoly::monomial(1, d as usize))));
        if lhs != rhs {
            fails.push(format!("{label}: Poincare"));
        }
        if !chevalley_q_identity(&g.rs, &g.elements, &g.dd).unwrap().holds {
            fails.push(format!("{label}: Chevalley"));
        }
    }
    outcome(fails, format!("{} types", types.len()))
}

fn criterion_degrees() -> Outcome {
    let mut fails = Vec::new();
    let types = exact_group_labels();
    for label in &types {
        let g = group(label);
        let prod: u64 = g.dd.degrees.iter().map(|&d| d as u64).product();
        let sum: usize = g.dd.degrees.iter().map(|&d| d as usize - 1).sum();
        if prod != g.elements.len() as u64 || sum != g.rs.num_reflections() {
            fails.push(format!("{label}: degrees {:?}", g.dd.degrees));
        }
    }
    outcome(fails, format!("{} types", types.len()))
}

fn criterion_psi() -> Outcome {
    let mut fails = Vec::new();
    let types = labels(&["A2", "A3", "A4", "B2", "B3", "D4", "H3"], 12);
    for label in &types {
        let g = group(label);
        let rep = verify_psi_identities(&g.rs, &g.dd).unwrap();
        if !rep.holds() {
            fails.push(format!("{label}: {rep:?}"));
        }
    }
    let a3 = verify_psi_identities(&group("A3").rs, &group("A3").dd).unwrap();
    if a3.psi != BigRational::from_integer(82.into()) {
        fails.push("A3: psi != 82".into());
    }
    outcome(fails, format!("{} types", types.len()))
}

/// Exact algebraic identities on random polynomials of degree at most 5.
fn algebra_failures(g: &Group, trials: usize) -> Vec<String> {
    let r = &g.ring;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut fails = Vec::new();
    let mut fail = |what: &str, n: usize| fails.push(format!("{} {what} (trial {n})", g.label));
    let ys: Vec<DunklDirection> = (0..r.rank()).map(|j| DunklDirection::root(r, j)).collect();
    for n in 0..trials {
        let f = random_poly(r, 5, false, &mut rng);
        let h = random_poly(r, 5, false, &mut rng);
        let rel = check_relations(&f).unwrap();
        if !rel.commutativity {
            fail("commutativity", n);
        }
        if !rel.heisenberg {
            fail("heisenberg", n);
        }
        if !rel.euler {
            fail("euler", n);
        }
        let j = n % r.rank();
        let beta_fh = beta_form(&f, &h).unwrap();
        if beta_fh != beta_form(&h, &f).unwrap() {
            fail("beta symmetry", n);
        }
        if beta_form(&dunkl_apply(&ys[j], &f).unwrap(), &h).unwrap() != beta_form(&f, &h.mul(&MultiPoly::var(r, j))).unwrap() {
            fail("beta contravariance", n);
        }
        if beta_form(&f.apply_reflection(j), &h.apply_reflection(j)).unwrap() != beta_fh {
            fail("beta W-invariance", n);
        }
        let d = n % 5;
        let fd = random_poly(r, d, true, &mut rng);
        let he = random_poly(r, d + 1, true, &mut rng);
        if !beta_form(&fd, &he).unwrap().value.is_zero() {
            fail("beta degree orthogonality", n);
        }
        let x_minus_y = f.mul(&MultiPoly::var(r, j)).sub(&dunkl_apply(&ys[j], &f).unwrap());
        if gamma_form(&x_minus_y, &h).unwrap() != gamma_form(&f, &dunkl_apply(&ys[j], &h).unwrap()).unwrap() {
            fail("gamma contravariance", n);
        }
    }
    let delta = build_discriminant(r);
    if !dunkl_laplacian(&delta).unwrap().is_zero() {
        fails.push(format!("{}: L(Delta) != 0", g.label));
    }
    if gamma_form(&delta, &delta).unwrap() != beta_form(&delta, &delta).unwrap() {
        fails.push(format!("{}: gamma(Delta,Delta) != beta(Delta,Delta)", g.label));
    }
    fails
}

fn criterion_algebra() -> Outcome {
    let mut fails = Vec::new();
    for label in ["A1", "A2", "B2"] {
        fails.extend(algebra_failures(&group(label), 100));
    }
    outcome(fails, "100 random polynomials per type, all identities exact".into())
}

fn criterion_gamma_integral() -> Outcome {
    let mut fails = Vec::new();
    let mut worst: f64 = 0.0;
    let mut count = 0;
    let a1 = group("A1");
    let u2 = MultiPoly::var(&a1.ring, 0).pow(2);
    let exact = gamma_form(&u2, &MultiPoly::one(&a1.ring)).unwrap().value;
    if exact != KPoly::linear(a1.ring.field(), 4, 2) {
        fails.push(format!("A1 gamma(u^2,1) = {exact}, expected 2(1+2k)"));
    }
    for label in ["A1", "A2", "B2"] {
        let g = group(label);
        let u1 = MultiPoly::var(&g.ring, 0);
        let ur = MultiPoly::var(&g.ring, g.rs.rank() - 1);
        let one = MultiPoly::one(&g.ring);
        let pairs = [(one.clone(), one.clone()), (u1.pow(2), one), (u1.clone(), ur.clone()), (u1.pow(2), ur.pow(2))];
        for (f, h) in &pairs {
            for (num, den) in [(0i64, 1i64), (1, 2), (1, 1)] {
                let k = BigRational::new(num.into(), den.into());
                let c = gamma_integral_cross_check(f, h, &k, &PARAMS).unwrap();
                count += 1;
                worst = worst.max(c.z.abs());
                if !c.passed {
                    fails.push(format!("{label} f={f} g={h} k={num}/{den}: {}", fmt_stat(&c)));
                }
            }
        }
    }
    outcome(fails, format!("{count} comparisons, max |z| = {worst:.2}"))
}

fn criterion_log_moments() -> Outcome {
    let mut fails = Vec::new();
    let mut parts = Vec::new();
    for label in ["A1", "A2", "B2"] {
        let g = group(label);
        let c = mm_log_moments(&g.ring, &PARAMS);
        parts.push(format!("{label} {}", fmt_stat(&c)));
        if !c.passed {
            fails.push(format!("{label}: {}", fmt_stat(&c)));
        }
    }
    outcome(fails, parts.join(", "))
}

fn criterion_log_variance() -> Outcome {
    let g = group("A2");
    let c = log_variance_check(&g.ring, &g.dd, &PARAMS, 5.0);
    Outcome { ok: c.passed, detail: format!("A2 {}", fmt_stat(&c)) }
}

fn main() {
    let mut b_cache = Vec::new();
    let t = Instant::now();
    b_values(&mut b_cache);
    let b_secs = t.elapsed().as_secs_f64();

    type Criterion<'a> = (&'a str, bool, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        ("b(k) equals |W| prod prod (k d_i + m) exactly", true, Box::new(|| criterion_b_exact(&b_cache))),
        ("roots of b(k) are exactly -m/d_i", true, Box::new(|| criterion_b_roots(&b_cache))),
        ("F(k) at integer k equals the gamma product exactly", true, Box::new(criterion_mm_exact)),
        ("Monte Carlo F(k) matches the gamma product at real k (4 sigma)", true, Box::new(criterion_mc_real_k)),
        ("F(k+1) = b(k) F(k) (4 sigma)", true, Box::new(|| criterion_functional_equation(&b_cache))),
        ("Poincare and Chevalley identities exact", true, Box::new(criterion_poincare_chevalley)),
        ("prod d_i = |W| and sum (d_i - 1) = |S|", true, Box::new(criterion_degrees)),
        ("psi(W) rank-two and trace decompositions exact", true, Box::new(criterion_psi)),
        ("Dunkl, beta and gamma algebraic identities exact", true, Box::new(criterion_algebra)),
        ("gamma_k(f,g) matches the Gaussian integral ratio (4 sigma)", true, Box::new(criterion_gamma_integral)),
        ("E[log Delta^2] = -euler_gamma |S| (4 sigma)", true, Box::new(criterion_log_moments)),
        ("Var(log Delta^2) = (pi^2/6) sum (d_i^2 - 1) (5 sigma, stretch)", false, Box::new(criterion_log_variance)),
    ];

    println!("computed b(k) for {} types in {b_secs:.1}s", b_cache.len());
    let mut required_failures = 0;
    for (i, (name, required, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = run();
        let tag = match (o.ok, required) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "FAIL (not required)",
        };
        if !o.ok && *required {
            required_failures += 1;
        }
        println!("[{tag}] {:>2}. {name}: {} [{:.1}s]", i + 1, o.detail, t.elapsed().as_secs_f64());
    }
    if required_failures > 0 {
        eprintln!("{required_failures} required criteria failed");
        std::process::exit(1);
    }
}
