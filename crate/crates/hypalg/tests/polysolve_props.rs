//! Solver properties: reduction/evaluation commutation, completeness on
//! generic inputs, the scalar solver against direct evaluation, and a
//! multistart Newton cross-check on the full algebra.

mod common;

use common::{distance_to_set, newton_multistart, random_element, random_polynomial, rng};
use hypalg::{
    find_idempotent_system, fixtures, pierce_project, recombine, reduce, solve, solve_scalar,
    AlgebraPolynomial, ComponentKind, FieldTag, IdempotentSystem, Scalar, ScalarPolynomial,
    SolveOptions, SpectralConfig,
};
use rand::RngExt;

fn system_for(table: &hypalg::AlgebraTable) -> IdempotentSystem {
    find_idempotent_system(table, &SpectralConfig::default()).unwrap()
}

#[test]
fn reduction_commutes_with_evaluation() {
    for t in [fixtures::bicomplex(), fixtures::efg()] {
        let sys = system_for(&t);
        let mut rng = rng(21);
        for _ in 0..40 {
            let degree = rng.random_range(0..=4usize);
            let p = random_polynomial(&t, &mut rng, degree);
            let w = random_element(&t, &mut rng, 1.0);
            let rows = reduce(&t, &p, &sys).unwrap();
            let value = t.eval_poly(&p, &w).unwrap();
            let projected_value = pierce_project(&t, &value, &sys).unwrap();
            let projected_w = pierce_project(&t, &w, &sys).unwrap();
            for ((row, pv), pw) in rows.iter().zip(&projected_value).zip(&projected_w) {
                assert!((row.eval(*pw) - pv).norm() <= 1e-8);
            }
        }
    }
}

/// Bicomplex polynomial with both component leading coefficients bounded
/// away from zero, built by recombining per-component scalar coefficients.
fn bounded_lead_poly(
    table: &hypalg::AlgebraTable,
    sys: &IdempotentSystem,
    rng: &mut rand_chacha::ChaCha8Rng,
    degree: usize,
    min_lead: f64,
) -> AlgebraPolynomial {
    let n = sys.len();
    let coeffs = (0..=degree)
        .map(|r| {
            let ks: Vec<Scalar> = (0..n)
                .map(|_| loop {
                    let k = common::random_scalar(table.field(), rng, 1.0);
                    if r < degree || k.norm() >= min_lead {
                        break k;
                    }
                })
                .collect();
            recombine(table, &ks, sys).unwrap()
        })
        .collect();
    AlgebraPolynomial::new(coeffs).unwrap()
}

#[test]
fn generic_bicomplex_polynomials_have_m_squared_roots() {
    let t = fixtures::bicomplex();
    let sys = system_for(&t);
    let opts = SolveOptions::default();
    let mut rng = rng(22);
    for _ in 0..25 {
        let degree = rng.random_range(1..=3usize);
        let p = bounded_lead_poly(&t, &sys, &mut rng, degree, 0.1);
        let rs = solve(&t, &p, &sys, &opts).unwrap();
        assert_eq!(rs.roots.len(), degree * degree);
        assert!(!rs.truncated && !rs.parametric);
        for r in &rs.residuals {
            assert!(*r <= 1e-8, "residual {r}");
        }
    }
}

#[test]
fn newton_oracle_finds_no_extra_roots() {
    // Small instances: every converged Newton run must land near an
    // enumerated root.
    for (t, degrees) in [
        (fixtures::bicomplex(), [1usize, 2, 3]),
        (fixtures::efg(), [1, 2, 2]),
    ] {
        let sys = system_for(&t);
        let opts = SolveOptions::default();
        let mut rng = rng(23);
        for degree in degrees {
            let p = bounded_lead_poly(&t, &sys, &mut rng, degree, 0.2);
            let rs = solve(&t, &p, &sys, &opts).unwrap();
            let newton = newton_multistart(&t, &p, 256, 100, 1e-10, 24);
            for w in &newton {
                assert!(
                    distance_to_set(&t, w, &rs.roots) <= 1e-6,
                    "newton root {w:?} missing from the enumerated set"
                );
            }
        }
    }
}

#[test]
fn scalar_roots_satisfy_their_polynomials() {
    let opts = SolveOptions::default();
    let mut rng = rng(25);
    for field in [FieldTag::RealField, FieldTag::ComplexField] {
        for _ in 0..40 {
            let degree = rng.random_range(1..=8usize);
            let mut coeffs: Vec<Scalar> = (0..degree)
                .map(|_| common::random_scalar(field, &mut rng, 1.0))
                .collect();
            coeffs.push(Scalar::new(1.0, 0.0)); // monic
            let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
            let q = ScalarPolynomial::new(coeffs);
            let sol = solve_scalar(&q, field, &opts);
            let ComponentKind::Finite(roots) = &sol.kind else {
                panic!("monic polynomial must have a finite root list");
            };
            if field == FieldTag::ComplexField {
                assert_eq!(roots.len(), degree);
            }
            for root in roots {
                assert!(q.eval(*root).norm() <= 1e-8 * (1.0 + scale));
            }
        }
    }
}
