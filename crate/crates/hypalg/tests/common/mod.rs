//! Shared helpers for the integration tests: seeded random inputs and a
//! multistart Newton oracle that searches the full algebra directly,
//! independent of the reduction-through-idempotents path it cross-checks.
#![allow(dead_code)] // each test binary uses its own subset

use hypalg::{formal_poly_derivative, AlgebraPolynomial, AlgebraTable, Element, FieldTag, Scalar};
use nalgebra::DVector;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_scalar(field: FieldTag, rng: &mut ChaCha8Rng, radius: f64) -> Scalar {
    let re = rng.random_range(-radius..radius);
    let im = match field {
        FieldTag::RealField => 0.0,
        FieldTag::ComplexField => rng.random_range(-radius..radius),
    };
    Scalar::new(re, im)
}

pub fn random_element(table: &AlgebraTable, rng: &mut ChaCha8Rng, radius: f64) -> Element {
    Element::new(
        (0..table.dim())
            .map(|_| random_scalar(table.field(), rng, radius))
            .collect(),
    )
}

pub fn random_polynomial(
    table: &AlgebraTable,
    rng: &mut ChaCha8Rng,
    degree: usize,
) -> AlgebraPolynomial {
    AlgebraPolynomial::new(
        (0..=degree)
            .map(|_| random_element(table, rng, 1.0))
            .collect(),
    )
    .unwrap()
}

/// Multistart Newton iteration on the full algebra: at each step solves
/// `M_{p'(w)} delta = p(w)` through the regular representation and moves
/// `w -> w - delta`. Returns every start that converged to residual `tol`.
pub fn newton_multistart(
    table: &AlgebraTable,
    p: &AlgebraPolynomial,
    starts: usize,
    iterations: usize,
    tol: f64,
    seed: u64,
) -> Vec<Element> {
    let derivative = formal_poly_derivative(p);
    let mut rng = rng(seed);
    let mut found = Vec::new();
    'starts: for _ in 0..starts {
        let mut w = random_element(table, &mut rng, 2.0);
        for _ in 0..iterations {
            let value = table.eval_poly(p, &w).unwrap();
            if value.inf_norm() <= tol {
                found.push(w);
                continue 'starts;
            }
            let slope = table.eval_poly(&derivative, &w).unwrap();
            let jacobian = table.regular_representation(&slope);
            let rhs = DVector::from_iterator(table.dim(), value.coeffs().iter().copied());
            let Some(delta) = jacobian.lu().solve(&rhs) else {
                continue 'starts;
            };
            if delta.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                continue 'starts;
            }
            let step = Element::new(delta.iter().copied().collect());
            w = table.sub(&w, &step).unwrap();
            if w.inf_norm() > 1e9 {
                continue 'starts;
            }
        }
        if table.eval_poly(p, &w).unwrap().inf_norm() <= tol {
            found.push(w);
        }
    }
    found
}

/// Distance from `w` to the closest element of `set`, in max norm.
pub fn distance_to_set(table: &AlgebraTable, w: &Element, set: &[Element]) -> f64 {
    set.iter()
        .map(|r| table.sub(w, r).unwrap().inf_norm())
        .fold(f64::INFINITY, f64::min)
}
