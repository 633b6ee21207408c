//! Bundled algebras used by the test suite, the CLI fixtures, and the docs.

use crate::algebra::{AlgebraTable, Element};
use crate::scalar::{FieldTag, Scalar};

/// Builds a table from the non-unit basis products `(i, j, e_i * e_j)`,
/// synthesizing the unit rows and the symmetric completion.
fn build(field: FieldTag, names: &[&str], products: &[(usize, usize, &[f64])]) -> AlgebraTable {
    let d = names.len();
    let mut c = vec![Scalar::new(0.0, 0.0); d * d * d];
    let set = |i: usize, j: usize, k: usize, v: f64, c: &mut Vec<Scalar>| {
        c[(i * d + j) * d + k] = Scalar::new(v, 0.0);
    };
    for j in 0..d {
        set(0, j, j, 1.0, &mut c);
        set(j, 0, j, 1.0, &mut c);
    }
    for &(i, j, coeffs) in products {
        assert_eq!(coeffs.len(), d);
        for (k, &v) in coeffs.iter().enumerate() {
            set(i, j, k, v, &mut c);
            set(j, i, k, v, &mut c);
        }
    }
    let names = names.iter().map(|s| s.to_string()).collect();
    AlgebraTable::new(field, d, Some(names), c).expect("fixture table is well-formed")
}

/// The bicomplex algebra over C: basis {1, e} with e^2 = 1.
pub fn bicomplex() -> AlgebraTable {
    build(FieldTag::ComplexField, &["1", "e"], &[(1, 1, &[1.0, 0.0])])
}

/// The hyperbolic numbers: the same table as [`bicomplex`] but over R.
pub fn hyperbolic() -> AlgebraTable {
    build(FieldTag::RealField, &["1", "e"], &[(1, 1, &[1.0, 0.0])])
}

/// The real 4-dimensional algebra with e^2 = f^2 = g^2 = 1 and efg = 1,
/// which closes to ef = g, eg = f, fg = e.
pub fn efg() -> AlgebraTable {
    build(
        FieldTag::RealField,
        &["1", "e", "f", "g"],
        &[
            (1, 1, &[1.0, 0.0, 0.0, 0.0]),
            (1, 2, &[0.0, 0.0, 0.0, 1.0]),
            (1, 3, &[0.0, 0.0, 1.0, 0.0]),
            (2, 2, &[1.0, 0.0, 0.0, 0.0]),
            (2, 3, &[0.0, 1.0, 0.0, 0.0]),
            (3, 3, &[1.0, 0.0, 0.0, 0.0]),
        ],
    )
}

/// The dual numbers: eps^2 = 0. Not semisimple; idempotent discovery
/// must reject it.
pub fn dual_numbers() -> AlgebraTable {
    build(FieldTag::RealField, &["1", "eps"], &[(1, 1, &[0.0, 0.0])])
}

/// C viewed as a 2-dimensional real algebra: i^2 = -1. Splits over C but
/// not over R; discovery must report a non-split spectrum.
pub fn complex_as_real() -> AlgebraTable {
    build(FieldTag::RealField, &["1", "i"], &[(1, 1, &[-1.0, 0.0])])
}

/// The two bicomplex idempotents (1 + e)/2 and (1 - e)/2, in the
/// canonical (lexicographic) order used by discovery.
pub fn bicomplex_idempotents() -> Vec<Element> {
    vec![
        Element::from_reals(&[0.5, -0.5]),
        Element::from_reals(&[0.5, 0.5]),
    ]
}

/// The four efg idempotents (1 +- e +- f +- g)/4 with sign patterns
/// (+++), (--+), (+--), (-+-), in canonical order.
pub fn efg_idempotents() -> Vec<Element> {
    let mut idems: Vec<Element> = [
        [1.0, 1.0, 1.0, 1.0],
        [1.0, -1.0, -1.0, 1.0],
        [1.0, 1.0, -1.0, -1.0],
        [1.0, -1.0, 1.0, -1.0],
    ]
    .iter()
    .map(|signs| Element::from_reals(&signs.map(|s| s / 4.0)))
    .collect();
    idems.sort_by(|a, b| {
        let key = |e: &Element| e.coeffs().iter().map(|z| z.re).collect::<Vec<_>>();
        key(a).partial_cmp(&key(b)).unwrap()
    });
    idems
}
