//! Property tests for the arithmetic layer, over both fixture algebras.

mod common;

use hypalg::{fixtures, AlgebraPolynomial, AlgebraTable, Element, FieldTag, Scalar};
use proptest::prelude::*;

fn coords(dim: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), dim)
}

fn element(table: &AlgebraTable, raw: &[(f64, f64)]) -> Element {
    let real = table.field() == FieldTag::RealField;
    Element::new(
        raw.iter()
            .map(|&(re, im)| Scalar::new(re, if real { 0.0 } else { im }))
            .collect(),
    )
}

fn tables() -> Vec<AlgebraTable> {
    vec![fixtures::bicomplex(), fixtures::efg()]
}

proptest! {
    #[test]
    fn mul_distributes_over_add(a in coords(4), b in coords(4), c in coords(4)) {
        for t in tables() {
            let d = t.dim();
            let (a, b, c) = (element(&t, &a[..d]), element(&t, &b[..d]), element(&t, &c[..d]));
            let lhs = t.mul(&a, &t.add(&b, &c).unwrap()).unwrap();
            let rhs = t.add(&t.mul(&a, &b).unwrap(), &t.mul(&a, &c).unwrap()).unwrap();
            prop_assert!(t.sub(&lhs, &rhs).unwrap().inf_norm() <= 1e-12);
        }
    }

    #[test]
    fn mul_commutes_bit_for_bit(a in coords(4), b in coords(4)) {
        for t in tables() {
            let d = t.dim();
            let (a, b) = (element(&t, &a[..d]), element(&t, &b[..d]));
            let ab = t.mul(&a, &b).unwrap();
            let ba = t.mul(&b, &a).unwrap();
            for (x, y) in ab.coeffs().iter().zip(ba.coeffs()) {
                prop_assert_eq!(x.re.to_bits(), y.re.to_bits());
                prop_assert_eq!(x.im.to_bits(), y.im.to_bits());
            }
        }
    }

    #[test]
    fn unit_is_neutral(a in coords(4)) {
        for t in tables() {
            let a = element(&t, &a[..t.dim()]);
            prop_assert_eq!(t.mul(&t.unit(), &a).unwrap(), a);
        }
    }

    #[test]
    fn representation_is_multiplicative(a in coords(4), b in coords(4)) {
        for t in tables() {
            let d = t.dim();
            let (a, b) = (element(&t, &a[..d]), element(&t, &b[..d]));
            let lhs = t.regular_representation(&t.mul(&a, &b).unwrap());
            let rhs = t.regular_representation(&a) * t.regular_representation(&b);
            let err = (lhs - rhs).iter().map(|z| z.norm()).fold(0.0, f64::max);
            prop_assert!(err <= 1e-10);
        }
    }

    #[test]
    fn representation_is_linear(a in coords(4), b in coords(4)) {
        for t in tables() {
            let d = t.dim();
            let (a, b) = (element(&t, &a[..d]), element(&t, &b[..d]));
            let lhs = t.regular_representation(&t.add(&a, &b).unwrap());
            let rhs = t.regular_representation(&a) + t.regular_representation(&b);
            let err = (lhs - rhs).iter().map(|z| z.norm()).fold(0.0, f64::max);
            prop_assert!(err <= 1e-12);
        }
    }

    #[test]
    fn horner_matches_repeated_mul_add(
        c in prop::collection::vec(coords(4), 1..6),
        w in coords(4),
    ) {
        for t in tables() {
            let d = t.dim();
            let coeffs: Vec<Element> = c.iter().map(|row| element(&t, &row[..d])).collect();
            let p = AlgebraPolynomial::new(coeffs.clone()).unwrap();
            let w = element(&t, &w[..d]);
            // Independent route: sum of a_r * w^r with explicit powers.
            let mut direct = t.zero();
            let mut power = t.unit();
            for (r, a) in coeffs.iter().enumerate() {
                if r > 0 {
                    power = t.mul(&power, &w).unwrap();
                }
                direct = t.add(&direct, &t.mul(a, &power).unwrap()).unwrap();
            }
            let horner = t.eval_poly(&p, &w).unwrap();
            prop_assert!(t.sub(&horner, &direct).unwrap().inf_norm() <= 1e-10);
        }
    }
}
