//! Differentiability in the algebra sense: directional derivatives,
//! the derivative along the unit direction, Cauchy-Riemann-type residuals,
//! higher derivatives, and Taylor expansion.
//!
//! A function `f(x) = sum_k e_k u_k(x)` is holomorphic over the algebra
//! exactly when the d-1 identities
//! `sum_j e_j du_j/dx_k = e_k * sum_j e_j du_j/dx_0` hold; the checker
//! reports the residual of each identity at a point. Polynomial functions
//! differentiate formally (exactly); black-box functions go through
//! central-difference stencils.

use thiserror::Error;

use crate::algebra::{AlgebraError, AlgebraTable, Element};
use crate::polysolve::AlgebraPolynomial;
use crate::scalar::Scalar;

#[derive(Debug, Error)]
pub enum HolomorphyError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("black-box evaluation failed: {0}")]
    BlackBoxEval(String),
    #[error("black-box derivatives of order {order} are not supported (max 3)")]
    UnsupportedOrder { order: u32 },
    #[error("derivative order must be at least 1")]
    ZeroOrder,
    #[error("finite-difference steps must be positive and finite")]
    BadStep,
}

/// A function from the algebra to itself: either a polynomial (evaluated
/// and differentiated exactly) or an opaque callable assumed smooth by
/// the caller.
pub enum AlgebraFunction<'f> {
    Poly(AlgebraPolynomial),
    BlackBox(&'f dyn Fn(&Element) -> Result<Element, String>),
}

impl<'f> AlgebraFunction<'f> {
    pub fn eval(&self, table: &AlgebraTable, x: &Element) -> Result<Element, HolomorphyError> {
        match self {
            AlgebraFunction::Poly(p) => Ok(table.eval_poly(p, x)?),
            AlgebraFunction::BlackBox(f) => {
                let y = f(x).map_err(HolomorphyError::BlackBoxEval)?;
                if y.len() != table.dim() {
                    return Err(AlgebraError::DimensionMismatch {
                        expected: table.dim(),
                        got: y.len(),
                    }
                    .into());
                }
                Ok(y)
            }
        }
    }
}

/// How a derivative value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivMethod {
    /// Exact coefficient rule on a polynomial.
    Formal,
    /// Central-difference stencil along the unit direction.
    FiniteDifference,
}

#[derive(Debug, Clone)]
pub struct DerivativeResult {
    pub value: Element,
    pub method: DerivMethod,
    /// Step used by the stencil; 0 for formal derivatives.
    pub step: f64,
}

/// Residuals of the Cauchy-Riemann-type conditions at one point, one per
/// non-unit basis direction.
#[derive(Debug, Clone)]
pub struct CRReport {
    pub residuals: Vec<f64>,
    pub max_residual: f64,
    pub step: f64,
}

impl CRReport {
    pub fn holomorphic_at(&self, tol: f64) -> bool {
        self.max_residual <= tol
    }
}

/// Coefficient rule `b_{r-1} = r * a_r`; constants map to the zero
/// polynomial.
pub fn formal_poly_derivative(p: &AlgebraPolynomial) -> AlgebraPolynomial {
    let dim = p.dim();
    let coeffs: Vec<Element> = p
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(r, a)| a.scale(Scalar::new(r as f64, 0.0)))
        .collect();
    let coeffs = if coeffs.is_empty() {
        vec![Element::new(vec![Scalar::new(0.0, 0.0); dim])]
    } else {
        coeffs
    };
    AlgebraPolynomial::new(coeffs).expect("derivative coefficients are well-formed")
}

/// Default decreasing step sequence for [`directional_derivative`]:
/// 1e-5 scaled to the magnitude of `x`, preceded by its double so the
/// quadratic error term can be extrapolated away.
pub fn default_derivative_steps(x: &Element) -> [f64; 2] {
    let h = 1e-5 * (1.0 + x.inf_norm());
    [2.0 * h, h]
}

fn central_difference(
    table: &AlgebraTable,
    f: &AlgebraFunction,
    x: &Element,
    direction: &Element,
    step: f64,
) -> Result<Element, HolomorphyError> {
    let scaled = direction.scale(Scalar::new(step, 0.0));
    let plus = f.eval(table, &table.add(x, &scaled)?)?;
    let minus = f.eval(table, &table.sub(x, &scaled)?)?;
    Ok(table
        .sub(&plus, &minus)?
        .scale(Scalar::new(1.0 / (2.0 * step), 0.0)))
}

/// Limit of `(f(x + eps*h) - f(x - eps*h)) / (2 eps)`: central-difference
/// estimates per step, Richardson-extrapolated across the two smallest.
///
/// For a holomorphic `f` this converges to `h * f'(x)`.
pub fn directional_derivative(
    table: &AlgebraTable,
    f: &AlgebraFunction,
    x: &Element,
    h: &Element,
    steps: &[f64],
) -> Result<Element, HolomorphyError> {
    if steps.is_empty() || steps.iter().any(|s| !s.is_finite() || *s <= 0.0) {
        return Err(HolomorphyError::BadStep);
    }
    let mut sorted = steps.to_vec();
    sorted.sort_by(f64::total_cmp);
    let small = sorted[0];
    let estimate_small = central_difference(table, f, x, h, small)?;
    if sorted.len() == 1 {
        return Ok(estimate_small);
    }
    let big = sorted[1];
    if big == small {
        return Ok(estimate_small);
    }
    let estimate_big = central_difference(table, f, x, h, big)?;
    // Both estimates carry an error C*step^2; eliminate it.
    let b2 = big * big;
    let s2 = small * small;
    let num = table.sub(
        &estimate_small.scale(Scalar::new(b2, 0.0)),
        &estimate_big.scale(Scalar::new(s2, 0.0)),
    )?;
    Ok(num.scale(Scalar::new(1.0 / (b2 - s2), 0.0)))
}

/// Base steps for black-box stencils of order 1..=3, before scaling by
/// the magnitude of `x`. Larger orders divide by higher powers of the
/// step, so the step grows with the order to stay above rounding noise.
const STENCIL_STEPS: [f64; 3] = [1e-5, 1e-4, 1e-3];

/// The order-`l` derivative of `f` at `x`.
///
/// Polynomials differentiate formally and exactly for any order;
/// black-box functions use central stencils along the unit direction and
/// are limited to order 3, beyond which double precision has no signal
/// left.
pub fn a_derivative(
    table: &AlgebraTable,
    f: &AlgebraFunction,
    x: &Element,
    order: u32,
) -> Result<DerivativeResult, HolomorphyError> {
    if order == 0 {
        return Err(HolomorphyError::ZeroOrder);
    }
    match f {
        AlgebraFunction::Poly(p) => {
            let mut d = formal_poly_derivative(p);
            for _ in 1..order {
                d = formal_poly_derivative(&d);
            }
            Ok(DerivativeResult {
                value: table.eval_poly(&d, x)?,
                method: DerivMethod::Formal,
                step: 0.0,
            })
        }
        AlgebraFunction::BlackBox(_) => {
            if order > 3 {
                return Err(HolomorphyError::UnsupportedOrder { order });
            }
            let h = STENCIL_STEPS[(order - 1) as usize] * (1.0 + x.inf_norm());
            let at = |offset: f64| -> Result<Element, HolomorphyError> {
                let shift = table.unit().scale(Scalar::new(offset * h, 0.0));
                f.eval(table, &table.add(x, &shift)?)
            };
            let value = match order {
                1 => {
                    let (p1, m1) = (at(1.0)?, at(-1.0)?);
                    table
                        .sub(&p1, &m1)?
                        .scale(Scalar::new(1.0 / (2.0 * h), 0.0))
                }
                2 => {
                    let (p1, c0, m1) = (at(1.0)?, at(0.0)?, at(-1.0)?);
                    let sum = table.sub(&table.add(&p1, &m1)?, &c0.scale(Scalar::new(2.0, 0.0)))?;
                    sum.scale(Scalar::new(1.0 / (h * h), 0.0))
                }
                _ => {
                    let (p2, p1, m1, m2) = (at(2.0)?, at(1.0)?, at(-1.0)?, at(-2.0)?);
                    let a = table.sub(&p2, &m2)?;
                    let b = table.sub(&p1, &m1)?.scale(Scalar::new(2.0, 0.0));
                    table
                        .sub(&a, &b)?
                        .scale(Scalar::new(1.0 / (2.0 * h * h * h), 0.0))
                }
            };
            Ok(DerivativeResult {
                value,
                method: DerivMethod::FiniteDifference,
                step: h,
            })
        }
    }
}

/// Residuals of the Cauchy-Riemann-type conditions at `x`.
///
/// For each non-unit direction `e_k` the left side is the
/// central-difference partial of `f` along `e_k` at step `h_fd`; the
/// right side is `e_k * f'(x)` with the derivative taken formally for
/// polynomials and by the same-step central difference along the unit
/// for black boxes.
pub fn check_cauchy_riemann(
    table: &AlgebraTable,
    f: &AlgebraFunction,
    x: &Element,
    h_fd: f64,
) -> Result<CRReport, HolomorphyError> {
    if !h_fd.is_finite() || h_fd <= 0.0 {
        return Err(HolomorphyError::BadStep);
    }
    let derivative = match f {
        AlgebraFunction::Poly(p) => table.eval_poly(&formal_poly_derivative(p), x)?,
        AlgebraFunction::BlackBox(_) => central_difference(table, f, x, &table.unit(), h_fd)?,
    };
    let mut residuals = Vec::with_capacity(table.dim() - 1);
    for k in 1..table.dim() {
        let ek = table.basis_element(k);
        let lhs = central_difference(table, f, x, &ek, h_fd)?;
        let rhs = table.mul(&ek, &derivative)?;
        residuals.push(table.sub(&lhs, &rhs)?.inf_norm());
    }
    let max_residual = residuals.iter().copied().fold(0.0, f64::max);
    Ok(CRReport {
        residuals,
        max_residual,
        step: h_fd,
    })
}

/// Taylor sum `sum_{l=0}^{order} f^(l)(x) h^l / l!`.
///
/// For a polynomial of degree m and order >= m the series terminates and
/// reproduces `f(x + h)` exactly up to rounding.
pub fn taylor_eval(
    table: &AlgebraTable,
    f: &AlgebraFunction,
    x: &Element,
    h: &Element,
    order: u32,
) -> Result<Element, HolomorphyError> {
    let mut acc = f.eval(table, x)?;
    let mut h_power = table.unit();
    let mut factorial = 1.0;
    for l in 1..=order {
        h_power = table.mul(&h_power, h)?;
        factorial *= l as f64;
        let dl = a_derivative(table, f, x, l)?.value;
        let term = table
            .mul(&dl, &h_power)?
            .scale(Scalar::new(1.0 / factorial, 0.0));
        acc = table.add(&acc, &term)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn poly_from_reals(rows: &[&[f64]]) -> AlgebraPolynomial {
        AlgebraPolynomial::new(rows.iter().map(|r| Element::from_reals(r)).collect()).unwrap()
    }

    /// w^2 as a polynomial over the bicomplex algebra.
    fn w_squared() -> AlgebraFunction<'static> {
        AlgebraFunction::Poly(poly_from_reals(&[&[0.0, 0.0], &[0.0, 0.0], &[1.0, 0.0]]))
    }

    #[test]
    fn directional_derivative_of_square() {
        let t = fixtures::bicomplex();
        let f = w_squared();
        // f = w^2, h = 1: limit is 2x.
        let x = Element::from_reals(&[0.3, -0.7]);
        let d =
            directional_derivative(&t, &f, &x, &t.unit(), &default_derivative_steps(&x)).unwrap();
        let expected = x.scale(Scalar::new(2.0, 0.0));
        assert!(t.sub(&d, &expected).unwrap().inf_norm() < 1e-8);
        // x = e, h = e: limit is 2*e*e = 2.
        let e = t.basis_element(1);
        let d = directional_derivative(&t, &f, &e, &e, &default_derivative_steps(&e)).unwrap();
        let expected = t.unit().scale(Scalar::new(2.0, 0.0));
        assert!(t.sub(&d, &expected).unwrap().inf_norm() < 1e-8);
    }

    #[test]
    fn directional_derivative_of_constant_is_zero() {
        let t = fixtures::bicomplex();
        let f = AlgebraFunction::Poly(poly_from_reals(&[&[4.0, 2.0]]));
        let x = Element::from_reals(&[1.0, 2.0]);
        let d = directional_derivative(&t, &f, &x, &t.basis_element(1), &[1e-4, 1e-5]).unwrap();
        assert!(d.inf_norm() < 1e-10);
    }

    #[test]
    fn formal_derivatives_of_cube() {
        let t = fixtures::bicomplex();
        // w^3.
        let p = poly_from_reals(&[&[0.0, 0.0], &[0.0, 0.0], &[0.0, 0.0], &[1.0, 0.0]]);
        let f = AlgebraFunction::Poly(p.clone());
        let x = Element::from_reals(&[0.5, 1.5]);
        let d1 = a_derivative(&t, &f, &x, 1).unwrap();
        assert_eq!(d1.method, DerivMethod::Formal);
        // 3x^2.
        let expected = t.mul(&x, &x).unwrap().scale(Scalar::new(3.0, 0.0));
        assert!(t.sub(&d1.value, &expected).unwrap().inf_norm() < 1e-14);
        // Third derivative is the constant 6.
        let d3 = a_derivative(&t, &f, &x, 3).unwrap();
        let expected = t.unit().scale(Scalar::new(6.0, 0.0));
        assert_eq!(d3.value, expected);
        // Fourth derivative vanishes.
        let d4 = a_derivative(&t, &f, &x, 4).unwrap();
        assert_eq!(d4.value, t.zero());
    }

    #[test]
    fn formal_derivative_keeps_algebra_coefficients() {
        let t = fixtures::bicomplex();
        // e*w^3 -> 3e*w^2.
        let e = t.basis_element(1);
        let p = AlgebraPolynomial::new(vec![t.zero(), t.zero(), t.zero(), e.clone()]).unwrap();
        let d = formal_poly_derivative(&p);
        assert_eq!(
            d.coeffs(),
            &[t.zero(), t.zero(), e.scale(Scalar::new(3.0, 0.0))]
        );
        // Constants drop to the zero polynomial.
        let c = AlgebraPolynomial::new(vec![e]).unwrap();
        assert_eq!(formal_poly_derivative(&c).coeffs(), &[t.zero()]);
    }

    #[test]
    fn black_box_derivative_matches_formal() {
        let t = fixtures::bicomplex();
        let table = t.clone();
        let square = move |x: &Element| table.mul(x, x).map_err(|e| e.to_string());
        let f_bb = AlgebraFunction::BlackBox(&square);
        let x = Element::from_reals(&[1.0, 1.0]);
        let d = a_derivative(&t, &f_bb, &x, 1).unwrap();
        assert_eq!(d.method, DerivMethod::FiniteDifference);
        let expected = x.scale(Scalar::new(2.0, 0.0));
        assert!(t.sub(&d.value, &expected).unwrap().inf_norm() < 1e-6);
        assert!(matches!(
            a_derivative(&t, &f_bb, &x, 4),
            Err(HolomorphyError::UnsupportedOrder { order: 4 })
        ));
    }

    #[test]
    fn cr_residuals_vanish_for_polynomials() {
        let t = fixtures::bicomplex();
        let f = w_squared();
        let x = Element::from_reals(&[0.2, 0.9]);
        let report = check_cauchy_riemann(&t, &f, &x, 1e-5).unwrap();
        assert_eq!(report.residuals.len(), 1);
        assert!(report.max_residual <= 1e-6);
        assert!(report.holomorphic_at(1e-4));
    }

    #[test]
    fn cr_flags_bicomplex_conjugation() {
        let t = fixtures::bicomplex();
        let conj = |x: &Element| -> Result<Element, String> {
            Ok(Element::new(vec![x.coeffs()[0], -x.coeffs()[1]]))
        };
        let f = AlgebraFunction::BlackBox(&conj);
        for x in [
            Element::from_reals(&[0.0, 0.0]),
            Element::from_reals(&[1.25, -3.5]),
        ] {
            let report = check_cauchy_riemann(&t, &f, &x, 1e-5).unwrap();
            assert!((report.residuals[0] - 2.0).abs() <= 1e-9);
            assert!(!report.holomorphic_at(1e-4));
        }
    }

    #[test]
    fn cr_residuals_of_constants_vanish() {
        let t = fixtures::efg();
        let f = AlgebraFunction::Poly(poly_from_reals(&[&[1.0, 2.0, 3.0, 4.0]]));
        let x = Element::from_reals(&[0.1, 0.2, 0.3, 0.4]);
        let report = check_cauchy_riemann(&t, &f, &x, 1e-5).unwrap();
        assert_eq!(report.residuals, vec![0.0, 0.0, 0.0]);
    }

    #[test]
    fn taylor_terminates_for_polynomials() {
        let t = fixtures::bicomplex();
        let f = w_squared();
        let x = Element::from_reals(&[0.4, -1.1]);
        let h = Element::from_reals(&[2.0, 0.5]);
        let sum = taylor_eval(&t, &f, &x, &h, 2).unwrap();
        let direct = f.eval(&t, &t.add(&x, &h).unwrap()).unwrap();
        assert!(t.sub(&sum, &direct).unwrap().inf_norm() < 1e-12);
        // Order 0 is just f(x).
        let sum0 = taylor_eval(&t, &f, &x, &h, 0).unwrap();
        assert_eq!(sum0, f.eval(&t, &x).unwrap());
    }

    #[test]
    fn taylor_works_on_black_boxes_up_to_order_three() {
        let t = fixtures::bicomplex();
        let table = t.clone();
        let square = move |x: &Element| table.mul(x, x).map_err(|e| e.to_string());
        let f = AlgebraFunction::BlackBox(&square);
        let x = Element::from_reals(&[0.4, -1.1]);
        let h = Element::from_reals(&[0.3, 0.2]);
        let sum = taylor_eval(&t, &f, &x, &h, 2).unwrap();
        let direct = f.eval(&t, &t.add(&x, &h).unwrap()).unwrap();
        assert!(t.sub(&sum, &direct).unwrap().inf_norm() < 1e-5);
        assert!(matches!(
            taylor_eval(&t, &f, &x, &h, 4),
            Err(HolomorphyError::UnsupportedOrder { order: 4 })
        ));
    }
}
