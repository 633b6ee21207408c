//! Algebra-valued polynomials and the reduction of `p(w) = 0` to scalar
//! polynomial equations through a complete orthogonal idempotent system.
//!
//! Projecting every coefficient onto the Pierce ideals turns one equation
//! over the algebra into one scalar equation per ideal; the algebra roots
//! are exactly the recombinations of the per-ideal scalar roots. Zero
//! divisors make degenerate components reachable (a component polynomial
//! may vanish identically or reduce to a nonzero constant), so the
//! component solutions close over those cases explicitly instead of
//! erroring.

use nalgebra::DMatrix;
use thiserror::Error;

use crate::algebra::{AlgebraError, AlgebraTable, Element};
use crate::eigen;
use crate::scalar::{FieldTag, Scalar};
use crate::spectral::{
    canonical_key, compare_keys, pierce_project, recombine, IdempotentSystem, SpectralError,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error("idempotent system has {count} idempotents but the algebra has dimension {dim}")]
    IncompleteSystem { count: usize, dim: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// A polynomial with algebra coefficients; index = power of the unknown.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraPolynomial {
    coeffs: Vec<Element>,
}

impl AlgebraPolynomial {
    pub fn new(coeffs: Vec<Element>) -> Result<Self, AlgebraError> {
        let Some(first) = coeffs.first() else {
            return Err(AlgebraError::EmptyPolynomial);
        };
        let dim = first.len();
        for c in &coeffs {
            if c.len() != dim {
                return Err(AlgebraError::DimensionMismatch {
                    expected: dim,
                    got: c.len(),
                });
            }
        }
        Ok(AlgebraPolynomial { coeffs })
    }

    /// A polynomial with scalar coefficients, embedded along the unit.
    pub fn from_scalar_coeffs(table: &AlgebraTable, ks: &[Scalar]) -> Self {
        let coeffs = ks.iter().map(|&k| table.unit().scale(k)).collect();
        AlgebraPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[Element] {
        &self.coeffs
    }

    /// Largest power whose coefficient exceeds `tol_lead` in max norm,
    /// or `None` for the (numerically) zero polynomial.
    pub fn degree(&self, tol_lead: f64) -> Option<usize> {
        self.coeffs.iter().rposition(|c| c.inf_norm() > tol_lead)
    }

    pub fn dim(&self) -> usize {
        self.coeffs[0].len()
    }
}

impl AlgebraTable {
    /// Horner evaluation of `p` at `w`.
    pub fn eval_poly(&self, p: &AlgebraPolynomial, w: &Element) -> Result<Element, AlgebraError> {
        let mut acc = p.coeffs.last().expect("polynomial is non-empty").clone();
        for a in p.coeffs.iter().rev().skip(1) {
            acc = self.add(&self.mul(&acc, w)?, a)?;
        }
        Ok(acc)
    }
}

/// `|p(w)|_inf`.
pub fn residual(
    table: &AlgebraTable,
    p: &AlgebraPolynomial,
    w: &Element,
) -> Result<f64, AlgebraError> {
    Ok(table.eval_poly(p, w)?.inf_norm())
}

/// One row of the reduced system: a polynomial over the base field.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarPolynomial {
    coeffs: Vec<Scalar>,
}

impl ScalarPolynomial {
    pub fn new(coeffs: Vec<Scalar>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "polynomial needs at least one coefficient"
        );
        ScalarPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn eval(&self, x: Scalar) -> Scalar {
        let mut acc = *self.coeffs.last().unwrap();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_with_derivative(&self, x: Scalar) -> (Scalar, Scalar) {
        let mut acc = *self.coeffs.last().unwrap();
        let mut der = Scalar::new(0.0, 0.0);
        for c in self.coeffs.iter().rev().skip(1) {
            der = der * x + acc;
            acc = acc * x + c;
        }
        (acc, der)
    }

    pub fn effective_degree(&self, tol_lead: f64) -> Option<usize> {
        self.coeffs.iter().rposition(|c| c.norm() > tol_lead)
    }
}

/// Classification of one component equation.
#[derive(Debug, Clone, PartialEq)]
pub enum ComponentKind {
    /// The roots in K (possibly none, e.g. x^2 + 1 over R).
    Finite(Vec<Scalar>),
    /// The component polynomial vanishes identically: every value of K solves it.
    AllOfK,
    /// The component polynomial is a nonzero constant: nothing solves it.
    Empty,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComponentSolution {
    pub kind: ComponentKind,
    /// `|q(rho)|` for each root, parallel to the `Finite` list.
    pub residuals: Vec<f64>,
}

/// All roots of an algebra polynomial: per-component scalar solutions plus
/// the recombined algebra roots.
#[derive(Debug, Clone)]
pub struct RootSet {
    pub components: Vec<ComponentSolution>,
    pub roots: Vec<Element>,
    /// `|p(root)|_inf` for each enumerated root.
    pub residuals: Vec<f64>,
    /// Enumeration hit `max_roots` before exhausting the cartesian product.
    pub truncated: bool,
    /// Some component vanished identically; the listed roots set that
    /// component to 0, one representative of a free family.
    pub parametric: bool,
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Coefficients at or below this magnitude are treated as zero when
    /// classifying degrees.
    pub tol_lead: f64,
    /// Max `|p(root)|_inf` an enumerated root may have; candidates beyond
    /// this are dropped.
    pub tol_root: f64,
    /// Roots of real polynomials keep this much imaginary part before
    /// being discarded as complex.
    pub tol_imag: f64,
    /// Cap on the enumerated cartesian product.
    pub max_roots: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            tol_lead: 1e-12,
            tol_root: 1e-8,
            tol_imag: 1e-8,
            max_roots: 4096,
        }
    }
}

/// Projects every coefficient of `p` through the system: component `s`
/// receives the scalar polynomial with coefficients
/// `pierce_project(a_r)[s]`.
pub fn reduce(
    table: &AlgebraTable,
    p: &AlgebraPolynomial,
    system: &IdempotentSystem,
) -> Result<Vec<ScalarPolynomial>, SolveError> {
    if system.len() != table.dim() {
        return Err(SolveError::IncompleteSystem {
            count: system.len(),
            dim: table.dim(),
        });
    }
    let n = system.len();
    let mut rows = vec![Vec::with_capacity(p.coeffs().len()); n];
    for a in p.coeffs() {
        let ks = pierce_project(table, a, system)?;
        for (row, k) in rows.iter_mut().zip(ks) {
            row.push(k);
        }
    }
    Ok(rows.into_iter().map(ScalarPolynomial::new).collect())
}

/// Roots of one scalar polynomial over R or C.
///
/// Strips numerically-zero leading coefficients, classifies the degenerate
/// cases, and otherwise takes the eigenvalues of the balanced companion
/// matrix, polished by up to three Newton steps. Over R, roots with
/// imaginary part within `tol_imag` are projected onto the real axis and
/// the rest are discarded.
pub fn solve_scalar(
    q: &ScalarPolynomial,
    field: FieldTag,
    opts: &SolveOptions,
) -> ComponentSolution {
    let Some(degree) = q.effective_degree(opts.tol_lead) else {
        return ComponentSolution {
            kind: ComponentKind::AllOfK,
            residuals: Vec::new(),
        };
    };
    if degree == 0 {
        return ComponentSolution {
            kind: ComponentKind::Empty,
            residuals: Vec::new(),
        };
    }
    let effective = ScalarPolynomial::new(q.coeffs()[..=degree].to_vec());
    let lead = effective.coeffs()[degree];
    let companion = DMatrix::from_fn(degree, degree, |i, j| {
        if j + 1 == degree {
            -effective.coeffs()[i] / lead
        } else if i == j + 1 {
            Scalar::new(1.0, 0.0)
        } else {
            Scalar::new(0.0, 0.0)
        }
    });
    let raw =
        eigen::eigenvalues(&companion).expect("companion eigenvalue iteration failed to converge");
    let mut roots: Vec<Scalar> = raw.into_iter().map(|r| polish(&effective, r)).collect();
    if field == FieldTag::RealField {
        roots.retain(|r| r.im.abs() <= opts.tol_imag);
        for r in &mut roots {
            r.im = 0.0;
        }
    }
    roots.sort_by(|a, b| {
        let round = |x: f64| (x / 1e-9).round() + 0.0;
        round(a.re)
            .total_cmp(&round(b.re))
            .then(round(a.im).total_cmp(&round(b.im)))
    });
    let residuals = roots.iter().map(|&r| q.eval(r).norm()).collect();
    ComponentSolution {
        kind: ComponentKind::Finite(roots),
        residuals,
    }
}

/// Mixed-radix increment; false once the counter wraps around.
fn next_index(index: &mut [usize], radices: &[usize]) -> bool {
    for pos in (0..index.len()).rev() {
        index[pos] += 1;
        if index[pos] < radices[pos] {
            return true;
        }
        index[pos] = 0;
    }
    false
}

/// Up to three Newton steps, kept only while they reduce the residual.
fn polish(q: &ScalarPolynomial, mut root: Scalar) -> Scalar {
    for _ in 0..3 {
        let (val, der) = q.eval_with_derivative(root);
        if val.norm() == 0.0 || der.norm() == 0.0 {
            break;
        }
        let step = val / der;
        let candidate = root - step;
        if q.eval(candidate).norm() >= val.norm() {
            break;
        }
        root = candidate;
        if step.norm() <= f64::EPSILON * (1.0 + root.norm()) {
            break;
        }
    }
    root
}

/// Solves `p(w) = 0`: reduces through the system, solves each component
/// over the base field, and recombines every selection of component roots.
pub fn solve(
    table: &AlgebraTable,
    p: &AlgebraPolynomial,
    system: &IdempotentSystem,
    opts: &SolveOptions,
) -> Result<RootSet, SolveError> {
    let components_polys = reduce(table, p, system)?;
    let components: Vec<ComponentSolution> = components_polys
        .iter()
        .map(|q| solve_scalar(q, table.field(), opts))
        .collect();
    let parametric = components
        .iter()
        .any(|c| matches!(c.kind, ComponentKind::AllOfK));
    let any_empty = components
        .iter()
        .any(|c| matches!(c.kind, ComponentKind::Empty));

    let mut roots: Vec<Element> = Vec::new();
    let mut residuals: Vec<f64> = Vec::new();
    let mut truncated = false;
    if !any_empty {
        let zero_choice = [Scalar::new(0.0, 0.0)];
        let choices: Vec<&[Scalar]> = components
            .iter()
            .map(|c| match &c.kind {
                ComponentKind::Finite(list) => list.as_slice(),
                // Representative of the free family.
                ComponentKind::AllOfK => &zero_choice,
                ComponentKind::Empty => unreachable!(),
            })
            .collect();
        if choices.iter().all(|c| !c.is_empty()) {
            let radices: Vec<usize> = choices.iter().map(|c| c.len()).collect();
            let mut index = vec![0usize; choices.len()];
            loop {
                if roots.len() == opts.max_roots {
                    truncated = true;
                    break;
                }
                let selection: Vec<Scalar> =
                    index.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
                let w = recombine(table, &selection, system)?;
                let res = residual(table, p, &w)?;
                if res <= opts.tol_root {
                    roots.push(w);
                    residuals.push(res);
                }
                if !next_index(&mut index, &radices) {
                    break;
                }
            }
        }
        let mut order: Vec<usize> = (0..roots.len()).collect();
        let keys: Vec<Vec<f64>> = roots.iter().map(canonical_key).collect();
        order.sort_by(|&a, &b| compare_keys(&keys[a], &keys[b]));
        roots = order.iter().map(|&i| roots[i].clone()).collect();
        residuals = order.iter().map(|&i| residuals[i]).collect();
    }
    Ok(RootSet {
        components,
        roots,
        residuals,
        truncated,
        parametric,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::spectral::Provenance;

    fn bicomplex_system() -> IdempotentSystem {
        IdempotentSystem::from_parts(
            fixtures::bicomplex_idempotents(),
            Provenance::Fixture,
            1e-10,
        )
    }

    fn poly_from_reals(rows: &[&[f64]]) -> AlgebraPolynomial {
        AlgebraPolynomial::new(rows.iter().map(|r| Element::from_reals(r)).collect()).unwrap()
    }

    #[test]
    fn eval_poly_matches_hand_computation() {
        let t = fixtures::bicomplex();
        // w^2 - 1 at e: e^2 - 1 = 0.
        let p = poly_from_reals(&[&[-1.0, 0.0], &[0.0, 0.0], &[1.0, 0.0]]);
        assert_eq!(t.eval_poly(&p, &t.basis_element(1)).unwrap(), t.zero());
        // w^2 - w at i1: 0.
        let q = poly_from_reals(&[&[0.0, 0.0], &[-1.0, 0.0], &[1.0, 0.0]]);
        let i1 = Element::from_reals(&[0.5, 0.5]);
        assert_eq!(t.eval_poly(&q, &i1).unwrap(), t.zero());
        // w^2 + 1 at e: e^2 + 1 = 2.
        let r = poly_from_reals(&[&[1.0, 0.0], &[0.0, 0.0], &[1.0, 0.0]]);
        assert_eq!(
            t.eval_poly(&r, &t.basis_element(1)).unwrap(),
            t.unit().scale(Scalar::new(2.0, 0.0))
        );
    }

    #[test]
    fn residual_examples() {
        let t = fixtures::bicomplex();
        let p = poly_from_reals(&[&[-1.0, 0.0], &[0.0, 0.0], &[1.0, 0.0]]);
        assert_eq!(residual(&t, &p, &t.basis_element(1)).unwrap(), 0.0);
        assert_eq!(residual(&t, &p, &t.zero()).unwrap(), 1.0);
        let q = poly_from_reals(&[&[0.0, 0.0], &[-1.0, 0.0], &[1.0, 0.0]]);
        let i1 = Element::from_reals(&[0.5, 0.5]);
        assert_eq!(residual(&t, &q, &i1).unwrap(), 0.0);
    }

    #[test]
    fn reduce_projects_coefficients() {
        let t = fixtures::bicomplex();
        let sys = bicomplex_system();
        // w^2 - 1 reduces to two copies of x^2 - 1.
        let p = poly_from_reals(&[&[-1.0, 0.0], &[0.0, 0.0], &[1.0, 0.0]]);
        let rows = reduce(&t, &p, &sys).unwrap();
        for row in &rows {
            assert_eq!(
                row.coeffs(),
                &[
                    Scalar::new(-1.0, 0.0),
                    Scalar::new(0.0, 0.0),
                    Scalar::new(1.0, 0.0)
                ]
            );
        }
        // e*w - 1: component along i2 = (1-e)/2 sees e -> -1, along i1 sees +1.
        let q = poly_from_reals(&[&[-1.0, 0.0], &[0.0, 1.0]]);
        let rows = reduce(&t, &q, &sys).unwrap();
        assert_eq!(
            rows[0].coeffs(),
            &[Scalar::new(-1.0, 0.0), Scalar::new(-1.0, 0.0)]
        );
        assert_eq!(
            rows[1].coeffs(),
            &[Scalar::new(-1.0, 0.0), Scalar::new(1.0, 0.0)]
        );
    }

    #[test]
    fn reduce_requires_complete_system() {
        let t = fixtures::bicomplex();
        let sys = IdempotentSystem::from_parts(vec![t.unit()], Provenance::Fixture, 1e-10);
        let p = poly_from_reals(&[&[1.0, 0.0]]);
        assert!(matches!(
            reduce(&t, &p, &sys),
            Err(SolveError::IncompleteSystem { count: 1, dim: 2 })
        ));
    }

    #[test]
    fn scalar_solver_classifies_degenerate_inputs() {
        let opts = SolveOptions::default();
        let zero = ScalarPolynomial::new(vec![Scalar::new(0.0, 0.0); 3]);
        assert_eq!(
            solve_scalar(&zero, FieldTag::RealField, &opts).kind,
            ComponentKind::AllOfK
        );
        let constant = ScalarPolynomial::new(vec![Scalar::new(5.0, 0.0)]);
        assert_eq!(
            solve_scalar(&constant, FieldTag::RealField, &opts).kind,
            ComponentKind::Empty
        );
    }

    #[test]
    fn scalar_solver_finds_real_roots() {
        let opts = SolveOptions::default();
        // x^2 - 1.
        let q = ScalarPolynomial::new(vec![
            Scalar::new(-1.0, 0.0),
            Scalar::new(0.0, 0.0),
            Scalar::new(1.0, 0.0),
        ]);
        let sol = solve_scalar(&q, FieldTag::RealField, &opts);
        let ComponentKind::Finite(roots) = &sol.kind else {
            panic!("expected finite component");
        };
        assert_eq!(roots.len(), 2);
        assert!((roots[0] - Scalar::new(-1.0, 0.0)).norm() < 1e-12);
        assert!((roots[1] - Scalar::new(1.0, 0.0)).norm() < 1e-12);
        // x^2 + 1 has no real roots but two complex ones.
        let q = ScalarPolynomial::new(vec![
            Scalar::new(1.0, 0.0),
            Scalar::new(0.0, 0.0),
            Scalar::new(1.0, 0.0),
        ]);
        let sol = solve_scalar(&q, FieldTag::RealField, &opts);
        assert_eq!(sol.kind, ComponentKind::Finite(Vec::new()));
        let sol = solve_scalar(&q, FieldTag::ComplexField, &opts);
        let ComponentKind::Finite(roots) = &sol.kind else {
            panic!("expected finite component");
        };
        assert_eq!(roots.len(), 2);
        assert!((roots[0] - Scalar::new(0.0, -1.0)).norm() < 1e-12);
        assert!((roots[1] - Scalar::new(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn solves_w_squared_minus_one_over_bicomplex() {
        let t = fixtures::bicomplex();
        let sys = bicomplex_system();
        let p = poly_from_reals(&[&[-1.0, 0.0], &[0.0, 0.0], &[1.0, 0.0]]);
        let rs = solve(&t, &p, &sys, &SolveOptions::default()).unwrap();
        assert!(!rs.truncated && !rs.parametric);
        assert_eq!(rs.roots.len(), 4);
        let expected = [
            Element::from_reals(&[-1.0, 0.0]),
            Element::from_reals(&[0.0, -1.0]),
            Element::from_reals(&[0.0, 1.0]),
            Element::from_reals(&[1.0, 0.0]),
        ];
        for want in &expected {
            assert!(
                rs.roots
                    .iter()
                    .any(|got| t.sub(got, want).unwrap().inf_norm() < 1e-12),
                "missing root {want:?}"
            );
        }
        for r in &rs.residuals {
            assert!(*r <= 1e-12);
        }
    }

    #[test]
    fn solves_w_squared_minus_w_over_bicomplex() {
        let t = fixtures::bicomplex();
        let sys = bicomplex_system();
        let p = poly_from_reals(&[&[0.0, 0.0], &[-1.0, 0.0], &[1.0, 0.0]]);
        let rs = solve(&t, &p, &sys, &SolveOptions::default()).unwrap();
        assert_eq!(rs.roots.len(), 4);
        let expected = [
            Element::from_reals(&[0.0, 0.0]),
            Element::from_reals(&[1.0, 0.0]),
            Element::from_reals(&[0.5, 0.5]),
            Element::from_reals(&[0.5, -0.5]),
        ];
        for want in &expected {
            assert!(rs
                .roots
                .iter()
                .any(|got| t.sub(got, want).unwrap().inf_norm() < 1e-12));
        }
    }

    #[test]
    fn parametric_and_empty_components() {
        let t = fixtures::bicomplex();
        let sys = bicomplex_system();
        // Coefficients proportional to i1: the i2 component vanishes.
        let i1 = Element::from_reals(&[0.5, 0.5]);
        let p = AlgebraPolynomial::new(vec![i1.neg(), t.zero(), i1.clone()]).unwrap();
        let rs = solve(&t, &p, &sys, &SolveOptions::default()).unwrap();
        assert!(rs.parametric);
        assert!(!rs.roots.is_empty());
        for r in &rs.residuals {
            assert!(*r <= 1e-12);
        }
        // Constant term i2 on a poly whose other coefficients live in i1:
        // the i2 component is the nonzero constant 1 -> no solutions at all.
        let i2 = Element::from_reals(&[0.5, -0.5]);
        let p = AlgebraPolynomial::new(vec![i2, t.zero(), i1]).unwrap();
        let rs = solve(&t, &p, &sys, &SolveOptions::default()).unwrap();
        assert!(rs.roots.is_empty());
        assert!(!rs.parametric);
        assert!(rs
            .components
            .iter()
            .any(|c| matches!(c.kind, ComponentKind::Empty)));
    }

    #[test]
    fn truncation_caps_enumeration() {
        let t = fixtures::bicomplex();
        let sys = bicomplex_system();
        let p = poly_from_reals(&[&[-1.0, 0.0], &[0.0, 0.0], &[1.0, 0.0]]);
        let opts = SolveOptions {
            max_roots: 3,
            ..Default::default()
        };
        let rs = solve(&t, &p, &sys, &opts).unwrap();
        assert!(rs.truncated);
        assert_eq!(rs.roots.len(), 3);
    }
}
