//! Algebras given by structure constants, and element arithmetic.
//!
//! An algebra is a finite-dimensional commutative unitary algebra over
//! R or C, described by a rank-3 tensor `c[i][j][k]` with
//! `e_i * e_j = sum_k c[i][j][k] e_k`. Basis index 0 is always the unit.
//! Elements are plain coefficient vectors; every operation takes the
//! table explicitly as context.

use nalgebra::DMatrix;
use thiserror::Error;

use crate::scalar::{FieldTag, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("structure constant tensor has length {got}, expected {expected}")]
    BadTensorLength { expected: usize, got: usize },
    #[error("algebra dimension must be positive")]
    ZeroDimension,
    #[error("real-field scalar has nonzero imaginary part (entry {index})")]
    ComplexInRealField { index: usize },
    #[error("expected {expected} basis names, got {got}")]
    BadNameCount { expected: usize, got: usize },
    #[error("polynomial has no coefficients")]
    EmptyPolynomial,
}

/// An element of an algebra: its coordinates in the defining basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Element {
    coeffs: Vec<Scalar>,
}

impl Element {
    pub fn new(coeffs: Vec<Scalar>) -> Self {
        Element { coeffs }
    }

    pub fn from_reals(coeffs: &[f64]) -> Self {
        Element {
            coeffs: coeffs.iter().map(|&x| Scalar::new(x, 0.0)).collect(),
        }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Max modulus of the coordinates.
    pub fn inf_norm(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn neg(&self) -> Element {
        Element {
            coeffs: self.coeffs.iter().map(|z| -z).collect(),
        }
    }

    /// Coordinatewise scalar multiple `s * a`.
    pub fn scale(&self, s: Scalar) -> Element {
        Element {
            coeffs: self.coeffs.iter().map(|z| s * z).collect(),
        }
    }
}

/// Residuals of the three algebra axioms, as checked by [`AlgebraTable::verify`].
#[derive(Debug, Clone, PartialEq)]
pub struct AxiomReport {
    pub commutativity: f64,
    pub unit: f64,
    pub associativity: f64,
    pub tol: f64,
}

impl AxiomReport {
    pub fn max_residual(&self) -> f64 {
        self.commutativity.max(self.unit).max(self.associativity)
    }

    pub fn pass(&self) -> bool {
        self.max_residual() <= self.tol
    }
}

/// A commutative unitary algebra defined by structure constants.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraTable {
    field: FieldTag,
    dim: usize,
    basis_names: Vec<String>,
    /// Flattened `c[i][j][k]` at index `(i * dim + j) * dim + k`.
    constants: Vec<Scalar>,
}

impl AlgebraTable {
    /// Builds a table from a flattened constants tensor.
    ///
    /// Validates shape only; the axioms are checked separately by
    /// [`AlgebraTable::verify`] so that defective tables can be
    /// constructed and diagnosed.
    pub fn new(
        field: FieldTag,
        dim: usize,
        basis_names: Option<Vec<String>>,
        constants: Vec<Scalar>,
    ) -> Result<Self, AlgebraError> {
        if dim == 0 {
            return Err(AlgebraError::ZeroDimension);
        }
        if constants.len() != dim * dim * dim {
            return Err(AlgebraError::BadTensorLength {
                expected: dim * dim * dim,
                got: constants.len(),
            });
        }
        if field == FieldTag::RealField {
            if let Some(index) = constants.iter().position(|z| z.im != 0.0) {
                return Err(AlgebraError::ComplexInRealField { index });
            }
        }
        let basis_names = match basis_names {
            Some(names) => {
                if names.len() != dim {
                    return Err(AlgebraError::BadNameCount {
                        expected: dim,
                        got: names.len(),
                    });
                }
                names
            }
            None => (0..dim).map(|k| format!("e{k}")).collect(),
        };
        Ok(AlgebraTable {
            field,
            dim,
            basis_names,
            constants,
        })
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    /// The structure constant `c[i][j][k]`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.constants[(i * self.dim + j) * self.dim + k]
    }

    pub fn zero(&self) -> Element {
        Element::new(vec![Scalar::new(0.0, 0.0); self.dim])
    }

    /// The unit `e_0`.
    pub fn unit(&self) -> Element {
        self.basis_element(0)
    }

    pub fn basis_element(&self, k: usize) -> Element {
        assert!(k < self.dim, "basis index {k} out of range");
        let mut coeffs = vec![Scalar::new(0.0, 0.0); self.dim];
        coeffs[k] = Scalar::new(1.0, 0.0);
        Element::new(coeffs)
    }

    fn check_dim(&self, a: &Element) -> Result<(), AlgebraError> {
        if a.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                got: a.len(),
            });
        }
        Ok(())
    }

    pub fn add(&self, a: &Element, b: &Element) -> Result<Element, AlgebraError> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        Ok(Element::new(
            a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        ))
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Result<Element, AlgebraError> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        Ok(Element::new(
            a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        ))
    }

    /// Product through the structure constants.
    ///
    /// Accumulates over unordered basis pairs so that `mul(a, b)` and
    /// `mul(b, a)` perform bitwise-identical float operations whenever the
    /// table is exactly commutative.
    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element, AlgebraError> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        let d = self.dim;
        let zero = Scalar::new(0.0, 0.0);
        let mut out = vec![zero; d];
        for i in 0..d {
            for j in i..d {
                let w = if i == j {
                    a.coeffs[i] * b.coeffs[i]
                } else {
                    a.coeffs[i] * b.coeffs[j] + a.coeffs[j] * b.coeffs[i]
                };
                if w == zero {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.constant(i, j, k);
                    if c != zero {
                        *o += w * c;
                    }
                }
            }
        }
        Ok(Element::new(out))
    }

    /// The matrix of multiplication by `a`: column `j` holds the coordinates
    /// of `a * e_j`.
    pub fn regular_representation(&self, a: &Element) -> DMatrix<Scalar> {
        assert_eq!(a.len(), self.dim, "element has wrong dimension");
        let d = self.dim;
        DMatrix::from_fn(d, d, |k, j| {
            let mut acc = Scalar::new(0.0, 0.0);
            for i in 0..d {
                let c = self.constant(i, j, k);
                if c != Scalar::new(0.0, 0.0) {
                    acc += a.coeffs[i] * c;
                }
            }
            acc
        })
    }

    /// Checks commutativity, the unit law, and associativity, reporting the
    /// max residual of each.
    pub fn verify(&self, tol_axiom: f64) -> AxiomReport {
        let d = self.dim;
        let mut comm: f64 = 0.0;
        for i in 0..d {
            for j in 0..i {
                for k in 0..d {
                    comm = comm.max((self.constant(i, j, k) - self.constant(j, i, k)).norm());
                }
            }
        }
        let mut unit: f64 = 0.0;
        for j in 0..d {
            for k in 0..d {
                let delta = if j == k { 1.0 } else { 0.0 };
                unit = unit.max((self.constant(0, j, k) - Scalar::new(delta, 0.0)).norm());
                unit = unit.max((self.constant(j, 0, k) - Scalar::new(delta, 0.0)).norm());
            }
        }
        // (e_i e_j) e_k = e_i (e_j e_k), expressed on the constants.
        let mut assoc: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for q in 0..d {
                        let mut lhs = Scalar::new(0.0, 0.0);
                        let mut rhs = Scalar::new(0.0, 0.0);
                        for p in 0..d {
                            lhs += self.constant(i, j, p) * self.constant(p, k, q);
                            rhs += self.constant(j, k, p) * self.constant(i, p, q);
                        }
                        assoc = assoc.max((lhs - rhs).norm());
                    }
                }
            }
        }
        AxiomReport {
            commutativity: comm,
            unit,
            associativity: assoc,
            tol: tol_axiom,
        }
    }
}
