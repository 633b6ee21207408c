//! Python bindings: exposes the algebra table, idempotent discovery, the
//! polynomial solver, and the holomorphy checks. Elements cross the
//! boundary as lists of Python complex numbers; polynomials as lists of
//! elements indexed by power.

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use hypalg::{
    AlgebraFunction, AlgebraPolynomial, AlgebraTable, ComponentKind, Element, FieldTag, Provenance,
    SolveOptions, SpectralConfig,
};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A complete orthogonal idempotent system, as produced by
/// `Algebra.find_idempotents` or wrapped from user-supplied vectors.
#[pyclass(frozen, name = "IdempotentSystem", module = "pyhypalg")]
struct PyIdempotentSystem {
    system: hypalg::IdempotentSystem,
}

#[pymethods]
impl PyIdempotentSystem {
    #[getter]
    fn count(&self) -> usize {
        self.system.len()
    }

    #[getter]
    fn idempotents(&self) -> Vec<Vec<Complex64>> {
        self.system
            .idempotents()
            .iter()
            .map(|e| e.coeffs().to_vec())
            .collect()
    }

    #[getter]
    fn provenance(&self) -> &'static str {
        match self.system.provenance() {
            Provenance::Discovered => "discovered",
            Provenance::UserSupplied => "user-supplied",
            Provenance::Fixture => "fixture",
        }
    }

    fn __len__(&self) -> usize {
        self.system.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "IdempotentSystem(count={}, provenance={})",
            self.system.len(),
            self.provenance()
        )
    }
}

/// A commutative unitary algebra defined by structure constants.
#[pyclass(frozen, name = "Algebra", module = "pyhypalg")]
struct PyAlgebra {
    table: AlgebraTable,
}

impl PyAlgebra {
    fn element(&self, coeffs: Vec<Complex64>) -> PyResult<Element> {
        if coeffs.len() != self.table.dim() {
            return Err(value_err(format!(
                "expected {} coordinates, got {}",
                self.table.dim(),
                coeffs.len()
            )));
        }
        if self.table.field() == FieldTag::RealField {
            if let Some(bad) = coeffs.iter().find(|z| z.im != 0.0) {
                return Err(value_err(format!(
                    "real-field element has complex coordinate {bad}"
                )));
            }
        }
        Ok(Element::new(coeffs))
    }

    fn polynomial(&self, coeffs: Vec<Vec<Complex64>>) -> PyResult<AlgebraPolynomial> {
        let elems = coeffs
            .into_iter()
            .map(|c| self.element(c))
            .collect::<PyResult<Vec<_>>>()?;
        AlgebraPolynomial::new(elems).map_err(value_err)
    }

    fn scalar(&self, s: Complex64) -> PyResult<Complex64> {
        if self.table.field() == FieldTag::RealField && s.im != 0.0 {
            return Err(value_err(format!(
                "complex scalar {s} in a real-field algebra"
            )));
        }
        Ok(s)
    }
}

#[pymethods]
impl PyAlgebra {
    /// Parse an algebra from the text file format.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        let table = hypalg::parse_algebra(text).map_err(value_err)?;
        Ok(PyAlgebra { table })
    }

    /// Read and parse an algebra file.
    #[staticmethod]
    fn from_file(path: &str) -> PyResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| value_err(format!("{path}: {e}")))?;
        let table = hypalg::parse_algebra(&text).map_err(|e| value_err(format!("{path}: {e}")))?;
        Ok(PyAlgebra { table })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.table.dim()
    }

    #[getter]
    fn field(&self) -> &'static str {
        self.table.field().symbol()
    }

    #[getter]
    fn names(&self) -> Vec<String> {
        self.table.basis_names().to_vec()
    }

    fn __repr__(&self) -> String {
        format!(
            "Algebra(field={}, dim={}, names={:?})",
            self.field(),
            self.dim(),
            self.table.basis_names()
        )
    }

    /// Max residual of each algebra axiom.
    #[pyo3(signature = (tol=1e-9))]
    fn verify<'py>(&self, py: Python<'py>, tol: f64) -> PyResult<Bound<'py, PyDict>> {
        let report = self.table.verify(tol);
        let dict = PyDict::new(py);
        dict.set_item("commutativity", report.commutativity)?;
        dict.set_item("unit", report.unit)?;
        dict.set_item("associativity", report.associativity)?;
        dict.set_item("tolerance", report.tol)?;
        dict.set_item("pass", report.pass())?;
        Ok(dict)
    }

    fn unit(&self) -> Vec<Complex64> {
        self.table.unit().coeffs().to_vec()
    }

    fn basis_element(&self, k: usize) -> PyResult<Vec<Complex64>> {
        if k >= self.table.dim() {
            return Err(value_err(format!("basis index {k} out of range")));
        }
        Ok(self.table.basis_element(k).coeffs().to_vec())
    }

    fn add(&self, a: Vec<Complex64>, b: Vec<Complex64>) -> PyResult<Vec<Complex64>> {
        let (a, b) = (self.element(a)?, self.element(b)?);
        Ok(self.table.add(&a, &b).map_err(value_err)?.coeffs().to_vec())
    }

    fn sub(&self, a: Vec<Complex64>, b: Vec<Complex64>) -> PyResult<Vec<Complex64>> {
        let (a, b) = (self.element(a)?, self.element(b)?);
        Ok(self.table.sub(&a, &b).map_err(value_err)?.coeffs().to_vec())
    }

    fn mul(&self, a: Vec<Complex64>, b: Vec<Complex64>) -> PyResult<Vec<Complex64>> {
        let (a, b) = (self.element(a)?, self.element(b)?);
        Ok(self.table.mul(&a, &b).map_err(value_err)?.coeffs().to_vec())
    }

    fn neg(&self, a: Vec<Complex64>) -> PyResult<Vec<Complex64>> {
        Ok(self.element(a)?.neg().coeffs().to_vec())
    }

    fn scalar_mul(&self, s: Complex64, a: Vec<Complex64>) -> PyResult<Vec<Complex64>> {
        let s = self.scalar(s)?;
        Ok(self.element(a)?.scale(s).coeffs().to_vec())
    }

    /// Horner evaluation of a polynomial given as coefficient elements
    /// (index = power of w).
    fn eval_poly(
        &self,
        coeffs: Vec<Vec<Complex64>>,
        w: Vec<Complex64>,
    ) -> PyResult<Vec<Complex64>> {
        let p = self.polynomial(coeffs)?;
        let w = self.element(w)?;
        Ok(self
            .table
            .eval_poly(&p, &w)
            .map_err(value_err)?
            .coeffs()
            .to_vec())
    }

    /// The matrix of multiplication by `a`, as a list of rows.
    fn regular_representation(&self, a: Vec<Complex64>) -> PyResult<Vec<Vec<Complex64>>> {
        let a = self.element(a)?;
        let m = self.table.regular_representation(&a);
        Ok((0..m.nrows())
            .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
            .collect())
    }

    /// Discover a complete orthogonal idempotent system.
    #[pyo3(signature = (seed=0, tol=1e-8))]
    fn find_idempotents(&self, seed: u64, tol: f64) -> PyResult<PyIdempotentSystem> {
        let config = SpectralConfig {
            seed,
            tol_idem: tol,
            ..Default::default()
        };
        let system = hypalg::find_idempotent_system(&self.table, &config)
            .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
        Ok(PyIdempotentSystem { system })
    }

    /// Wrap user-supplied idempotents, verifying the system invariants.
    #[pyo3(signature = (idems, tol=1e-8))]
    fn idempotent_system(
        &self,
        idems: Vec<Vec<Complex64>>,
        tol: f64,
    ) -> PyResult<PyIdempotentSystem> {
        let elems = idems
            .into_iter()
            .map(|c| self.element(c))
            .collect::<PyResult<Vec<_>>>()?;
        let report =
            hypalg::verify_idempotent_system(&self.table, &elems, tol).map_err(value_err)?;
        if !report.pass() {
            return Err(value_err(format!(
                "idempotent system fails verification (idempotency {:e}, \
                 orthogonality {:e}, completeness {:e}, rank {}/{})",
                report.idempotency,
                report.orthogonality,
                report.completeness,
                report.rank,
                report.count
            )));
        }
        Ok(PyIdempotentSystem {
            system: hypalg::IdempotentSystem::from_parts(elems, Provenance::UserSupplied, tol),
        })
    }

    /// Residuals of the idempotent-system invariants for candidate vectors.
    #[pyo3(signature = (idems, tol=1e-8))]
    fn verify_idempotents<'py>(
        &self,
        py: Python<'py>,
        idems: Vec<Vec<Complex64>>,
        tol: f64,
    ) -> PyResult<Bound<'py, PyDict>> {
        let elems = idems
            .into_iter()
            .map(|c| self.element(c))
            .collect::<PyResult<Vec<_>>>()?;
        let report =
            hypalg::verify_idempotent_system(&self.table, &elems, tol).map_err(value_err)?;
        let dict = PyDict::new(py);
        dict.set_item("idempotency", report.idempotency)?;
        dict.set_item("orthogonality", report.orthogonality)?;
        dict.set_item("completeness", report.completeness)?;
        dict.set_item("rank", report.rank)?;
        dict.set_item("count", report.count)?;
        dict.set_item("complete", report.is_complete())?;
        dict.set_item("pass", report.pass())?;
        Ok(dict)
    }

    /// Scalar coordinates of `a` along each Pierce ideal.
    fn pierce_project(
        &self,
        system: &PyIdempotentSystem,
        a: Vec<Complex64>,
    ) -> PyResult<Vec<Complex64>> {
        let a = self.element(a)?;
        hypalg::pierce_project(&self.table, &a, &system.system).map_err(value_err)
    }

    /// `sum_l ks[l] * i_l`.
    fn recombine(
        &self,
        system: &PyIdempotentSystem,
        ks: Vec<Complex64>,
    ) -> PyResult<Vec<Complex64>> {
        let ks = ks
            .into_iter()
            .map(|k| self.scalar(k))
            .collect::<PyResult<Vec<_>>>()?;
        let e = hypalg::recombine(&self.table, &ks, &system.system).map_err(value_err)?;
        Ok(e.coeffs().to_vec())
    }

    /// Solve `p(w) = 0`. Returns a dict with `roots`, `residuals`,
    /// `components`, `truncated`, `parametric`.
    #[pyo3(signature = (system, coeffs, tol_root=1e-8, max_roots=4096))]
    fn solve<'py>(
        &self,
        py: Python<'py>,
        system: &PyIdempotentSystem,
        coeffs: Vec<Vec<Complex64>>,
        tol_root: f64,
        max_roots: usize,
    ) -> PyResult<Bound<'py, PyDict>> {
        let p = self.polynomial(coeffs)?;
        let opts = SolveOptions {
            tol_root,
            max_roots,
            ..Default::default()
        };
        let rs = hypalg::solve(&self.table, &p, &system.system, &opts).map_err(value_err)?;
        let dict = PyDict::new(py);
        let roots: Vec<Vec<Complex64>> = rs.roots.iter().map(|r| r.coeffs().to_vec()).collect();
        dict.set_item("roots", roots)?;
        dict.set_item("residuals", rs.residuals.clone())?;
        let components = PyList::empty(py);
        for comp in &rs.components {
            let entry = PyDict::new(py);
            match &comp.kind {
                ComponentKind::Finite(roots) => {
                    entry.set_item("kind", "finite")?;
                    entry.set_item("roots", roots.clone())?;
                    entry.set_item("residuals", comp.residuals.clone())?;
                }
                ComponentKind::AllOfK => entry.set_item("kind", "all_of_k")?,
                ComponentKind::Empty => entry.set_item("kind", "empty")?,
            }
            components.append(entry)?;
        }
        dict.set_item("components", components)?;
        dict.set_item("truncated", rs.truncated)?;
        dict.set_item("parametric", rs.parametric)?;
        Ok(dict)
    }

    /// `|p(w)|_inf`.
    fn residual(&self, coeffs: Vec<Vec<Complex64>>, w: Vec<Complex64>) -> PyResult<f64> {
        let p = self.polynomial(coeffs)?;
        let w = self.element(w)?;
        hypalg::residual(&self.table, &p, &w).map_err(value_err)
    }

    /// Cauchy-Riemann residuals of the polynomial at `point`.
    #[pyo3(signature = (coeffs, point, step=1e-5))]
    fn cr_check<'py>(
        &self,
        py: Python<'py>,
        coeffs: Vec<Vec<Complex64>>,
        point: Vec<Complex64>,
        step: f64,
    ) -> PyResult<Bound<'py, PyDict>> {
        let f = AlgebraFunction::Poly(self.polynomial(coeffs)?);
        let x = self.element(point)?;
        self.cr_report(py, &f, &x, step)
    }

    /// Cauchy-Riemann residuals of a Python callable
    /// (`list[complex] -> list[complex]`) at `point`.
    #[pyo3(signature = (func, point, step=1e-5))]
    fn cr_check_fn<'py>(
        &self,
        py: Python<'py>,
        func: Bound<'py, PyAny>,
        point: Vec<Complex64>,
        step: f64,
    ) -> PyResult<Bound<'py, PyDict>> {
        let dim = self.table.dim();
        let call = |x: &Element| -> Result<Element, String> {
            let coords: Vec<Complex64> = x.coeffs().to_vec();
            let result = func.call1((coords,)).map_err(|e| e.to_string())?;
            let out = result
                .extract::<Vec<Complex64>>()
                .map_err(|e| e.to_string())?;
            if out.len() != dim {
                return Err(format!(
                    "callable returned {} coordinates, expected {dim}",
                    out.len()
                ));
            }
            Ok(Element::new(out))
        };
        let f = AlgebraFunction::BlackBox(&call);
        let x = self.element(point)?;
        self.cr_report(py, &f, &x, step)
    }

    /// Order-`order` derivative of the polynomial at `x` (formal, exact).
    fn a_derivative(
        &self,
        coeffs: Vec<Vec<Complex64>>,
        x: Vec<Complex64>,
        order: u32,
    ) -> PyResult<Vec<Complex64>> {
        let f = AlgebraFunction::Poly(self.polynomial(coeffs)?);
        let x = self.element(x)?;
        let d = hypalg::a_derivative(&self.table, &f, &x, order).map_err(value_err)?;
        Ok(d.value.coeffs().to_vec())
    }

    /// Central-difference limit of `(f(x+eps*h) - f(x-eps*h)) / (2 eps)`.
    fn directional_derivative(
        &self,
        coeffs: Vec<Vec<Complex64>>,
        x: Vec<Complex64>,
        h: Vec<Complex64>,
    ) -> PyResult<Vec<Complex64>> {
        let f = AlgebraFunction::Poly(self.polynomial(coeffs)?);
        let x = self.element(x)?;
        let h = self.element(h)?;
        let steps = hypalg::default_derivative_steps(&x);
        let d =
            hypalg::directional_derivative(&self.table, &f, &x, &h, &steps).map_err(value_err)?;
        Ok(d.coeffs().to_vec())
    }

    /// Taylor sum of the polynomial around `x` with displacement `h`.
    fn taylor(
        &self,
        coeffs: Vec<Vec<Complex64>>,
        x: Vec<Complex64>,
        h: Vec<Complex64>,
        order: u32,
    ) -> PyResult<Vec<Complex64>> {
        let f = AlgebraFunction::Poly(self.polynomial(coeffs)?);
        let x = self.element(x)?;
        let h = self.element(h)?;
        let t = hypalg::taylor_eval(&self.table, &f, &x, &h, order).map_err(value_err)?;
        Ok(t.coeffs().to_vec())
    }
}

impl PyAlgebra {
    fn cr_report<'py>(
        &self,
        py: Python<'py>,
        f: &AlgebraFunction,
        x: &Element,
        step: f64,
    ) -> PyResult<Bound<'py, PyDict>> {
        let report = hypalg::check_cauchy_riemann(&self.table, f, x, step).map_err(value_err)?;
        let dict = PyDict::new(py);
        dict.set_item("residuals", report.residuals.clone())?;
        dict.set_item("max_residual", report.max_residual)?;
        dict.set_item("step", report.step)?;
        Ok(dict)
    }
}

#[pymodule]
fn pyhypalg(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyIdempotentSystem>()?;
    Ok(())
}
