//! Computation in finite-dimensional commutative unitary algebras given
//! by structure constants: element arithmetic and axiom verification,
//! discovery of complete orthogonal idempotent systems, reduction of
//! algebra-valued polynomial equations to scalar equations through the
//! Pierce decomposition, and numerical checks of algebra-holomorphy.
//!
//! ```
//! use hypalg::{
//!     find_idempotent_system, parse_algebra, solve, AlgebraPolynomial,
//!     SolveOptions, SpectralConfig,
//! };
//!
//! // The bicomplex algebra: basis {1, e} over C with e^2 = 1.
//! let table = parse_algebra("field: C\ndim: 2\nmul 1 1 : 1 0\n")?;
//! let system = find_idempotent_system(&table, &SpectralConfig::default())?;
//!
//! // w^2 - 1 factors through the two idempotents: four roots 1, -1, e, -e.
//! let p = AlgebraPolynomial::new(vec![table.unit().neg(), table.zero(), table.unit()])?;
//! let found = solve(&table, &p, &system, &SolveOptions::default())?;
//! assert_eq!(found.roots.len(), 4);
//! assert!(found.residuals.iter().all(|r| *r <= 1e-10));
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod algebra;
mod eigen;
pub mod fixtures;
pub mod formats;
pub mod holomorphy;
pub mod polysolve;
pub mod scalar;
pub mod spectral;

pub use algebra::{AlgebraError, AlgebraTable, AxiomReport, Element};
pub use formats::{
    parse_algebra, parse_element, parse_idempotents, parse_polynomial, write_idempotents,
    ParseError,
};
pub use holomorphy::{
    a_derivative, check_cauchy_riemann, default_derivative_steps, directional_derivative,
    formal_poly_derivative, taylor_eval, AlgebraFunction, CRReport, DerivMethod, DerivativeResult,
    HolomorphyError,
};
pub use polysolve::{
    reduce, residual, solve, solve_scalar, AlgebraPolynomial, ComponentKind, ComponentSolution,
    RootSet, ScalarPolynomial, SolveError, SolveOptions,
};
pub use scalar::{format_scalar, parse_scalar, FieldTag, Scalar};
pub use spectral::{
    find_idempotent_system, pierce_project, recombine, verify_idempotent_system, IdempotentSystem,
    Provenance, SpectralConfig, SpectralError, SystemReport,
};
