//! Complete orthogonal idempotent systems: discovery, verification, and
//! the scalar projections of the Pierce decomposition.
//!
//! Discovery draws a random element `g`, takes the eigenvalues of its
//! regular representation, and builds the spectral projectors of `g` by
//! Lagrange interpolation. When the algebra splits as `K^d` this yields
//! the primitive idempotents; the failure modes map to diagnostics:
//! a real algebra with complex spectrum does not split over R, and a
//! persistently clustered spectrum indicates a non-semisimple or
//! otherwise degenerate algebra (e.g. dual numbers).

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{AlgebraError, AlgebraTable, Element};
use crate::eigen;
use crate::scalar::{FieldTag, Scalar};

/// Tuning knobs for [`find_idempotent_system`].
#[derive(Debug, Clone)]
pub struct SpectralConfig {
    /// Seed for the random element draws; equal seeds give equal output.
    pub seed: u64,
    /// Minimum eigenvalue separation, relative to the spectral radius.
    pub cluster_tol: f64,
    /// Fresh draws allowed after a separation failure.
    pub max_retries: u32,
    /// Residual bound for the idempotent system invariants.
    pub tol_idem: f64,
    /// Expected reconstruction accuracy of project-then-recombine.
    pub tol_pierce: f64,
}

impl Default for SpectralConfig {
    fn default() -> Self {
        SpectralConfig {
            seed: 0,
            cluster_tol: 1e-6,
            max_retries: 8,
            tol_idem: 1e-8,
            tol_pierce: 1e-9,
        }
    }
}

impl SpectralConfig {
    pub fn with_seed(seed: u64) -> Self {
        SpectralConfig {
            seed,
            ..Default::default()
        }
    }
}

/// How an idempotent system came to exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Discovered,
    UserSupplied,
    Fixture,
}

/// An ordered list of mutually orthogonal idempotents summing to the unit.
#[derive(Debug, Clone)]
pub struct IdempotentSystem {
    idems: Vec<Element>,
    provenance: Provenance,
    tol_idem: f64,
}

impl IdempotentSystem {
    /// Wraps a list of idempotents without checking the invariants.
    /// Callers that accept external input should run
    /// [`verify_idempotent_system`] first.
    pub fn from_parts(idems: Vec<Element>, provenance: Provenance, tol_idem: f64) -> Self {
        IdempotentSystem {
            idems,
            provenance,
            tol_idem,
        }
    }

    pub fn idempotents(&self) -> &[Element] {
        &self.idems
    }

    pub fn len(&self) -> usize {
        self.idems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.idems.is_empty()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn tol_idem(&self) -> f64 {
        self.tol_idem
    }
}

/// Max residual of each idempotent-system invariant.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemReport {
    /// max over l of `|i_l^2 - i_l|`.
    pub idempotency: f64,
    /// max over p != r of `|i_p i_r|`.
    pub orthogonality: f64,
    /// `|sum_l i_l - 1|`.
    pub completeness: f64,
    /// Numerical rank of the coordinate matrix.
    pub rank: usize,
    /// Number of idempotents in the system.
    pub count: usize,
    /// Dimension of the ambient algebra.
    pub dim: usize,
    /// Tolerance the residuals were judged against.
    pub tol: f64,
}

impl SystemReport {
    pub fn max_residual(&self) -> f64 {
        self.idempotency
            .max(self.orthogonality)
            .max(self.completeness)
    }

    /// All residuals within tolerance and the idempotents independent.
    pub fn pass(&self) -> bool {
        self.max_residual() <= self.tol && self.rank == self.count
    }

    /// Whether the system is complete in the sense needed by the
    /// polynomial solver: one idempotent per dimension.
    pub fn is_complete(&self) -> bool {
        self.count == self.dim
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error(
        "the algebra does not split over R: the regular representation kept \
         a complex spectrum after {attempts} random draws"
    )]
    NonSplit { attempts: u32 },
    #[error(
        "eigenvalues stayed clustered after {attempts} random draws; the \
         algebra is not split semisimple or is otherwise degenerate"
    )]
    NotSemisimpleOrDegenerate { attempts: u32 },
    #[error(
        "constructed idempotents violate the system invariants \
         (idempotency {idempotency:.3e}, orthogonality {orthogonality:.3e}, \
         completeness {completeness:.3e}, rank {rank}/{count})"
    )]
    VerificationFailed {
        idempotency: f64,
        orthogonality: f64,
        completeness: f64,
        rank: usize,
        count: usize,
    },
    #[error("idempotent {index} has zero norm")]
    ZeroNormIdempotent { index: usize },
    #[error("expected {expected} scalars, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl SpectralError {
    fn verification_failed(report: &SystemReport) -> Self {
        SpectralError::VerificationFailed {
            idempotency: report.idempotency,
            orthogonality: report.orthogonality,
            completeness: report.completeness,
            rank: report.rank,
            count: report.count,
        }
    }
}

/// Lexicographic sort key with coordinates rounded at 1e-9: real parts
/// first, then imaginary parts. Used for all canonical orderings so that
/// equal inputs produce byte-equal output.
pub(crate) fn canonical_key(e: &Element) -> Vec<f64> {
    let round = |x: f64| (x / 1e-9).round() + 0.0;
    let mut key: Vec<f64> = e.coeffs().iter().map(|z| round(z.re)).collect();
    key.extend(e.coeffs().iter().map(|z| round(z.im)));
    key
}

pub(crate) fn compare_keys(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            std::cmp::Ordering::Equal => continue,
            other => return other,
        }
    }
    std::cmp::Ordering::Equal
}

fn random_element(table: &AlgebraTable, rng: &mut ChaCha8Rng) -> Element {
    let coeffs = (0..table.dim())
        .map(|_| {
            let re = rng.random_range(-1.0..1.0);
            let im = match table.field() {
                FieldTag::RealField => 0.0,
                FieldTag::ComplexField => rng.random_range(-1.0..1.0),
            };
            Scalar::new(re, im)
        })
        .collect();
    Element::new(coeffs)
}

/// Idempotent candidates from the eigenvectors of the regular
/// representation. With a separated spectrum each eigenspace of `M_g` is
/// one Pierce ideal, so an eigenvector `v` is a scalar multiple of the
/// ideal's idempotent; the scale comes from the algebra itself: `v * v =
/// alpha * v`, giving `i = v / alpha`. The division also cancels the
/// arbitrary phase the Schur factorization leaves on `v`.
///
/// Returns `None` when some `alpha` is numerically zero, which signals an
/// unusable eigenvector (clustered or defective spectrum slipping past
/// the separation test); the caller treats it as a failed draw.
fn idempotents_from_eigenvectors(
    table: &AlgebraTable,
    vectors: &nalgebra::DMatrix<Scalar>,
) -> Result<Option<Vec<Element>>, AlgebraError> {
    let d = table.dim();
    let mut idems = Vec::with_capacity(d);
    for l in 0..d {
        let v = Element::new((0..d).map(|i| vectors[(i, l)]).collect());
        let sq = table.mul(&v, &v)?;
        let mut num = Scalar::new(0.0, 0.0);
        let mut den = 0.0;
        for (u, w) in sq.coeffs().iter().zip(v.coeffs()) {
            num += u * w.conj();
            den += w.norm_sqr();
        }
        let alpha = num / den;
        if !alpha.is_finite() || alpha.norm() < 1e-8 {
            return Ok(None);
        }
        let mut idem = v.scale(Scalar::new(1.0, 0.0) / alpha);
        if table.field() == FieldTag::RealField {
            // The true idempotent is real; drop the phase-cancellation dust
            // so real-field elements keep exactly zero imaginary parts.
            idem = Element::new(
                idem.coeffs()
                    .iter()
                    .map(|z| Scalar::new(z.re, 0.0))
                    .collect(),
            );
        }
        idems.push(idem);
    }
    Ok(Some(idems))
}

/// Newton sharpening for idempotents: `i <- 3i^2 - 2i^3` converges
/// quadratically to the nearby true idempotent on a split algebra and
/// erases the rounding accumulated by the eigenvector extraction.
fn refine_idempotents(table: &AlgebraTable, idems: &mut [Element]) -> Result<(), AlgebraError> {
    let three = Scalar::new(3.0, 0.0);
    let two = Scalar::new(2.0, 0.0);
    for idem in idems {
        for _ in 0..3 {
            let sq = table.mul(idem, idem)?;
            let residual = table.sub(&sq, idem)?.inf_norm();
            if residual == 0.0 {
                break;
            }
            let cube = table.mul(&sq, idem)?;
            let next = table.sub(&sq.scale(three), &cube.scale(two))?;
            let next_sq = table.mul(&next, &next)?;
            let next_residual = table.sub(&next_sq, &next)?.inf_norm();
            if next_residual >= residual {
                break;
            }
            *idem = next;
        }
    }
    Ok(())
}

enum DrawFailure {
    ComplexSpectrum,
    Clustered,
}

/// Constructs a complete orthogonal idempotent system for `table`.
///
/// The table must pass [`AlgebraTable::verify`]; discovery on a broken
/// table produces unspecified diagnostics.
pub fn find_idempotent_system(
    table: &AlgebraTable,
    config: &SpectralConfig,
) -> Result<IdempotentSystem, SpectralError> {
    let d = table.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let attempts = 1 + config.max_retries;
    let mut last_failure = DrawFailure::Clustered;
    for _ in 0..attempts {
        let g = random_element(table, &mut rng);
        let m = table.regular_representation(&g);
        let Some((eigs, vectors)) = eigen::eigen_decomposition(&m) else {
            last_failure = DrawFailure::Clustered;
            continue;
        };
        let radius = eigs.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let threshold = config.cluster_tol * radius.max(1.0);
        if table.field() == FieldTag::RealField && eigs.iter().any(|z| z.im.abs() > threshold) {
            last_failure = DrawFailure::ComplexSpectrum;
            continue;
        }
        let separated = (0..d).all(|i| (0..i).all(|j| (eigs[i] - eigs[j]).norm() > threshold));
        if !separated {
            last_failure = DrawFailure::Clustered;
            continue;
        }
        let Some(mut idems) = idempotents_from_eigenvectors(table, &vectors)? else {
            last_failure = DrawFailure::Clustered;
            continue;
        };
        refine_idempotents(table, &mut idems)?;
        idems.sort_by(|a, b| compare_keys(&canonical_key(a), &canonical_key(b)));
        let report = verify_idempotent_system(table, &idems, config.tol_idem)?;
        if !report.pass() {
            return Err(SpectralError::verification_failed(&report));
        }
        return Ok(IdempotentSystem::from_parts(
            idems,
            Provenance::Discovered,
            config.tol_idem,
        ));
    }
    Err(match last_failure {
        DrawFailure::ComplexSpectrum => SpectralError::NonSplit { attempts },
        DrawFailure::Clustered => SpectralError::NotSemisimpleOrDegenerate { attempts },
    })
}

/// Residuals of the idempotency, orthogonality, completeness, and
/// independence invariants for a candidate system.
pub fn verify_idempotent_system(
    table: &AlgebraTable,
    idems: &[Element],
    tol: f64,
) -> Result<SystemReport, AlgebraError> {
    let d = table.dim();
    let n = idems.len();
    let mut idempotency: f64 = 0.0;
    let mut orthogonality: f64 = 0.0;
    let mut sum = table.zero();
    for (p, ip) in idems.iter().enumerate() {
        let sq = table.mul(ip, ip)?;
        idempotency = idempotency.max(table.sub(&sq, ip)?.inf_norm());
        sum = table.add(&sum, ip)?;
        for ir in idems.iter().take(p) {
            orthogonality = orthogonality.max(table.mul(ip, ir)?.inf_norm());
        }
    }
    let completeness = table.sub(&sum, &table.unit())?.inf_norm();
    let rank = if n == 0 {
        0
    } else {
        let coords = nalgebra::DMatrix::from_fn(d, n, |k, l| idems[l].coeffs()[k]);
        let sv = coords.svd(false, false).singular_values;
        let sigma_max = sv.iter().copied().fold(0.0, f64::max);
        sv.iter().filter(|&&s| s > 1e-8 * sigma_max).count()
    };
    Ok(SystemReport {
        idempotency,
        orthogonality,
        completeness,
        rank,
        count: n,
        dim: d,
        tol,
    })
}

/// The scalar coordinates of `a` along each Pierce ideal: `k_l` is the
/// least-squares solution of `a i_l = k_l i_l`, which is exact whenever
/// `a i_l` lies in the ideal spanned by `i_l`.
pub fn pierce_project(
    table: &AlgebraTable,
    a: &Element,
    system: &IdempotentSystem,
) -> Result<Vec<Scalar>, SpectralError> {
    let mut out = Vec::with_capacity(system.len());
    for (index, il) in system.idempotents().iter().enumerate() {
        let prod = table.mul(a, il)?;
        let mut num = Scalar::new(0.0, 0.0);
        let mut den = 0.0;
        for (u, v) in prod.coeffs().iter().zip(il.coeffs()) {
            num += u * v.conj();
            den += v.norm_sqr();
        }
        if den == 0.0 {
            return Err(SpectralError::ZeroNormIdempotent { index });
        }
        out.push(num / den);
    }
    Ok(out)
}

/// `sum_l k_l i_l`; the left inverse of [`pierce_project`] on a complete
/// system.
pub fn recombine(
    table: &AlgebraTable,
    ks: &[Scalar],
    system: &IdempotentSystem,
) -> Result<Element, SpectralError> {
    if ks.len() != system.len() {
        return Err(SpectralError::LengthMismatch {
            expected: system.len(),
            got: ks.len(),
        });
    }
    let mut acc = table.zero();
    for (k, il) in ks.iter().zip(system.idempotents()) {
        acc = table.add(&acc, &il.scale(*k))?;
    }
    Ok(acc)
}
