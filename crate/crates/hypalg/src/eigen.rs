//! Dense non-symmetric eigenvalue helper: Parlett-Reinsch balancing,
//! complex Schur decomposition, and eigenvector extraction by back
//! substitution in the triangular factor.

use nalgebra::DMatrix;

use crate::scalar::Scalar;

/// Balances `m` in place by diagonal similarity with powers of two,
/// returning the accumulated column scales. Eigenvalues are preserved
/// exactly; an eigenvector `x` of the balanced matrix maps back as
/// `v[i] = scale[i] * x[i]`.
pub(crate) fn balance(m: &mut DMatrix<Scalar>) -> Vec<f64> {
    let n = m.nrows();
    let mut scale = vec![1.0; n];
    const RADIX: f64 = 2.0;
    const SQRDX: f64 = RADIX * RADIX;
    loop {
        let mut done = true;
        for i in 0..n {
            let mut col = 0.0;
            let mut row = 0.0;
            for j in 0..n {
                if j != i {
                    col += m[(j, i)].norm();
                    row += m[(i, j)].norm();
                }
            }
            if col == 0.0 || row == 0.0 || !col.is_finite() || !row.is_finite() {
                continue;
            }
            let s = col + row;
            let mut c = col;
            let mut f = 1.0;
            let mut g = row / RADIX;
            while c < g {
                f *= RADIX;
                c *= SQRDX;
            }
            g = row * RADIX;
            while c > g {
                f /= RADIX;
                c /= SQRDX;
            }
            if (c + row) / f < 0.95 * s {
                done = false;
                scale[i] *= f;
                let ginv = 1.0 / f;
                for j in 0..n {
                    m[(i, j)] *= ginv;
                }
                for j in 0..n {
                    m[(j, i)] *= f;
                }
            }
        }
        if done {
            break;
        }
    }
    scale
}

/// All eigenvalues of a square complex matrix, unordered.
///
/// Returns `None` if the Schur iteration does not converge, which does not
/// happen for the well-scaled matrices this crate produces.
pub(crate) fn eigenvalues(m: &DMatrix<Scalar>) -> Option<Vec<Scalar>> {
    let n = m.nrows();
    if n == 0 {
        return Some(Vec::new());
    }
    if n == 1 {
        return Some(vec![m[(0, 0)]]);
    }
    let mut b = m.clone();
    balance(&mut b);
    let schur = b.try_schur(f64::EPSILON, 10_000)?;
    let ev = schur.eigenvalues()?;
    Some(ev.iter().copied().collect())
}

/// Eigenvalues with matching right eigenvectors (unit 2-norm columns).
///
/// The eigenvector for the k-th eigenvalue comes from back substitution
/// in the triangular Schur factor; near-zero pivots (repeated
/// eigenvalues) are perturbed to machine scale, so for clustered spectra
/// the vectors are best-effort while the values stay accurate.
pub(crate) fn eigen_decomposition(m: &DMatrix<Scalar>) -> Option<(Vec<Scalar>, DMatrix<Scalar>)> {
    let n = m.nrows();
    if n == 0 {
        return Some((Vec::new(), DMatrix::zeros(0, 0)));
    }
    if n == 1 {
        return Some((
            vec![m[(0, 0)]],
            DMatrix::from_element(1, 1, Scalar::new(1.0, 0.0)),
        ));
    }
    let mut b = m.clone();
    let scale = balance(&mut b);
    let schur = b.try_schur(f64::EPSILON, 10_000)?;
    let (q, t) = schur.unpack();
    let norm_t: f64 = t.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let floor = f64::EPSILON * norm_t.max(1.0);

    let values: Vec<Scalar> = (0..n).map(|k| t[(k, k)]).collect();
    let mut vectors = DMatrix::zeros(n, n);
    let zero = Scalar::new(0.0, 0.0);
    for k in 0..n {
        let lambda = values[k];
        // Solve (T - lambda I) y = 0 with y[k] = 1, y[j > k] = 0.
        let mut y = vec![zero; n];
        y[k] = Scalar::new(1.0, 0.0);
        for i in (0..k).rev() {
            let mut s = zero;
            for j in (i + 1)..=k {
                s += t[(i, j)] * y[j];
            }
            let mut pivot = t[(i, i)] - lambda;
            if pivot.norm() < floor {
                pivot = Scalar::new(floor, 0.0);
            }
            y[i] = -s / pivot;
        }
        // Map back through Q and the balancing scales, then normalize.
        let mut v = vec![zero; n];
        for (i, vi) in v.iter_mut().enumerate() {
            let mut s = zero;
            for (j, yj) in y.iter().enumerate().take(k + 1) {
                s += q[(i, j)] * yj;
            }
            *vi = s * Scalar::new(scale[i], 0.0);
        }
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return None;
        }
        for (i, vi) in v.iter().enumerate() {
            vectors[(i, k)] = vi / norm;
        }
    }
    Some((values, vectors))
}
