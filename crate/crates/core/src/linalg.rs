//! Dense linear-algebra helpers on complex matrices.
//!
//! Singular values are computed through the real embedding
//! `z -> [[re, -im], [im, re]]`, which doubles every singular value's
//! multiplicity but keeps us on nalgebra's real SVD path.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub(crate) fn real_embedding(a: &DMatrix<Complex64>) -> DMatrix<f64> {
    let (m, n) = a.shape();
    let mut out = DMatrix::zeros(2 * m, 2 * n);
    for i in 0..m {
        for j in 0..n {
            let z = a[(i, j)];
            out[(2 * i, 2 * j)] = z.re;
            out[(2 * i, 2 * j + 1)] = -z.im;
            out[(2 * i + 1, 2 * j)] = z.im;
            out[(2 * i + 1, 2 * j + 1)] = z.re;
        }
    }
    out
}

/// Singular values in decreasing order (complex multiplicities, i.e. the
/// doubled real spectrum collapsed back).
pub fn singular_values(a: &DMatrix<Complex64>) -> Vec<f64> {
    if a.nrows() == 0 || a.ncols() == 0 {
        return Vec::new();
    }
    let emb = real_embedding(a);
    let mut sv: Vec<f64> = emb.singular_values().iter().copied().collect();
    sv.sort_by(|x, y| y.partial_cmp(x).unwrap());
    // each complex singular value shows up twice; average the pairs
    sv.chunks_exact(2).map(|p| 0.5 * (p[0] + p[1])).collect()
}

/// Number of singular values below `rel_tol * sigma_max`, plus any columns
/// past the rank bound for wide matrices.
pub fn nullity(a: &DMatrix<Complex64>, rel_tol: f64) -> usize {
    let cols = a.ncols();
    if cols == 0 {
        return 0;
    }
    if a.nrows() == 0 {
        return cols;
    }
    let sv = singular_values(a);
    let max = sv[0];
    if max == 0.0 {
        return cols;
    }
    let below = sv.iter().filter(|s| **s < rel_tol * max).count();
    below + cols.saturating_sub(sv.len())
}

pub fn spectral_norm(a: &DMatrix<Complex64>) -> f64 {
    singular_values(a).first().copied().unwrap_or(0.0)
}

/// Right-singular vector for the smallest singular value, via the Gram
/// matrix. Adequate here: every use has a spectral gap of order one.
pub fn smallest_right_singular_vector(a: &DMatrix<Complex64>) -> Option<DVector<Complex64>> {
    if a.ncols() == 0 {
        return None;
    }
    let gram = a.adjoint() * a;
    let eig = gram.symmetric_eigen();
    let mut best = 0;
    for i in 0..eig.eigenvalues.len() {
        if eig.eigenvalues[i] < eig.eigenvalues[best] {
            best = i;
        }
    }
    let v = eig.eigenvectors.column(best).into_owned();
    let norm = v.norm();
    if norm == 0.0 {
        None
    } else {
        Some(v / Complex64::new(norm, 0.0))
    }
}

/// Pairwise (tree) summation: deterministic and accurate regardless of the
/// caller's accumulation order.
pub fn pairwise_sum(values: &[Complex64]) -> Complex64 {
    match values.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => values[0],
        2 => values[0] + values[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
        }
    }
}
