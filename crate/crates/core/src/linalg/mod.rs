//! Numeric/exact linear-algebra substrate.
//!
//! Complex matrices are `nalgebra` dense matrices over `Complex<f64>`;
//! rational matrices get their own small exact kernel in [`qmat`].
//! The coordinate convention used across the crate: all complex matrices
//! and vectors are written with respect to an (implicit) real basis of
//! `H_R`, so complex conjugation of coordinates is the real structure.

mod jordan;
mod qmat;
mod signature;
mod subspace;

pub use jordan::{jordan_block_counts, jordan_chains, jordan_parts, AutomorphismParts, EigenGroup};
pub use qmat::QMat;
pub use signature::{hermitian_signature, signature};
pub use subspace::Subspace;

use num_complex::Complex64;

pub type CMat = nalgebra::DMatrix<Complex64>;
pub type CVec = nalgebra::DVector<Complex64>;

pub const TAU: f64 = std::f64::consts::TAU;

#[inline]
pub fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// 2*pi*i
#[inline]
pub fn two_pi_i() -> Complex64 {
    cx(0.0, TAU)
}

/// Build a complex matrix from rows of real entries.
pub fn cmat_from_real_rows(rows: &[Vec<f64>]) -> CMat {
    let nr = rows.len();
    let nc = if nr == 0 { 0 } else { rows[0].len() };
    CMat::from_fn(nr, nc, |i, j| cx(rows[i][j], 0.0))
}

/// Maximum absolute entry of `m`.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Maximum absolute difference between two matrices of equal shape.
pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch");
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn approx_eq(a: &CMat, b: &CMat, tol: f64) -> bool {
    a.shape() == b.shape() && max_abs_diff(a, b) <= tol * (1.0 + max_abs(a).max(max_abs(b)))
}

pub fn is_real(m: &CMat, tol: f64) -> bool {
    let scale = 1.0 + max_abs(m);
    m.iter().all(|z| z.im.abs() <= tol * scale)
}

pub fn all_finite(m: &CMat) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Entrywise complex conjugate (the real structure in our coordinates).
pub fn conj_mat(m: &CMat) -> CMat {
    m.map(|z| z.conj())
}

pub fn conj_vec(v: &CVec) -> CVec {
    v.map(|z| z.conj())
}

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub fn determinant(m: &CMat) -> Complex64 {
    m.clone().lu().determinant()
}

/// Inverse through LU; `SingularMatrix` if the matrix is not invertible at `tol`.
pub fn inverse(m: &CMat, tol: f64) -> crate::Result<CMat> {
    let scale = 1.0 + max_abs(m);
    let det = determinant(m);
    if det.norm() <= tol * scale.powi(m.nrows() as i32) {
        return Err(crate::Error::SingularMatrix);
    }
    m.clone().try_inverse().ok_or(crate::Error::SingularMatrix)
}

/// Solve A X = B.
pub fn solve(a: &CMat, b: &CMat, tol: f64) -> crate::Result<CMat> {
    Ok(inverse(a, tol)? * b)
}

/// exp of a nilpotent matrix by its finite Taylor series.
pub fn exp_nilpotent(n: &CMat) -> CMat {
    let dim = n.nrows();
    let mut acc = identity(dim);
    let mut term = identity(dim);
    for k in 1..=dim {
        term = (&term * n) / cx(k as f64, 0.0);
        acc += &term;
    }
    acc
}

/// log of a unipotent matrix: log(id + X) = sum (-1)^(k-1) X^k / k,
/// exact for nilpotent X (truncated at the dimension).
pub fn log_unipotent(mu: &CMat, tol: f64) -> crate::Result<CMat> {
    let dim = mu.nrows();
    let x = mu - identity(dim);
    // nilpotency check
    let mut p = x.clone();
    for _ in 0..dim {
        p = &p * &x;
    }
    if max_abs(&p) > tol * (1.0 + max_abs(&x)).powi(dim as i32) {
        return Err(crate::Error::NotNilpotent);
    }
    let mut acc = CMat::zeros(dim, dim);
    let mut term = identity(dim);
    for k in 1..=dim {
        term = &term * &x;
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        acc += &term * cx(sign / k as f64, 0.0);
    }
    Ok(acc)
}

/// Numerical rank via singular values (threshold relative to largest).
pub fn rank(m: &CMat, tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.clone().singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol * max.max(1.0)).count()
}

/// Orthonormal basis of the right kernel of `m`.
pub fn kernel(m: &CMat, tol: f64) -> Vec<CVec> {
    let ncols = m.ncols();
    if ncols == 0 {
        return Vec::new();
    }
    if m.nrows() == 0 {
        return (0..ncols)
            .map(|j| CVec::from_fn(ncols, |i, _| if i == j { cx(1.0, 0.0) } else { cx(0.0, 0.0) }))
            .collect();
    }
    // pad wide matrices with zero rows so the thin SVD carries a full V^T
    let work = if m.nrows() < ncols {
        let mut padded = CMat::zeros(ncols, ncols);
        padded.view_mut((0, 0), (m.nrows(), ncols)).copy_from(m);
        padded
    } else {
        m.clone()
    };
    let svd = work.svd(false, true);
    let vt = svd.v_t.expect("svd v_t requested");
    let max_sv = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let thresh = tol * max_sv.max(1.0);
    let mut out = Vec::new();
    for i in 0..vt.nrows() {
        if svd.singular_values[i] <= thresh {
            out.push(conj_vec(&vt.row(i).transpose()));
        }
    }
    out
}

/// Orthonormalize a spanning set, dropping dependent vectors (SVD-based).
pub fn orthonormalize(vectors: &[CVec], tol: f64) -> Vec<CVec> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let n = vectors[0].len();
    let m = CMat::from_columns(vectors);
    let svd = m.svd(true, false);
    let u = svd.u.expect("svd u requested");
    let max_sv = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let thresh = tol * max_sv.max(1.0);
    let mut out = Vec::new();
    for i in 0..svd.singular_values.len() {
        if svd.singular_values[i] > thresh {
            out.push(u.column(i).clone_owned());
        }
    }
    debug_assert!(out.iter().all(|v| v.len() == n));
    out
}

/// Kronecker product (tensor product Gram convention).
pub fn kronecker(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_exp_roundtrip_on_unipotent() {
        let n = cmat_from_real_rows(&[vec![0.0, 2.0, 1.0], vec![0.0, 0.0, -1.0], vec![0.0, 0.0, 0.0]]);
        let mu = exp_nilpotent(&n);
        let back = log_unipotent(&mu, 1e-12).unwrap();
        assert!(max_abs_diff(&back, &n) < 1e-12);
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = cmat_from_real_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]);
        let k = kernel(&m, 1e-12);
        assert_eq!(k.len(), 1);
        let mv = &m * &k[0];
        assert!(mv.iter().all(|z| z.norm() < 1e-10));
    }

    #[test]
    fn log_rejects_non_unipotent() {
        let m = cmat_from_real_rows(&[vec![2.0, 0.0], vec![0.0, 1.0]]);
        assert!(log_unipotent(&m, 1e-9).is_err());
    }
}
