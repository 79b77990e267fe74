use super::{is_real, max_abs, max_abs_diff, CMat};

/// Signature (p, q, r) of a real symmetric matrix: p = maximal dimension of
/// a positive definite subspace, q = dimension of the radical, r = maximal
/// dimension of a negative definite subspace.
pub fn signature(s: &CMat, tol: f64) -> crate::Result<(usize, usize, usize)> {
    if !is_real(s, tol) || max_abs_diff(s, &s.transpose()) > tol * (1.0 + max_abs(s)) {
        return Err(crate::Error::NotSymmetric);
    }
    count_eigen_signs(s, tol)
}

/// Signature of a complex hermitian matrix.
pub fn hermitian_signature(s: &CMat, tol: f64) -> crate::Result<(usize, usize, usize)> {
    if max_abs_diff(s, &s.adjoint()) > tol * (1.0 + max_abs(s)) {
        return Err(crate::Error::NotHermitian);
    }
    count_eigen_signs(s, tol)
}

fn count_eigen_signs(s: &CMat, tol: f64) -> crate::Result<(usize, usize, usize)> {
    let n = s.nrows();
    if n == 0 {
        return Ok((0, 0, 0));
    }
    // symmetrize to kill the tolerance-level skew part before eigen
    let h = (s + s.adjoint()) * super::cx(0.5, 0.0);
    let eig = nalgebra::SymmetricEigen::new(h);
    let scale = max_abs(s).max(1.0);
    let (mut p, mut q, mut r) = (0usize, 0usize, 0usize);
    for &ev in eig.eigenvalues.iter() {
        if ev > tol * scale {
            p += 1;
        } else if ev < -tol * scale {
            r += 1;
        } else {
            q += 1;
        }
    }
    Ok((p, q, r))
}

#[cfg(test)]
mod tests {
    use super::super::{cmat_from_real_rows, cx};
    use super::*;

    #[test]
    fn diag_signature() {
        let s = cmat_from_real_rows(&[vec![1.0, 0.0], vec![0.0, -1.0]]);
        assert_eq!(signature(&s, 1e-9).unwrap(), (1, 0, 1));
        let z = cmat_from_real_rows(&[vec![0.0, 0.0], vec![0.0, 0.0]]);
        assert_eq!(signature(&z, 1e-9).unwrap(), (0, 2, 0));
    }

    #[test]
    fn hyperbolic_plane() {
        let s = cmat_from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        assert_eq!(hermitian_signature(&s, 1e-9).unwrap(), (1, 0, 1));
    }

    #[test]
    fn hermitian_i_eper_block() {
        // i^{n-1} diag(E_n^per, E_n^per) for n = 2 has signature (2,0,2)
        let e = [[0.0, 1.0], [-1.0, 0.0]];
        let mut m = super::super::CMat::zeros(4, 4);
        for b in 0..2 {
            for i in 0..2 {
                for j in 0..2 {
                    m[(2 * b + i, 2 * b + j)] = cx(0.0, 1.0) * cx(e[i][j], 0.0);
                }
            }
        }
        assert_eq!(hermitian_signature(&m, 1e-9).unwrap(), (2, 0, 2));
    }

    #[test]
    fn rejects_asymmetric() {
        let s = cmat_from_real_rows(&[vec![0.0, 1.0], vec![2.0, 0.0]]);
        assert!(signature(&s, 1e-9).is_err());
    }
}
