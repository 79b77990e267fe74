use num_complex::Complex64;

use super::types::{zeta_base, IsoType, SeifType, UnitValue};
use crate::linalg::{cx, exp_nilpotent, inverse, CMat};
use crate::seifert::{realify, seifert_from_triple, IsometricTriple, SeifertPair, TripleToSeifert};
use crate::{Error, Result, Tol};

/// The antidiagonal sign matrix E_n^per with entries
/// (-1)^{j-1} delta_{j, n+1-k} (1-indexed).
pub fn e_per(n: usize) -> CMat {
    CMat::from_fn(n, n, |j, k| {
        if j + k == n - 1 {
            cx(if j % 2 == 0 { 1.0 } else { -1.0 }, 0.0)
        } else {
            cx(0.0, 0.0)
        }
    })
}

/// The lower-shift nilpotent matrix J_n with entries delta_{j, k+1}.
pub fn j_lower(n: usize) -> CMat {
    CMat::from_fn(n, n, |j, k| if j == k + 1 { cx(1.0, 0.0) } else { cx(0.0, 0.0) })
}

/// Model matrices of a complex block: M = lambda * exp(J_n), N acts as the
/// lower shift on the chosen basis.
fn block_monodromy(lambda: Complex64, n: usize) -> CMat {
    exp_nilpotent(&j_lower(n)) * lambda
}

/// Assemble a block-diagonal matrix from equal-size square blocks.
fn block_diag(blocks: &[CMat]) -> CMat {
    let total: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = CMat::zeros(total, total);
    let mut off = 0;
    for b in blocks {
        out.view_mut((off, off), (b.nrows(), b.ncols())).copy_from(b);
        off += b.nrows();
    }
    out
}

/// Transform a complex model (M_c, S_c) written in a basis with conjugation
/// pairing prescribed by `real_cols` into real coordinates: the columns of
/// `real_cols` express the real basis in the complex-model basis.
fn to_real_model(m_c: &CMat, s_c: &CMat, real_cols: &CMat, tols: Tol) -> Result<(CMat, CMat)> {
    let b_inv = inverse(real_cols, tols.tol)?;
    let m_real = &b_inv * m_c * real_cols;
    let s_real = real_cols.transpose() * s_c * real_cols;
    Ok((realify(&m_real, 1e-8)?, realify(&s_real, 1e-8)?))
}

/// The change-of-basis matrix from real coordinates (u_j, v_j) to a complex
/// basis (a_j, conj a_j): u_j = a_j + conj a_j, v_j = i (a_j - conj a_j).
fn conj_pair_basis(n: usize) -> CMat {
    let mut b = CMat::zeros(2 * n, 2 * n);
    for j in 0..n {
        // u_j column j
        b[(j, j)] = cx(1.0, 0.0);
        b[(n + j, j)] = cx(1.0, 0.0);
        // v_j column n + j
        b[(j, n + j)] = cx(0.0, 1.0);
        b[(n + j, n + j)] = cx(0.0, -1.0);
    }
    b
}

/// Model isometric triple for an irreducible type (or a reducible
/// lambda = +-1 circle type, which the examples also cover).
pub fn model_triple(t: &IsoType, tols: Tol) -> Result<IsometricTriple> {
    t.check_model_parameters()?;
    match t {
        IsoType::Tr1 { lambda, n, eps } => {
            let n = *n;
            let m_mat = block_monodromy(cx(*lambda as f64, 0.0), n);
            let s = e_per(n) * cx(*eps as f64, 0.0);
            let sym = ((n as i64 - 1).rem_euclid(2)) as u8; // S is (-1)^{n-1}-symmetric
            IsometricTriple::new(s, m_mat, sym, tols)
        }
        IsoType::Tr2S1 { lambda, n, m, eps } => {
            let n = *n;
            let lam = lambda.value();
            let m_c = block_diag(&[block_monodromy(lam, n), block_monodromy(lam.conj(), n)]);
            // S = i^{n+m+1} eps [[0, E], [(-1)^{n+m+1} E, 0]]
            let phase = cx(0.0, 1.0).powu(((n + *m as usize + 1) % 4) as u32) * cx(*eps as f64, 0.0);
            let sign = if (n + *m as usize + 1) % 2 == 0 { 1.0 } else { -1.0 };
            let e = e_per(n);
            let mut s_c = CMat::zeros(2 * n, 2 * n);
            s_c.view_mut((0, n), (n, n)).copy_from(&(&e * phase));
            s_c.view_mut((n, 0), (n, n)).copy_from(&(&e * (phase * cx(sign, 0.0))));
            let (m_real, s_real) = to_real_model(&m_c, &s_c, &conj_pair_basis(n), tols)?;
            IsometricTriple::new(s_real, m_real, *m, tols)
        }
        IsoType::Tr2R { lambda, n, m } => {
            let n = *n;
            let m_mat = block_diag(&[
                block_monodromy(cx(*lambda, 0.0), n),
                block_monodromy(cx(1.0 / *lambda, 0.0), n),
            ]);
            let sign = if (n + *m as usize + 1) % 2 == 0 { 1.0 } else { -1.0 };
            let e = e_per(n);
            let mut s = CMat::zeros(2 * n, 2 * n);
            s.view_mut((0, n), (n, n)).copy_from(&e);
            s.view_mut((n, 0), (n, n)).copy_from(&(&e * cx(sign, 0.0)));
            IsometricTriple::new(s, m_mat, *m, tols)
        }
        IsoType::Tr4 { lambda, n, m } => {
            let n = *n;
            let lam = *lambda;
            let m_c = block_diag(&[
                block_monodromy(lam, n),
                block_monodromy(1.0 / lam, n),
                block_monodromy(lam.conj(), n),
                block_monodromy(1.0 / lam.conj(), n),
            ]);
            let sign = cx(if (n + *m as usize + 1) % 2 == 0 { 1.0 } else { -1.0 }, 0.0);
            let e = e_per(n);
            let mut s_c = CMat::zeros(4 * n, 4 * n);
            s_c.view_mut((0, n), (n, n)).copy_from(&e);
            s_c.view_mut((n, 0), (n, n)).copy_from(&(&e * sign));
            s_c.view_mut((2 * n, 3 * n), (n, n)).copy_from(&e);
            s_c.view_mut((3 * n, 2 * n), (n, n)).copy_from(&(&e * sign));
            // real basis: (a + conj a, i(a - conj a), b + conj b, i(b - conj b))
            // with complex-model ordering (a, b, conj a, conj b)
            let mut b = CMat::zeros(4 * n, 4 * n);
            for j in 0..n {
                b[(j, j)] = cx(1.0, 0.0);
                b[(2 * n + j, j)] = cx(1.0, 0.0);
                b[(j, n + j)] = cx(0.0, 1.0);
                b[(2 * n + j, n + j)] = cx(0.0, -1.0);
                b[(n + j, 2 * n + j)] = cx(1.0, 0.0);
                b[(3 * n + j, 2 * n + j)] = cx(1.0, 0.0);
                b[(n + j, 3 * n + j)] = cx(0.0, 1.0);
                b[(3 * n + j, 3 * n + j)] = cx(0.0, -1.0);
            }
            let (m_real, s_real) = to_real_model(&m_c, &s_c, &b, tols)?;
            IsometricTriple::new(s_real, m_real, *m, tols)
        }
    }
}

/// Model Seifert form pair for a canonical irreducible Seifert type, built
/// through the triple-to-Seifert table.
pub fn model_seifert(t: &SeifType, tols: Tol) -> Result<SeifertPair> {
    t.check_canonical()?;
    let triple = match t {
        SeifType::Seif1 { lambda, n, eps } => {
            // Seif(lambda,1,n,eps) comes from Tr(lambda,1,n,lambda*eps)
            IsoType::Tr1 { lambda: *lambda, n: *n, eps: lambda * eps }
        }
        SeifType::Seif2Pm { lambda, n } => {
            let m = (*n % 2) as u8;
            IsoType::Tr2S1 {
                lambda: if *lambda == 1 { UnitValue::one() } else { UnitValue::minus_one() },
                n: *n,
                m,
                eps: 1,
            }
        }
        SeifType::Seif2Circle { lambda, n, zeta } => {
            let zeta0 = zeta_base(lambda.value(), *n);
            let ratio = zeta.value() / zeta0;
            let eps: i8 = if (ratio - cx(1.0, 0.0)).norm() < 1e-6 {
                1
            } else if (ratio + cx(1.0, 0.0)).norm() < 1e-6 {
                -1
            } else {
                return Err(Error::NonCanonicalType("zeta is not +-zeta0".into()));
            };
            IsoType::Tr2S1 { lambda: lambda.clone(), n: *n, m: 0, eps }
        }
        SeifType::Seif2Real { lambda, n } => IsoType::Tr2R { lambda: *lambda, n: *n, m: 0 },
        SeifType::Seif4 { lambda, n } => IsoType::Tr4 { lambda: *lambda, n: *n, m: 0 },
    };
    let triple = model_triple(&triple, tols)?;
    seifert_from_triple(&triple, TripleToSeifert::Variant1, tols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_abs_diff, signature};

    fn tols() -> Tol {
        Tol::default()
    }

    #[test]
    fn e_per_small() {
        let e1 = e_per(1);
        assert!((e1[(0, 0)] - cx(1.0, 0.0)).norm() < 1e-12);
        let e2 = e_per(2);
        let expected = crate::linalg::cmat_from_real_rows(&[vec![0.0, 1.0], vec![-1.0, 0.0]]);
        assert!(max_abs_diff(&e2, &expected) < 1e-12);
    }

    #[test]
    fn tr1_models() {
        let t = model_triple(&IsoType::Tr1 { lambda: 1, n: 1, eps: 1 }, tols()).unwrap();
        assert!((t.s_gram[(0, 0)] - cx(1.0, 0.0)).norm() < 1e-12);
        assert!((t.m_mat[(0, 0)] - cx(1.0, 0.0)).norm() < 1e-12);

        // n = 2: S = eps * [[0,1],[-1,0]]
        for eps in [1i8, -1] {
            let t = model_triple(&IsoType::Tr1 { lambda: -1, n: 2, eps }, tols()).unwrap();
            let expected = crate::linalg::cmat_from_real_rows(&[vec![0.0, 1.0], vec![-1.0, 0.0]])
                * cx(eps as f64, 0.0);
            assert!(max_abs_diff(&t.s_gram, &expected) < 1e-12);
            assert_eq!(t.sym, 1);
        }
    }

    #[test]
    fn tr2r_model_matches_eq_2_13() {
        let t = model_triple(&IsoType::Tr2R { lambda: 2.0, n: 1, m: 0 }, tols()).unwrap();
        let m_expected = crate::linalg::cmat_from_real_rows(&[vec![2.0, 0.0], vec![0.0, 0.5]]);
        let s_expected = crate::linalg::cmat_from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        assert!(max_abs_diff(&t.m_mat, &m_expected) < 1e-12);
        assert!(max_abs_diff(&t.s_gram, &s_expected) < 1e-12);
    }

    #[test]
    fn tr2s1_real_form_is_valid_triple() {
        let lam = UnitValue::from_beta(num_rational::Rational64::new(3, 4)); // i
        for (n, m, eps) in [(1usize, 0u8, 1i8), (2, 0, -1), (2, 1, 1), (3, 1, -1)] {
            let ty = IsoType::Tr2S1 { lambda: lam.clone(), n, m, eps };
            let t = model_triple(&ty, tols()).unwrap();
            assert!(t.is_real(1e-9), "model of {ty} must be real");
            assert_eq!(t.dim(), 2 * n);
        }
    }

    #[test]
    fn tr4_real_form_is_valid_triple() {
        for (n, m) in [(1usize, 0u8), (2, 1)] {
            let ty = IsoType::Tr4 { lambda: cx(2.0, 1.0), n, m };
            let t = model_triple(&ty, tols()).unwrap();
            assert!(t.is_real(1e-9));
            assert_eq!(t.dim(), 4 * n);
        }
    }

    #[test]
    fn model_seifert_signature_example() {
        // I_s of the model of Seif(1,2,2) has signature (2,0,2)
        let l = model_seifert(&SeifType::Seif2Pm { lambda: 1, n: 2 }, tols()).unwrap();
        let i_s = l.gram() + l.gram().transpose();
        assert_eq!(signature(&i_s, 1e-9).unwrap(), (2, 0, 2));
    }

    #[test]
    fn non_canonical_rejected() {
        let bad = IsoType::Tr2R { lambda: 0.5, n: 1, m: 0 };
        assert!(model_triple(&bad, tols()).is_err());
    }
}
