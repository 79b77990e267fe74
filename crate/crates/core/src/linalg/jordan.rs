use std::collections::BTreeMap;

use num_complex::Complex64;
use num_rational::Rational64;

use super::{
    cx, exp_nilpotent, identity, inverse, kernel, log_unipotent, max_abs, max_abs_diff, rank,
    CMat, CVec, Subspace, TAU,
};
use crate::{Error, Result, Tol};

/// One generalized eigenspace of a semisimple part.
#[derive(Debug, Clone)]
pub struct EigenGroup {
    /// The (snapped) eigenvalue.
    pub lambda: Complex64,
    /// Exact angle tag when lambda is within tolerance of a root of unity:
    /// lambda = e^{-2 pi i beta} with beta in (0, 1].
    pub beta: Option<Rational64>,
    /// ker (M_s - lambda id).
    pub space: Subspace,
}

impl EigenGroup {
    pub fn is_one(&self, tol: f64) -> bool {
        (self.lambda - cx(1.0, 0.0)).norm() < tol
    }

    pub fn is_minus_one(&self, tol: f64) -> bool {
        (self.lambda + cx(1.0, 0.0)).norm() < tol
    }

    pub fn on_unit_circle(&self, tol: f64) -> bool {
        (self.lambda.norm() - 1.0).abs() < tol
    }
}

/// An automorphism together with its multiplicative Jordan decomposition
/// M = Ms * Mu and nilpotent part N = log Mu, plus the generalized
/// eigenspace decomposition of the ambient space.
#[derive(Debug, Clone)]
pub struct AutomorphismParts {
    pub mat: CMat,
    pub semisimple: CMat,
    pub unipotent: CMat,
    pub nilpotent: CMat,
    pub groups: Vec<EigenGroup>,
}

impl AutomorphismParts {
    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    /// Generalized eigenspace for a given eigenvalue, if present.
    pub fn eigenspace(&self, lambda: Complex64, tol: f64) -> Option<&EigenGroup> {
        self.groups.iter().find(|g| (g.lambda - lambda).norm() < tol * (1.0 + lambda.norm()))
    }

    /// Direct sum of all eigenspaces with eigenvalue different from `lambda`.
    pub fn complement_of(&self, lambda: Complex64, tol: f64) -> Subspace {
        let mut vecs: Vec<CVec> = Vec::new();
        for g in &self.groups {
            if (g.lambda - lambda).norm() >= tol * (1.0 + lambda.norm()) {
                vecs.extend(g.space.basis_vectors());
            }
        }
        Subspace::span(self.dim(), &vecs, tol)
    }

    /// H_1 = ker(Ms - id).
    pub fn h_one(&self, tol: f64) -> Subspace {
        self.eigenspace(cx(1.0, 0.0), tol)
            .map(|g| g.space.clone())
            .unwrap_or_else(|| Subspace::zero(self.dim()))
    }

    /// H_{!=1}.
    pub fn h_not_one(&self, tol: f64) -> Subspace {
        self.complement_of(cx(1.0, 0.0), tol)
    }

    /// All eigenvalues on the unit circle?
    pub fn spectrum_on_circle(&self, tol: f64) -> bool {
        self.groups.iter().all(|g| g.on_unit_circle(tol))
    }
}

/// Snap a numeric eigenvalue: onto the unit circle when within `cluster_tol`
/// of it, onto the real axis when the imaginary part is negligible, and onto
/// an exact root of unity of order <= 200 when applicable.
fn snap_eigenvalue(lambda: Complex64, cluster_tol: f64) -> (Complex64, Option<Rational64>) {
    let mut l = lambda;
    if (l.norm() - 1.0).abs() < cluster_tol {
        l /= cx(l.norm(), 0.0);
    }
    if l.im.abs() < cluster_tol {
        l = cx(l.re, 0.0);
    }
    if (l.norm() - 1.0).abs() < 1e-15 {
        // try an exact angle tag: l = e^{-2 pi i p/q}, p/q in (0,1]
        let angle = -l.arg() / TAU; // in (-1/2, 1/2]
        for q in 1..=200i64 {
            let p = (angle * q as f64).round() as i64;
            let cand = p as f64 / q as f64;
            if (angle - cand).abs() < cluster_tol {
                // normalize beta into (0,1]
                let mut num = p.rem_euclid(q);
                if num == 0 {
                    num = q;
                }
                let beta = Rational64::new(num, q);
                let exact = Complex64::from_polar(
                    1.0,
                    -TAU * (*beta.numer() as f64) / (*beta.denom() as f64),
                );
                return (exact, Some(beta));
            }
        }
    }
    (l, None)
}

/// The right singular vectors for the `count` smallest singular values
/// (a kernel basis of known dimension).
fn smallest_right_singular_vectors(m: &CMat, count: usize) -> Vec<CVec> {
    let svd = m.clone().svd(false, true);
    let vt = svd.v_t.expect("svd v_t requested");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| {
        svd.singular_values[a].partial_cmp(&svd.singular_values[b]).expect("finite")
    });
    order
        .into_iter()
        .take(count)
        .map(|i| super::conj_vec(&vt.row(i).transpose()))
        .collect()
}

/// Multiplicative Jordan decomposition of an invertible matrix, with
/// clustered eigenvalues and generalized eigenspaces.
pub fn jordan_parts(m: &CMat, tols: Tol) -> Result<AutomorphismParts> {
    let n = m.nrows();
    if n != m.ncols() {
        return Err(Error::BadInput("matrix must be square".into()));
    }
    if !super::all_finite(m) {
        return Err(Error::BadInput("matrix entries must be finite".into()));
    }
    let scale = 1.0 + max_abs(m);
    if super::determinant(m).norm() <= tols.tol * scale.powi(n as i32) {
        return Err(Error::SingularMatrix);
    }

    // eigenvalues via complex Schur
    let eigenvalues = m
        .clone()
        .schur()
        .eigenvalues()
        .ok_or_else(|| Error::BadInput("eigenvalue computation failed".into()))?;

    // Cluster eigenvalues. A numeric eigenvalue belonging to a Jordan block
    // of size s scatters like (eps * |M|)^{1/s}, so the merge radius must
    // grow with the candidate multiplicity; iterate merges to a fixpoint.
    let evs: Vec<Complex64> = eigenvalues.iter().cloned().collect();
    // An eigenvalue inside a size-s Jordan block scatters numerically like
    // (eps*|M|)^{1/s}; any cluster could in principle fill the whole
    // dimension, so the merge radius is dimension-driven. The cap keeps
    // genuinely distinct eigenvalues (gap >= ~0.03 for roots of unity of
    // order <= 200) in separate clusters; a wrong merge is caught by the
    // reassembly check below.
    let base: f64 = 100.0 * f64::EPSILON * scale;
    let radius = tols.cluster.max(base.powf(1.0 / (n + 1) as f64).min(2e-2));
    let mut clusters: Vec<(Complex64, Vec<usize>)> =
        evs.iter().enumerate().map(|(i, &l)| (l, vec![i])).collect();
    loop {
        let mut merged = false;
        'outer: for a in 0..clusters.len() {
            for b in a + 1..clusters.len() {
                if (clusters[a].0 - clusters[b].0).norm() < 2.0 * radius {
                    let (lb, members_b) = clusters.remove(b);
                    let (la, members_a) = clusters[a].clone();
                    let wa = members_a.len() as f64;
                    let wb = members_b.len() as f64;
                    let mut members = members_a;
                    members.extend(members_b);
                    clusters[a] = ((la * cx(wa, 0.0) + lb * cx(wb, 0.0)) / cx(wa + wb, 0.0), members);
                    merged = true;
                    break 'outer;
                }
            }
        }
        if !merged {
            break;
        }
    }

    // snap centers and compute generalized eigenspaces of known dimension
    let snap_window = tols.cluster.max(radius.min(5e-3));
    let mut groups = Vec::new();
    for (center, members) in clusters {
        let mult = members.len();
        let (lambda, beta) = snap_eigenvalue(center, snap_window);
        let shifted = m - identity(n) * lambda;
        let mut power = identity(n);
        for _ in 0..mult {
            power = &power * &shifted;
        }
        let basis = smallest_right_singular_vectors(&power, mult);
        groups.push(EigenGroup { lambda, beta, space: Subspace::span(n, &basis, tols.tol) });
    }
    let total: usize = groups.iter().map(|g| g.space.dim()).sum();
    if total != n {
        return Err(Error::ClusterAmbiguity(format!(
            "eigenspace dims sum to {total}, ambient is {n}"
        )));
    }

    // Ms = C diag(lambda) C^{-1}
    let mut c = CMat::zeros(n, n);
    let mut col = 0;
    let mut diag = CVec::zeros(n);
    for g in &groups {
        for v in g.space.basis_vectors() {
            c.set_column(col, &v);
            diag[col] = g.lambda;
            col += 1;
        }
    }
    let c_inv = inverse(&c, tols.tol)?;
    let ms = &c * CMat::from_diagonal(&diag) * &c_inv;
    let ms_inv = &c * CMat::from_diagonal(&diag.map(|z| 1.0 / z)) * &c_inv;
    let mu = &ms_inv * m;
    let nilpotent = log_unipotent(&mu, tols.tol.max(1e-12) * 1e3)?;

    // invariant checks
    let assembled = &ms * &mu;
    if max_abs_diff(&assembled, m) > 1e-6 * scale {
        return Err(Error::ClusterAmbiguity("Ms*Mu does not reassemble M".into()));
    }
    let exp_n = exp_nilpotent(&nilpotent);
    if max_abs_diff(&exp_n, &mu) > 1e-6 * (1.0 + max_abs(&mu)) {
        return Err(Error::ClusterAmbiguity("exp(N) does not match Mu".into()));
    }

    Ok(AutomorphismParts { mat: m.clone(), semisimple: ms, unipotent: mu, nilpotent, groups })
}

/// Jordan chains of a nilpotent operator on an invariant subspace.
///
/// Each returned chain is `[v, Nv, ..., N^{s-1} v]` (top first); chains of
/// all blocks together form a basis of the domain.
pub fn jordan_chains(n_mat: &CMat, domain: &Subspace, tol: f64) -> Result<Vec<Vec<CVec>>> {
    let ambient = domain.ambient_dim();
    if domain.dim() == 0 {
        return Ok(Vec::new());
    }
    // restrict N to the domain (must be invariant)
    let q = domain.basis();
    let nq = n_mat * q;
    for j in 0..nq.ncols() {
        let col = nq.column(j).clone_owned();
        if !domain.contains_vec(&col, tol.max(1e-8) * 10.0) && col.norm() > tol {
            return Err(Error::BadInput("domain is not invariant under N".into()));
        }
    }
    let n_res = q.adjoint() * &nq; // k x k matrix of N on the domain
    let k = n_res.nrows();

    // kernels K_j = ker(N_res^j)
    let mut kernels: Vec<Subspace> = vec![Subspace::zero(k)];
    let mut power = CMat::identity(k, k);
    let mut kmax = 0;
    for j in 1..=k {
        power = &power * &n_res;
        let kj = Subspace::full(k).kernel_within(&power, tol);
        let dim = kj.dim();
        kernels.push(kj);
        if dim == k {
            kmax = j;
            break;
        }
        if j == k && dim != k {
            return Err(Error::NotNilpotent);
        }
    }

    // walk levels top down; at level l tops of size l complement
    // K_{l-1} + N * (height l+1 chain vectors) inside K_l
    let mut chains: Vec<Vec<CVec>> = Vec::new();
    let mut level_vectors: Vec<(usize, CVec)> = Vec::new(); // (chain index, vector of height l+1)
    for l in (1..=kmax).rev() {
        let images: Vec<(usize, CVec)> =
            level_vectors.iter().map(|(i, v)| (*i, &n_res * v)).collect();
        let image_span = Subspace::span(k, &images.iter().map(|(_, v)| v.clone()).collect::<Vec<_>>(), tol);
        let obstruction = kernels[l - 1].sum(&image_span, tol);
        let complement = kernels[l].complement_within(&obstruction, tol);
        let mut new_level = Vec::new();
        for (i, w) in images {
            chains[i].push(w.clone());
            new_level.push((i, w));
        }
        for v in complement.basis_vectors() {
            chains.push(vec![v.clone()]);
            new_level.push((chains.len() - 1, v));
        }
        level_vectors = new_level;
    }

    // map back to ambient coordinates
    let out: Vec<Vec<CVec>> = chains
        .iter()
        .map(|chain| chain.iter().map(|v| q * v).collect())
        .collect();
    // sanity: the chain vectors form a basis of the domain
    let total: usize = out.iter().map(|c| c.len()).sum();
    if total != domain.dim() {
        return Err(Error::InconsistentParity(format!(
            "jordan chains span {total} of {} dims",
            domain.dim()
        )));
    }
    let _ = ambient;
    Ok(out)
}

/// Number of Jordan blocks of each size, from the rank sequence of powers.
pub fn jordan_block_counts(
    n_mat: &CMat,
    domain: &Subspace,
    tol: f64,
) -> Result<BTreeMap<usize, usize>> {
    let k = domain.dim();
    let mut counts = BTreeMap::new();
    if k == 0 {
        return Ok(counts);
    }
    let q = domain.basis();
    let n_res = q.adjoint() * (n_mat * q);
    // ranks r_j = rank(N^j), j = 0..
    let mut ranks = vec![k];
    let mut power = CMat::identity(k, k);
    for _ in 1..=k {
        power = &power * &n_res;
        ranks.push(rank(&power, tol));
    }
    if *ranks.last().unwrap() != 0 {
        return Err(Error::NotNilpotent);
    }
    ranks.push(0);
    for l in 1..=k {
        // blocks of size exactly l: r_{l-1} - 2 r_l + r_{l+1}
        let b = ranks[l - 1] as i64 - 2 * ranks[l] as i64 + ranks[l + 1] as i64;
        if b < 0 {
            return Err(Error::InconsistentParity("negative block count from rank sequence".into()));
        }
        if b > 0 {
            counts.insert(l, b as usize);
        }
    }
    let total: usize = counts.iter().map(|(l, c)| l * c).sum();
    if total != k {
        return Err(Error::InconsistentParity(format!(
            "block sizes sum to {total}, domain dim is {k}"
        )));
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::super::cmat_from_real_rows;
    use super::*;

    fn tols() -> Tol {
        Tol::default()
    }

    #[test]
    fn identity_parts() {
        let m = identity(3);
        let parts = jordan_parts(&m, tols()).unwrap();
        assert_eq!(parts.groups.len(), 1);
        assert!(max_abs(&parts.nilpotent) < 1e-12);
        assert_eq!(parts.groups[0].beta, Some(Rational64::new(1, 1)));
    }

    #[test]
    fn paper_example_monodromy_parts() {
        // M = [[-3,-2],[2,1]]: Ms = -id, N = [[2,2],[-2,-2]]
        let m = cmat_from_real_rows(&[vec![-3.0, -2.0], vec![2.0, 1.0]]);
        let parts = jordan_parts(&m, tols()).unwrap();
        assert_eq!(parts.groups.len(), 1);
        assert!((parts.groups[0].lambda + cx(1.0, 0.0)).norm() < 1e-9);
        assert_eq!(parts.groups[0].beta, Some(Rational64::new(1, 2)));
        let expected_n = cmat_from_real_rows(&[vec![2.0, 2.0], vec![-2.0, -2.0]]);
        assert!(max_abs_diff(&parts.nilpotent, &expected_n) < 1e-8);
        let counts = jordan_block_counts(&parts.nilpotent, &parts.groups[0].space, 1e-9).unwrap();
        assert_eq!(counts.get(&2), Some(&1));
    }

    #[test]
    fn diagonal_semisimple() {
        let m = cmat_from_real_rows(&[vec![2.0, 0.0], vec![0.0, 0.5]]);
        let parts = jordan_parts(&m, tols()).unwrap();
        assert!(max_abs(&parts.nilpotent) < 1e-12);
        assert_eq!(parts.groups.len(), 2);
        assert!(parts.groups.iter().all(|g| g.beta.is_none()));
    }

    #[test]
    fn zero_nilpotent_block_counts() {
        let n = CMat::zeros(3, 3);
        let counts = jordan_block_counts(&n, &Subspace::full(3), 1e-9).unwrap();
        assert_eq!(counts.get(&1), Some(&3));
    }

    #[test]
    fn single_two_block() {
        let n = cmat_from_real_rows(&[vec![0.0, 0.0], vec![1.0, 0.0]]);
        let counts = jordan_block_counts(&n, &Subspace::full(2), 1e-9).unwrap();
        assert_eq!(counts.get(&2), Some(&1));
        let chains = jordan_chains(&n, &Subspace::full(2), 1e-9).unwrap();
        assert_eq!(chains.len(), 1);
        assert_eq!(chains[0].len(), 2);
    }

    #[test]
    fn chains_of_mixed_blocks() {
        // blocks of sizes 3 and 1 on C^4
        let n = cmat_from_real_rows(&[
            vec![0.0, 0.0, 0.0, 0.0],
            vec![1.0, 0.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0, 0.0],
            vec![0.0, 0.0, 0.0, 0.0],
        ]);
        let chains = jordan_chains(&n, &Subspace::full(4), 1e-9).unwrap();
        let mut sizes: Vec<usize> = chains.iter().map(|c| c.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 3]);
        for chain in &chains {
            for (i, v) in chain.iter().enumerate().skip(1) {
                let expect = &n * &chain[i - 1];
                assert!((v - expect).norm() < 1e-9);
            }
            let top = chain.last().unwrap();
            assert!((&n * top).norm() < 1e-9);
        }
    }

    #[test]
    fn singular_input_rejected() {
        let m = cmat_from_real_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]);
        assert!(matches!(jordan_parts(&m, tols()), Err(Error::SingularMatrix)));
    }
}
