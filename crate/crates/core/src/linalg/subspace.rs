use super::{conj_mat, cx, kernel, orthonormalize, CMat, CVec};

/// A linear subspace of an ambient coordinate space, stored through an
/// orthonormal basis (columns).
#[derive(Debug, Clone)]
pub struct Subspace {
    ambient: usize,
    basis: CMat, // ambient x dim, orthonormal columns
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: CMat::zeros(ambient, 0) }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: CMat::identity(ambient, ambient) }
    }

    /// Span of the given vectors (dependent vectors are dropped).
    pub fn span(ambient: usize, vectors: &[CVec], tol: f64) -> Self {
        for v in vectors {
            assert_eq!(v.len(), ambient, "vector/ambient dimension mismatch");
        }
        let basis = orthonormalize(vectors, tol);
        Subspace { ambient, basis: if basis.is_empty() { CMat::zeros(ambient, 0) } else { CMat::from_columns(&basis) } }
    }

    pub fn from_basis_mat(mat: CMat, tol: f64) -> Self {
        let cols: Vec<CVec> = (0..mat.ncols()).map(|j| mat.column(j).clone_owned()).collect();
        Self::span(mat.nrows(), &cols, tol)
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Orthonormal basis as matrix columns.
    pub fn basis(&self) -> &CMat {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<CVec> {
        (0..self.dim()).map(|j| self.basis.column(j).clone_owned()).collect()
    }

    /// Orthogonal projection of `v` onto the subspace.
    pub fn project(&self, v: &CVec) -> CVec {
        if self.dim() == 0 {
            return CVec::zeros(self.ambient);
        }
        &self.basis * (self.basis.adjoint() * v)
    }

    /// Component of `v` orthogonal to the subspace.
    pub fn reject(&self, v: &CVec) -> CVec {
        v - self.project(v)
    }

    pub fn contains_vec(&self, v: &CVec, tol: f64) -> bool {
        let scale = 1.0 + v.iter().map(|z| z.norm()).fold(0.0, f64::max);
        self.reject(v).iter().map(|z| z.norm()).fold(0.0, f64::max) <= tol * scale
    }

    pub fn contains(&self, other: &Subspace, tol: f64) -> bool {
        other.basis_vectors().iter().all(|v| self.contains_vec(v, tol))
    }

    pub fn equals(&self, other: &Subspace, tol: f64) -> bool {
        self.dim() == other.dim() && self.contains(other, tol) && other.contains(self, tol)
    }

    /// Sum of two subspaces.
    pub fn sum(&self, other: &Subspace, tol: f64) -> Subspace {
        let mut vs = self.basis_vectors();
        vs.extend(other.basis_vectors());
        Subspace::span(self.ambient, &vs, tol)
    }

    /// Intersection of two subspaces via the kernel of [Q1 | -Q2].
    pub fn intersect(&self, other: &Subspace, tol: f64) -> Subspace {
        let (k1, k2) = (self.dim(), other.dim());
        if k1 == 0 || k2 == 0 {
            return Subspace::zero(self.ambient);
        }
        let mut stacked = CMat::zeros(self.ambient, k1 + k2);
        stacked.view_mut((0, 0), (self.ambient, k1)).copy_from(&self.basis);
        stacked.view_mut((0, k1), (self.ambient, k2)).copy_from(&(-&other.basis));
        let null = kernel(&stacked, tol);
        let vecs: Vec<CVec> = null
            .iter()
            .map(|xy| {
                let x = xy.rows(0, k1).clone_owned();
                &self.basis * x
            })
            .collect();
        Subspace::span(self.ambient, &vecs, tol)
    }

    /// Image of the subspace under a matrix.
    pub fn apply(&self, m: &CMat, tol: f64) -> Subspace {
        let vecs: Vec<CVec> = self.basis_vectors().iter().map(|v| m * v).collect();
        Subspace::span(m.nrows(), &vecs, tol)
    }

    /// `{ v in self : M v = 0 }`.
    pub fn kernel_within(&self, m: &CMat, tol: f64) -> Subspace {
        if self.dim() == 0 {
            return Subspace::zero(self.ambient);
        }
        let restricted = m * &self.basis; // rows x dim
        let null = kernel(&restricted, tol);
        let vecs: Vec<CVec> = null.iter().map(|x| &self.basis * x).collect();
        Subspace::span(self.ambient, &vecs, tol)
    }

    /// `{ v in self : M v in target }`.
    pub fn preimage_within(&self, m: &CMat, target: &Subspace, tol: f64) -> Subspace {
        if self.dim() == 0 {
            return Subspace::zero(self.ambient);
        }
        // v = Q x, condition: (I - P_target) M Q x = 0
        let mq = m * &self.basis;
        let mut rejected = CMat::zeros(mq.nrows(), mq.ncols());
        for j in 0..mq.ncols() {
            let col = mq.column(j).clone_owned();
            rejected.set_column(j, &target.reject(&col));
        }
        let null = kernel(&rejected, tol);
        let vecs: Vec<CVec> = null.iter().map(|x| &self.basis * x).collect();
        Subspace::span(self.ambient, &vecs, tol)
    }

    /// Orthogonal complement of `inner` (assumed contained in self) inside self.
    pub fn complement_within(&self, inner: &Subspace, tol: f64) -> Subspace {
        let vecs: Vec<CVec> = self.basis_vectors().iter().map(|v| inner.reject(v)).collect();
        Subspace::span(self.ambient, &vecs, tol)
    }

    /// Entrywise conjugate subspace (the image under the real structure).
    pub fn conj(&self, tol: f64) -> Subspace {
        Subspace::from_basis_mat(conj_mat(&self.basis), tol)
    }

    /// Express `v` (assumed in the subspace) in basis coordinates.
    pub fn coords(&self, v: &CVec) -> CVec {
        self.basis.adjoint() * v
    }

    /// Whether the subspace is (numerically) conjugation-stable, i.e. the
    /// complexification of a real subspace.
    pub fn is_conj_stable(&self, tol: f64) -> bool {
        self.equals(&self.conj(tol), tol)
    }

    /// Direct-sum decomposition check: do the given parts span self with
    /// dims adding up?
    pub fn is_direct_sum_of(&self, parts: &[&Subspace], tol: f64) -> bool {
        let total: usize = parts.iter().map(|p| p.dim()).sum();
        if total != self.dim() {
            return false;
        }
        let mut all = Vec::new();
        for p in parts {
            all.extend(p.basis_vectors());
        }
        let joined = Subspace::span(self.ambient, &all, tol);
        joined.dim() == self.dim() && self.equals(&joined, tol)
    }
}

/// Convenience: standard basis vector.
pub fn unit_vec(ambient: usize, i: usize) -> CVec {
    CVec::from_fn(ambient, |j, _| if i == j { cx(1.0, 0.0) } else { cx(0.0, 0.0) })
}

#[cfg(test)]
mod tests {
    use super::super::cmat_from_real_rows;
    use super::*;

    fn v(entries: &[f64]) -> CVec {
        CVec::from_fn(entries.len(), |i, _| cx(entries[i], 0.0))
    }

    #[test]
    fn intersection_and_sum_dims() {
        let a = Subspace::span(3, &[v(&[1.0, 0.0, 0.0]), v(&[0.0, 1.0, 0.0])], 1e-12);
        let b = Subspace::span(3, &[v(&[0.0, 1.0, 0.0]), v(&[0.0, 0.0, 1.0])], 1e-12);
        let i = a.intersect(&b, 1e-12);
        assert_eq!(i.dim(), 1);
        assert!(i.contains_vec(&v(&[0.0, 2.0, 0.0]), 1e-10));
        let s = a.sum(&b, 1e-12);
        assert_eq!(s.dim(), 3);
    }

    #[test]
    fn preimage_within_works() {
        // M = lower shift on C^3, target = span(e3); preimage = span(e2, e3)
        let m = cmat_from_real_rows(&[vec![0.0, 0.0, 0.0], vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]);
        let full = Subspace::full(3);
        let target = Subspace::span(3, &[v(&[0.0, 0.0, 1.0])], 1e-12);
        let pre = full.preimage_within(&m, &target, 1e-12);
        assert_eq!(pre.dim(), 2);
        assert!(pre.contains_vec(&v(&[0.0, 1.0, 0.0]), 1e-10));
        assert!(pre.contains_vec(&v(&[0.0, 0.0, 1.0]), 1e-10));
    }

    #[test]
    fn complement_within() {
        let whole = Subspace::span(3, &[v(&[1.0, 0.0, 0.0]), v(&[1.0, 1.0, 0.0])], 1e-12);
        let inner = Subspace::span(3, &[v(&[1.0, 0.0, 0.0])], 1e-12);
        let c = whole.complement_within(&inner, 1e-12);
        assert_eq!(c.dim(), 1);
        assert!(whole.contains(&c, 1e-10));
        assert!(inner.reject(&c.basis_vectors()[0]).norm() > 0.9);
    }
}
