use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{cx, CMat};

/// Dense matrix with exact rational entries.
///
/// Used for input Gram matrices, determinants, nondegeneracy decisions and
/// the Kronecker/sign bookkeeping of the Thom-Sebastiani operations, where
/// exactness matters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>, // row major
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        QMat { rows, cols, data }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let nr = rows.len();
        let nc = if nr == 0 { 0 } else { rows[0].len() };
        Self::from_fn(nr, nc, |i, j| BigRational::from_integer(BigInt::from(rows[i][j])))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * c)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = BigRational::zero();
            for k in 0..self.cols {
                acc += &self[(i, k)] * &other[(k, j)];
            }
            acc
        })
    }

    pub fn kronecker(&self, other: &Self) -> Self {
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            let (ia, ib) = (i / other.rows, i % other.rows);
            let (ja, jb) = (j / other.cols, j % other.cols);
            &self[(ia, ja)] * &other[(ib, jb)]
        })
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square() && *self == self.transpose().neg()
    }

    /// Exact determinant via fraction Gaussian elimination.
    pub fn det(&self) -> BigRational {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = BigRational::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero());
            let Some(p) = pivot else { return BigRational::zero() };
            if p != col {
                for j in 0..n {
                    let tmp = a[(p, j)].clone();
                    a[(p, j)] = a[(col, j)].clone();
                    a[(col, j)] = tmp;
                }
                det = -det;
            }
            det *= a[(col, col)].clone();
            let inv = a[(col, col)].recip();
            for r in col + 1..n {
                let f = &a[(r, col)] * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in col..n {
                    let delta = &f * &a[(col, j)];
                    a[(r, j)] = &a[(r, j)] - delta;
                }
            }
        }
        det
    }

    /// Exact inverse (None if singular).
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            if pivot != col {
                for j in 0..n {
                    let tmp = a[(pivot, j)].clone();
                    a[(pivot, j)] = a[(col, j)].clone();
                    a[(col, j)] = tmp;
                    let tmp = inv[(pivot, j)].clone();
                    inv[(pivot, j)] = inv[(col, j)].clone();
                    inv[(col, j)] = tmp;
                }
            }
            let pinv = a[(col, col)].recip();
            for j in 0..n {
                a[(col, j)] = &a[(col, j)] * &pinv;
                inv[(col, j)] = &inv[(col, j)] * &pinv;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    let da = &f * &a[(col, j)];
                    a[(r, j)] = &a[(r, j)] - da;
                    let di = &f * &inv[(col, j)];
                    inv[(r, j)] = &inv[(r, j)] - di;
                }
            }
        }
        Some(inv)
    }

    /// Monodromy of the bilinear form with this Gram matrix:
    /// the unique M with M^t G = G^t, i.e. M = (G^t)^{-1} G.
    pub fn monodromy(&self) -> Option<Self> {
        Some(self.transpose().inverse()?.mul(self))
    }

    /// Exact Sylvester signature (p, q, r) of a symmetric matrix:
    /// p positive, q radical, r negative dimensions.
    pub fn signature(&self) -> crate::Result<(usize, usize, usize)> {
        if !self.is_symmetric() {
            return Err(crate::Error::NotSymmetric);
        }
        let n = self.rows;
        let mut a = self.clone();
        let (mut p, mut r) = (0usize, 0usize);
        // congruence diagonalization on the trailing block starting at k
        let mut k = 0;
        while k < n {
            if a[(k, k)].is_zero() {
                // try to bring a nonzero onto the diagonal
                if let Some(j) = (k + 1..n).find(|&j| !a[(k, j)].is_zero()) {
                    // row/col replacement e_k -> e_k + e_j makes the (k,k) entry 2*a_kj + a_jj
                    for t in 0..n {
                        let add = a[(j, t)].clone();
                        a[(k, t)] = &a[(k, t)] + add;
                    }
                    for t in 0..n {
                        let add = a[(t, j)].clone();
                        a[(t, k)] = &a[(t, k)] + add;
                    }
                    if a[(k, k)].is_zero() {
                        // a_jj = -2 a_kj: subtract instead
                        for t in 0..n {
                            let sub = a[(j, t)].clone() * BigRational::from_integer(BigInt::from(2));
                            a[(k, t)] = &a[(k, t)] - sub;
                        }
                        for t in 0..n {
                            let sub = a[(t, j)].clone() * BigRational::from_integer(BigInt::from(2));
                            a[(t, k)] = &a[(t, k)] - sub;
                        }
                    }
                }
            }
            if a[(k, k)].is_zero() {
                // row k must be entirely zero on the trailing block, radical direction
                k += 1;
                continue;
            }
            if a[(k, k)].is_positive() {
                p += 1;
            } else {
                r += 1;
            }
            let pivot = a[(k, k)].clone();
            for t in k + 1..n {
                if a[(t, k)].is_zero() {
                    continue;
                }
                let f = &a[(t, k)] / &pivot;
                for u in 0..n {
                    let d = &f * &a[(k, u)];
                    a[(t, u)] = &a[(t, u)] - d;
                }
                for u in 0..n {
                    let d = &f * &a[(u, k)];
                    a[(u, t)] = &a[(u, t)] - d;
                }
            }
            k += 1;
        }
        Ok((p, n - p - r, r))
    }

    pub fn to_cmat(&self) -> CMat {
        CMat::from_fn(self.rows, self.cols, |i, j| {
            let v = &self[(i, j)];
            let num = rational_to_f64(v);
            cx(num, 0.0)
        })
    }
}

fn rational_to_f64(v: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    v.to_f64().unwrap_or(f64::NAN)
}

impl std::ops::Index<(usize, usize)> for QMat {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_inverse() {
        let m = QMat::from_i64_rows(&[vec![1, 0], vec![2, 1]]);
        assert_eq!(m.det(), BigRational::one());
        let inv = m.inverse().unwrap();
        assert_eq!(inv.mul(&m), QMat::identity(2));
    }

    #[test]
    fn monodromy_example() {
        // G = [[1,0],[2,1]] gives M = [[-3,-2],[2,1]]
        let g = QMat::from_i64_rows(&[vec![1, 0], vec![2, 1]]);
        let m = g.monodromy().unwrap();
        assert_eq!(m, QMat::from_i64_rows(&[vec![-3, -2], vec![2, 1]]));
    }

    #[test]
    fn signature_basic() {
        let d = QMat::from_i64_rows(&[vec![1, 0], vec![0, -1]]);
        assert_eq!(d.signature().unwrap(), (1, 0, 1));
        let z = QMat::zeros(2, 2);
        assert_eq!(z.signature().unwrap(), (0, 2, 0));
        // hyperbolic plane: zero diagonal
        let h = QMat::from_i64_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(h.signature().unwrap(), (1, 0, 1));
    }

    #[test]
    fn signature_matches_sylvester_under_congruence() {
        let s = QMat::from_i64_rows(&[vec![2, 1, 0], vec![1, -3, 1], vec![0, 1, 0]]);
        let c = QMat::from_i64_rows(&[vec![1, 2, 0], vec![0, 1, 5], vec![3, 0, 1]]);
        let s2 = c.transpose().mul(&s).mul(&c);
        assert_eq!(s.signature().unwrap(), s2.signature().unwrap());
    }

    #[test]
    fn kronecker_dims_and_det() {
        let a = QMat::from_i64_rows(&[vec![1, 2], vec![0, 1]]);
        let b = QMat::from_i64_rows(&[vec![3]]);
        let k = a.kronecker(&b);
        assert_eq!(k.rows(), 2);
        assert_eq!(k[(0, 1)], BigRational::from_integer(BigInt::from(6)));
    }
}
