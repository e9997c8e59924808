//! Dense matrices over `Scalar` with field-exact Gaussian elimination.
//!
//! No general eigensolver lives here: callers always know their eigenvalues
//! ahead of time, so rank/kernel/inverse/solve is all that is needed.

use crate::error::{Error, Result};
use crate::scalar::{Backend, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    backend: Backend,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize, backend: Backend) -> Self {
        Matrix {
            rows,
            cols,
            backend,
            data: vec![Scalar::zero(backend); rows * cols],
        }
    }

    pub fn identity(n: usize, backend: Backend) -> Self {
        let mut m = Matrix::zero(n, n, backend);
        for i in 0..n {
            m.set(i, i, Scalar::one(backend));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>, backend: Backend) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|v| v.len()).unwrap_or(0);
        if rows.iter().any(|v| v.len() != c) {
            return Err(Error::Parse("ragged matrix rows".into()));
        }
        let mut m = Matrix::zero(r, c, backend);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                if v.backend() != backend {
                    return Err(Error::BackendMismatch("mixed matrix entry backends".into()));
                }
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for (a, b) in m.data.iter_mut().zip(&other.data) {
            *a = &*a + b;
        }
        m
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Scalar::from_i64(-1, self.backend)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut m = self.clone();
        for a in m.data.iter_mut() {
            *a = &*a * c;
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix mul");
        let mut m = Matrix::zero(self.rows, other.cols, self.backend);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Scalar::zero(self.backend);
                for l in 0..self.cols {
                    acc = &acc + &(self.get(i, l) * other.get(l, j));
                }
                m.set(i, j, acc);
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero(self.backend);
                for j in 0..self.cols {
                    acc = &acc + &(self.get(i, j) * &v[j]);
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut m = Matrix::zero(self.cols, self.rows, self.backend);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    fn pivot_nonzero(&self, col: usize, from_row: usize, eps: f64) -> Option<usize> {
        match self.backend {
            Backend::Exact => (from_row..self.rows).find(|&r| !self.get(r, col).is_zero()),
            Backend::Float => {
                // partial pivoting by modulus
                let mut best = None;
                let mut best_norm = eps;
                for r in from_row..self.rows {
                    let n = self.get(r, col).to_complex().norm();
                    if n > best_norm {
                        best_norm = n;
                        best = Some(r);
                    }
                }
                best
            }
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self, eps: f64) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = self.pivot_nonzero(col, row, eps) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = self.get(row, col).inv().expect("pivot is invertible");
            for j in col..self.cols {
                let v = self.get(row, j) * &inv;
                self.set(row, j, v);
            }
            for r in 0..self.rows {
                if r == row || self.get(r, col).is_zero() {
                    continue;
                }
                let f = self.get(r, col).clone();
                for j in col..self.cols {
                    let v = self.get(r, j) - &(&f * self.get(row, j));
                    self.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self, eps: f64) -> usize {
        let mut m = self.clone();
        m.rref(eps).len()
    }

    /// Basis of the right kernel, as column vectors.
    pub fn kernel_basis(&self, eps: f64) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref(eps);
        let mut basis = Vec::new();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![Scalar::zero(self.backend); self.cols];
            v[free] = Scalar::one(self.backend);
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = m.get(r, free).neg();
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self, eps: f64) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::NotInvertible("non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Matrix::zero(n, 2 * n, self.backend);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Scalar::one(self.backend));
        }
        let pivots = aug.rref(eps);
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return Err(Error::NotInvertible("singular matrix".into()));
        }
        let mut out = Matrix::zero(n, n, self.backend);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Ok(out)
    }

    /// Solve `A x = b`, if consistent (least one solution; free variables are
    /// set to zero).
    pub fn solve(&self, b: &[Scalar], eps: f64) -> Result<Vec<Scalar>> {
        assert_eq!(self.rows, b.len());
        let mut aug = Matrix::zero(self.rows, self.cols + 1, self.backend);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref(eps);
        if pivots.contains(&self.cols) {
            return Err(Error::NoSolution("inconsistent linear system".into()));
        }
        let mut x = vec![Scalar::zero(self.backend); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.cols).clone();
        }
        Ok(x)
    }

    pub fn approx_eq(&self, other: &Self, eps: f64) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| a.approx_eq(b, eps))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_i64(n, Backend::Exact)
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_rows(
            vec![
                vec![s(2), s(1), s(0)],
                vec![s(1), s(1), Scalar::i(Backend::Exact)],
                vec![s(0), s(3), s(1)],
            ],
            Backend::Exact,
        )
        .unwrap();
        let inv = m.inverse(0.0).unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(3, Backend::Exact));
        assert_eq!(inv.mul(&m), Matrix::identity(3, Backend::Exact));
    }

    #[test]
    fn rank_and_kernel() {
        // rank 1, kernel dim 2
        let m = Matrix::from_rows(
            vec![vec![s(1), s(2), s(3)], vec![s(2), s(4), s(6)]],
            Backend::Exact,
        )
        .unwrap();
        assert_eq!(m.rank(0.0), 1);
        let kb = m.kernel_basis(0.0);
        assert_eq!(kb.len(), 2);
        for v in &kb {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = Matrix::from_rows(
            vec![vec![s(1), s(1)], vec![s(1), s(-1)]],
            Backend::Exact,
        )
        .unwrap();
        let x = m.solve(&[s(3), s(1)], 0.0).unwrap();
        assert_eq!(x, vec![s(2), s(1)]);
        let sing = Matrix::from_rows(
            vec![vec![s(1), s(1)], vec![s(2), s(2)]],
            Backend::Exact,
        )
        .unwrap();
        assert!(sing.solve(&[s(0), s(1)], 0.0).is_err());
        assert!(sing.inverse(0.0).is_err());
    }

    #[test]
    fn float_pivoting() {
        let m = Matrix::from_rows(
            vec![
                vec![Scalar::from_f64(1e-13, 0.0), Scalar::from_f64(1.0, 0.0)],
                vec![Scalar::from_f64(1.0, 0.0), Scalar::from_f64(1.0, 0.0)],
            ],
            Backend::Float,
        )
        .unwrap();
        let inv = m.inverse(1e-12).unwrap();
        assert!(m
            .mul(&inv)
            .approx_eq(&Matrix::identity(2, Backend::Float), 1e-9));
    }

    #[test]
    fn extension_scalars() {
        // matrix over Q(i, sqrt(3)) inverts exactly
        let (r3, _) = Scalar::from_i64(3, Backend::Exact).sqrt().unwrap();
        let m = Matrix::from_rows(
            vec![vec![s(0), r3.clone()], vec![r3.clone(), s(0)]],
            Backend::Exact,
        )
        .unwrap();
        let inv = m.inverse(0.0).unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2, Backend::Exact));
    }
}
