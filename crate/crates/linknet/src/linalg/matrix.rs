//! Exact dense matrices and canonical subspaces over a [`Field`].
//!
//! Subspaces are kept in reduced column echelon form, which is unique,
//! so subspace equality is plain comparison of representations.

use super::field::{Field, PrimeField, RatFns, Rationals};
use num::rational::BigRational;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("entry ({row},{col}) has a pole at t=0")]
    PoleAtZero { row: usize, col: usize },
}

/// Row-major dense matrix over the field `K`.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<K: Field> {
    field: K,
    rows: usize,
    cols: usize,
    data: Vec<K::E>,
}

impl<K: Field> Matrix<K> {
    pub fn zero(field: K, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn identity(field: K, n: usize) -> Self {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            let one = m.field.one();
            m.set(i, i, one);
        }
        m
    }

    pub fn from_fn(field: K, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> K::E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(field: K, rows: Vec<Vec<K::E>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix {
            field,
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Diagonal square matrix from the given entries.
    pub fn diagonal(field: K, diag: &[K::E]) -> Self {
        let n = diag.len();
        Matrix::from_fn(field.clone(), n, n, |r, c| {
            if r == c {
                diag[r].clone()
            } else {
                field.zero()
            }
        })
    }

    pub fn field(&self) -> &K {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &K::E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: K::E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.field.is_zero(e))
    }

    pub fn entries(&self) -> &[K::E] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix<K> {
        Matrix::from_fn(self.field.clone(), self.cols, self.rows, |r, c| {
            self.at(c, r).clone()
        })
    }

    pub fn scale(&self, c: &K::E) -> Matrix<K> {
        Matrix::from_fn(self.field.clone(), self.rows, self.cols, |i, j| {
            self.field.mul(self.at(i, j), c)
        })
    }

    pub fn add(&self, other: &Matrix<K>) -> Matrix<K> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.field.clone(), self.rows, self.cols, |i, j| {
            self.field.add(self.at(i, j), other.at(i, j))
        })
    }

    /// Matrix product self · other.
    pub fn compose(&self, other: &Matrix<K>) -> Result<Matrix<K>, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zero(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.at(i, j), &f.mul(a, other.at(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Image of a column vector under the matrix.
    pub fn apply(&self, v: &[K::E]) -> Vec<K::E> {
        assert_eq!(self.cols, v.len());
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for j in 0..self.cols {
                    acc = f.add(&acc, &f.mul(self.at(i, j), &v[j]));
                }
                acc
            })
            .collect()
    }

    /// In-place reduction to reduced row echelon form; returns pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row >= self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| !f.is_zero(self.at(r, col))) else {
                continue;
            };
            if pr != row {
                for c in 0..self.cols {
                    self.data.swap(pr * self.cols + c, row * self.cols + c);
                }
            }
            let inv = f.inv(self.at(row, col)).expect("pivot is nonzero");
            for c in col..self.cols {
                let v = f.mul(self.at(row, c), &inv);
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r != row && !f.is_zero(self.at(r, col)) {
                    let factor = self.at(r, col).clone();
                    for c in col..self.cols {
                        let v = f.sub(self.at(r, c), &f.mul(&factor, self.at(row, c)));
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Reduce to reduced row echelon form in place; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        self.rref()
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Solve self · X = rhs for square invertible self; `None` if singular.
    pub fn solve(&self, rhs: &Matrix<K>) -> Option<Matrix<K>> {
        assert_eq!(self.rows(), rhs.rows(), "solve: row mismatch");
        assert_eq!(self.rows(), self.cols(), "solve needs a square matrix");
        let f = self.field.clone();
        let n = self.rows();
        let k = rhs.cols();
        let mut aug = Matrix::from_fn(f.clone(), n, n + k, |r, c| {
            if c < n {
                self.at(r, c).clone()
            } else {
                rhs.at(r, c - n).clone()
            }
        });
        let pivots = aug.rref();
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some(Matrix::from_fn(f, n, k, |r, c| aug.at(r, n + c).clone()))
    }

    /// Kernel as a canonical subspace of the column-vector domain.
    pub fn kernel(&self) -> Subspace<K> {
        let f = self.field.clone();
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::new();
        for &fc in &free {
            let mut v = vec![f.zero(); self.cols];
            v[fc] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m.at(r, fc));
            }
            basis.push(v);
        }
        Subspace::from_vectors(f, self.cols, basis)
    }

    /// Column space as a canonical subspace of the codomain.
    pub fn image(&self) -> Subspace<K> {
        let cols: Vec<Vec<K::E>> = (0..self.cols)
            .map(|c| (0..self.rows).map(|r| self.at(r, c).clone()).collect())
            .collect();
        Subspace::from_vectors(self.field.clone(), self.rows, cols)
    }

    /// The scalar c with self = c · other, if one exists. By convention
    /// a zero matrix is the zero multiple of anything, so maps that
    /// vanish still count as scalar multiples of admissible composites.
    pub fn scalar_multiple_of(&self, other: &Matrix<K>) -> Option<K::E> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return None;
        }
        let f = &self.field;
        if self.is_zero() {
            return Some(f.zero());
        }
        let pos = (0..self.data.len()).find(|&i| !f.is_zero(&other.data[i]))?;
        let c = f.div(&self.data[pos], &other.data[pos])?;
        for i in 0..self.data.len() {
            if self.data[i] != f.mul(&c, &other.data[i]) {
                return None;
            }
        }
        Some(c)
    }

    /// Whether the matrix is square and invertible.
    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn is_epimorphism(&self) -> bool {
        self.rank() == self.rows
    }

    pub fn is_monomorphism(&self) -> bool {
        self.rank() == self.cols
    }

    pub fn map_entries<L: Field>(
        &self,
        field: L,
        f: impl Fn(&K::E) -> L::E,
    ) -> Matrix<L> {
        Matrix {
            field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl Matrix<RatFns> {
    /// Entrywise evaluation at t = 0.
    pub fn specialize_t0(&self) -> Result<Matrix<Rationals>, LinalgError> {
        let mut data: Vec<BigRational> = Vec::with_capacity(self.data.len());
        for r in 0..self.rows {
            for c in 0..self.cols {
                match self.at(r, c).eval0() {
                    Some(v) => data.push(v),
                    None => return Err(LinalgError::PoleAtZero { row: r, col: c }),
                }
            }
        }
        Ok(Matrix {
            field: Rationals,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }
}

/// A linear subspace with a canonical (reduced column echelon) basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<K: Field> {
    ambient: usize,
    /// Basis vectors as matrix columns, in reduced column echelon form.
    basis: Matrix<K>,
}

impl<K: Field> Subspace<K> {
    /// Canonicalize a spanning set into the unique echelon basis.
    pub fn from_vectors(field: K, ambient: usize, vectors: Vec<Vec<K::E>>) -> Self {
        for v in &vectors {
            assert_eq!(v.len(), ambient, "vector length != ambient dimension");
        }
        // Row-reduce the spanning set, then store nonzero rows as columns.
        let mut m = Matrix::from_rows(field.clone(), vectors);
        let pivots = m.rref();
        let dim = pivots.len();
        let basis = Matrix::from_fn(field.clone(), ambient, dim, |r, c| m.at(c, r).clone());
        Subspace { ambient, basis }
    }

    pub fn full(field: K, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(field, ambient),
        }
    }

    pub fn zero(field: K, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zero(field, ambient, 0),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Basis vectors as columns of a matrix.
    pub fn basis_matrix(&self) -> &Matrix<K> {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<K::E>> {
        (0..self.dim())
            .map(|c| {
                (0..self.ambient)
                    .map(|r| self.basis.at(r, c).clone())
                    .collect()
            })
            .collect()
    }

    pub fn contains(&self, v: &[K::E]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut vectors = self.basis_vectors();
        vectors.push(v.to_vec());
        let rank = Matrix::from_rows(self.basis.field().clone(), vectors).rank();
        rank == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Subspace<K>) -> bool {
        self.basis_vectors().iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace<K>) -> Subspace<K> {
        assert_eq!(self.ambient, other.ambient);
        let mut vectors = self.basis_vectors();
        vectors.extend(other.basis_vectors());
        Subspace::from_vectors(self.basis.field().clone(), self.ambient, vectors)
    }

    /// Intersection, via the kernel of [B1 | -B2].
    pub fn intersect(&self, other: &Subspace<K>) -> Subspace<K> {
        assert_eq!(self.ambient, other.ambient);
        let f = self.basis.field().clone();
        let d1 = self.dim();
        let d2 = other.dim();
        if d1 == 0 || d2 == 0 {
            return Subspace::zero(f, self.ambient);
        }
        let stacked = Matrix::from_fn(f.clone(), self.ambient, d1 + d2, |r, c| {
            if c < d1 {
                self.basis.at(r, c).clone()
            } else {
                f.neg(other.basis.at(r, c - d1))
            }
        });
        let ker = stacked.kernel();
        let vectors = ker
            .basis_vectors()
            .into_iter()
            .map(|coef| {
                (0..self.ambient)
                    .map(|r| {
                        let mut acc = f.zero();
                        for c in 0..d1 {
                            acc = f.add(&acc, &f.mul(self.basis.at(r, c), &coef[c]));
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Subspace::from_vectors(f, self.ambient, vectors)
    }

    /// Image of this subspace under a linear map.
    pub fn map_through(&self, m: &Matrix<K>) -> Subspace<K> {
        assert_eq!(m.cols(), self.ambient);
        let vectors = self
            .basis_vectors()
            .iter()
            .map(|v| m.apply(v))
            .collect();
        Subspace::from_vectors(m.field().clone(), m.rows(), vectors)
    }
}

/// Convenience constructor for rational matrices from integer literals.
pub fn qmat(rows: Vec<Vec<i64>>) -> Matrix<Rationals> {
    let q = Rationals;
    Matrix::from_rows(
        q,
        rows.into_iter()
            .map(|r| r.into_iter().map(|n| Rationals.from_int(n)).collect())
            .collect(),
    )
}

/// Convenience constructor for matrices over F_p from integer literals.
pub fn pmat(field: PrimeField, rows: Vec<Vec<i64>>) -> Matrix<PrimeField> {
    Matrix::from_rows(
        field,
        rows.into_iter()
            .map(|r| r.into_iter().map(|n| field.from_int(n)).collect())
            .collect(),
    )
}
