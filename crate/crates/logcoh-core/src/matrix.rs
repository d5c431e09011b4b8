//! Dense matrices with exact entries, reduced row echelon form, kernels,
//! solving, and subquotient bases.
//!
//! Everything here is deterministic: pivots are chosen as the first nonzero
//! entry scanning columns left to right and rows top to bottom, so repeated
//! runs produce identical bases and identical reports.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut, Mul};

use num_traits::{One, Zero};

use crate::field::Field;

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl<T: Clone> Matrix<T> {
    /// Builds from row vectors; panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|r| r.len() == m),
            "rows must all have equal length"
        );
        Matrix {
            rows: n,
            cols: m,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds an `ambient x k` matrix whose columns are the given vectors.
    /// `ambient` must be passed explicitly so zero columns are representable.
    pub fn from_columns(ambient: usize, columns: &[Vec<T>]) -> Self {
        assert!(
            columns.iter().all(|c| c.len() == ambient),
            "columns must all have length {ambient}"
        );
        Matrix::from_fn(ambient, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    /// Horizontal concatenation `[self | right]`.
    pub fn hstack(&self, right: &Self) -> Self {
        assert_eq!(self.rows, right.rows, "hstack needs equal row counts");
        Matrix::from_fn(self.rows, self.cols + right.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                right[(r, c - self.cols)].clone()
            }
        })
    }

    /// The submatrix made of the listed columns, in the listed order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Matrix::from_fn(self.rows, cols.len(), |r, c| self[(r, cols[c])].clone())
    }

    /// The submatrix made of the listed rows, in the listed order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), self.cols, |r, c| self[(rows[r], c)].clone())
    }
}

impl<T: Zero + Clone> Matrix<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl<T: Zero + One + Clone> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &mut self.data[r * self.cols + c]
    }
}

impl<K: Field> Mul for &Matrix<K> {
    type Output = Matrix<K>;
    fn mul(self, rhs: &Matrix<K>) -> Matrix<K> {
        assert_eq!(self.cols, rhs.rows, "matmul shape mismatch");
        Matrix::from_fn(self.rows, rhs.cols, |r, c| {
            let mut acc = K::zero();
            for k in 0..self.cols {
                if !self[(r, k)].is_zero() && !rhs[(k, c)].is_zero() {
                    acc = acc + self[(r, k)].clone() * rhs[(k, c)].clone();
                }
            }
            acc
        })
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref<K> {
    pub matrix: Matrix<K>,
    pub pivots: Vec<usize>,
}

/// A basis of a subquotient `span(Z) / span(B)` of an ambient coordinate
/// space, with a projection that computes coordinates of any vector of
/// `span(Z)` relative to that basis.
#[derive(Clone, Debug)]
pub struct Subquotient<K> {
    ambient: usize,
    /// `ambient x dim`; columns are representative vectors.
    reps: Matrix<K>,
    /// `dim x ambient`; sends `v` in `span(Z)` to its coordinates mod `span(B)`.
    projection: Matrix<K>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubquotientError {
    /// The would-be denominator is not contained in the numerator span.
    SubspaceNotContained,
}

impl core::fmt::Display for SubquotientError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            SubquotientError::SubspaceNotContained => {
                write!(f, "subspace to quotient by is not contained in the ambient span")
            }
        }
    }
}

impl<K: Field> Matrix<K> {
    pub fn mul_vec(&self, v: &[K]) -> Vec<K> {
        assert_eq!(self.cols, v.len(), "mul_vec shape mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = K::zero();
                for c in 0..self.cols {
                    if !self[(r, c)].is_zero() && !v[c].is_zero() {
                        acc = acc + self[(r, c)].clone() * v[c].clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn rref(&self) -> Rref<K> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(src) = (pivot_row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            if src != pivot_row {
                for c in 0..m.cols {
                    m.data.swap(src * m.cols + c, pivot_row * m.cols + c);
                }
            }
            let inv = m[(pivot_row, col)].inv().expect("pivot is nonzero");
            for c in col..m.cols {
                m[(pivot_row, c)] = m[(pivot_row, c)].clone() * inv.clone();
            }
            for r in 0..m.rows {
                if r != pivot_row && !m[(r, col)].is_zero() {
                    let factor = m[(r, col)].clone();
                    for c in col..m.cols {
                        let delta = factor.clone() * m[(pivot_row, c)].clone();
                        m[(r, c)] = m[(r, c)].clone() - delta;
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the null space, as the columns of a `cols x nullity` matrix.
    /// Each free column contributes the vector with `1` in that slot and the
    /// negated echelon entries in the pivot slots.
    pub fn kernel_basis(&self) -> Matrix<K> {
        let Rref { matrix: e, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut columns = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![K::zero(); self.cols];
            v[f] = K::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -e[(i, f)].clone();
            }
            columns.push(v);
        }
        Matrix::from_columns(self.cols, &columns)
    }

    /// Solves `self * X = rhs` column by column from one echelon reduction of
    /// `[self | rhs]`. Returns the particular solution with all free
    /// variables zero, or `None` when any column is inconsistent.
    pub fn solve_columns(&self, rhs: &Matrix<K>) -> Option<Matrix<K>> {
        assert_eq!(self.rows, rhs.rows, "solve shape mismatch");
        let aug = self.hstack(rhs).rref();
        if aug.pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zero(self.cols, rhs.cols);
        for (i, &p) in aug.pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                x[(p, c)] = aug.matrix[(i, self.cols + c)].clone();
            }
        }
        Some(x)
    }

    pub fn solve(&self, b: &[K]) -> Option<Vec<K>> {
        let rhs = Matrix::from_columns(self.rows, &[b.to_vec()]);
        self.solve_columns(&rhs).map(|x| x.column(0))
    }

    pub fn inverse(&self) -> Option<Matrix<K>> {
        if self.rows != self.cols {
            return None;
        }
        let aug = self.hstack(&Matrix::identity(self.rows)).rref();
        if aug.pivots.len() != self.rows || aug.pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        Some(Matrix::from_fn(self.rows, self.cols, |r, c| {
            aug.matrix[(r, self.cols + c)].clone()
        }))
    }

    /// Indices of a maximal linearly independent subset of the columns
    /// (the echelon pivots), preferring earlier columns.
    pub fn independent_columns(&self) -> Vec<usize> {
        self.rref().pivots
    }
}

impl<K: Field> Subquotient<K> {
    /// Basis of `span(z) / span(b)`, both given by spanning columns in the
    /// same ambient coordinate space. Fails if `span(b)` is not contained in
    /// `span(z)`.
    pub fn new(z: &Matrix<K>, b: &Matrix<K>) -> Result<Self, SubquotientError> {
        assert_eq!(z.rows(), b.rows(), "ambient dimension mismatch");
        let ambient = z.rows();
        if z.solve_columns(b).is_none() {
            return Err(SubquotientError::SubspaceNotContained);
        }
        let b_basis = b.select_columns(&b.independent_columns());
        let nb = b_basis.cols();
        // Pivot columns of [b_basis | z] past the b block extend the b basis
        // to a basis of span(z); those are the representatives.
        let combined = b_basis.hstack(z);
        let rep_cols: Vec<usize> = combined
            .independent_columns()
            .into_iter()
            .filter(|&c| c >= nb)
            .map(|c| c - nb)
            .collect();
        let reps = z.select_columns(&rep_cols);
        let dim = reps.cols();
        // Complete [b_basis | reps] to a basis of the ambient space with unit
        // vectors; rows of the inverse at the rep slots compute coordinates.
        let with_units = b_basis.hstack(&reps).hstack(&Matrix::identity(ambient));
        let full = with_units.select_columns(&with_units.independent_columns());
        debug_assert_eq!(full.cols(), ambient);
        let inv = full.inverse().expect("completed to an invertible matrix");
        let projection = Matrix::from_fn(dim, ambient, |r, c| inv[(nb + r, c)].clone());
        Ok(Subquotient {
            ambient,
            reps,
            projection,
        })
    }

    pub fn dim(&self) -> usize {
        self.reps.cols()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// The representative vector of the `i`-th basis element.
    pub fn rep(&self, i: usize) -> Vec<K> {
        self.reps.column(i)
    }

    pub fn reps(&self) -> &Matrix<K> {
        &self.reps
    }

    /// Coordinates of `v` relative to this basis, modulo the quotiented
    /// subspace. Only meaningful for `v` in the numerator span.
    pub fn project(&self, v: &[K]) -> Vec<K> {
        self.projection.mul_vec(v)
    }

    /// Applies [`Subquotient::project`] to every column.
    pub fn project_columns(&self, m: &Matrix<K>) -> Matrix<K> {
        &self.projection * m
    }
}
