//! Exact rational matrices.
//!
//! Everything downstream (Hom spaces, kernels, cokernels, extension classes)
//! is computed over the rationals with no rounding, so every answer is
//! either exactly right or an error.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Shorthand for an integer-valued rational.
pub fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Dense row-major matrix over the rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged row");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, rat(*v));
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j) + a * b;
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, MatrixError> {
        if v.len() != self.cols {
            return Err(MatrixError::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        Ok((0..self.rows)
            .map(|r| {
                (0..self.cols).fold(Rational::zero(), |acc, c| acc + self.get(r, c) * &v[c])
            })
            .collect())
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MatrixError::DimensionMismatch {
                expected: self.rows * self.cols,
                got: other.rows * other.cols,
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        })
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).clone());
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                m.set(self.rows + r, self.cols + c, other.get(r, c).clone());
            }
        }
        m
    }

    /// Stack `self` on top of `other` (same column count).
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        if self.cols != other.cols {
            return Err(MatrixError::DimensionMismatch { expected: self.cols, got: other.cols });
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(Matrix { rows: self.rows + other.rows, cols: self.cols, entries })
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(p, row);
            let inv = m.get(row, col).recip();
            for c in col..m.cols {
                let v = m.get(row, c) * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = m.get(r, c) - &factor * m.get(row, c);
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, one column vector per element.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (prow, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(prow, f).clone();
                }
                v
            })
            .collect()
    }

    /// Some `x` with `self * x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vec<Rational>>, MatrixError> {
        if b.len() != self.rows {
            return Err(MatrixError::DimensionMismatch { expected: self.rows, got: b.len() });
        }
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (prow, &pc) in pivots.iter().enumerate() {
            x[pc] = red.get(prow, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Solve `self * X = rhs` column by column.
    pub fn solve_matrix(&self, rhs: &Matrix) -> Result<Option<Matrix>, MatrixError> {
        let mut cols = Vec::with_capacity(rhs.cols);
        for c in 0..rhs.cols {
            match self.solve(&rhs.column(c))? {
                Some(x) => cols.push(x),
                None => return Ok(None),
            }
        }
        Ok(Some(Matrix::from_columns(self.cols, &cols)))
    }

    /// A surjection `q` (rows = rows(self) - rank) whose kernel is exactly the
    /// column space of `self`; `q * self = 0`.
    pub fn cokernel_projection(&self) -> Matrix {
        let left_null = self.transpose().kernel_basis();
        let mut q = Matrix::zeros(left_null.len(), self.rows);
        for (i, v) in left_null.iter().enumerate() {
            for (j, x) in v.iter().enumerate() {
                q.set(i, j, x.clone());
            }
        }
        q
    }

    /// Exact determinant of a square matrix.
    pub fn determinant(&self) -> Result<Rational, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::DimensionMismatch { expected: self.rows, got: self.cols });
        }
        let mut m = self.clone();
        let mut det = Rational::one();
        for col in 0..m.cols {
            let Some(p) = (col..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m.get(col, col).clone();
            det *= &pivot;
            for r in col + 1..m.rows {
                let factor = m.get(r, col) / &pivot;
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = m.get(r, c) - &factor * m.get(col, c);
                    m.set(r, c, v);
                }
            }
        }
        Ok(det)
    }
}

/// Rank of `m` over the rationals.
pub fn rank(m: &Matrix) -> usize {
    m.rank()
}

pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Rational>> {
    m.kernel_basis()
}

pub fn solve(m: &Matrix, b: &[Rational]) -> Result<Option<Vec<Rational>>, MatrixError> {
    m.solve(b)
}

/// Determinant of a square integer matrix, computed exactly.
pub fn integer_determinant(rows: &[Vec<i64>]) -> i64 {
    let m = Matrix::from_rows(rows);
    let d = m.determinant().expect("square matrix");
    debug_assert!(d.is_integer());
    let n = d.to_integer();
    let magnitude: i64 = n.abs().try_into().expect("determinant fits in i64");
    if n.is_negative() {
        -magnitude
    } else {
        magnitude
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Matrix::identity(2)), 2);
        assert_eq!(rank(&Matrix::zeros(2, 2)), 0);
        assert_eq!(rank(&Matrix::from_rows(&[vec![1, 2], vec![2, 4]])), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&Matrix::identity(3)).is_empty());
        let k = kernel_basis(&Matrix::zeros(3, 3));
        assert_eq!(k.len(), 3);
        for (i, v) in k.iter().enumerate() {
            for (j, x) in v.iter().enumerate() {
                assert_eq!(*x, rat((i == j) as i64));
            }
        }
        let k = kernel_basis(&Matrix::from_rows(&[vec![1, 1]]));
        assert_eq!(k, vec![vec![rat(-1), rat(1)]]);
    }

    #[test]
    fn solve_examples() {
        let b = vec![rat(3), rat(-2)];
        assert_eq!(solve(&Matrix::identity(2), &b).unwrap(), Some(b.clone()));
        assert_eq!(solve(&Matrix::zeros(2, 2), &b).unwrap(), None);
        let half = Rational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(solve(&Matrix::from_rows(&[vec![2]]), &[rat(1)]).unwrap(), Some(vec![half]));
        assert!(matches!(
            solve(&Matrix::identity(2), &[rat(1)]),
            Err(MatrixError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn cokernel_projection_kills_image() {
        let m = Matrix::from_rows(&[vec![1, 0], vec![1, 0], vec![0, 0]]);
        let q = m.cokernel_projection();
        assert_eq!(q.rows(), 2);
        assert!(q.mul(&m).unwrap().is_zero());
        assert_eq!(q.rank(), 2);
    }

    #[test]
    fn determinants() {
        assert_eq!(integer_determinant(&[vec![1, 2], vec![3, 4]]), -2);
        assert_eq!(integer_determinant(&[vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(integer_determinant(&[vec![1, 1], vec![1, 1]]), 0);
        assert_eq!(integer_determinant(&[]), 1);
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..=3, r * c).prop_map(move |v| {
                let rows: Vec<Vec<i64>> = v.chunks(c).map(<[i64]>::to_vec).collect();
                Matrix::from_rows(&rows)
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            let k = kernel_basis(&m);
            prop_assert_eq!(rank(&m) + k.len(), m.cols());
            for v in &k {
                prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
            }
        }

        #[test]
        fn solve_reproduces_rhs(m in small_matrix(), seed in proptest::collection::vec(-3i64..=3, 4)) {
            let x0: Vec<Rational> = (0..m.cols()).map(|i| rat(seed[i % seed.len()])).collect();
            let b = m.mul_vec(&x0).unwrap();
            let x = solve(&m, &b).unwrap().expect("consistent by construction");
            prop_assert_eq!(m.mul_vec(&x).unwrap(), b);
        }
    }
}
