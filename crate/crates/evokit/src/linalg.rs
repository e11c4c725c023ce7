//! Exact dense linear algebra.
//!
//! Storage and arithmetic need only a [`Ring`]; elimination (rref, rank,
//! kernels, solving, inverses, determinants) needs a [`Field`]. Workloads are
//! tiny (n <= 8, systems with at most n^3 rows), so canonical output matters
//! more than asymptotics. All subspaces are kept in reduced row-echelon form,
//! making subspace equality structural equality.

use crate::error::{Error, Result};
use crate::field::{Field, Ring};

/// Dense rows x cols matrix with row-major entries.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F: Ring> {
    rows: usize,
    cols: usize,
    entries: Vec<F>,
}

impl<F: Ring> Matrix<F> {
    pub fn new(rows: usize, cols: usize, entries: Vec<F>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix::new(rows, cols, entries)
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| F::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { F::one() } else { F::zero() })
    }

    pub fn diagonal(entries: Vec<F>) -> Self {
        let n = entries.len();
        let mut m = Matrix::zero(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            *m.get_mut(i, i) = e;
        }
        m
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

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.entries[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut F {
        &mut self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Row-major flattening of all entries.
    pub fn flatten(&self) -> Vec<F> {
        self.entries.clone()
    }

    pub fn from_flat(rows: usize, cols: usize, flat: Vec<F>) -> Self {
        Matrix::new(rows, cols, flat)
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<G: Ring>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix::new(self.rows, self.cols, self.entries.iter().map(f).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix::new(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} - {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix::new(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.sub(b))
                .collect(),
        ))
    }

    pub fn scale(&self, c: &F) -> Self {
        Matrix::new(
            self.rows,
            self.cols,
            self.entries.iter().map(|x| x.mul(c)).collect(),
        )
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = F::zero();
            for k in 0..self.cols {
                acc = acc.add(&self.get(i, k).mul(other.get(k, j)));
            }
            acc
        }))
    }

    pub fn matvec(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} * vec{}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (k, vk) in v.iter().enumerate() {
                    acc = acc.add(&self.get(i, k).mul(vk));
                }
                acc
            })
            .collect())
    }

    /// Entrywise square.
    pub fn hadamard_square(&self) -> Self {
        Matrix::new(
            self.rows,
            self.cols,
            self.entries.iter().map(|x| x.mul(x)).collect(),
        )
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<F: Field> Matrix<F> {
    /// Reduced row-echelon form plus pivot column indices.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let found = (pivot_row..m.rows).find(|&r| !m.get(r, col).is_zero());
            let Some(sel) = found else { continue };
            m.swap_rows(sel, pivot_row);
            let inv = m.get(pivot_row, col).inv().expect("pivot is nonzero");
            for j in col..m.cols {
                let v = m.get(pivot_row, j).mul(&inv);
                m.set(pivot_row, j, v);
            }
            for r in 0..m.rows {
                if r == pivot_row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for j in col..m.cols {
                    let v = m.get(r, j).sub(&factor.mul(m.get(pivot_row, j)));
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical basis of the right null space; dim = cols - rank.
    pub fn kernel_basis(&self) -> SubspaceBasis<F> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut vectors = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![F::zero(); self.cols];
            v[f] = F::one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = r.get(prow, f).neg();
            }
            vectors.push(v);
        }
        SubspaceBasis::from_spanning(self.cols, vectors)
    }

    /// Any solution of self * x = b, or None when inconsistent. Free
    /// variables are set to zero, so the result is deterministic.
    pub fn solve(&self, b: &[F]) -> Result<Option<Vec<F>>> {
        if b.len() != self.rows {
            return Err(Error::ShapeMismatch(format!(
                "solve: {} rows vs rhs of length {}",
                self.rows,
                b.len()
            )));
        }
        let mut aug = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        aug = aug.rref().0;
        let mut x = vec![F::zero(); self.cols];
        for i in 0..self.rows {
            let lead = (0..=self.cols).find(|&j| !aug.get(i, j).is_zero());
            match lead {
                None => continue,
                Some(j) if j == self.cols => return Ok(None),
                Some(j) => x[j] = aug.get(i, self.cols).clone(),
            }
        }
        Ok(Some(x))
    }

    /// Exact inverse via Gauss-Jordan on [self | I].
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "inverse of {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                F::one()
            } else {
                F::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots.iter().any(|&p| p >= n) {
            return Err(Error::SingularMatrix);
        }
        Ok(Matrix::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
    }

    /// Determinant by elimination with division (entries form a field).
    pub fn det(&self) -> Result<F> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "det of {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = F::one();
        for col in 0..n {
            let found = (col..n).find(|&r| !m.get(r, col).is_zero());
            let Some(sel) = found else {
                return Ok(F::zero());
            };
            if sel != col {
                m.swap_rows(sel, col);
                det = det.neg();
            }
            let pivot = m.get(col, col).clone();
            det = det.mul(&pivot);
            let inv = pivot.inv().expect("pivot is nonzero");
            for r in col + 1..n {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).mul(&inv);
                for j in col..n {
                    let v = m.get(r, j).sub(&factor.mul(m.get(col, j)));
                    m.set(r, j, v);
                }
            }
        }
        Ok(det)
    }
}

impl<F: Ring + std::fmt::Display> std::fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl<F: Ring> std::fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Subspace of F^ambient_dim held as RREF rows: the unique canonical basis,
/// so `PartialEq` decides subspace equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubspaceBasis<F: Field> {
    ambient_dim: usize,
    vectors: Vec<Vec<F>>,
}

impl<F: Field> SubspaceBasis<F> {
    pub fn from_spanning(ambient_dim: usize, vectors: Vec<Vec<F>>) -> Self {
        assert!(vectors.iter().all(|v| v.len() == ambient_dim));
        if vectors.is_empty() {
            return SubspaceBasis {
                ambient_dim,
                vectors: Vec::new(),
            };
        }
        let (r, pivots) = Matrix::from_rows(vectors).rref();
        let kept = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        SubspaceBasis {
            ambient_dim,
            vectors: kept,
        }
    }

    pub fn empty(ambient_dim: usize) -> Self {
        SubspaceBasis {
            ambient_dim,
            vectors: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        SubspaceBasis::from_spanning(
            ambient_dim,
            (0..ambient_dim)
                .map(|i| {
                    let mut v = vec![F::zero(); ambient_dim];
                    v[i] = F::one();
                    v
                })
                .collect(),
        )
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<F>] {
        &self.vectors
    }

    /// Pivot coordinate of each basis vector, ascending.
    pub fn pivots(&self) -> Vec<usize> {
        self.vectors
            .iter()
            .map(|v| v.iter().position(|x| !x.is_zero()).expect("no zero rows"))
            .collect()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn contains(&self, v: &[F]) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "ambient dimension mismatch");
        let mut rem: Vec<F> = v.to_vec();
        for (row, &p) in self.vectors.iter().zip(self.pivots().iter()) {
            if rem[p].is_zero() {
                continue;
            }
            let c = rem[p].clone();
            for (x, y) in rem.iter_mut().zip(row.iter()) {
                *x = x.sub(&c.mul(y));
            }
        }
        rem.iter().all(F::is_zero)
    }

    pub fn contains_subspace(&self, other: &SubspaceBasis<F>) -> bool {
        other.vectors.iter().all(|v| self.contains(v))
    }
}
