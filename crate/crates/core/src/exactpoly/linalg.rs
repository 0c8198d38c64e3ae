//! Dense exact matrices with row reduction, nullspaces and linear solves.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<Scalar>>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: ExactMatrix,
    pub pivots: Vec<usize>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![vec![Scalar::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidInput("ragged matrix rows".into()));
        }
        Ok(ExactMatrix { rows: rows.len(), cols, data: rows })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<Scalar>], nrows: usize) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.data[i][j] = x.clone();
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i][j]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, o: &ExactMatrix) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::InvalidInput("matrix shape mismatch".into()));
        }
        let mut m = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    if !o.data[k][j].is_zero() {
                        m.data[i][j] += &(a * &o.data[k][j]);
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.data
            .iter()
            .map(|row| {
                let mut acc = Scalar::zero();
                for (a, b) in row.iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().flatten().all(Zero::is_zero)
    }

    /// Row reduction, pivoting on the first nonzero entry of each column in
    /// row order.
    pub fn rref(&self) -> Rref {
        let mut m = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].inv().expect("pivot is nonzero");
            for x in m[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &(&f * y);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: ExactMatrix { rows: self.rows, cols: self.cols, data: m }, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right nullspace, one vector per free column, with that
    /// free entry equal to one.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let Rref { matrix, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&matrix.data[r][f];
                }
                v
            })
            .collect()
    }

    /// Solves `self * x = b` and requires the solution to be unique.
    pub fn solve(&self, b: &[Scalar]) -> Result<Vec<Scalar>> {
        match self.solve_affine(b)? {
            (x, kernel) if kernel.is_empty() => Ok(x),
            (_, kernel) => Err(Error::NotUnique(format!("{}-dimensional solution set", kernel.len()))),
        }
    }

    /// Solves `self * x = b`, returning a particular solution and a kernel
    /// basis.
    pub fn solve_affine(&self, b: &[Scalar]) -> Result<(Vec<Scalar>, Vec<Vec<Scalar>>)> {
        if b.len() != self.rows {
            return Err(Error::InvalidInput("right-hand side has wrong length".into()));
        }
        let mut aug = self.data.clone();
        for (row, x) in aug.iter_mut().zip(b) {
            row.push(x.clone());
        }
        let aug = ExactMatrix { rows: self.rows, cols: self.cols + 1, data: aug };
        let Rref { matrix, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Err(Error::NoSolution("inconsistent linear system".into()));
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = matrix.data[r][self.cols].clone();
        }
        Ok((x, self.nullspace()))
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::InvalidInput("non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = self.data.clone();
        for (i, row) in aug.iter_mut().enumerate() {
            row.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
        }
        let Rref { matrix, pivots } = ExactMatrix { rows: n, cols: 2 * n, data: aug }.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::NoSolution("singular matrix".into()));
        }
        let data = matrix.data.into_iter().map(|r| r[n..].to_vec()).collect();
        Ok(ExactMatrix { rows: n, cols: n, data })
    }

    /// True when every entry below the diagonal vanishes.
    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols.min(i)).all(|j| self.data[i][j].is_zero()))
    }
}

/// Extracts a maximal linearly independent subfamily, keeping the earliest
/// vectors. Returns the kept indices.
pub fn independent_subset(vectors: &[Vec<Scalar>], dim: usize) -> Vec<usize> {
    let mut kept: Vec<usize> = Vec::new();
    let mut basis: Vec<(usize, Vec<Scalar>)> = Vec::new();
    for (idx, v) in vectors.iter().enumerate() {
        let mut w = v.clone();
        for (p, b) in &basis {
            if !w[*p].is_zero() {
                let f = w[*p].clone();
                for (x, y) in w.iter_mut().zip(b) {
                    if !y.is_zero() {
                        *x -= &(&f * y);
                    }
                }
            }
        }
        if let Some(p) = (0..dim).find(|&i| !w[i].is_zero()) {
            let inv = w[p].inv().expect("nonzero");
            for x in w.iter_mut() {
                *x = &*x * &inv;
            }
            for (_, b) in basis.iter_mut() {
                if !b[p].is_zero() {
                    let f = b[p].clone();
                    for (x, y) in b.iter_mut().zip(&w) {
                        if !y.is_zero() {
                            *x -= &(&f * y);
                        }
                    }
                }
            }
            basis.push((p, w));
            kept.push(idx);
        }
    }
    kept
}
