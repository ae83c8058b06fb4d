//! Dense exact linear algebra over the rationals: row reduction, rank,
//! kernels, and canonical subspace comparison. Everything is deterministic —
//! pivots are chosen as the first nonzero entry in column order — so bases
//! are reproducible across runs.

use num_traits::{One, Zero};

use crate::arith::rat::Rat;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatQ {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl MatQ {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatQ {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = MatQ::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        MatQ {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds a matrix column by column (all columns the same length).
    pub fn from_cols(ambient_rows: usize, cols: Vec<Vec<Rat>>) -> Self {
        let mut m = MatQ::zeros(ambient_rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), ambient_rows, "column of wrong length");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col_vecs(&self) -> Vec<Vec<Rat>> {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.at(i, j).clone()).collect())
            .collect()
    }

    pub fn transpose(&self) -> MatQ {
        let mut m = MatQ::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.at(i, j).clone());
            }
        }
        m
    }

    pub fn mul(&self, rhs: &MatQ) -> MatQ {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = MatQ::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = a * rhs.at(k, j);
                    out.data[i * rhs.cols + j] += t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Reduced row echelon form and the pivot columns, in order.
    pub fn rref(&self) -> (MatQ, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            let Some(p) = (r..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = Rat::one() / m.at(r, c);
            for j in c..m.cols {
                let v = m.at(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.at(i, c).is_zero() {
                    continue;
                }
                let f = m.at(i, c).clone();
                for j in c..m.cols {
                    let v = m.at(i, j) - &f * m.at(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
            if r == m.rows {
                break;
            }
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// The kernel `{x : Ax = 0}` as a canonical subspace of the column space.
    pub fn nullspace(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let basis: Vec<Vec<Rat>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![Rat::zero(); self.cols];
                v[f] = Rat::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.at(i, f).clone();
                }
                v
            })
            .collect();
        Subspace::from_spanning(self.cols, basis)
    }

    /// One solution of `Ax = b` (free variables zero), or `None`.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(self.rows, b.len(), "dimension mismatch");
        let mut aug = MatQ::zeros(self.rows, self.cols + 1);
        for (i, bv) in b.iter().enumerate() {
            for j in 0..self.cols {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, self.cols, bv.clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.at(i, self.cols).clone();
        }
        Some(x)
    }

    /// The span of the columns, as a canonical subspace of the row space.
    pub fn column_space(&self) -> Subspace {
        Subspace::from_spanning(self.rows, self.transpose().row_vecs())
    }
}

/// A linear subspace in canonical form: the nonzero rows of the reduced row
/// echelon form of any spanning set. Two subspaces are equal as sets iff they
/// compare equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn from_spanning(ambient: usize, vectors: Vec<Vec<Rat>>) -> Self {
        for v in &vectors {
            assert_eq!(v.len(), ambient, "vector of wrong length");
        }
        if vectors.is_empty() {
            return Subspace {
                ambient,
                basis: Vec::new(),
                pivots: Vec::new(),
            };
        }
        let (r, pivots) = MatQ::from_rows(vectors).rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace::from_spanning(ambient, Vec::new())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Canonical basis: RREF rows, each starting with a leading one.
    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The canonical representative of `v` modulo this subspace: pivot
    /// coordinates are eliminated, so the result is supported on the free
    /// coordinates and is zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.ambient, "vector of wrong length");
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for (o, b) in out.iter_mut().zip(row) {
                *o -= &f * b;
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is not in
    /// the subspace. Because the basis is in RREF, the coordinate on basis
    /// vector `i` is just `v[pivots[i]]`.
    pub fn coords(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }
}
