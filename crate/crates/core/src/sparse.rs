//! Column-compressed sparse matrices over `Q`.

use num_traits::Zero;

use crate::matrix::Matrix;
use crate::scalar::Q;

/// Each column is a list of `(row, value)` sorted by row, with no zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<Vec<(usize, Q)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols: vec![Vec::new(); cols] }
    }

    /// Builds from unsorted triplets; duplicates are summed, zeros dropped.
    pub fn from_triplets(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, Q)>) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (r, c, v) in entries {
            assert!(r < rows && c < cols, "triplet out of range");
            m.cols[c].push((r, v));
        }
        for col in &mut m.cols {
            col.sort_by_key(|e| e.0);
            let mut merged: Vec<(usize, Q)> = Vec::with_capacity(col.len());
            for (r, v) in col.drain(..) {
                match merged.last_mut() {
                    Some(last) if last.0 == r => last.1 += v,
                    _ => merged.push((r, v)),
                }
            }
            merged.retain(|e| !e.1.is_zero());
            *col = merged;
        }
        m
    }

    pub fn from_dense(d: &Matrix) -> Self {
        let mut t = Vec::new();
        for c in 0..d.cols() {
            for r in 0..d.rows() {
                if !d.get(r, c).is_zero() {
                    t.push((r, c, d.get(r, c).clone()));
                }
            }
        }
        Self::from_triplets(d.rows(), d.cols(), t)
    }

    pub fn to_dense(&self) -> Matrix {
        let mut d = Matrix::zeros(self.rows, self.cols.len());
        for (c, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                d.set(*r, c, v.clone());
            }
        }
        d
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn col(&self, c: usize) -> &[(usize, Q)] {
        &self.cols[c]
    }

    pub fn get(&self, r: usize, c: usize) -> Q {
        match self.cols[c].binary_search_by_key(&r, |e| e.0) {
            Ok(i) => self.cols[c][i].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Q)> {
        self.cols.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    pub fn transpose(&self) -> SparseMatrix {
        let t = self.triplets().map(|(r, c, v)| (c, r, v.clone()));
        SparseMatrix::from_triplets(self.cols(), self.rows, t)
    }

    pub fn scale(&self, s: &Q) -> SparseMatrix {
        let t = self.triplets().map(|(r, c, v)| (r, c, v * s));
        SparseMatrix::from_triplets(self.rows, self.cols(), t)
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols());
        let mut out = vec![Q::zero(); self.rows];
        for (c, col) in self.cols.iter().enumerate() {
            if v[c].is_zero() {
                continue;
            }
            for (r, x) in col {
                out[*r] += x * &v[c];
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.rows);
        self.cols
            .iter()
            .map(|col| {
                let mut s = Q::zero();
                for (r, x) in col {
                    if !v[*r].is_zero() {
                        s += x * &v[*r];
                    }
                }
                s
            })
            .collect()
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols(), other.rows, "shape mismatch in sparse product");
        let mut t = Vec::new();
        for (c, col) in other.cols.iter().enumerate() {
            for (k, b) in col {
                for (r, a) in &self.cols[*k] {
                    t.push((*r, c, a * b));
                }
            }
        }
        SparseMatrix::from_triplets(self.rows, other.cols(), t)
    }

    pub fn block_diag(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
        let t = a
            .triplets()
            .map(|(r, c, v)| (r, c, v.clone()))
            .chain(b.triplets().map(|(r, c, v)| (r + a.rows, c + a.cols(), v.clone())));
        SparseMatrix::from_triplets(a.rows + b.rows, a.cols() + b.cols(), t)
    }
}
