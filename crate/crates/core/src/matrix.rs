//! Dense matrices over `Q`, used for fibre-sized blocks and small frames.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{fmt_q, parse_q, Q};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.cols).map(|c| fmt_q(self.get(r, c))).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn scalar(x: Q) -> Self {
        Matrix { rows: 1, cols: 1, data: vec![x] }
    }

    pub fn diag(entries: &[Q]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Structural("ragged matrix rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let v = rows.iter().map(|r| r.iter().map(|&x| crate::scalar::q(x)).collect()).collect();
        Self::from_rows(v).expect("rectangular literal")
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, cols: &[Vec<Q>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Q {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Q) {
        self.data[r * self.cols + c] = x;
    }

    pub fn column(&self, c: usize) -> Vec<Q> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row(&self, r: usize) -> Vec<Q> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = self.get(r, c);
                    if r == c {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let v = out.get(r, c) + a * b;
                        out.set(r, c, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut s = Q::zero();
                for (c, x) in v.iter().enumerate() {
                    let a = self.get(r, c);
                    if !a.is_zero() && !x.is_zero() {
                        s += a * x;
                    }
                }
                s
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.rows, v.len());
        (0..self.cols)
            .map(|c| {
                let mut s = Q::zero();
                for (r, x) in v.iter().enumerate() {
                    let a = self.get(r, c);
                    if !a.is_zero() && !x.is_zero() {
                        s += a * x;
                    }
                }
                s
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &Q) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&-Q::one())
    }

    pub fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(a.rows + b.rows, a.cols + b.cols);
        m.paste(0, 0, a);
        m.paste(a.rows, a.cols, b);
        m
    }

    pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(a.rows * b.rows, a.cols * b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                let x = a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                m.paste(i * b.rows, j * b.cols, &b.scale(x));
            }
        }
        m
    }

    pub fn paste(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    /// Row-reduces a copy, returning (echelon form, pivot columns, determinant
    /// factor of the row operations when square).
    fn eliminate(&self) -> (Matrix, Vec<usize>, Q) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut det = Q::one();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for k in 0..m.cols {
                    m.data.swap(p * m.cols + k, r * m.cols + k);
                }
                det = -det;
            }
            let pv = m.get(r, c).clone();
            det *= &pv;
            let inv = pv.recip();
            for k in c..m.cols {
                let v = m.get(r, k) * &inv;
                m.set(r, k, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for k in c..m.cols {
                    let v = m.get(i, k) - &f * m.get(r, k);
                    m.set(i, k, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots, det)
    }

    pub fn det(&self) -> Q {
        assert!(self.is_square(), "determinant of a non-square matrix");
        if self.rows == 0 {
            return Q::one();
        }
        let (_, pivots, det) = self.eliminate();
        if pivots.len() < self.rows {
            Q::zero()
        } else {
            det
        }
    }

    pub fn rank(&self) -> usize {
        self.eliminate().1.len()
    }

    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let (m, p, _) = self.eliminate();
        (m, p)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Matrix::zeros(0, 0));
        }
        let mut aug = Matrix::zeros(n, 2 * n);
        aug.paste(0, 0, self);
        aug.paste(0, n, &Matrix::identity(n));
        let (m, pivots, _) = aug.eliminate();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, m.get(r, n + c).clone());
            }
        }
        Some(inv)
    }

    /// Basis of the null space, one vector per free column of the rref.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Q::zero(); self.cols];
                v[f] = Q::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m.get(r, f).clone();
                }
                v
            })
            .collect()
    }

    /// Solves `self * x = b` for one solution, if any.
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        aug.paste(0, 0, self);
        for (i, x) in b.iter().enumerate() {
            aug.set(i, self.cols, x.clone());
        }
        let (m, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Q::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = m.get(r, self.cols).clone();
        }
        Some(x)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|r| (0..self.cols).map(|c| fmt_q(self.get(r, c))).collect()).collect()
    }

    pub fn from_strings(rows: &[Vec<String>]) -> Result<Matrix> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(parsed)
    }
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        Matrix::from_strings(&rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qf};

    #[test]
    fn det_and_inverse() {
        let a = Matrix::from_i64(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(a.det(), q(18));
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        let s = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.det(), q(0));
        assert!(s.inverse().is_none());
        let p = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(p.det(), q(-1));
    }

    #[test]
    fn kernel_and_solve() {
        let a = Matrix::from_i64(&[&[1, 1, 0], &[0, 0, 1]]);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert!(a.mul_vec(&k[0]).iter().all(|x| x.is_zero()));
        let x = a.solve(&[qf(1, 2), q(3)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![qf(1, 2), q(3)]);
    }
}
