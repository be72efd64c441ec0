//! CW complexes given by explicit incidence data.
//!
//! Each boundary term of a `q`-cell names a `(q-1)`-cell, an integer sign and
//! a word in the generators of the fundamental group: the transport from the
//! cell's section basis to the face's. Letters are `±(g+1)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::q;
use crate::sparse::SparseMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CwTerm {
    pub face: usize,
    pub sign: i64,
    #[serde(default)]
    pub word: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CwComplex {
    pub cells: Vec<usize>,
    /// `boundary[q-1][j]`: terms of `∂` of the `j`-th `q`-cell.
    pub boundary: Vec<Vec<Vec<CwTerm>>>,
    #[serde(default)]
    pub generators: usize,
}

impl CwComplex {
    pub fn new(cells: Vec<usize>, boundary: Vec<Vec<Vec<CwTerm>>>, generators: usize) -> Result<Self> {
        let c = CwComplex { cells, boundary, generators };
        c.validate()?;
        Ok(c)
    }

    /// One 0-cell, one 1-cell attached by the generator loop.
    pub fn circle() -> Self {
        let terms = vec![CwTerm { face: 0, sign: 1, word: vec![1] }, CwTerm { face: 0, sign: -1, word: vec![] }];
        CwComplex { cells: vec![1, 1], boundary: vec![vec![terms]], generators: 1 }
    }

    pub fn dim(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn euler_char(&self) -> i64 {
        self.cells.iter().enumerate().map(|(q, &n)| if q % 2 == 0 { n as i64 } else { -(n as i64) }).sum()
    }

    pub fn integer_boundary(&self, qd: usize) -> SparseMatrix {
        let t = self.boundary[qd - 1]
            .iter()
            .enumerate()
            .flat_map(|(j, terms)| terms.iter().map(move |t| (t.face, j, q(t.sign))));
        SparseMatrix::from_triplets(self.cells[qd - 1], self.cells[qd], t)
    }

    fn validate(&self) -> Result<()> {
        if self.cells.is_empty() || self.cells[0] == 0 {
            return Err(Error::Structural("CW complex needs a 0-cell".into()));
        }
        if self.boundary.len() != self.dim() {
            return Err(Error::Structural(format!(
                "expected boundary data for {} dimensions, got {}",
                self.dim(),
                self.boundary.len()
            )));
        }
        for (k, per_cell) in self.boundary.iter().enumerate() {
            let qd = k + 1;
            if per_cell.len() != self.cells[qd] {
                return Err(Error::Structural(format!("dimension {qd}: {} boundary rows for {} cells", per_cell.len(), self.cells[qd])));
            }
            for (j, terms) in per_cell.iter().enumerate() {
                for t in terms {
                    if t.face >= self.cells[qd - 1] {
                        return Err(Error::Structural(format!("cell {j} of dimension {qd}: face {} out of range", t.face)));
                    }
                    if let Some(l) = t.word.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize > self.generators) {
                        return Err(Error::Structural(format!("cell {j} of dimension {qd}: bad generator letter {l}")));
                    }
                }
            }
        }
        for qd in 2..=self.dim() {
            if !self.integer_boundary(qd - 1).mul(&self.integer_boundary(qd)).is_zero() {
                return Err(Error::Structural(format!("∂_{} ∘ ∂_{qd} ≠ 0 over Z", qd - 1)));
            }
        }
        // connectivity through 1-cells
        let n = self.cells[0];
        let mut parent: Vec<usize> = (0..n).collect();
        fn root(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        if self.dim() >= 1 {
            for terms in &self.boundary[0] {
                if let Some(first) = terms.first() {
                    for t in terms {
                        let (a, b) = (root(&mut parent, first.face), root(&mut parent, t.face));
                        parent[a] = b;
                    }
                }
            }
        }
        let r0 = root(&mut parent, 0);
        if (0..n).any(|v| root(&mut parent, v) != r0) {
            return Err(Error::Structural("CW complex is not connected".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_is_valid() {
        let c = CwComplex::circle();
        c.validate().unwrap();
        assert_eq!(c.euler_char(), 0);
        assert!(c.integer_boundary(1).is_zero());
        let bad = CwComplex::new(vec![1, 1], vec![vec![vec![CwTerm { face: 3, sign: 1, word: vec![] }]]], 0);
        assert!(bad.is_err());
    }
}
