//! Finite chain complexes, homology frames, the torsion isomorphism `φ_C`,
//! direct sums and algebraic duals.
//!
//! Boundaries are indexed by source degree: `d_q : C_q → C_{q-1}` for
//! `q = 1..=m`, stored as sparse matrices of shape `dim C_{q-1} × dim C_q`.

pub mod reduce;

use num_traits::{One, Zero};

use crate::detline::{residues, DetElement, GradedDims, GradedFrame};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{minus_one_pow, Q};
use crate::sparse::SparseMatrix;

pub use reduce::{Elimination, PivotRule};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    dims: GradedDims,
    /// `boundary[q] = d_q`; `boundary[0]` is the empty map out of `C_0`.
    boundary: Vec<SparseMatrix>,
}

impl ChainComplex {
    /// `maps[k]` is `d_{k+1}`.
    pub fn new(dims: Vec<usize>, maps: Vec<SparseMatrix>) -> Result<Self> {
        let dims = GradedDims::new(dims)?;
        let m = dims.top_degree();
        if maps.len() != m {
            return Err(Error::Structural(format!("expected {m} boundary maps, got {}", maps.len())));
        }
        let mut boundary = vec![SparseMatrix::zeros(0, dims.dim(0))];
        boundary.extend(maps);
        let c = ChainComplex { dims, boundary };
        c.validate()?;
        Ok(c)
    }

    pub fn from_dense(dims: Vec<usize>, maps: &[Matrix]) -> Result<Self> {
        Self::new(dims, maps.iter().map(SparseMatrix::from_dense).collect())
    }

    fn validate(&self) -> Result<()> {
        let m = self.top_degree();
        for q in 1..=m {
            let d = &self.boundary[q];
            if d.rows() != self.dims.dim(q - 1) || d.cols() != self.dims.dim(q) {
                return Err(Error::Structural(format!(
                    "d_{q} has shape {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    self.dims.dim(q - 1),
                    self.dims.dim(q)
                )));
            }
        }
        for q in 2..=m {
            if !self.boundary[q - 1].mul(&self.boundary[q]).is_zero() {
                return Err(Error::Structural(format!("d_{} ∘ d_{q} ≠ 0", q - 1)));
            }
        }
        Ok(())
    }

    pub fn dims(&self) -> &GradedDims {
        &self.dims
    }

    pub fn top_degree(&self) -> usize {
        self.dims.top_degree()
    }

    pub fn euler_char(&self) -> i64 {
        self.dims.euler_char()
    }

    pub fn boundary(&self, q: usize) -> &SparseMatrix {
        &self.boundary[q]
    }

    pub fn is_cycle(&self, q: usize, z: &[Q]) -> bool {
        q == 0 || self.boundary[q].mul_vec(z).iter().all(Zero::is_zero)
    }

    pub fn homology(&self) -> Homology {
        self.homology_with(PivotRule::default())
    }

    pub fn homology_with(&self, rule: PivotRule) -> Homology {
        let elim = reduce::eliminate(self.dims.as_slice(), &self.boundary, rule);
        let hdims = GradedDims::new(elim.hdims()).expect("nonempty");
        Homology { elim, hdims }
    }

    /// `φ_C` applied to `coeff` times the standard cell generator, relative to
    /// the frame of `h`.
    pub fn torsion_iso(&self, coeff: &Q, h: &Homology) -> DetElement {
        let n = residues(&self.dims, &h.hdims).expect("same degree").n;
        let value = minus_one_pow(n as u64) * h.elim.bracket() * coeff;
        DetElement::new("H", h.hdims.clone(), value)
    }

    pub fn direct_sum(&self, other: &ChainComplex) -> Result<ChainComplex> {
        let dims = self.dims.sum(&other.dims)?;
        let maps = (1..=self.top_degree())
            .map(|q| SparseMatrix::block_diag(&self.boundary[q], &other.boundary[q]))
            .collect();
        ChainComplex::new(dims.as_slice().to_vec(), maps)
    }

    /// `C'_q = (C_{m-q})^*` with `d'_{q+1} = (-1)^{m-q} d_{m-q}^T`.
    pub fn dual_complex(&self) -> ChainComplex {
        let m = self.top_degree();
        let dims = self.dims.dual();
        let maps = (0..m)
            .map(|q| self.boundary[m - q].transpose().scale(&minus_one_pow((m - q) as u64)))
            .collect();
        ChainComplex::new(dims.as_slice().to_vec(), maps).expect("dual of a valid complex")
    }
}

/// Homology with its deterministic frame: one cycle per surviving cell.
#[derive(Clone, Debug)]
pub struct Homology {
    pub elim: Elimination,
    pub hdims: GradedDims,
}

impl Homology {
    pub fn hdim(&self, q: usize) -> usize {
        self.hdims.dim(q)
    }

    pub fn is_acyclic(&self) -> bool {
        self.hdims.total() == 0
    }

    pub fn representatives(&self, q: usize) -> Vec<Vec<Q>> {
        self.elim.survivors[q].iter().map(|&s| self.elim.representative(q, s)).collect()
    }

    pub fn frame(&self, label: &str) -> GradedFrame {
        let basis = (0..self.elim.dims.len()).map(|q| self.representatives(q)).collect();
        GradedFrame { label: label.into(), basis }
    }

    /// Coordinates of the class of the cycle `z` in this frame.
    pub fn class_coords(&self, q: usize, z: &[Q]) -> Vec<Q> {
        self.elim.class_coords(q, z)
    }

    /// Matrix whose columns are the class coordinates of the given cycles.
    pub fn coords_matrix(&self, q: usize, cycles: &[Vec<Q>]) -> Matrix {
        let cols: Vec<Vec<Q>> = cycles.iter().map(|z| self.class_coords(q, z)).collect();
        Matrix::from_columns(self.hdim(q), &cols)
    }

    /// `Π_q det(M_q)^{(-1)^q}` where `M_q` expresses the given cycle frame in
    /// this frame; the generator of `cycles` is this factor times ours.
    pub fn generator_ratio(&self, cycles: &[Vec<Vec<Q>>]) -> Result<Q> {
        let mut acc = Q::one();
        for (q, zs) in cycles.iter().enumerate() {
            if zs.len() != self.hdim(q) {
                return Err(Error::Structural(format!(
                    "frame has {} vectors in degree {q}, homology has rank {}",
                    zs.len(),
                    self.hdim(q)
                )));
            }
            let d = self.coords_matrix(q, zs).det();
            if d.is_zero() {
                return Err(Error::Structural(format!("cycles do not form a homology basis in degree {q}")));
            }
            acc *= crate::scalar::alt_pow(&d, q);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qf};

    #[test]
    fn zero_differential() {
        let c = ChainComplex::from_dense(vec![1, 2, 1], &[Matrix::zeros(1, 2), Matrix::zeros(2, 1)]).unwrap();
        let h = c.homology();
        assert_eq!(h.hdims.as_slice(), &[1, 2, 1]);
        assert_eq!(h.representatives(1), vec![vec![q(1), q(0)], vec![q(0), q(1)]]);
        assert_eq!(c.torsion_iso(&q(1), &h).coeff, q(1));
        let c = ChainComplex::from_dense(vec![1, 1, 2], &[Matrix::zeros(1, 1), Matrix::zeros(1, 2)]).unwrap();
        assert_eq!(c.torsion_iso(&q(1), &c.homology()).coeff, q(-1));
    }

    #[test]
    fn acyclic_two_term() {
        let c = ChainComplex::from_dense(vec![1, 1], &[Matrix::scalar(q(2))]).unwrap();
        let h = c.homology();
        assert!(h.is_acyclic());
        assert_eq!(c.torsion_iso(&q(1), &h).coeff, qf(1, 2));
    }

    #[test]
    fn circle_incidence() {
        // vertices 0,1,2; edges 01, 02, 12
        let d1 = Matrix::from_i64(&[&[-1, -1, 0], &[1, 0, -1], &[0, 1, 1]]);
        let c = ChainComplex::from_dense(vec![3, 3], &[d1]).unwrap();
        let h = c.homology();
        assert_eq!(h.hdims.as_slice(), &[1, 1]);
        for z in h.representatives(1) {
            assert!(c.is_cycle(1, &z));
        }
    }

    #[test]
    fn rejects_nonzero_square() {
        let d1 = Matrix::from_i64(&[&[1]]);
        let d2 = Matrix::from_i64(&[&[1]]);
        assert!(ChainComplex::from_dense(vec![1, 1, 1], &[d1, d2]).is_err());
    }

    #[test]
    fn dual_sign_rule() {
        let c = ChainComplex::from_dense(vec![1, 1], &[Matrix::scalar(q(5))]).unwrap();
        let d = c.dual_complex();
        assert_eq!(d.boundary(1).get(0, 0), q(-5));
        assert_eq!(d.dual_complex(), c);
    }
}
