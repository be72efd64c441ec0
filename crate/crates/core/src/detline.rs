//! Graded dimensions, determinant-line elements relative to explicit frames,
//! the sign residues `N`, `M`, `s`, and the fusion and duality maps.
//!
//! A frame of a graded space is an ordered basis per degree. The generator it
//! induces on `det V = det V_0 ⊗ (det V_1)^{-1} ⊗ …` is the wedge of each
//! degree's basis raised to `(-1)^q`. A [`DetElement`] is a scalar times that
//! generator; elements over different frames are never compared directly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{minus_one_pow, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedDims(Vec<usize>);

impl GradedDims {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Structural("graded space needs at least degree 0".into()));
        }
        Ok(GradedDims(dims))
    }

    pub fn zero(m: usize) -> Self {
        GradedDims(vec![0; m + 1])
    }

    pub fn top_degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn dim(&self, q: usize) -> usize {
        self.0[q]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn euler_char(&self) -> i64 {
        self.0.iter().enumerate().map(|(q, &d)| if q % 2 == 0 { d as i64 } else { -(d as i64) }).sum()
    }

    /// `α_q = Σ_{j≤q} dim V_j mod 2`.
    pub fn alphas(&self) -> Vec<u8> {
        let mut acc = 0usize;
        self.0
            .iter()
            .map(|d| {
                acc += d;
                (acc % 2) as u8
            })
            .collect()
    }

    pub fn sum(&self, other: &GradedDims) -> Result<GradedDims> {
        same_degree(self, other)?;
        Ok(GradedDims(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    /// Dims of `V'` with `V'_q = (V_{m-q})^*`.
    pub fn dual(&self) -> GradedDims {
        GradedDims(self.0.iter().rev().copied().collect())
    }
}

fn same_degree(a: &GradedDims, b: &GradedDims) -> Result<()> {
    if a.top_degree() != b.top_degree() {
        return Err(Error::Structural(format!(
            "top degree mismatch: {} vs {}",
            a.top_degree(),
            b.top_degree()
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignResidues {
    pub alpha: Vec<u8>,
    pub beta: Vec<u8>,
    #[serde(rename = "N")]
    pub n: u8,
}

pub fn residues(dims: &GradedDims, hdims: &GradedDims) -> Result<SignResidues> {
    same_degree(dims, hdims)?;
    let alpha = dims.alphas();
    let beta = hdims.alphas();
    let n = alpha.iter().zip(&beta).map(|(a, b)| a & b).fold(0, |x, y| x ^ y);
    Ok(SignResidues { alpha, beta, n })
}

/// `M(V,W) = Σ_{q=1}^m α_{q-1}(V) α_q(W) mod 2`.
pub fn residue_m(v: &GradedDims, w: &GradedDims) -> Result<u8> {
    same_degree(v, w)?;
    let (a, b) = (v.alphas(), w.alphas());
    Ok((1..a.len()).map(|q| a[q - 1] & b[q]).fold(0, |x, y| x ^ y))
}

/// `s(V) = Σ_{q=1}^m α_{q-1}α_q + Σ_{q=0}^{(m-1)/2} α_{2q} mod 2`, for odd `m`.
pub fn residue_s(v: &GradedDims) -> Result<u8> {
    let m = v.top_degree();
    if m % 2 == 0 {
        return Err(Error::Unsupported("duality residue needs odd top degree".into()));
    }
    let a = v.alphas();
    let first = (1..=m).map(|q| a[q - 1] & a[q]).fold(0, |x, y| x ^ y);
    let second = (0..=(m - 1) / 2).map(|q| a[2 * q]).fold(0, |x, y| x ^ y);
    Ok(first ^ second)
}

/// An ordered basis per degree, as coordinate vectors in an ambient space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedFrame {
    pub label: String,
    pub basis: Vec<Vec<Vec<Q>>>,
}

impl GradedFrame {
    pub fn new(label: impl Into<String>, basis: Vec<Vec<Vec<Q>>>) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::Structural("frame needs at least degree 0".into()));
        }
        for (q, vs) in basis.iter().enumerate() {
            if let Some(first) = vs.first() {
                if vs.iter().any(|v| v.len() != first.len()) {
                    return Err(Error::Structural(format!("ragged frame vectors in degree {q}")));
                }
                if Matrix::from_columns(first.len(), vs).rank() != vs.len() {
                    return Err(Error::Structural(format!("frame vectors in degree {q} are dependent")));
                }
            }
        }
        Ok(GradedFrame { label: label.into(), basis })
    }

    /// Standard basis frame of the given dims.
    pub fn standard(label: impl Into<String>, dims: &GradedDims) -> Self {
        let basis = dims
            .as_slice()
            .iter()
            .map(|&d| (0..d).map(|i| unit_vector(d, i)).collect())
            .collect();
        GradedFrame { label: label.into(), basis }
    }

    pub fn dims(&self) -> GradedDims {
        GradedDims(self.basis.iter().map(Vec::len).collect())
    }

    pub fn degree_matrix(&self, q: usize, ambient: usize) -> Matrix {
        Matrix::from_columns(ambient, &self.basis[q])
    }

    /// Degreewise concatenation `V` block then `W` block, in `V ⊕ W`
    /// coordinates.
    pub fn concat(&self, other: &GradedFrame) -> Result<GradedFrame> {
        same_degree(&self.dims(), &other.dims())?;
        let basis = self
            .basis
            .iter()
            .zip(&other.basis)
            .map(|(a, b)| {
                let la = a.first().map_or(0, Vec::len);
                let lb = b.first().map_or(0, Vec::len);
                let mut out = Vec::new();
                for v in a {
                    let mut x = v.clone();
                    x.extend(std::iter::repeat_n(Q::default(), lb));
                    out.push(x);
                }
                for w in b {
                    let mut x = vec![Q::default(); la];
                    x.extend(w.iter().cloned());
                    out.push(x);
                }
                out
            })
            .collect();
        Ok(GradedFrame { label: format!("{}⊕{}", self.label, other.label), basis })
    }

    /// Dual frame on `V'`: degree `q` holds the dual basis of degree `m-q`,
    /// expressed in the dual coordinates of the ambient space.
    pub fn dual(&self) -> Result<GradedFrame> {
        let basis = self
            .basis
            .iter()
            .rev()
            .map(|vs| {
                if vs.is_empty() {
                    return Ok(Vec::new());
                }
                let n = vs[0].len();
                if n != vs.len() {
                    return Err(Error::Unsupported("dual frame needs a spanning frame".into()));
                }
                let inv_t = Matrix::from_columns(n, vs)
                    .inverse()
                    .ok_or_else(|| Error::Internal("singular frame".into()))?
                    .transpose();
                Ok((0..n).map(|j| inv_t.column(j)).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GradedFrame { label: format!("({})'", self.label), basis })
    }
}

pub fn unit_vector(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::default(); n];
    v[i] = Q::from_integer(1.into());
    v
}

/// `coeff` times the generator induced by the frame named `frame`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DetElement {
    pub frame: String,
    pub dims: GradedDims,
    #[serde(serialize_with = "crate::report::ser_q")]
    pub coeff: Q,
}

impl DetElement {
    pub fn new(frame: impl Into<String>, dims: GradedDims, coeff: Q) -> Self {
        DetElement { frame: frame.into(), dims, coeff }
    }

    pub fn scaled(&self, s: &Q) -> DetElement {
        DetElement { coeff: &self.coeff * s, ..self.clone() }
    }

    /// Exact ratio `self / other`, for two elements over the same frame.
    pub fn ratio(&self, other: &DetElement) -> Result<Q> {
        if self.frame != other.frame {
            return Err(Error::Structural(format!("frame mismatch: {} vs {}", self.frame, other.frame)));
        }
        Ok(&self.coeff / &other.coeff)
    }
}

/// The fusion isomorphism `det V ⊗ det W → det(V ⊕ W)`.
pub fn fuse(a: &DetElement, b: &DetElement) -> Result<DetElement> {
    let m = residue_m(&a.dims, &b.dims)?;
    Ok(DetElement {
        frame: format!("{}⊕{}", a.frame, b.frame),
        dims: a.dims.sum(&b.dims)?,
        coeff: minus_one_pow(m as u64) * &a.coeff * &b.coeff,
    })
}

/// The duality operator `D_V : det V → det V'`, relative to the dual frame.
pub fn graded_dual(a: &DetElement) -> Result<DetElement> {
    let s = residue_s(&a.dims)?;
    Ok(DetElement {
        frame: format!("({})'", a.frame),
        dims: a.dims.dual(),
        coeff: minus_one_pow(s as u64) * &a.coeff,
    })
}

/// If `to` is obtained from `from` by `to_q = from_q · M_q`, the generator of
/// `to` equals `Π det(M_q)^{(-1)^q}` times the generator of `from`.
pub fn generator_ratio(det_per_degree: &[Q]) -> Q {
    det_per_degree
        .iter()
        .enumerate()
        .map(|(q, d)| crate::scalar::alt_pow(d, q))
        .product()
}

/// Generator ratio between two frames spanning the same ambient spaces.
pub fn frame_change(from: &GradedFrame, to: &GradedFrame) -> Result<Q> {
    same_degree(&from.dims(), &to.dims())?;
    let mut dets = Vec::new();
    for q in 0..from.basis.len() {
        let (f, t) = (&from.basis[q], &to.basis[q]);
        if f.len() != t.len() {
            return Err(Error::Structural(format!("frames differ in dimension at degree {q}")));
        }
        if f.is_empty() {
            dets.push(Q::from_integer(1.into()));
            continue;
        }
        let n = f[0].len();
        let fm = Matrix::from_columns(n, f);
        let mut coords = Vec::new();
        for v in t {
            coords.push(fm.solve(v).ok_or_else(|| Error::Structural(format!("frames span different spaces at degree {q}")))?);
        }
        dets.push(Matrix::from_columns(f.len(), &coords).det());
    }
    Ok(generator_ratio(&dets))
}
