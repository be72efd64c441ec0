//! Torsions of flat bundles: unimodular, of Euler structures, sign-refined
//! and cohomological.
//!
//! Every value is a [`DetElement`] over the deterministic homology frame of
//! the reference complex. The Euler-structure torsion is the reference
//! torsion times `Π_a det(B_a)^{(-1)^{|a|}}`, where `B_a` is the transport
//! along the spider leg of `a`; [`Twisted::euler_direct`] recomputes it from
//! the explicitly based complex instead.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::chaincx::{ChainComplex, Homology};
use crate::cw::paths::CombPath;
use crate::cw::{spanning_tree, CwComplex, SimplicialComplex, Subdivision};
use crate::detline::{DetElement, GradedDims};
use crate::error::{Error, Result};
use crate::euler::EulerStructure;
use crate::flat::{self, CwRep, FlatRep};
use crate::matrix::Matrix;
use crate::scalar::{alt_pow, sign_of, Q};

pub const HOMOLOGY_FRAME: &str = "H_*(K;F)";
pub const COHOMOLOGY_FRAME: &str = "H^*(K;F)";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionValue {
    pub value: DetElement,
    /// Defined only up to sign.
    pub sign_ambiguous: bool,
}

impl TorsionValue {
    pub fn coeff(&self) -> &Q {
        &self.value.coeff
    }

    /// Equality, up to sign when either side is ambiguous.
    pub fn agrees_with(&self, other: &TorsionValue) -> bool {
        if self.sign_ambiguous || other.sign_ambiguous {
            self.value.coeff == other.value.coeff || self.value.coeff == -other.value.coeff.clone()
        } else {
            self.value.coeff == other.value.coeff
        }
    }
}

/// Orientation of `det H_*(K;R)` as a sign against the deterministic frame of
/// the trivial rank-1 reference complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyOrientation {
    pub sign: i8,
}

impl HomologyOrientation {
    pub fn new(sign: i8) -> Result<Self> {
        match sign {
            1 | -1 => Ok(HomologyOrientation { sign }),
            _ => Err(Error::Structural(format!("homology orientation must be ±1, got {sign}"))),
        }
    }

    pub fn flipped(self) -> Self {
        HomologyOrientation { sign: -self.sign }
    }
}

/// Transport along a path: each step is read through its retraction.
pub fn path_transport(k: &SimplicialComplex, f: &FlatRep, p: &CombPath) -> Matrix {
    let mut m = Matrix::identity(f.rank());
    for s in &p.steps {
        let (u, v) = s.endpoints(k);
        if u != v {
            m = f.transport(k, u, v).mul(&m);
        }
    }
    m
}

/// A flat bundle on a simplicial complex together with its reference complex
/// and homology.
pub struct Twisted<'a> {
    pub k: &'a SimplicialComplex,
    pub f: FlatRep,
    pub complex: ChainComplex,
    pub homology: Homology,
    tau_ref: Q,
}

impl<'a> Twisted<'a> {
    pub fn new(k: &'a SimplicialComplex, f: FlatRep) -> Twisted<'a> {
        let complex = flat::reference_complex(k, &f);
        let homology = complex.homology();
        let tau_ref = complex.torsion_iso(&Q::one(), &homology).coeff;
        Twisted { k, f, complex, homology, tau_ref }
    }

    pub fn hdims(&self) -> &GradedDims {
        &self.homology.hdims
    }

    fn sign_ambiguous(&self) -> bool {
        self.f.rank() % 2 == 1
    }

    fn value(&self, coeff: Q) -> DetElement {
        DetElement::new(HOMOLOGY_FRAME, self.homology.hdims.clone(), coeff)
    }

    fn require_torsion(&self) -> Result<()> {
        match self.k.euler_char() {
            0 => Ok(()),
            chi => Err(Error::NonzeroEuler(chi)),
        }
    }

    /// `φ_C` of the reference cell generator.
    pub fn reference_torsion(&self) -> &Q {
        &self.tau_ref
    }

    /// `τ(K, ξ; F)`.
    pub fn euler(&self, xi: &EulerStructure) -> Result<TorsionValue> {
        self.require_torsion()?;
        xi.validate(self.k)?;
        let factor = self.f.det_on_chain(&xi.retracted_chain(self.k));
        Ok(TorsionValue { value: self.value(&self.tau_ref * factor), sign_ambiguous: self.sign_ambiguous() })
    }

    /// `τ(K, ξ; F)` from the complex written in the spider bases, carried
    /// back to the reference homology frame through the chain isomorphism.
    pub fn euler_direct(&self, xi: &EulerStructure) -> Result<TorsionValue> {
        self.require_torsion()?;
        xi.validate(self.k)?;
        let bases: Vec<Vec<Matrix>> =
            xi.paths.iter().map(|ps| ps.iter().map(|p| path_transport(self.k, &self.f, p)).collect()).collect();
        let based = flat::complex_with_bases(self.k, &self.f, &bases)?;
        let h = based.homology();
        let inner = based.torsion_iso(&Q::one(), &h).coeff;
        let d = self.f.rank();
        let cycles: Vec<Vec<Vec<Q>>> = (0..=self.k.dim())
            .map(|q| {
                h.representatives(q)
                    .iter()
                    .map(|z| {
                        let mut out = vec![Q::zero(); z.len()];
                        for (j, b) in bases[q].iter().enumerate() {
                            let y = b.mul_vec(&z[j * d..(j + 1) * d]);
                            out[j * d..(j + 1) * d].clone_from_slice(&y);
                        }
                        out
                    })
                    .collect()
            })
            .collect();
        let r = self.homology.generator_ratio(&cycles)?;
        Ok(TorsionValue { value: self.value(inner * r), sign_ambiguous: self.sign_ambiguous() })
    }

    /// `τ(K; F)` for unimodular `F`, with the flat volume form normalized to
    /// the determinant at vertex 0.
    pub fn unimodular(&self) -> Result<TorsionValue> {
        self.require_torsion()?;
        if let Some(d) = self.f.unimodularity_witness(self.k) {
            return Err(Error::NotUnimodular(format!("det of a monodromy is {}", crate::scalar::fmt_q(&d))));
        }
        let tree = spanning_tree(self.k, 0);
        let mut lambda = vec![Q::one(); self.k.n_vertices()];
        for &v in tree.order.iter().skip(1) {
            let (u, _) = tree.parent[v].expect("tree vertex");
            lambda[v] = &lambda[u] * self.f.transport_det(self.k, u, v);
        }
        let mut factor = Q::one();
        for a in self.k.cells() {
            factor *= alt_pow(&lambda[self.k.min_vertex(a)], a.dim);
        }
        Ok(TorsionValue { value: self.value(&self.tau_ref * factor), sign_ambiguous: self.sign_ambiguous() })
    }

    /// `τ(K, η, ξ; F)`.
    pub fn refined(&self, xi: &EulerStructure, eta: HomologyOrientation) -> Result<TorsionValue> {
        let t = self.euler(xi)?;
        let eps = if real_torsion_sign(self.k) == eta.sign as i32 { 1 } else { -1 };
        let coeff = if self.f.rank() % 2 == 1 && eps < 0 { -t.value.coeff } else { t.value.coeff };
        Ok(TorsionValue { value: self.value(coeff), sign_ambiguous: false })
    }

    /// The torsion to use in sign-sensitive identities: refined when the rank
    /// is odd and an orientation is available.
    pub fn euler_or_refined(&self, xi: &EulerStructure, eta: Option<HomologyOrientation>) -> Result<TorsionValue> {
        match eta {
            Some(e) if self.f.rank() % 2 == 1 => self.refined(xi, e),
            _ => self.euler(xi),
        }
    }
}

/// Sign of `φ_{C_R}` of the reference generator of the untwisted complex.
pub fn real_torsion_sign(k: &SimplicialComplex) -> i32 {
    let c = flat::reference_complex(k, &FlatRep::trivial(k, 1));
    let h = c.homology();
    sign_of(&c.torsion_iso(&Q::one(), &h).coeff)
}

/// `C^*(K;F)` with its deterministic frame; reps are cochains in the
/// coordinates dual to the reference basis of `C_*(K;F^*)`.
pub struct Cohomology {
    m: usize,
    pub homology: Homology,
}

impl Cohomology {
    pub fn new(k: &SimplicialComplex, f: &FlatRep) -> Cohomology {
        let c = flat::cochain_complex(k, f);
        Cohomology { m: k.dim(), homology: c.homology() }
    }

    pub fn hdim(&self, q: usize) -> usize {
        self.homology.hdim(self.m - q)
    }

    pub fn dims(&self) -> GradedDims {
        GradedDims::new((0..=self.m).map(|q| self.hdim(q)).collect()).expect("nonempty")
    }

    pub fn representatives(&self, q: usize) -> Vec<Vec<Q>> {
        self.homology.representatives(self.m - q)
    }

    /// Class coordinates of a cocycle of degree `q`.
    pub fn class_coords(&self, q: usize, alpha: &[Q]) -> Vec<Q> {
        self.homology.class_coords(self.m - q, alpha)
    }

    /// `E_q[i][j] = ⟨α_i, h_j⟩` against homology reps of `F^*`.
    pub fn evaluation(&self, q: usize, hstar: &Homology) -> Matrix {
        let a = self.representatives(q);
        let h = hstar.representatives(q);
        let rows = a.iter().map(|al| h.iter().map(|z| dot(al, z)).collect()).collect();
        Matrix::from_rows(rows).unwrap_or_else(|_| Matrix::zeros(0, 0))
    }

    /// `[·,·]` on the frame generators: `Π_q det(E_q)^{(-1)^q}`.
    pub fn kronecker(&self, hstar: &Homology) -> Result<Q> {
        let mut acc = Q::one();
        for q in 0..=self.m {
            if self.hdim(q) != hstar.hdim(q) {
                return Err(Error::Internal(format!("H^{q}(F) and H_{q}(F*) differ in rank")));
            }
            if self.hdim(q) == 0 {
                continue;
            }
            let d = self.evaluation(q, hstar).det();
            if d.is_zero() {
                return Err(Error::Internal(format!("evaluation pairing is singular in degree {q}")));
            }
            acc *= alt_pow(&d, q);
        }
        Ok(acc)
    }
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `[α, a]` for `α ∈ det H^*(K;F)` and `a ∈ det H_*(K;F^*)`.
pub fn kronecker_pairing(coh: &Cohomology, hstar: &Homology, alpha: &DetElement, a: &DetElement) -> Result<Q> {
    Ok(&alpha.coeff * &a.coeff * coh.kronecker(hstar)?)
}

/// `τ•(K, ξ; F)`: the element with `[τ•, τ(K, ξ; F^*)] = 1`.
pub struct CohomologicalTorsion {
    pub value: DetElement,
    pub sign_ambiguous: bool,
}

pub fn cohomological_torsion(
    coh: &Cohomology,
    dual: &Twisted,
    xi: &EulerStructure,
    eta: Option<HomologyOrientation>,
) -> Result<CohomologicalTorsion> {
    let t = dual.euler_or_refined(xi, eta)?;
    let pairing = coh.kronecker(&dual.homology)?;
    let coeff = (t.value.coeff * pairing).recip();
    Ok(CohomologicalTorsion { value: DetElement::new(COHOMOLOGY_FRAME, coh.dims(), coeff), sign_ambiguous: t.sign_ambiguous })
}

/// Matrices of `sd_*: H_q(K;F) → H_q(K';F')` in the two deterministic frames.
pub fn homology_transfer(
    k: &SimplicialComplex,
    f: &FlatRep,
    sub: &Subdivision,
    h: &Homology,
    hp: &Homology,
) -> Vec<Matrix> {
    let sd = flat::subdivision_chain_map(k, f, sub);
    (0..=k.dim())
        .map(|q| {
            let imgs: Vec<Vec<Q>> = h.representatives(q).iter().map(|z| sd[q].mul_vec(z)).collect();
            hp.coords_matrix(q, &imgs)
        })
        .collect()
}

/// Factor `r` with `gen(frame of K) ↦ r · gen(frame of K')` under `sd_*`.
pub fn transfer_ratio(mats: &[Matrix]) -> Result<Q> {
    let mut acc = Q::one();
    for (q, m) in mats.iter().enumerate() {
        if m.rows() != m.cols() {
            return Err(Error::Internal(format!("subdivision changed H_{q}")));
        }
        if m.rows() == 0 {
            continue;
        }
        let d = m.det();
        if d.is_zero() {
            return Err(Error::Internal(format!("subdivision transfer is singular in degree {q}")));
        }
        acc *= alt_pow(&d, q);
    }
    Ok(acc)
}

/// `τ(X, ξ; F)` for a CW complex, where `ξ` is the canonical structure
/// (identity cell bases) moved by the loop `offset` at the first 0-cell.
pub fn cw_torsion_euler(cw: &CwComplex, f: &CwRep, offset: &[i64]) -> Result<TorsionValue> {
    if cw.euler_char() != 0 {
        return Err(Error::NonzeroEuler(cw.euler_char()));
    }
    let complex = flat::cw_complex(cw, f, None)?;
    let h = complex.homology();
    let tau = complex.torsion_iso(&Q::one(), &h).coeff * f.word(offset).det();
    Ok(TorsionValue { value: DetElement::new(HOMOLOGY_FRAME, h.hdims.clone(), tau), sign_ambiguous: f.rank % 2 == 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cw::paths::EdgeChain;
    use crate::cw::{barycentric, circle};
    use crate::euler::canonical_structure;
    use crate::scalar::{q, qf};

    fn loop_chain(k: &SimplicialComplex) -> EdgeChain {
        let walk: Vec<usize> = (0..k.n_vertices()).chain([0]).collect();
        EdgeChain::from_vertex_walk(k, &walk).unwrap()
    }

    #[test]
    fn cw_circle_scalar() {
        let cw = CwComplex::circle();
        let f = CwRep::new(&cw, 1, vec![Matrix::scalar(q(3))]).unwrap();
        let t = cw_torsion_euler(&cw, &f, &[]).unwrap();
        assert_eq!(t.coeff(), &qf(1, 2));
        assert_eq!(cw_torsion_euler(&cw, &f, &[1]).unwrap().coeff(), &qf(3, 2));
    }

    #[test]
    fn equivariance_and_direct_route() {
        let k = circle(3).unwrap();
        let f = FlatRep::circle_monodromy(&k, &Matrix::scalar(q(3))).unwrap();
        let tw = Twisted::new(&k, f);
        let xi = canonical_structure(&k, 0).unwrap();
        let t0 = tw.euler(&xi).unwrap();
        for h in [-2i64, -1, 1, 2] {
            let moved = xi.act(&k, &loop_chain(&k).scaled(h)).unwrap();
            let t = tw.euler(&moved).unwrap();
            assert_eq!(t.coeff(), &(t0.coeff() * crate::scalar::powi(&q(3), h)));
            assert_eq!(tw.euler_direct(&moved).unwrap().coeff(), t.coeff());
        }
    }

    #[test]
    fn unimodular_matches_euler() {
        let k = circle(4).unwrap();
        let f = FlatRep::circle_monodromy(&k, &Matrix::from_i64(&[&[0, 1], &[-1, 0]])).unwrap();
        let tw = Twisted::new(&k, f);
        let u = tw.unimodular().unwrap();
        let xi = canonical_structure(&k, 2).unwrap().act(&k, &loop_chain(&k)).unwrap();
        assert!(u.agrees_with(&tw.euler(&xi).unwrap()));
        let g = FlatRep::circle_monodromy(&k, &Matrix::scalar(q(2))).unwrap();
        assert!(matches!(Twisted::new(&k, g).unimodular(), Err(Error::NotUnimodular(_))));
    }

    #[test]
    fn refined_flips_with_orientation() {
        let k = circle(3).unwrap();
        let f = FlatRep::circle_monodromy(&k, &Matrix::scalar(q(-2))).unwrap();
        let tw = Twisted::new(&k, f);
        let xi = canonical_structure(&k, 0).unwrap();
        let eta = HomologyOrientation::new(1).unwrap();
        let a = tw.refined(&xi, eta).unwrap();
        let b = tw.refined(&xi, eta.flipped()).unwrap();
        assert_eq!(a.coeff(), &-b.coeff().clone());
        let f2 = FlatRep::circle_monodromy(&k, &Matrix::diag(&[q(2), q(3)])).unwrap();
        let tw2 = Twisted::new(&k, f2);
        assert_eq!(tw2.refined(&xi, eta).unwrap(), tw2.refined(&xi, eta.flipped()).unwrap());
    }

    #[test]
    fn cohomological_normalization() {
        let k = circle(3).unwrap();
        let f = FlatRep::circle_monodromy(&k, &Matrix::scalar(q(3))).unwrap();
        let coh = Cohomology::new(&k, &f);
        let dual = Twisted::new(&k, f.dual());
        let xi = canonical_structure(&k, 0).unwrap();
        let tb = cohomological_torsion(&coh, &dual, &xi, None).unwrap();
        let t = dual.euler(&xi).unwrap();
        assert_eq!(kronecker_pairing(&coh, &dual.homology, &tb.value, &t.value).unwrap(), q(1));
        assert_eq!(tb.value.coeff, t.value.coeff.recip());
        let triv = FlatRep::trivial(&k, 1);
        let coh = Cohomology::new(&k, &triv);
        assert_eq!(coh.dims().as_slice(), &[1, 1]);
        assert!(!coh.kronecker(&Twisted::new(&k, triv.dual()).homology).unwrap().is_zero());
    }

    #[test]
    fn subdivision_invariance_on_the_circle() {
        let k = circle(3).unwrap();
        let sub = barycentric(&k).unwrap();
        let f = FlatRep::circle_monodromy(&k, &Matrix::from_i64(&[&[2, 1], &[0, 3]])).unwrap();
        let fp = f.pullback_to_subdivision(&k, &sub);
        let tw = Twisted::new(&k, f.clone());
        let twp = Twisted::new(&sub.complex, fp);
        let xi = canonical_structure(&k, 0).unwrap();
        let t = tw.euler(&xi).unwrap();
        let tp = twp.euler(&xi.subdivide(&sub)).unwrap();
        let r = transfer_ratio(&homology_transfer(&k, &f, &sub, &tw.homology, &twp.homology)).unwrap();
        assert_eq!(t.coeff() * r, *tp.coeff());
    }
}
