//! Poincaré duality on closed oriented odd-dimensional triangulated
//! manifolds: the intersection pairing with local coefficients, the duality
//! operator on determinant lines and the Poincaré–Reidemeister products.
//!
//! The intersection pairing is computed from the simplicial cap product with
//! the fundamental cycle. For a `p`-cochain `α` of `F^*` and a top simplex
//! `σ = [v_0 … v_m]` with orientation sign `ε`, the front face `[v_0 … v_q]`
//! (`q = m - p`) receives `ε · α([v_q … v_m]) ∘ T_{v_0 → v_q}`.

pub mod verify;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::chaincx::Homology;
use crate::cw::{FundamentalCycle, SimplicialComplex};
use crate::detline::{residue_m, residue_s, DetElement};
use crate::error::{Error, Result};
use crate::euler::EulerStructure;
use crate::flat::FlatRep;
use crate::matrix::Matrix;
use crate::scalar::{alt_pow, exact_sqrt, minus_one_pow, Q};
use crate::torsion::{Cohomology, HomologyOrientation, Twisted};

/// A closed oriented triangulated manifold of odd dimension.
pub struct Manifold<'a> {
    pub k: &'a SimplicialComplex,
    pub fundamental: FundamentalCycle,
}

impl<'a> Manifold<'a> {
    pub fn new(k: &'a SimplicialComplex) -> Result<Manifold<'a>> {
        if k.dim() % 2 == 0 {
            return Err(Error::Unsupported(format!("dimension {} is even; duality needs odd dimension", k.dim())));
        }
        if !k.is_connected() {
            return Err(Error::NotManifold("complex is not connected".into()));
        }
        let fundamental = k.orient_manifold()?;
        Ok(Manifold { k, fundamental })
    }

    pub fn with_orientation(k: &'a SimplicialComplex, fundamental: FundamentalCycle) -> Result<Manifold<'a>> {
        let mut mf = Manifold::new(k)?;
        if fundamental.signs.len() != mf.fundamental.signs.len() {
            return Err(Error::Structural("fundamental cycle has the wrong length".into()));
        }
        if fundamental != mf.fundamental && fundamental != mf.fundamental.negated() {
            return Err(Error::Structural("signs do not form a fundamental cycle".into()));
        }
        mf.fundamental = fundamental;
        Ok(mf)
    }

    pub fn dim(&self) -> usize {
        self.k.dim()
    }

    /// `α ∩ [X]` for `α ∈ C^p(K;F^*)`, landing in `C_{m-p}(K;F^*)`.
    pub fn cap(&self, f: &FlatRep, p: usize, alpha: &[Q]) -> Vec<Q> {
        let k = self.k;
        let m = k.dim();
        let q = m - p;
        let d = f.rank();
        let mut out = vec![Q::zero(); k.count(q) * d];
        for (j, s) in k.simplices(m).iter().enumerate() {
            let back = k.find(&s[q..]).expect("face").idx;
            let row = &alpha[back * d..(back + 1) * d];
            if row.iter().all(Zero::is_zero) {
                continue;
            }
            let front = k.find(&s[..=q]).expect("face").idx;
            let v = f.transport(k, s[0], s[q]).vec_mul(row);
            let eps = Q::from_integer(self.fundamental.signs[j].into());
            for (i, x) in v.into_iter().enumerate() {
                out[front * d + i] += &eps * x;
            }
        }
        out
    }
}

/// `I_q`: the intersection pairing `H_q(K;F^*) × H_{m-q}(K;F) → k` in the
/// deterministic frames, for every `q`.
#[derive(Clone, Debug, Serialize)]
pub struct PairingMatrix {
    #[serde(serialize_with = "crate::report::ser_matrices")]
    pub per_degree: Vec<Matrix>,
}

/// `I_q = (P^{-1})^T E`, where `α_k ∩ [X]` has coordinates `P[·][k]` and
/// `E[k][j] = ⟨α_k, h_j⟩`.
pub fn intersection_pairing(mf: &Manifold, tw: &Twisted, tw_star: &Twisted) -> Result<PairingMatrix> {
    let m = mf.dim();
    let (f, hf, hstar) = (&tw.f, &tw.homology, &tw_star.homology);
    let fstar = &tw_star.f;
    let coh_star = Cohomology::new(mf.k, fstar);
    let mut per_degree = Vec::new();
    for q in 0..=m {
        let p = m - q;
        let n = hstar.hdim(q);
        if n != hf.hdim(p) || n != coh_star.hdim(p) {
            return Err(Error::Internal(format!("duality fails on ranks in degree {q}")));
        }
        if n == 0 {
            per_degree.push(Matrix::zeros(0, 0));
            continue;
        }
        let alphas = coh_star.representatives(p);
        let caps: Vec<Vec<Q>> = alphas.iter().map(|a| mf.cap(f, p, a)).collect();
        for (i, c) in caps.iter().enumerate() {
            if !tw_star.complex.is_cycle(q, c) {
                return Err(Error::Internal(format!("cap product of cocycle {i} in degree {p} is not a cycle")));
            }
        }
        let pm = hstar.coords_matrix(q, &caps);
        let hreps = hf.representatives(p);
        let e = Matrix::from_rows(alphas.iter().map(|a| hreps.iter().map(|z| crate::torsion::dot(a, z)).collect()).collect())?;
        let pinv = pm.inverse().ok_or_else(|| Error::Internal(format!("cap with [X] is singular in degree {q}")))?;
        let i = pinv.transpose().mul(&e);
        if i.det().is_zero() {
            return Err(Error::Internal(format!("intersection pairing is singular in degree {q}")));
        }
        per_degree.push(i);
    }
    Ok(PairingMatrix { per_degree })
}

/// `D: det H_*(F) → det H_*(F^*)` as a scalar between the deterministic
/// frames, together with `s(F)`.
#[derive(Clone, Debug, Serialize)]
pub struct DualityData {
    pub s: u8,
    #[serde(serialize_with = "crate::report::ser_q")]
    pub d: Q,
}

pub fn duality_operator(hf: &Homology, pairing: &PairingMatrix) -> Result<DualityData> {
    let s = residue_s(&hf.hdims)?;
    let mut d = minus_one_pow(s as u64);
    for (q, i) in pairing.per_degree.iter().enumerate() {
        if i.rows() > 0 {
            d *= alt_pow(&i.det(), q).recip();
        }
    }
    Ok(DualityData { s, d })
}

/// Everything needed for `⟨·,·⟩_PR` on `det H_*(K;F)`.
pub struct PrContext<'a> {
    pub mf: &'a Manifold<'a>,
    pub tw: Twisted<'a>,
    pub tw_star: Twisted<'a>,
    pub pairing: PairingMatrix,
    pub duality: DualityData,
    /// `M(H_*(F), H_*(F^*))`.
    pub m_residue: u8,
    /// `τ(K; F ⊕ F^*)` against the block frame of `H_*(F) ⊕ H_*(F^*)`.
    pub tau_sum: Q,
}

impl<'a> PrContext<'a> {
    pub fn new(mf: &'a Manifold<'a>, f: &FlatRep) -> Result<PrContext<'a>> {
        let tw = Twisted::new(mf.k, f.clone());
        let tw_star = Twisted::new(mf.k, f.dual());
        let pairing = intersection_pairing(mf, &tw, &tw_star)?;
        let duality = duality_operator(&tw.homology, &pairing)?;
        let m_residue = residue_m(tw.hdims(), tw_star.hdims())?;
        let sum = Twisted::new(mf.k, f.sum(&f.dual())?);
        let tau = sum.unimodular()?;
        let r = block_ratio(&sum, &tw, &tw_star)?;
        Ok(PrContext { mf, tw, tw_star, pairing, duality, m_residue, tau_sum: tau.value.coeff / r })
    }

    /// `μ(a ⊗ D b) / τ(K; F ⊕ F^*)` for coefficients over the frame of `H_*(F)`.
    pub fn pr(&self, a: &Q, b: &Q) -> Q {
        minus_one_pow(self.m_residue as u64) * a * b * &self.duality.d / &self.tau_sum
    }

    pub fn pr_elements(&self, a: &DetElement, b: &DetElement) -> Result<Q> {
        for x in [a, b] {
            if &x.dims != self.tw.hdims() {
                return Err(Error::Structural("element is not over det H_*(K;F)".into()));
            }
        }
        Ok(self.pr(&a.coeff, &b.coeff))
    }

    /// `D(a)` over the frame of `H_*(F^*)`.
    pub fn apply_d(&self, a: &Q) -> Q {
        a * &self.duality.d
    }
}

/// `r` with `gen(block frame) = r · gen(frame of the sum complex)`, where the
/// block frame embeds the frames of the summands cell by cell.
pub fn block_ratio(sum: &Twisted, a: &Twisted, b: &Twisted) -> Result<Q> {
    let (da, db) = (a.f.rank(), b.f.rank());
    let k = a.k;
    let cycles: Vec<Vec<Vec<Q>>> = (0..=k.dim())
        .map(|q| {
            let n = k.count(q);
            let embed = |z: &[Q], first: bool| {
                let mut out = vec![Q::zero(); n * (da + db)];
                for c in 0..n {
                    let (w, off, src) = if first { (da, 0, c * da) } else { (db, da, c * db) };
                    for i in 0..w {
                        out[c * (da + db) + off + i] = z[src + i].clone();
                    }
                }
                out
            };
            let mut v: Vec<Vec<Q>> = a.homology.representatives(q).iter().map(|z| embed(z, true)).collect();
            v.extend(b.homology.representatives(q).iter().map(|z| embed(z, false)));
            v
        })
        .collect();
    sum.homology.generator_ratio(&cycles)
}

/// `⟨α, β⟩ = [α, a][β, b] / ⟨a, b⟩_PR` with `a, b` over `det H_*(F^*)`.
pub struct CohomologicalPr<'a> {
    pub coh: Cohomology,
    /// PR context of `F^*`.
    pub star: PrContext<'a>,
    kron: Q,
}

impl<'a> CohomologicalPr<'a> {
    pub fn new(mf: &'a Manifold<'a>, f: &FlatRep) -> Result<CohomologicalPr<'a>> {
        let coh = Cohomology::new(mf.k, f);
        let star = PrContext::new(mf, &f.dual())?;
        let kron = coh.kronecker(&star.tw.homology)?;
        Ok(CohomologicalPr { coh, star, kron })
    }

    pub fn product_with(&self, alpha: &Q, beta: &Q, a: &Q, b: &Q) -> Q {
        let left = alpha * a * &self.kron;
        let right = beta * b * &self.kron;
        left * right / self.star.pr(a, b)
    }

    pub fn product(&self, alpha: &Q, beta: &Q) -> Q {
        self.product_with(alpha, beta, &Q::one(), &Q::one())
    }
}

/// `Σ_{i ≤ (m-1)/2} dim H_{2i}(K;F)`.
pub fn semichar(h: &Homology) -> usize {
    let m = h.hdims.top_degree();
    (0..=(m.saturating_sub(1)) / 2).map(|i| h.hdim(2 * i)).sum()
}

/// `sχ(X)` from rational homology.
pub fn semichar_trivial(k: &SimplicialComplex) -> usize {
    semichar(&Twisted::new(k, FlatRep::trivial(k, 1)).homology)
}

/// The residue entering the odd-rank identities.
pub fn z_residue(m: usize, rank: usize, schi: usize) -> u8 {
    if rank % 2 == 1 && m % 4 == 1 {
        (schi % 2) as u8
    } else {
        0
    }
}

/// `det_F(c(ξ))`.
pub fn det_char(k: &SimplicialComplex, f: &FlatRep, xi: &EulerStructure) -> Result<Q> {
    Ok(f.det_on_chain(&xi.char_cycle(k)?))
}

/// `⟨w_1(F) ∪ w_{m-1}(X), [X]⟩` as the sign of `det_F(c(ξ))`.
pub fn sw_pairing(k: &SimplicialComplex, f: &FlatRep, xi: &EulerStructure) -> Result<u8> {
    Ok(u8::from(det_char(k, f, xi)?.is_negative()))
}

/// `|det_F c(ξ)|^{1/2}`, exact when possible; otherwise the squared value is
/// returned with `squared = true`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RsRhs {
    #[serde(serialize_with = "crate::report::ser_q")]
    pub value: Q,
    pub squared: bool,
}

pub fn rs_rhs(k: &SimplicialComplex, f: &FlatRep, xi: &EulerStructure) -> Result<RsRhs> {
    let a = det_char(k, f, xi)?.abs();
    Ok(match exact_sqrt(&a) {
        Some(r) => RsRhs { value: r, squared: false },
        None => RsRhs { value: a, squared: true },
    })
}

/// `(τ•)^2 / |det_F c(ξ)|`, independent of `ξ`.
pub fn rs_companion(k: &SimplicialComplex, f: &FlatRep, xi: &EulerStructure, eta: Option<HomologyOrientation>) -> Result<Q> {
    let coh = Cohomology::new(k, f);
    let dual = Twisted::new(k, f.dual());
    let tb = crate::torsion::cohomological_torsion(&coh, &dual, xi, eta)?;
    Ok(&tb.value.coeff * &tb.value.coeff / det_char(k, f, xi)?.abs())
}

/// The canonical homology orientation from a basis of `H_i(K;R)`, `i < m/2`,
/// followed by its Poincaré dual basis. `changes[i]` replaces the
/// deterministic basis of `H_i` by `basis · changes[i]`.
pub fn canonical_homology_orientation(mf: &Manifold, changes: Option<&[Matrix]>) -> Result<HomologyOrientation> {
    let k = mf.k;
    let m = mf.dim();
    let triv = FlatRep::trivial(k, 1);
    let tw = Twisted::new(k, triv.clone());
    let pairing = intersection_pairing(mf, &tw, &tw)?;
    let mut factor = Q::one();
    for i in 0..=m / 2 {
        let n = tw.homology.hdim(i);
        if n == 0 {
            continue;
        }
        let a = match changes {
            Some(c) => c[i].clone(),
            None => Matrix::identity(n),
        };
        // dual basis y = (deterministic frame) · M with A^T I_i M = 1
        let mm = a.transpose().mul(&pairing.per_degree[i]).inverse().ok_or_else(|| Error::Structural(format!("basis change in degree {i} is singular")))?;
        factor *= alt_pow(&a.det(), i) * alt_pow(&mm.det(), m - i);
    }
    HomologyOrientation::new(if factor.is_positive() { 1 } else { -1 })
}
