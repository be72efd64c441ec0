//! Flat bundles as edge transports satisfying the triangle cocycle, and the
//! twisted chain and cochain complexes they define.
//!
//! A section over a simplex is recorded by its value at the simplex's minimal
//! vertex. The reference complex uses the standard basis of that fibre for
//! every cell; other cell bases are expressed against it.

use num_traits::{One, Signed, Zero};

use crate::chaincx::ChainComplex;
use crate::cw::paths::EdgeChain;
use crate::cw::{spanning_tree, Cell, CwComplex, SimplicialComplex, Subdivision};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{q, Q};
use crate::sparse::SparseMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatRep {
    rank: usize,
    /// `forward[e]` transports the fibre at the smaller endpoint of edge `e`
    /// to the larger one.
    forward: Vec<Matrix>,
    backward: Vec<Matrix>,
}

impl FlatRep {
    /// Validates invertibility and the cocycle `T_{uw} = T_{vw} T_{uv}`.
    pub fn new(k: &SimplicialComplex, rank: usize, forward: Vec<Matrix>) -> Result<FlatRep> {
        if rank == 0 {
            return Err(Error::Structural("bundle rank must be positive".into()));
        }
        if forward.len() != k.count(1) {
            return Err(Error::Structural(format!("{} edge matrices for {} edges", forward.len(), k.count(1))));
        }
        let mut backward = Vec::with_capacity(forward.len());
        for (e, t) in forward.iter().enumerate() {
            let edge = k.simplex(Cell::new(1, e));
            if t.rows() != rank || t.cols() != rank {
                return Err(Error::Structural(format!(
                    "edge {edge:?}: matrix is {}x{}, expected {rank}x{rank}",
                    t.rows(),
                    t.cols()
                )));
            }
            backward.push(t.inverse().ok_or_else(|| Error::Structural(format!("edge {edge:?}: singular matrix, not a bundle")))?);
        }
        let f = FlatRep { rank, forward, backward };
        f.check_cocycle(k)?;
        Ok(f)
    }

    fn check_cocycle(&self, k: &SimplicialComplex) -> Result<()> {
        if k.dim() < 2 {
            return Ok(());
        }
        for t in k.simplices(2) {
            let (u, v, w) = (t[0], t[1], t[2]);
            if self.transport(k, u, w) != self.transport(k, v, w).mul(&self.transport(k, u, v)) {
                return Err(Error::NotFlat(format!("cocycle fails on triangle {t:?}")));
            }
        }
        Ok(())
    }

    pub fn trivial(k: &SimplicialComplex, rank: usize) -> FlatRep {
        let id = Matrix::identity(rank);
        FlatRep { rank, forward: vec![id.clone(); k.count(1)], backward: vec![id; k.count(1)] }
    }

    /// Identity on unlisted edges; an entry `((u, v), T)` transports `u → v`.
    pub fn from_edges(k: &SimplicialComplex, rank: usize, edges: &[((usize, usize), Matrix)]) -> Result<FlatRep> {
        let mut forward = vec![Matrix::identity(rank); k.count(1)];
        for ((u, v), t) in edges {
            let (e, s) = k
                .oriented_edge(*u, *v)
                .ok_or_else(|| Error::Structural(format!("({u},{v}) is not an edge")))?;
            forward[e] = if s > 0 {
                t.clone()
            } else {
                t.inverse().ok_or_else(|| Error::Structural(format!("edge ({u},{v}): singular matrix, not a bundle")))?
            };
        }
        FlatRep::new(k, rank, forward)
    }

    /// Monodromy `A` around the loop `0 → 1 → … → n-1 → 0` of `circle(n)`,
    /// placed on the closing step `n-1 → 0`.
    pub fn circle_monodromy(k: &SimplicialComplex, a: &Matrix) -> Result<FlatRep> {
        let n = k.n_vertices();
        FlatRep::from_edges(k, a.rows(), &[((n - 1, 0), a.clone())])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn edge_matrix(&self, e: usize) -> &Matrix {
        &self.forward[e]
    }

    /// Transport from the fibre at `u` to the fibre at `v` along the edge
    /// (or the identity when `u = v`).
    pub fn transport(&self, k: &SimplicialComplex, u: usize, v: usize) -> Matrix {
        match k.oriented_edge(u, v) {
            None => {
                assert_eq!(u, v, "no edge {u}-{v}");
                Matrix::identity(self.rank)
            }
            Some((e, s)) => {
                if s > 0 {
                    self.forward[e].clone()
                } else {
                    self.backward[e].clone()
                }
            }
        }
    }

    pub fn transport_det(&self, k: &SimplicialComplex, u: usize, v: usize) -> Q {
        match k.oriented_edge(u, v) {
            None => Q::one(),
            Some((e, s)) => {
                let d = self.forward[e].det();
                if s > 0 {
                    d
                } else {
                    d.recip()
                }
            }
        }
    }

    /// Transport `(T^{-1})^T`.
    pub fn dual(&self) -> FlatRep {
        FlatRep {
            rank: self.rank,
            forward: self.backward.iter().map(Matrix::transpose).collect(),
            backward: self.forward.iter().map(Matrix::transpose).collect(),
        }
    }

    pub fn sum(&self, other: &FlatRep) -> Result<FlatRep> {
        if self.forward.len() != other.forward.len() {
            return Err(Error::Structural("bundles live on different complexes".into()));
        }
        let bd = |a: &[Matrix], b: &[Matrix]| a.iter().zip(b).map(|(x, y)| Matrix::block_diag(x, y)).collect();
        Ok(FlatRep {
            rank: self.rank + other.rank,
            forward: bd(&self.forward, &other.forward),
            backward: bd(&self.backward, &other.backward),
        })
    }

    pub fn tensor(&self, other: &FlatRep) -> Result<FlatRep> {
        if self.forward.len() != other.forward.len() {
            return Err(Error::Structural("bundles live on different complexes".into()));
        }
        let kr = |a: &[Matrix], b: &[Matrix]| a.iter().zip(b).map(|(x, y)| Matrix::kron(x, y)).collect();
        Ok(FlatRep {
            rank: self.rank * other.rank,
            forward: kr(&self.forward, &other.forward),
            backward: kr(&self.backward, &other.backward),
        })
    }

    /// Conjugation `T ↦ G T G^{-1}` on every edge (a constant gauge change).
    pub fn conjugate(&self, g: &Matrix) -> Result<FlatRep> {
        let gi = g.inverse().ok_or_else(|| Error::Structural("singular gauge".into()))?;
        let c = |ts: &[Matrix]| ts.iter().map(|t| g.mul(t).mul(&gi)).collect();
        Ok(FlatRep { rank: self.rank, forward: c(&self.forward), backward: c(&self.backward) })
    }

    /// Pullback along a simplicial map given on vertices.
    pub fn pullback(k: &SimplicialComplex, map: &[usize], l: &SimplicialComplex, f: &FlatRep) -> Result<FlatRep> {
        let forward = k
            .simplices(1)
            .iter()
            .map(|e| {
                let (u, v) = (map[e[0]], map[e[1]]);
                if u != v && l.oriented_edge(u, v).is_none() {
                    return Err(Error::Structural(format!("vertex map is not simplicial on edge {e:?}")));
                }
                Ok(f.transport(l, u, v))
            })
            .collect::<Result<Vec<_>>>()?;
        FlatRep::new(k, f.rank, forward)
    }

    /// `Π_e det(T_e)^{z_e}` for any edge chain, closed or not.
    pub fn det_on_chain(&self, z: &EdgeChain) -> Q {
        let mut acc = Q::one();
        for (e, c) in z.sparse() {
            let d = self.forward[e].det();
            acc *= crate::scalar::powi(&d, c);
        }
        acc
    }

    /// `det_F` on a 1-cycle.
    pub fn det_on(&self, k: &SimplicialComplex, z: &EdgeChain) -> Result<Q> {
        if !z.is_cycle(k) {
            return Err(Error::Structural("det_F needs a closed chain".into()));
        }
        Ok(self.det_on_chain(z))
    }

    /// True iff `det_F` is trivial on the fundamental cycles of a spanning tree.
    pub fn is_unimodular(&self, k: &SimplicialComplex) -> bool {
        self.unimodularity_witness(k).is_none()
    }

    /// A fundamental cycle on which `det_F ≠ 1`, if any.
    pub fn unimodularity_witness(&self, k: &SimplicialComplex) -> Option<Q> {
        let tree = spanning_tree(k, 0);
        for e in 0..k.count(1) {
            if tree.in_tree[e] {
                continue;
            }
            let s = k.simplex(Cell::new(1, e));
            let (u, v) = (s[0], s[1]);
            // tree path root→u, edge u→v, tree path v→root
            let mut walk = tree.path_to(u);
            let mut back = tree.path_to(v);
            back.reverse();
            walk.extend(back);
            let z = EdgeChain::from_vertex_walk(k, &walk).expect("tree walk");
            let d = self.det_on_chain(&z);
            if !d.is_one() {
                return Some(d);
            }
        }
        None
    }

    pub fn is_orthogonal(&self) -> bool {
        self.forward.iter().all(|t| t.transpose().mul(t).is_identity())
    }

    /// `F'` on `K'`: fibre at `ā` is `F_{min a}`, transport along the flag
    /// edge `a_0 ⊂ a_1` is `T_{min a_0 → min a_1}`.
    pub fn pullback_to_subdivision(&self, k: &SimplicialComplex, sub: &Subdivision) -> FlatRep {
        let kp = &sub.complex;
        let forward: Vec<Matrix> = kp
            .simplices(1)
            .iter()
            .map(|e| {
                let (a0, a1) = (sub.cell_of_vertex[e[0]], sub.cell_of_vertex[e[1]]);
                self.transport(k, k.min_vertex(a0), k.min_vertex(a1))
            })
            .collect();
        let backward = forward.iter().map(|t| t.inverse().expect("invertible")).collect();
        FlatRep { rank: self.rank, forward, backward }
    }
}

/// `C_*(K;F)` with the standard basis of `F_{min a}` on every cell `a`.
pub fn reference_complex(k: &SimplicialComplex, f: &FlatRep) -> ChainComplex {
    let d = f.rank();
    let dims: Vec<usize> = (0..=k.dim()).map(|q| d * k.count(q)).collect();
    let mut maps = Vec::new();
    for qd in 1..=k.dim() {
        let mut t = Vec::new();
        for j in 0..k.count(qd) {
            let a = Cell::new(qd, j);
            let s = k.simplex(a);
            for i in 0..=qd {
                let b = k.face(a, i);
                let sign = if i % 2 == 0 { q(1) } else { q(-1) };
                let block = if i == 0 { f.transport(k, s[0], s[1]) } else { Matrix::identity(d) };
                push_block(&mut t, b.idx * d, j * d, &block, &sign);
            }
        }
        maps.push(SparseMatrix::from_triplets(dims[qd - 1], dims[qd], t));
    }
    ChainComplex::new(dims, maps).expect("flat bundles give chain complexes")
}

/// `C_*(K;F)` with cell basis `B_a` (columns in `F_{min a}` coordinates).
pub fn complex_with_bases(k: &SimplicialComplex, f: &FlatRep, bases: &[Vec<Matrix>]) -> Result<ChainComplex> {
    let d = f.rank();
    let dims: Vec<usize> = (0..=k.dim()).map(|q| d * k.count(q)).collect();
    let inverses: Vec<Vec<Matrix>> = bases
        .iter()
        .map(|l| l.iter().map(|b| b.inverse().ok_or_else(|| Error::Structural("singular cell basis".into()))).collect())
        .collect::<Result<_>>()?;
    let mut maps = Vec::new();
    for qd in 1..=k.dim() {
        let mut t = Vec::new();
        for j in 0..k.count(qd) {
            let a = Cell::new(qd, j);
            let s = k.simplex(a);
            for i in 0..=qd {
                let b = k.face(a, i);
                let sign = if i % 2 == 0 { q(1) } else { q(-1) };
                let tr = if i == 0 { f.transport(k, s[0], s[1]) } else { Matrix::identity(d) };
                let block = inverses[qd - 1][b.idx].mul(&tr).mul(&bases[qd][j]);
                push_block(&mut t, b.idx * d, j * d, &block, &sign);
            }
        }
        maps.push(SparseMatrix::from_triplets(dims[qd - 1], dims[qd], t));
    }
    ChainComplex::new(dims, maps)
}

fn push_block(t: &mut Vec<(usize, usize, Q)>, r0: usize, c0: usize, block: &Matrix, sign: &Q) {
    for r in 0..block.rows() {
        for c in 0..block.cols() {
            let x = block.get(r, c);
            if !x.is_zero() {
                t.push((r0 + r, c0 + c, x * sign));
            }
        }
    }
}

/// A representation of the generators of a CW complex's fundamental group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CwRep {
    pub rank: usize,
    pub generators: Vec<Matrix>,
}

impl CwRep {
    pub fn new(cw: &CwComplex, rank: usize, generators: Vec<Matrix>) -> Result<CwRep> {
        if generators.len() != cw.generators {
            return Err(Error::Structural(format!("{} generator matrices for {} generators", generators.len(), cw.generators)));
        }
        for (g, m) in generators.iter().enumerate() {
            if m.rows() != rank || m.cols() != rank {
                return Err(Error::Structural(format!("generator {g}: not a {rank}x{rank} matrix")));
            }
            if m.det().is_zero() {
                return Err(Error::Structural(format!("generator {g}: singular matrix, not a bundle")));
            }
        }
        Ok(CwRep { rank, generators })
    }

    /// Transport along a word, first letter applied first.
    pub fn word(&self, w: &[i64]) -> Matrix {
        let mut m = Matrix::identity(self.rank);
        for &l in w {
            let g = &self.generators[l.unsigned_abs() as usize - 1];
            let t = if l > 0 { g.clone() } else { g.inverse().expect("invertible") };
            m = t.mul(&m);
        }
        m
    }

    pub fn is_unimodular(&self) -> bool {
        self.generators.iter().all(|g| g.det().abs().is_one() && g.det().is_positive())
    }
}

/// `C_*(X;F)` of a CW complex, cell bases given by `bases[q][j]` (identity
/// when `None`).
pub fn cw_complex(cw: &CwComplex, f: &CwRep, bases: Option<&[Vec<Matrix>]>) -> Result<ChainComplex> {
    let d = f.rank;
    let dims: Vec<usize> = cw.cells.iter().map(|n| n * d).collect();
    let id = Matrix::identity(d);
    let basis = |qd: usize, j: usize| bases.map_or(&id, |b| &b[qd][j]);
    let mut maps = Vec::new();
    for qd in 1..=cw.dim() {
        let mut t = Vec::new();
        for (j, terms) in cw.boundary[qd - 1].iter().enumerate() {
            for term in terms {
                let inv = basis(qd - 1, term.face).inverse().ok_or_else(|| Error::Structural("singular cell basis".into()))?;
                let block = inv.mul(&f.word(&term.word)).mul(basis(qd, j));
                push_block(&mut t, term.face * d, j * d, &block, &q(term.sign));
            }
        }
        maps.push(SparseMatrix::from_triplets(dims[qd - 1], dims[qd], t));
    }
    ChainComplex::new(dims, maps)
}

/// `C^*(K;F)` as the dual of `C_*(K;F^*)`, regraded so that degree `j`
/// holds `C^{m-j}`; the boundary out of degree `j` is `δ_{m-j} = d_{m-j+1}^T`.
pub fn cochain_complex(k: &SimplicialComplex, f: &FlatRep) -> ChainComplex {
    let star = reference_complex(k, &f.dual());
    let m = k.dim();
    let dims: Vec<usize> = (0..=m).map(|j| star.dims().dim(m - j)).collect();
    let maps = (1..=m).map(|j| star.boundary(m - j + 1).transpose()).collect();
    ChainComplex::new(dims, maps).expect("dual of a chain complex")
}

/// sd with coefficients: `C_q(K;F) → C_q(K';F')` in reference bases.
pub fn subdivision_chain_map(k: &SimplicialComplex, f: &FlatRep, sub: &Subdivision) -> Vec<SparseMatrix> {
    let d = f.rank();
    let kp = &sub.complex;
    (0..=k.dim())
        .map(|qd| {
            let mut t = Vec::new();
            for (row, col, sign) in sub.sd[qd].triplets() {
                let b = Cell::new(qd, row);
                let a = Cell::new(qd, col);
                let v = k.min_vertex(sub.bottom(b));
                let block = f.transport(k, k.min_vertex(a), v);
                push_block(&mut t, row * d, col * d, &block, sign);
            }
            SparseMatrix::from_triplets(kp.count(qd) * d, k.count(qd) * d, t)
        })
        .collect()
}
