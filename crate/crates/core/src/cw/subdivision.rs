//! Barycentric subdivision as the order complex of the face poset.

use crate::cw::{Cell, SimplicialComplex};
use crate::error::Result;
use crate::scalar::q;
use crate::sparse::SparseMatrix;

pub struct Subdivision {
    pub complex: SimplicialComplex,
    /// `cell_of_vertex[v]`: the simplex of `K` whose barycenter is vertex `v`.
    pub cell_of_vertex: Vec<Cell>,
    /// Offset of each dimension in the vertex numbering of `K'`.
    offsets: Vec<usize>,
    /// `sd[q]`: `C_q(K) → C_q(K')`, integer entries.
    pub sd: Vec<SparseMatrix>,
}

impl Subdivision {
    pub fn vertex_of(&self, c: Cell) -> usize {
        self.offsets[c.dim] + c.idx
    }

    /// Top element of the flag.
    pub fn carrier(&self, b: Cell) -> Cell {
        let s = self.complex.simplex(b);
        self.cell_of_vertex[*s.last().expect("nonempty")]
    }

    /// Bottom element of the flag.
    pub fn bottom(&self, b: Cell) -> Cell {
        self.cell_of_vertex[self.complex.simplex(b)[0]]
    }
}

/// `K'` with vertices ordered by (dimension, index) and simplices the flags.
pub fn barycentric(k: &SimplicialComplex) -> Result<Subdivision> {
    let mut offsets = Vec::new();
    let mut cell_of_vertex = Vec::new();
    for q in 0..=k.dim() {
        offsets.push(cell_of_vertex.len());
        cell_of_vertex.extend((0..k.count(q)).map(|i| Cell::new(q, i)));
    }
    let vid = |c: Cell| offsets[c.dim] + c.idx;
    // flags with top element a, built from those of every proper face
    let mut flags_top: Vec<Vec<Vec<Vec<usize>>>> = Vec::new();
    let mut facets = Vec::new();
    for q in 0..=k.dim() {
        let mut level = Vec::new();
        for i in 0..k.count(q) {
            let a = Cell::new(q, i);
            let s = k.simplex(a);
            let mut fl = vec![vec![vid(a)]];
            for mask in 1u64..(1u64 << s.len()) - 1 {
                let face: Vec<usize> = (0..s.len()).filter(|j| mask >> j & 1 == 1).map(|j| s[j]).collect();
                let b = k.find(&face).expect("face");
                for f in &flags_top[b.dim][b.idx] {
                    let mut g: Vec<usize> = f.clone();
                    g.push(vid(a));
                    fl.push(g);
                }
            }
            facets.extend(fl.iter().filter(|f| f.len() == q + 1).cloned());
            level.push(fl);
        }
        flags_top.push(level);
    }
    let complex = SimplicialComplex::from_facets(cell_of_vertex.len(), &facets)?;
    let mut sd = Vec::new();
    for qd in 0..=k.dim() {
        let mut t = Vec::new();
        for i in 0..k.count(qd) {
            for (flag, sign) in full_flags(k, Cell::new(qd, i)) {
                let verts: Vec<usize> = flag.iter().map(|&c| vid(c)).collect();
                let b = complex.find(&verts).expect("flag is a simplex");
                t.push((b.idx, i, q(sign)));
            }
        }
        sd.push(SparseMatrix::from_triplets(complex.count(qd), k.count(qd), t));
    }
    Ok(Subdivision { complex, cell_of_vertex, offsets, sd })
}

/// Maximal flags `a_0 ⊂ … ⊂ a_q = a` with their signs in `sd(a)`, from
/// `sd(a) = Σ_i (-1)^i cone(ā, sd(∂_i a))` and `cone(ā, σ) = (-1)^q [σ, ā]`.
fn full_flags(k: &SimplicialComplex, a: Cell) -> Vec<(Vec<Cell>, i64)> {
    if a.dim == 0 {
        return vec![(vec![a], 1)];
    }
    let mut out = Vec::new();
    for i in 0..=a.dim {
        let f = k.face(a, i);
        let s = if (i + a.dim) % 2 == 0 { 1 } else { -1 };
        for (mut flag, sg) in full_flags(k, f) {
            flag.push(a);
            out.push((flag, sg * s));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cw::{circle, simplex_boundary};

    #[test]
    fn circle_becomes_hexagon() {
        let k = circle(3).unwrap();
        let s = barycentric(&k).unwrap();
        assert_eq!(s.complex.f_vector(), vec![6, 6]);
        assert!(s.complex.orient_manifold().is_ok());
        // sd[v,w] = [v̄, ē] − [w̄, ē]
        let e = k.find(&[0, 1]).unwrap();
        let col = s.sd[1].col(e.idx);
        assert_eq!(col.len(), 2);
        let ebar = s.vertex_of(e);
        let b0 = s.complex.find(&[0, ebar]).unwrap();
        let b1 = s.complex.find(&[1, ebar]).unwrap();
        assert_eq!(s.sd[1].get(b0.idx, e.idx), q(1));
        assert_eq!(s.sd[1].get(b1.idx, e.idx), q(-1));
    }

    #[test]
    fn sd_is_a_chain_map() {
        let k = simplex_boundary(3).unwrap();
        let s = barycentric(&k).unwrap();
        assert_eq!(s.complex.f_vector(), vec![14, 36, 24]);
        for qd in 1..=k.dim() {
            let lhs = s.complex.boundary_matrix(qd).mul(&s.sd[qd]);
            let rhs = s.sd[qd - 1].mul(&k.boundary_matrix(qd));
            assert_eq!(lhs, rhs);
        }
    }
}
