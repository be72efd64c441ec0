//! Combinatorial Euler structures stored as spiders: one path from a base
//! vertex into every cell.
//!
//! The Euler chain of a spider is `Σ_a (-1)^{|a|} β_a`. Classes are compared
//! through the integral first homology of the complex.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cw::h1::{H1Class, IntegralH1};
use crate::cw::paths::{CombPath, EdgeChain, Step};
use crate::cw::{spanning_tree, Cell, SimplicialComplex, Subdivision};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerStructure {
    pub base: usize,
    /// `paths[q][i]` runs from the base vertex to the tag of cell `(q, i)`.
    pub paths: Vec<Vec<CombPath>>,
}

fn sign(q: usize) -> i64 {
    if q % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The spider built from the breadth-first tree at `x`.
pub fn canonical_structure(k: &SimplicialComplex, x: usize) -> Result<EulerStructure> {
    if x >= k.n_vertices() {
        return Err(Error::Structural(format!("basepoint {x} is not a vertex")));
    }
    if !k.is_connected() {
        return Err(Error::Structural("complex is not connected".into()));
    }
    if k.euler_char() != 0 {
        return Err(Error::NonzeroEuler(k.euler_char()));
    }
    let tree = spanning_tree(k, x);
    let to_vertex: Vec<CombPath> =
        (0..k.n_vertices()).map(|v| CombPath::along_vertices(k, &tree.path_to(v)).expect("tree edges")).collect();
    let paths = (0..=k.dim())
        .map(|qd| {
            (0..k.count(qd))
                .map(|i| {
                    let a = Cell::new(qd, i);
                    let v = k.min_vertex(a);
                    let mut p = to_vertex[v].clone();
                    p.steps.push(Step { carrier: a, from: Cell::new(0, v), to: a });
                    p
                })
                .collect()
        })
        .collect();
    Ok(EulerStructure { base: x, paths })
}

/// A closed path at `x` whose retraction is the cycle `h`.
pub fn loop_for_cycle(k: &SimplicialComplex, x: usize, h: &EdgeChain) -> Result<CombPath> {
    if h.0.len() != k.count(1) || !h.is_cycle(k) {
        return Err(Error::Structural("offset is not a 1-cycle".into()));
    }
    let tree = spanning_tree(k, x);
    let mut walk_steps = Vec::new();
    for (e, c) in h.sparse() {
        let s = k.simplex(Cell::new(1, e));
        let (u, v) = if c > 0 { (s[0], s[1]) } else { (s[1], s[0]) };
        let mut walk = tree.path_to(u);
        let mut back = tree.path_to(v);
        back.reverse();
        walk.extend(back);
        let piece = CombPath::along_vertices(k, &walk)?;
        for _ in 0..c.unsigned_abs() {
            walk_steps.extend_from_slice(&piece.steps);
        }
    }
    Ok(CombPath::new(walk_steps))
}

impl EulerStructure {
    pub fn path(&self, a: Cell) -> &CombPath {
        &self.paths[a.dim][a.idx]
    }

    pub fn validate(&self, k: &SimplicialComplex) -> Result<()> {
        if self.paths.len() != k.dim() + 1 || (0..=k.dim()).any(|q| self.paths[q].len() != k.count(q)) {
            return Err(Error::Structural("Euler structure does not cover every cell".into()));
        }
        for a in k.cells() {
            let p = self.path(a);
            p.validate(k)?;
            if p.start() != Some(Cell::new(0, self.base)) || p.end() != Some(a) {
                return Err(Error::Structural(format!("path for {a:?} must run from the base vertex to the cell")));
            }
        }
        Ok(())
    }

    /// `∂(Σ_a (-1)^{|a|} β_a)` at the tag level.
    pub fn chain_boundary(&self) -> BTreeMap<Cell, i64> {
        let mut acc = BTreeMap::new();
        for (qd, ps) in self.paths.iter().enumerate() {
            for p in ps {
                p.tag_boundary(&mut acc, sign(qd));
            }
        }
        acc.retain(|_, c| *c != 0);
        acc
    }

    /// Checks that the Euler chain has boundary `Σ_a (-1)^{|a|} ā`.
    pub fn boundary_identity_holds(&self, k: &SimplicialComplex) -> bool {
        let mut expect: BTreeMap<Cell, i64> = k.cells().map(|a| (a, sign(a.dim))).collect();
        expect.retain(|_, c| *c != 0);
        self.chain_boundary() == expect
    }

    pub fn retracted_chain(&self, k: &SimplicialComplex) -> EdgeChain {
        let mut z = EdgeChain::zero(k);
        for (qd, ps) in self.paths.iter().enumerate() {
            for p in ps {
                z.add_scaled(&p.retract(k), sign(qd));
            }
        }
        z
    }

    /// `h · ξ`: the loop for `h` is prepended to the path of the first 0-cell.
    pub fn act(&self, k: &SimplicialComplex, h: &EdgeChain) -> Result<EulerStructure> {
        let lp = loop_for_cycle(k, self.base, h)?;
        let mut out = self.clone();
        out.paths[0][0] = lp.then(&self.paths[0][0]);
        Ok(out)
    }

    /// The same structure seen from another base vertex.
    pub fn reroot(&self, k: &SimplicialComplex, y: usize) -> Result<EulerStructure> {
        if y >= k.n_vertices() {
            return Err(Error::Structural(format!("basepoint {y} is not a vertex")));
        }
        let mut walk = spanning_tree(k, self.base).path_to(y);
        walk.reverse();
        let lead = CombPath::along_vertices(k, &walk)?;
        let paths = self.paths.iter().map(|ps| ps.iter().map(|p| lead.clone().then(p)).collect()).collect();
        Ok(EulerStructure { base: y, paths })
    }

    /// The cycle `Σ_a (-1)^{|a|} (β_a - β'_a)` retracted to edges.
    pub fn diff_cycle(&self, k: &SimplicialComplex, other: &EulerStructure) -> Result<EdgeChain> {
        if self.base != other.base {
            return Err(Error::Structural(format!(
                "structures have basepoints {} and {}; reroot one first",
                self.base, other.base
            )));
        }
        let mut z = self.retracted_chain(k);
        z.add_scaled(&other.retracted_chain(k), -1);
        debug_assert!(z.is_cycle(k));
        Ok(z)
    }

    pub fn diff_class(&self, k: &SimplicialComplex, h1: &IntegralH1, other: &EulerStructure) -> Result<H1Class> {
        h1.class_of(k, &self.diff_cycle(k, other)?)
    }

    /// Representative of `c(ξ)`: the retraction of `(1 - (-1)^m) ξ - W`.
    pub fn char_cycle(&self, k: &SimplicialComplex) -> Result<EdgeChain> {
        let m = k.dim();
        if self.paths.len() != m + 1 {
            return Err(Error::Structural("structure belongs to another complex".into()));
        }
        let mut z = w_chain(k).retract(k);
        z = z.scaled(-1);
        if m % 2 == 1 {
            z.add_scaled(&self.retracted_chain(k), 2);
        }
        if !z.is_cycle(k) {
            return Err(Error::Internal("characteristic chain is not closed".into()));
        }
        Ok(z)
    }

    pub fn char_class(&self, k: &SimplicialComplex, h1: &IntegralH1) -> Result<(EdgeChain, H1Class)> {
        let z = self.char_cycle(k)?;
        let c = h1.class_of(k, &z)?;
        Ok((z, c))
    }

    /// `ξ* = c(ξ)^{-1} ξ`.
    pub fn involution(&self, k: &SimplicialComplex) -> Result<EulerStructure> {
        if k.dim() % 2 == 0 {
            return Err(Error::Unsupported("the involution is implemented for odd dimension only".into()));
        }
        self.act(k, &self.char_cycle(k)?.scaled(-1))
    }

    /// The corresponding structure on the barycentric subdivision.
    pub fn subdivide(&self, sub: &Subdivision) -> EulerStructure {
        let kp = &sub.complex;
        let vtag = |c: Cell| Cell::new(0, sub.vertex_of(c));
        let edge = |a: Cell, b: Cell| -> Cell {
            let (u, v) = (sub.vertex_of(a), sub.vertex_of(b));
            let (e, _) = kp.oriented_edge(u, v).expect("comparable cells span an edge of K'");
            Cell::new(1, e)
        };
        let lift = |p: &CombPath| -> CombPath {
            let mut steps = Vec::new();
            for s in &p.steps {
                let centre = vtag(s.carrier);
                if s.from != s.carrier {
                    steps.push(Step { carrier: edge(s.from, s.carrier), from: vtag(s.from), to: centre });
                }
                if s.to != s.carrier {
                    steps.push(Step { carrier: edge(s.carrier, s.to), from: centre, to: vtag(s.to) });
                }
            }
            CombPath::new(steps)
        };
        let lifted: Vec<Vec<CombPath>> = self.paths.iter().map(|ps| ps.iter().map(lift).collect()).collect();
        let paths = (0..=kp.dim())
            .map(|qd| {
                (0..kp.count(qd))
                    .map(|i| {
                        let b = Cell::new(qd, i);
                        let a = sub.carrier(b);
                        let mut p = lifted[a.dim][a.idx].clone();
                        p.steps.push(Step { carrier: b, from: vtag(a), to: b });
                        p
                    })
                    .collect()
            })
            .collect();
        EulerStructure { base: sub.vertex_of(Cell::new(0, self.base)), paths }
    }
}

/// `W = Σ_{a_0 < a_1} (-1)^{|a_0|+|a_1|} ⟨ā_0, ā_1⟩`, one step per proper
/// face pair, as a path chain.
pub fn w_chain(k: &SimplicialComplex) -> WChain {
    let mut terms = Vec::new();
    for a1 in k.cells() {
        let s = k.simplex(a1).to_vec();
        let n = s.len();
        for mask in 1u64..(1u64 << n) - 1 {
            let face: Vec<usize> = (0..n).filter(|j| mask >> j & 1 == 1).map(|j| s[j]).collect();
            let a0 = k.find(&face).expect("closed under faces");
            terms.push((sign(a0.dim + a1.dim), Step { carrier: a1, from: a0, to: a1 }));
        }
    }
    WChain { terms }
}

pub struct WChain {
    pub terms: Vec<(i64, Step)>,
}

impl WChain {
    pub fn retract(&self, k: &SimplicialComplex) -> EdgeChain {
        let mut z = EdgeChain::zero(k);
        for (c, s) in &self.terms {
            if let Some((e, sg)) = s.retract(k) {
                z.0[e] += c * sg;
            }
        }
        z
    }

    pub fn tag_boundary(&self) -> BTreeMap<Cell, i64> {
        let mut acc = BTreeMap::new();
        for (c, s) in &self.terms {
            *acc.entry(s.to).or_default() += c;
            *acc.entry(s.from).or_default() -= c;
        }
        acc.retain(|_, c| *c != 0);
        acc
    }

    /// Checks `∂W = (1 - (-1)^m) Σ_a (-1)^{|a|} ā`.
    pub fn boundary_identity_holds(&self, k: &SimplicialComplex) -> bool {
        let f = if k.dim() % 2 == 1 { 2 } else { 0 };
        let mut expect: BTreeMap<Cell, i64> = k.cells().map(|a| (a, f * sign(a.dim))).collect();
        expect.retain(|_, c| *c != 0);
        self.tag_boundary() == expect
    }
}

/// Image of a 1-cycle under the subdivision chain map.
pub fn subdivide_cycle(sub: &Subdivision, h: &EdgeChain) -> EdgeChain {
    let mut z = EdgeChain::zero(&sub.complex);
    for (row, col, c) in sub.sd[1].triplets() {
        let c = crate::scalar::to_i64(c).expect("integer subdivision map");
        z.0[row] += c * h.0[col];
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cw::{barycentric, circle, simplex_boundary, staircase_product};

    fn gen(k: &SimplicialComplex) -> EdgeChain {
        let n = k.n_vertices();
        let walk: Vec<usize> = (0..n).chain([0]).collect();
        EdgeChain::from_vertex_walk(k, &walk).unwrap()
    }

    #[test]
    fn circle_spider() {
        let k = circle(3).unwrap();
        let xi = canonical_structure(&k, 0).unwrap();
        xi.validate(&k).unwrap();
        assert_eq!(xi.paths.iter().map(Vec::len).sum::<usize>(), 6);
        assert!(xi.boundary_identity_holds(&k));
        assert!(canonical_structure(&simplex_boundary(3).unwrap(), 0).is_err());
        let two = SimplicialComplex::from_facets(4, &[vec![0, 1], vec![2, 3]]);
        if let Ok(two) = two {
            assert!(canonical_structure(&two, 0).is_err());
        }
    }

    #[test]
    fn circle_char_class_by_hand() {
        // 2ξ0 retracts to 2·(0→2); W retracts to (0→1)+(0→2)+(1→2); their
        // difference is minus the loop 0→1→2→0.
        let k = circle(3).unwrap();
        let h1 = IntegralH1::new(&k).unwrap();
        let xi = canonical_structure(&k, 0).unwrap();
        let (z, c) = xi.char_class(&k, &h1).unwrap();
        assert_eq!(z, gen(&k).scaled(-1));
        assert_eq!(c.coords, vec![-1]);
        assert!(w_chain(&k).boundary_identity_holds(&k));
    }

    #[test]
    fn torsor_algebra() {
        let k = circle(4).unwrap();
        let h1 = IntegralH1::new(&k).unwrap();
        let g = gen(&k);
        let xi = canonical_structure(&k, 0).unwrap();
        assert!(xi.diff_class(&k, &h1, &xi).unwrap().is_zero());
        let moved = xi.act(&k, &g.scaled(2)).unwrap();
        assert!(moved.boundary_identity_holds(&k));
        assert_eq!(moved.diff_class(&k, &h1, &xi).unwrap().coords, vec![2]);
        let twice = xi.act(&k, &g).unwrap().act(&k, &g.scaled(-3)).unwrap();
        assert_eq!(twice.diff_class(&k, &h1, &xi).unwrap().coords, vec![-2]);
        let c0 = xi.char_class(&k, &h1).unwrap().1.coords[0];
        let c2 = moved.char_class(&k, &h1).unwrap().1.coords[0];
        assert_eq!(c2, c0 + 4);
        let star = xi.involution(&k).unwrap();
        assert_eq!(star.char_class(&k, &h1).unwrap().1.coords[0], -c0);
        let back = star.involution(&k).unwrap();
        assert!(back.diff_class(&k, &h1, &xi).unwrap().is_zero());
        let rerooted = xi.reroot(&k, 2).unwrap();
        rerooted.validate(&k).unwrap();
        assert!(xi.diff_class(&k, &h1, &rerooted).is_err());
        assert!(rerooted.reroot(&k, 0).unwrap().diff_class(&k, &h1, &xi).unwrap().is_zero());
    }

    #[test]
    fn subdivision_transfer() {
        let k = circle(3).unwrap();
        let sub = barycentric(&k).unwrap();
        let kp = &sub.complex;
        let h1p = IntegralH1::new(kp).unwrap();
        let xi = canonical_structure(&k, 0).unwrap();
        let xip = xi.subdivide(&sub);
        xip.validate(kp).unwrap();
        assert!(xip.boundary_identity_holds(kp));
        let g = gen(&k);
        let lhs = xi.act(&k, &g).unwrap().subdivide(&sub);
        let rhs = xip.act(kp, &subdivide_cycle(&sub, &g)).unwrap();
        assert!(lhs.diff_class(kp, &h1p, &rhs).unwrap().is_zero());
    }

    #[test]
    fn torus_shape() {
        let c = circle(3).unwrap();
        let t = staircase_product(&c, &c).unwrap();
        let xi = canonical_structure(&t, 0).unwrap();
        xi.validate(&t).unwrap();
        assert_eq!(xi.paths.iter().map(Vec::len).collect::<Vec<_>>(), vec![9, 27, 18]);
        assert!(xi.boundary_identity_holds(&t));
        assert!(w_chain(&t).boundary_identity_holds(&t));
    }
}
