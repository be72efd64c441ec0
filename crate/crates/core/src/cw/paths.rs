//! Combinatorial paths between barycenters and their retraction to edge
//! chains.
//!
//! A tag is a face of a carrier simplex and stands for that face's
//! barycenter. A step moves between two tags inside one closed simplex, so
//! parallel transport along it is canonical. Retraction sends a step to the
//! oriented edge between the minimal vertices of its two tags.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cw::{Cell, SimplicialComplex};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub carrier: Cell,
    pub from: Cell,
    pub to: Cell,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CombPath {
    pub steps: Vec<Step>,
}

/// Integer coefficients on the edges of a complex, in edge order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EdgeChain(pub Vec<i64>);

impl EdgeChain {
    pub fn zero(k: &SimplicialComplex) -> Self {
        EdgeChain(vec![0; k.count(1)])
    }

    pub fn add_scaled(&mut self, other: &EdgeChain, s: i64) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += s * b;
        }
    }

    pub fn scaled(&self, s: i64) -> EdgeChain {
        EdgeChain(self.0.iter().map(|x| x * s).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn boundary(&self, k: &SimplicialComplex) -> Vec<i64> {
        let mut b = vec![0; k.n_vertices()];
        for (e, &c) in self.0.iter().enumerate() {
            if c != 0 {
                let s = k.simplex(Cell::new(1, e));
                b[s[1]] += c;
                b[s[0]] -= c;
            }
        }
        b
    }

    pub fn is_cycle(&self, k: &SimplicialComplex) -> bool {
        self.boundary(k).iter().all(|&x| x == 0)
    }

    /// The closed edge loop through the given vertices (last back to first
    /// is not implied).
    pub fn from_vertex_walk(k: &SimplicialComplex, walk: &[usize]) -> Result<EdgeChain> {
        let mut z = EdgeChain::zero(k);
        for w in walk.windows(2) {
            let (e, s) = k
                .oriented_edge(w[0], w[1])
                .ok_or_else(|| Error::Structural(format!("no edge between {} and {}", w[0], w[1])))?;
            z.0[e] += s;
        }
        Ok(z)
    }

    pub fn sparse(&self) -> Vec<(usize, i64)> {
        self.0.iter().enumerate().filter(|(_, &c)| c != 0).map(|(e, &c)| (e, c)).collect()
    }
}

impl Step {
    pub fn validate(&self, k: &SimplicialComplex) -> Result<()> {
        for c in [self.carrier, self.from, self.to] {
            if c.dim > k.dim() || c.idx >= k.count(c.dim) {
                return Err(Error::Structural(format!("cell {c:?} does not exist")));
            }
        }
        if !k.is_face(self.from, self.carrier) || !k.is_face(self.to, self.carrier) {
            return Err(Error::Structural(format!("step tags {self:?} lie outside their carrier")));
        }
        Ok(())
    }

    /// `(repvert(from), repvert(to))`.
    pub fn endpoints(&self, k: &SimplicialComplex) -> (usize, usize) {
        (k.min_vertex(self.from), k.min_vertex(self.to))
    }

    pub fn retract(&self, k: &SimplicialComplex) -> Option<(usize, i64)> {
        let (u, v) = self.endpoints(k);
        k.oriented_edge(u, v)
    }
}

impl CombPath {
    pub fn new(steps: Vec<Step>) -> Self {
        CombPath { steps }
    }

    pub fn start(&self) -> Option<Cell> {
        self.steps.first().map(|s| s.from)
    }

    pub fn end(&self) -> Option<Cell> {
        self.steps.last().map(|s| s.to)
    }

    pub fn validate(&self, k: &SimplicialComplex) -> Result<()> {
        for s in &self.steps {
            s.validate(k)?;
        }
        for w in self.steps.windows(2) {
            if w[0].to != w[1].from {
                return Err(Error::Structural(format!("path breaks between {:?} and {:?}", w[0], w[1])));
            }
        }
        Ok(())
    }

    pub fn then(mut self, other: &CombPath) -> CombPath {
        self.steps.extend_from_slice(&other.steps);
        self
    }

    pub fn reversed(&self) -> CombPath {
        CombPath {
            steps: self.steps.iter().rev().map(|s| Step { carrier: s.carrier, from: s.to, to: s.from }).collect(),
        }
    }

    pub fn retract(&self, k: &SimplicialComplex) -> EdgeChain {
        let mut z = EdgeChain::zero(k);
        for s in &self.steps {
            if let Some((e, sg)) = s.retract(k) {
                z.0[e] += sg;
            }
        }
        z
    }

    /// Tag-level boundary `end - start` accumulated stepwise.
    pub fn tag_boundary(&self, acc: &mut BTreeMap<Cell, i64>, coeff: i64) {
        for s in &self.steps {
            *acc.entry(s.to).or_default() += coeff;
            *acc.entry(s.from).or_default() -= coeff;
        }
    }

    /// Path through the vertices of `walk` along edges.
    pub fn along_vertices(k: &SimplicialComplex, walk: &[usize]) -> Result<CombPath> {
        let mut steps = Vec::new();
        for w in walk.windows(2) {
            let (e, _) = k
                .oriented_edge(w[0], w[1])
                .ok_or_else(|| Error::Structural(format!("no edge between {} and {}", w[0], w[1])))?;
            steps.push(Step { carrier: Cell::new(1, e), from: Cell::new(0, w[0]), to: Cell::new(0, w[1]) });
        }
        Ok(CombPath { steps })
    }
}

pub fn retract_chain(k: &SimplicialComplex, chain: &[(i64, CombPath)]) -> EdgeChain {
    let mut z = EdgeChain::zero(k);
    for (c, p) in chain {
        z.add_scaled(&p.retract(k), *c);
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cw::circle;

    #[test]
    fn retraction_rules() {
        let k = circle(3).unwrap();
        let v = Cell::new(0, 1);
        let e12 = k.find(&[1, 2]).unwrap();
        let stay = Step { carrier: v, from: v, to: v };
        assert_eq!(stay.retract(&k), None);
        // vertex 1 to the barycenter of {1,2}: both tags have min vertex 1
        assert_eq!(Step { carrier: e12, from: v, to: e12 }.retract(&k), None);
        // vertex 2 to the barycenter of {1,2}: 2 → 1 against the edge order
        let w = Cell::new(0, 2);
        assert_eq!(Step { carrier: e12, from: w, to: e12 }.retract(&k), Some((e12.idx, -1)));

        let lp = CombPath::along_vertices(&k, &[0, 1, 2, 0]).unwrap();
        lp.validate(&k).unwrap();
        let z = lp.retract(&k);
        assert!(z.is_cycle(&k));
        assert_eq!(z.0.iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![1, 1, 1]);
        let bad = Step { carrier: e12, from: Cell::new(0, 0), to: e12 };
        assert!(bad.validate(&k).is_err());
    }
}
