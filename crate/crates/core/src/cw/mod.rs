//! Simplicial and CW complexes.
//!
//! Simplices are sorted vertex lists; each dimension's list is sorted
//! lexicographically and a simplex is oriented by increasing vertex order.
//! The `i`-th face of `[v_0 … v_q]` omits `v_i` and has incidence `(-1)^i`.

pub mod cellular;
pub mod generators;
pub mod h1;
pub mod paths;
pub mod subdivision;

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::q;
use crate::sparse::SparseMatrix;

pub use cellular::CwComplex;
pub use generators::{circle, simplex_boundary, staircase_product};
pub use h1::{H1Class, IntegralH1};
pub use paths::{CombPath, EdgeChain, Step};
pub use subdivision::{barycentric, Subdivision};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub dim: usize,
    pub idx: usize,
}

impl Cell {
    pub fn new(dim: usize, idx: usize) -> Self {
        Cell { dim, idx }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    n_vertices: usize,
    simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl SimplicialComplex {
    /// The closure of the given simplices on vertices `0..n_vertices`.
    pub fn from_facets(n_vertices: usize, facets: &[Vec<usize>]) -> Result<Self> {
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = Vec::new();
        for f in facets {
            let mut s = f.clone();
            s.sort_unstable();
            if s.is_empty() {
                return Err(Error::Structural("empty simplex".into()));
            }
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Structural(format!("repeated vertex in simplex {f:?}")));
            }
            if let Some(&v) = s.iter().find(|&&v| v >= n_vertices) {
                return Err(Error::Structural(format!("vertex {v} out of range in simplex {f:?}")));
            }
            let k = s.len();
            for mask in 1u64..(1u64 << k) {
                let face: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                let d = face.len() - 1;
                if by_dim.len() <= d {
                    by_dim.resize(d + 1, BTreeSet::new());
                }
                by_dim[d].insert(face);
            }
        }
        for v in 0..n_vertices {
            if by_dim.is_empty() {
                by_dim.push(BTreeSet::new());
            }
            by_dim[0].insert(vec![v]);
        }
        let simplices: Vec<Vec<Vec<usize>>> = by_dim.into_iter().map(|s| s.into_iter().collect()).collect();
        let index = simplices
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        Ok(SimplicialComplex { n_vertices, simplices, index })
    }

    pub fn dim(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn count(&self, q: usize) -> usize {
        self.simplices.get(q).map_or(0, Vec::len)
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn euler_char(&self) -> i64 {
        self.simplices.iter().enumerate().map(|(q, l)| if q % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) }).sum()
    }

    pub fn simplex(&self, c: Cell) -> &[usize] {
        &self.simplices[c.dim][c.idx]
    }

    pub fn simplices(&self, q: usize) -> &[Vec<usize>] {
        &self.simplices[q]
    }

    pub fn find(&self, verts: &[usize]) -> Option<Cell> {
        let d = verts.len().checked_sub(1)?;
        self.index.get(d)?.get(verts).map(|&i| Cell::new(d, i))
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..=self.dim()).flat_map(move |q| (0..self.count(q)).map(move |i| Cell::new(q, i)))
    }

    pub fn min_vertex(&self, c: Cell) -> usize {
        self.simplex(c)[0]
    }

    /// The face of `c` omitting its `k`-th vertex.
    pub fn face(&self, c: Cell, k: usize) -> Cell {
        let s = self.simplex(c);
        let f: Vec<usize> = s.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, v)| *v).collect();
        self.find(&f).expect("closed under faces")
    }

    pub fn is_face(&self, face: Cell, of: Cell) -> bool {
        let (a, b) = (self.simplex(face), self.simplex(of));
        a.iter().all(|v| b.binary_search(v).is_ok())
    }

    /// Edge `{u, v}` and the sign of the oriented step `u → v`.
    pub fn oriented_edge(&self, u: usize, v: usize) -> Option<(usize, i64)> {
        if u == v {
            return None;
        }
        let (a, b, s) = if u < v { (u, v, 1) } else { (v, u, -1) };
        self.find(&[a, b]).map(|c| (c.idx, s))
    }

    /// Integer boundary `∂_q` as a sparse matrix over `Q`.
    pub fn boundary_matrix(&self, q: usize) -> SparseMatrix {
        let mut t = Vec::new();
        for (j, s) in self.simplices[q].iter().enumerate() {
            for k in 0..s.len() {
                let f = self.face(Cell::new(q, j), k);
                t.push((f.idx, j, q_sign(k)));
            }
        }
        SparseMatrix::from_triplets(self.count(q - 1), self.count(q), t)
    }

    /// Sorted neighbours of every vertex along edges.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n_vertices];
        if self.dim() >= 1 {
            for e in &self.simplices[1] {
                adj[e[0]].push(e[1]);
                adj[e[1]].push(e[0]);
            }
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.n_vertices == 0 {
            return false;
        }
        spanning_tree(self, 0).order.len() == self.n_vertices
    }

    /// Signs of top simplices forming a fundamental cycle, first one `+1`.
    pub fn orient_manifold(&self) -> Result<FundamentalCycle> {
        let m = self.dim();
        if m == 0 {
            return Err(Error::NotManifold("dimension 0".into()));
        }
        // faces of each top simplex, and the cofaces of each codim-1 simplex
        let mut cofaces: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.count(m - 1)];
        for j in 0..self.count(m) {
            for k in 0..=m {
                let f = self.face(Cell::new(m, j), k);
                cofaces[f.idx].push((j, k));
            }
        }
        for (f, cf) in cofaces.iter().enumerate() {
            if cf.len() != 2 {
                return Err(Error::NotManifold(format!(
                    "{}-simplex {:?} has {} cofaces",
                    m - 1,
                    self.simplices[m - 1][f],
                    cf.len()
                )));
            }
        }
        let mut signs = vec![0i8; self.count(m)];
        signs[0] = 1;
        let mut queue = VecDeque::from([0usize]);
        while let Some(j) = queue.pop_front() {
            for k in 0..=m {
                let f = self.face(Cell::new(m, j), k);
                for &(j2, k2) in &cofaces[f.idx] {
                    if j2 == j {
                        continue;
                    }
                    // ε_j (-1)^k + ε_j2 (-1)^k2 = 0
                    let want = -signs[j] * sign_i8(k) * sign_i8(k2);
                    if signs[j2] == 0 {
                        signs[j2] = want;
                        queue.push_back(j2);
                    } else if signs[j2] != want {
                        return Err(Error::NonOrientable);
                    }
                }
            }
        }
        if signs.contains(&0) {
            return Err(Error::NotManifold("top simplices are not strongly connected".into()));
        }
        Ok(FundamentalCycle { signs })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FundamentalCycle {
    pub signs: Vec<i8>,
}

impl FundamentalCycle {
    pub fn negated(&self) -> Self {
        FundamentalCycle { signs: self.signs.iter().map(|s| -s).collect() }
    }
}

fn sign_i8(k: usize) -> i8 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

fn q_sign(k: usize) -> crate::Q {
    q(sign_i8(k) as i64)
}

/// Breadth-first spanning tree with neighbours visited in increasing order.
#[derive(Clone, Debug)]
pub struct SpanningTree {
    pub root: usize,
    /// `parent[v] = (parent vertex, edge index)`; `None` for the root and
    /// unreachable vertices.
    pub parent: Vec<Option<(usize, usize)>>,
    pub order: Vec<usize>,
    pub in_tree: Vec<bool>,
}

pub fn spanning_tree(k: &SimplicialComplex, root: usize) -> SpanningTree {
    let adj = k.adjacency();
    let n = k.n_vertices();
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    let mut in_tree = vec![false; k.count(1)];
    let mut order = vec![root];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                let (e, _) = k.oriented_edge(u, w).expect("adjacent");
                parent[w] = Some((u, e));
                in_tree[e] = true;
                order.push(w);
                queue.push_back(w);
            }
        }
    }
    SpanningTree { root, parent, order, in_tree }
}

impl SpanningTree {
    /// Vertex sequence of the tree path from the root to `v`.
    pub fn path_to(&self, v: usize) -> Vec<usize> {
        let mut p = vec![v];
        let mut x = v;
        while let Some((u, _)) = self.parent[x] {
            p.push(u);
            x = u;
        }
        p.reverse();
        p
    }
}
