//! Integral first homology.
//!
//! 1-cycles are coordinatized by their coefficients on the edges outside a
//! spanning tree; triangle boundaries give the relations. Relations with a
//! unit entry are eliminated sparsely (each one removes a generator); what is
//! left goes through a dense Smith normal form.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::cw::paths::EdgeChain;
use crate::cw::{spanning_tree, Cell, SimplicialComplex};
use crate::error::{Error, Result};

/// Coordinates in `Z^r ⊕ ⊕ Z/d_i`: `coords[i]` is reduced mod `moduli[i]`
/// when the modulus is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct H1Class {
    pub coords: Vec<i64>,
    pub moduli: Vec<i64>,
}

impl H1Class {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

struct UnitPivot {
    gen: usize,
    value: i64,
    column: Vec<(usize, i64)>,
}

pub struct IntegralH1 {
    n_edges: usize,
    gen_of_edge: Vec<Option<usize>>,
    pivots: Vec<UnitPivot>,
    remaining: Vec<usize>,
    /// Left transform of the dense Smith form, rows indexed like `moduli`.
    left: Vec<Vec<i64>>,
    /// Invariant factors after dropping units; 0 means a free summand.
    moduli: Vec<i64>,
}

fn ov() -> Error {
    Error::Internal("integer overflow in H1 computation".into())
}

impl IntegralH1 {
    pub fn new(k: &SimplicialComplex) -> Result<Self> {
        if !k.is_connected() {
            return Err(Error::Structural("complex is not connected".into()));
        }
        let tree = spanning_tree(k, 0);
        let n_edges = k.count(1);
        let mut gen_of_edge = vec![None; n_edges];
        let mut n_gens = 0;
        for e in 0..n_edges {
            if !tree.in_tree[e] {
                gen_of_edge[e] = Some(n_gens);
                n_gens += 1;
            }
        }
        // relations: columns of ∂_2 restricted to non-tree edges
        let mut cols: Vec<BTreeMap<usize, i64>> = Vec::new();
        if k.dim() >= 2 {
            for t in 0..k.count(2) {
                let mut col = BTreeMap::new();
                for i in 0..3 {
                    let f = k.face(Cell::new(2, t), i);
                    if let Some(g) = gen_of_edge[f.idx] {
                        *col.entry(g).or_insert(0) += if i % 2 == 0 { 1 } else { -1 };
                    }
                }
                col.retain(|_, v| *v != 0);
                if !col.is_empty() {
                    cols.push(col);
                }
            }
        }
        let mut rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n_gens];
        for (c, col) in cols.iter().enumerate() {
            for &r in col.keys() {
                rows[r].insert(c);
            }
        }
        let mut alive_gen = vec![true; n_gens];
        let mut keys: BTreeSet<(usize, usize)> = cols.iter().enumerate().map(|(c, col)| (col.len(), c)).collect();
        let mut pivots = Vec::new();
        loop {
            // first column (fewest entries) holding a unit, unit with fewest row entries
            let mut chosen = None;
            for &(_, c) in &keys {
                let best = cols[c]
                    .iter()
                    .filter(|(_, v)| v.abs() == 1)
                    .min_by_key(|(r, _)| (rows[**r].len(), **r))
                    .map(|(r, v)| (*r, *v));
                if let Some((r, v)) = best {
                    chosen = Some((r, c, v));
                    break;
                }
            }
            let Some((r, c, u)) = chosen else { break };
            let column: Vec<(usize, i64)> = cols[c].iter().filter(|(g, _)| **g != r).map(|(g, v)| (*g, *v)).collect();
            let others: Vec<usize> = rows[r].iter().copied().filter(|&c2| c2 != c).collect();
            for c2 in others {
                let f = cols[c2][&r] * u; // u = ±1 so 1/u = u
                keys.remove(&(cols[c2].len(), c2));
                for (g, v) in &column {
                    let e = cols[c2].entry(*g).or_insert(0);
                    *e = e.checked_sub(v.checked_mul(f).ok_or_else(ov)?).ok_or_else(ov)?;
                    if *e == 0 {
                        cols[c2].remove(g);
                        rows[*g].remove(&c2);
                    } else {
                        rows[*g].insert(c2);
                    }
                }
                cols[c2].remove(&r);
                if !cols[c2].is_empty() {
                    keys.insert((cols[c2].len(), c2));
                }
            }
            keys.remove(&(cols[c].len(), c));
            for g in cols[c].keys() {
                rows[*g].remove(&c);
            }
            cols[c].clear();
            rows[r].clear();
            alive_gen[r] = false;
            pivots.push(UnitPivot { gen: r, value: u, column });
        }
        let remaining: Vec<usize> = (0..n_gens).filter(|&g| alive_gen[g]).collect();
        let pos: BTreeMap<usize, usize> = remaining.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let rels: Vec<Vec<i64>> = keys
            .iter()
            .map(|&(_, c)| {
                let mut v = vec![0; remaining.len()];
                for (g, x) in &cols[c] {
                    v[pos[g]] = *x;
                }
                v
            })
            .collect();
        let (left, diag) = smith_left(remaining.len(), &rels)?;
        Ok(IntegralH1 { n_edges, gen_of_edge, pivots, remaining, left, moduli: diag })
    }

    pub fn rank(&self) -> usize {
        self.moduli.iter().filter(|&&d| d == 0).count()
    }

    /// Invariant factors `> 1` followed by zeros for free summands.
    pub fn presentation(&self) -> Vec<i64> {
        self.moduli.iter().copied().filter(|&d| d != 1).collect()
    }

    pub fn class_of(&self, k: &SimplicialComplex, z: &EdgeChain) -> Result<H1Class> {
        if z.0.len() != self.n_edges {
            return Err(Error::Structural("edge chain has the wrong length".into()));
        }
        if !z.is_cycle(k) {
            return Err(Error::Structural("chain is not a cycle".into()));
        }
        let n_gens = self.gen_of_edge.iter().flatten().count();
        let mut v = vec![0i64; n_gens];
        for (e, &c) in z.0.iter().enumerate() {
            if let Some(g) = self.gen_of_edge[e] {
                v[g] = c;
            }
        }
        for p in &self.pivots {
            let a = v[p.gen];
            if a == 0 {
                continue;
            }
            let a = a * p.value;
            for (g, x) in &p.column {
                v[*g] = v[*g].checked_sub(a.checked_mul(*x).ok_or_else(ov)?).ok_or_else(ov)?;
            }
            v[p.gen] = 0;
        }
        let w: Vec<i64> = self.remaining.iter().map(|&g| v[g]).collect();
        let mut coords = Vec::new();
        let mut moduli = Vec::new();
        for (row, &d) in self.left.iter().zip(&self.moduli) {
            if d == 1 {
                continue;
            }
            let mut s: i64 = 0;
            for (a, b) in row.iter().zip(&w) {
                s = s.checked_add(a.checked_mul(*b).ok_or_else(ov)?).ok_or_else(ov)?;
            }
            coords.push(if d == 0 { s } else { s.rem_euclid(d) });
            moduli.push(d);
        }
        Ok(H1Class { coords, moduli })
    }

    pub fn classes_equal(&self, k: &SimplicialComplex, a: &EdgeChain, b: &EdgeChain) -> Result<bool> {
        let mut d = a.clone();
        d.add_scaled(b, -1);
        Ok(self.class_of(k, &d)?.is_zero())
    }
}

/// Smith form of the `n × r` matrix whose columns are `rels`. Returns a
/// unimodular `U` and the diagonal `d` (length `n`, zeros for free rows) with
/// `U · R · V = diag(d)`.
fn smith_left(n: usize, rels: &[Vec<i64>]) -> Result<(Vec<Vec<i64>>, Vec<i64>)> {
    let r = rels.len();
    let mut a: Vec<Vec<i64>> = (0..n).map(|i| rels.iter().map(|c| c[i]).collect()).collect();
    let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let mut diag = vec![0i64; n];
    let add_row = |m: &mut Vec<Vec<i64>>, dst: usize, src: usize, f: i64| -> Result<()> {
        for j in 0..m[dst].len() {
            m[dst][j] = m[dst][j].checked_add(f.checked_mul(m[src][j]).ok_or_else(ov)?).ok_or_else(ov)?;
        }
        Ok(())
    };
    let mut t = 0;
    while t < n.min(r) {
        // smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..n {
            for j in t..r {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t];
            let mut dirty = false;
            for i in t + 1..n {
                let f = a[i][t] / p;
                if f != 0 {
                    add_row(&mut a, i, t, -f)?;
                    add_row(&mut u, i, t, -f)?;
                }
                if a[i][t] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..r {
                let f = a[t][j] / p;
                if f != 0 {
                    for row in a.iter_mut() {
                        row[j] = row[j].checked_sub(f.checked_mul(row[t]).ok_or_else(ov)?).ok_or_else(ov)?;
                    }
                }
                if a[t][j] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // divisibility of the trailing block
                let bad = (t + 1..n).find(|&i| (t + 1..r).any(|j| a[i][j] % p != 0));
                match bad {
                    Some(i) => {
                        add_row(&mut a, t, i, 1)?;
                        add_row(&mut u, t, i, 1)?;
                        continue;
                    }
                    None => break,
                }
            }
            // move the smallest remaining entry of row/column t to the corner
            let mut best = (t, t);
            for i in t..n {
                if a[i][t] != 0 && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..r {
                if a[t][j] != 0 && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            u.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        if a[t][t] < 0 {
            for x in a[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
        diag[t] = a[t][t];
        t += 1;
    }
    Ok((u, diag))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cw::{circle, simplex_boundary, staircase_product};

    #[test]
    fn smith_small() {
        // Z^2 / <(2,0),(0,3)> ≅ Z/6 after normalizing
        let (u, d) = smith_left(2, &[vec![2, 0], vec![0, 3]]).unwrap();
        let mut nontrivial: Vec<i64> = d.iter().copied().filter(|&x| x != 1).collect();
        nontrivial.sort();
        assert_eq!(nontrivial, vec![6]);
        assert_eq!(u.len(), 2);
    }

    #[test]
    fn circle_sphere_torus() {
        let c = circle(5).unwrap();
        let h = IntegralH1::new(&c).unwrap();
        assert_eq!(h.presentation(), vec![0]);
        let z = EdgeChain::from_vertex_walk(&c, &[0, 1, 2, 3, 4, 0]).unwrap();
        assert_eq!(h.class_of(&c, &z).unwrap().coords, vec![1]);

        let s = simplex_boundary(4).unwrap();
        let h = IntegralH1::new(&s).unwrap();
        assert!(h.presentation().is_empty());
        let z = EdgeChain::from_vertex_walk(&s, &[0, 1, 2, 0]).unwrap();
        assert!(h.class_of(&s, &z).unwrap().is_zero());

        let c3 = circle(3).unwrap();
        let t = staircase_product(&c3, &c3).unwrap();
        let h = IntegralH1::new(&t).unwrap();
        assert_eq!(h.presentation(), vec![0, 0]);
        // vertex (a,b) = 3a+b; loops a ↦ (a,0) and b ↦ (0,b)
        let za = EdgeChain::from_vertex_walk(&t, &[0, 3, 6, 0]).unwrap();
        let zb = EdgeChain::from_vertex_walk(&t, &[0, 1, 2, 0]).unwrap();
        let ca = h.class_of(&t, &za).unwrap().coords;
        let cb = h.class_of(&t, &zb).unwrap().coords;
        assert_ne!(ca[0] * cb[1] - ca[1] * cb[0], 0);
        let nonc = EdgeChain::from_vertex_walk(&t, &[0, 1]).unwrap();
        assert!(h.class_of(&t, &nonc).is_err());
    }
}
