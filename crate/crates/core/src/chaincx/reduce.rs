//! Sparse exact elimination of a whole chain complex.
//!
//! A pivot at entry `(i, j)` of `d_q` (row `i` in `C_{q-1}`, column `j` in
//! `C_q`) changes bases on both sides: the other columns of `d_q` are cleared
//! against column `j` (a unipotent change of the `C_q` basis), and row `i`'s
//! basis vector of `C_{q-1}` is replaced by `d(e_j)`. Row `j` of `d_{q+1}` and
//! column `i` of `d_{q-1}` vanish as a consequence of `d∘d = 0`, so they are
//! simply dropped. Cells never touched by a pivot are the homology
//! representatives.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::scalar::{height, Q};
use crate::sparse::SparseMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PivotRule {
    /// Markowitz-style: least fill first, unit entries preferred.
    #[default]
    Sparse,
    /// Lexicographically smallest column, then smallest row, degree by degree.
    Lexicographic,
}

#[derive(Clone, Debug)]
pub struct Pivot {
    /// Row index, a cell of `C_{q-1}`.
    pub row: usize,
    /// Column index, a cell of `C_q`.
    pub col: usize,
    pub value: Q,
    /// Column `col` at pivot time, without the pivot row.
    pub col_entries: Vec<(usize, Q)>,
    /// Row `row` at pivot time, without the pivot column.
    pub row_entries: Vec<(usize, Q)>,
}

#[derive(Clone, Debug)]
pub struct Elimination {
    pub dims: Vec<usize>,
    /// `pivots[q]` are the pivots taken in `d_q`, in order; `pivots[0]` is empty.
    pub pivots: Vec<Vec<Pivot>>,
    /// Cells of each degree untouched by any pivot, ascending.
    pub survivors: Vec<Vec<usize>>,
}

struct Work {
    cols: Vec<BTreeMap<usize, Q>>,
    rows: Vec<BTreeSet<usize>>,
}

struct Engine {
    work: Vec<Work>,
    alive: Vec<Vec<bool>>,
    track: bool,
    col_keys: BTreeSet<(usize, usize, usize)>,
    row_keys: BTreeSet<(usize, usize, usize)>,
}

impl Engine {
    fn new(dims: &[usize], boundary: &[SparseMatrix], track: bool) -> Self {
        let mut work = vec![Work { cols: Vec::new(), rows: Vec::new() }];
        for q in 1..dims.len() {
            let d = &boundary[q];
            let mut cols = vec![BTreeMap::new(); dims[q]];
            let mut rows = vec![BTreeSet::new(); dims[q - 1]];
            for (r, c, v) in d.triplets() {
                cols[c].insert(r, v.clone());
                rows[r].insert(c);
            }
            work.push(Work { cols, rows });
        }
        let mut e = Engine {
            work,
            alive: dims.iter().map(|&n| vec![true; n]).collect(),
            track,
            col_keys: BTreeSet::new(),
            row_keys: BTreeSet::new(),
        };
        if track {
            for q in 1..dims.len() {
                for (c, col) in e.work[q].cols.iter().enumerate() {
                    if !col.is_empty() {
                        e.col_keys.insert((col.len(), q, c));
                    }
                }
                for (r, row) in e.work[q].rows.iter().enumerate() {
                    if !row.is_empty() {
                        e.row_keys.insert((row.len(), q, r));
                    }
                }
            }
        }
        e
    }

    fn col_len_changed(&mut self, q: usize, c: usize, old: usize) {
        if !self.track {
            return;
        }
        let new = self.work[q].cols[c].len();
        if old != 0 {
            self.col_keys.remove(&(old, q, c));
        }
        if new != 0 {
            self.col_keys.insert((new, q, c));
        }
    }

    fn row_len_changed(&mut self, q: usize, r: usize, old: usize) {
        if !self.track {
            return;
        }
        let new = self.work[q].rows[r].len();
        if old != 0 {
            self.row_keys.remove(&(old, q, r));
        }
        if new != 0 {
            self.row_keys.insert((new, q, r));
        }
    }

    fn remove_entry(&mut self, q: usize, r: usize, c: usize) {
        let oc = self.work[q].cols[c].len();
        let or = self.work[q].rows[r].len();
        self.work[q].cols[c].remove(&r);
        self.work[q].rows[r].remove(&c);
        self.col_len_changed(q, c, oc);
        self.row_len_changed(q, r, or);
    }

    /// `d[r, c] -= delta`.
    fn sub_entry(&mut self, q: usize, r: usize, c: usize, delta: Q) {
        let oc = self.work[q].cols[c].len();
        let or = self.work[q].rows[r].len();
        let w = &mut self.work[q];
        match w.cols[c].get_mut(&r) {
            Some(v) => {
                *v -= delta;
                if v.is_zero() {
                    w.cols[c].remove(&r);
                    w.rows[r].remove(&c);
                }
            }
            None => {
                w.cols[c].insert(r, -delta);
                w.rows[r].insert(c);
            }
        }
        self.col_len_changed(q, c, oc);
        self.row_len_changed(q, r, or);
    }

    fn pivot(&mut self, q: usize, i: usize, j: usize) -> Pivot {
        let col: Vec<(usize, Q)> = self.work[q].cols[j].iter().map(|(r, v)| (*r, v.clone())).collect();
        let u = self.work[q].cols[j][&i].clone();
        let row_entries: Vec<(usize, Q)> = self.work[q].rows[i]
            .iter()
            .filter(|&&c| c != j)
            .map(|&c| (c, self.work[q].cols[c][&i].clone()))
            .collect();
        let col_entries: Vec<(usize, Q)> = col.into_iter().filter(|(r, _)| *r != i).collect();
        let inv = u.recip();
        for (c, dic) in &row_entries {
            let f = dic * &inv;
            for (r, v) in &col_entries {
                self.sub_entry(q, *r, *c, v * &f);
            }
        }
        for (c, _) in &row_entries {
            self.remove_entry(q, i, *c);
        }
        for (r, _) in &col_entries {
            self.remove_entry(q, *r, j);
        }
        self.remove_entry(q, i, j);
        if q + 1 < self.work.len() {
            let cs: Vec<usize> = self.work[q + 1].rows[j].iter().copied().collect();
            for c in cs {
                self.remove_entry(q + 1, j, c);
            }
        }
        if q >= 2 {
            let rs: Vec<usize> = self.work[q - 1].cols[i].keys().copied().collect();
            for r in rs {
                self.remove_entry(q - 1, r, i);
            }
        }
        self.alive[q][j] = false;
        self.alive[q - 1][i] = false;
        Pivot { row: i, col: j, value: u, col_entries, row_entries }
    }

    fn choose_sparse(&self) -> Option<(usize, usize, usize)> {
        const CANDIDATES: usize = 4;
        let mut best: Option<((usize, u64, usize, usize, usize), (usize, usize, usize))> = None;
        let mut consider = |cost: usize, v: &Q, q: usize, r: usize, c: usize| {
            let key = (cost, height(v), q, c, r);
            if best.as_ref().is_none_or(|(k, _)| key < *k) {
                best = Some((key, (q, r, c)));
            }
        };
        for &(n, q, c) in self.col_keys.iter().take(CANDIDATES) {
            for (r, v) in &self.work[q].cols[c] {
                let cost = (self.work[q].rows[*r].len() - 1) * (n - 1);
                consider(cost, v, q, *r, c);
            }
        }
        for &(n, q, r) in self.row_keys.iter().take(CANDIDATES) {
            for c in &self.work[q].rows[r] {
                let v = &self.work[q].cols[*c][&r];
                let cost = (n - 1) * (self.work[q].cols[*c].len() - 1);
                consider(cost, v, q, r, *c);
            }
        }
        best.map(|(_, p)| p)
    }
}

pub fn eliminate(dims: &[usize], boundary: &[SparseMatrix], rule: PivotRule) -> Elimination {
    let m = dims.len() - 1;
    let mut pivots: Vec<Vec<Pivot>> = vec![Vec::new(); m + 1];
    match rule {
        PivotRule::Sparse => {
            let mut e = Engine::new(dims, boundary, true);
            while let Some((q, i, j)) = e.choose_sparse() {
                let p = e.pivot(q, i, j);
                pivots[q].push(p);
            }
            finish(dims, pivots, e)
        }
        PivotRule::Lexicographic => {
            let mut e = Engine::new(dims, boundary, false);
            for q in 1..=m {
                for j in 0..dims[q] {
                    if let Some((&i, _)) = e.work[q].cols[j].iter().next() {
                        let p = e.pivot(q, i, j);
                        pivots[q].push(p);
                    }
                }
            }
            finish(dims, pivots, e)
        }
    }
}

fn finish(dims: &[usize], pivots: Vec<Vec<Pivot>>, e: Engine) -> Elimination {
    debug_assert!(e.work.iter().all(|w| w.cols.iter().all(BTreeMap::is_empty)));
    let survivors = e
        .alive
        .iter()
        .map(|a| a.iter().enumerate().filter(|(_, &x)| x).map(|(i, _)| i).collect())
        .collect();
    Elimination { dims: dims.to_vec(), pivots, survivors }
}

impl Elimination {
    pub fn hdims(&self) -> Vec<usize> {
        self.survivors.iter().map(Vec::len).collect()
    }

    pub fn rank(&self, q: usize) -> usize {
        self.pivots.get(q).map_or(0, Vec::len)
    }

    /// Coordinates of the class of a cycle `z ∈ C_q` in the survivor frame.
    pub fn class_coords(&self, q: usize, z: &[Q]) -> Vec<Q> {
        let mut v = z.to_vec();
        if q < self.pivots.len() - 1 {
            for p in &self.pivots[q + 1] {
                if v[p.row].is_zero() {
                    continue;
                }
                let a = &v[p.row] / &p.value;
                for (r, x) in &p.col_entries {
                    v[*r] -= &a * x;
                }
                v[p.row] = Q::zero();
            }
        }
        self.survivors[q].iter().map(|&s| v[s].clone()).collect()
    }

    /// Cycle representative of survivor `s` of degree `q`, in original
    /// coordinates: `e_s` plus a combination of the lifts `e_j`.
    pub fn representative(&self, q: usize, s: usize) -> Vec<Q> {
        let mut z = vec![Q::zero(); self.dims[q]];
        z[s] = Q::one();
        if q == 0 {
            return z;
        }
        let piv = &self.pivots[q];
        // history[c]: (pivot index, d[i,c]/u) for pivots whose row met column c
        let mut history: BTreeMap<usize, Vec<(usize, Q)>> = BTreeMap::new();
        for (k, p) in piv.iter().enumerate() {
            for (c, x) in &p.row_entries {
                history.entry(*c).or_default().push((k, x / &p.value));
            }
        }
        let mut coef: BTreeMap<usize, Q> = BTreeMap::new();
        if let Some(h) = history.get(&s) {
            for (k, a) in h {
                *coef.entry(*k).or_insert_with(Q::zero) -= a;
            }
        }
        while let Some((k, c)) = coef.pop_last() {
            if c.is_zero() {
                continue;
            }
            let j = piv[k].col;
            z[j] += &c;
            if let Some(h) = history.get(&j) {
                for (k2, a) in h {
                    debug_assert!(*k2 < k);
                    *coef.entry(*k2).or_insert_with(Q::zero) -= &c * a;
                }
            }
        }
        z
    }

    /// `[d(b_{q+1}) ĥ_q b_q / ĉ_q]` for the standard basis `ĉ_q`.
    pub fn degree_det(&self, q: usize) -> Q {
        let mut order: Vec<usize> = Vec::with_capacity(self.dims[q]);
        let mut det = Q::one();
        if q + 1 < self.pivots.len() {
            for p in &self.pivots[q + 1] {
                order.push(p.row);
                det *= &p.value;
            }
        }
        order.extend(self.survivors[q].iter().copied());
        order.extend(self.pivots[q].iter().map(|p| p.col));
        if permutation_is_odd(&order) {
            -det
        } else {
            det
        }
    }

    /// `[c:h] = Π_q [d(b_{q+1}) ĥ_q b_q / ĉ_q]^{(-1)^{q+1}}`.
    pub fn bracket(&self) -> Q {
        (0..self.dims.len())
            .map(|q| {
                let d = self.degree_det(q);
                if q % 2 == 0 {
                    d.recip()
                } else {
                    d
                }
            })
            .product()
    }
}

/// Parity of the permutation `k ↦ order[k]`.
pub fn permutation_is_odd(order: &[usize]) -> bool {
    let n = order.len();
    let mut seen = vec![false; n];
    let mut odd = false;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = order[k];
            len += 1;
        }
        if len % 2 == 0 {
            odd = !odd;
        }
    }
    odd
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_parity() {
        assert!(!permutation_is_odd(&[0, 1, 2]));
        assert!(permutation_is_odd(&[1, 0, 2]));
        assert!(!permutation_is_odd(&[1, 2, 0]));
        assert!(!permutation_is_odd(&[3, 2, 1, 0]));
    }
}
