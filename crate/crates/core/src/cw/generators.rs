use crate::cw::SimplicialComplex;
use crate::error::{Error, Result};

/// The `n`-gon on vertices `0..n`.
pub fn circle(n: usize) -> Result<SimplicialComplex> {
    if n < 3 {
        return Err(Error::Structural(format!("circle needs n ≥ 3, got {n}")));
    }
    let edges: Vec<Vec<usize>> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
    SimplicialComplex::from_facets(n, &edges)
}

/// `∂Δ^k`, a PL `(k-1)`-sphere on `k+1` vertices.
pub fn simplex_boundary(k: usize) -> Result<SimplicialComplex> {
    if k < 2 {
        return Err(Error::Structural(format!("simplex boundary needs k ≥ 2, got {k}")));
    }
    let facets: Vec<Vec<usize>> = (0..=k).map(|skip| (0..=k).filter(|&v| v != skip).collect()).collect();
    SimplicialComplex::from_facets(k + 1, &facets)
}

/// Product triangulation by monotone staircases. Vertex `(a, b)` gets index
/// `a * |L| + b`, so the lexicographic vertex order is respected.
pub fn staircase_product(k: &SimplicialComplex, l: &SimplicialComplex) -> Result<SimplicialComplex> {
    let nl = l.n_vertices();
    let mut facets = Vec::new();
    for p in 0..=k.dim() {
        for s in k.simplices(p) {
            for r in 0..=l.dim() {
                for t in l.simplices(r) {
                    staircases(s, t, &mut |path| {
                        facets.push(path.iter().map(|&(a, b)| a * nl + b).collect());
                    });
                }
            }
        }
    }
    SimplicialComplex::from_facets(k.n_vertices() * nl, &facets)
}

fn staircases(s: &[usize], t: &[usize], emit: &mut dyn FnMut(&[(usize, usize)])) {
    fn go(s: &[usize], t: &[usize], i: usize, j: usize, acc: &mut Vec<(usize, usize)>, emit: &mut dyn FnMut(&[(usize, usize)])) {
        acc.push((s[i], t[j]));
        if i + 1 == s.len() && j + 1 == t.len() {
            emit(acc);
        }
        if i + 1 < s.len() {
            go(s, t, i + 1, j, acc, emit);
        }
        if j + 1 < t.len() {
            go(s, t, i, j + 1, acc, emit);
        }
        acc.pop();
    }
    go(s, t, 0, 0, &mut Vec::new(), emit);
}

/// Six-vertex real projective plane; used to exercise the non-orientable path.
pub fn projective_plane() -> SimplicialComplex {
    let facets = [
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 5],
        [0, 1, 5],
        [1, 2, 4],
        [2, 3, 5],
        [1, 3, 4],
        [1, 3, 5],
        [2, 4, 5],
    ];
    let facets: Vec<Vec<usize>> = facets.iter().map(|f| f.to_vec()).collect();
    SimplicialComplex::from_facets(6, &facets).expect("valid literal")
}
