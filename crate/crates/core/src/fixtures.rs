//! Standard complexes and bundles used by the tests, the CLI and the demo.

use crate::cw::paths::EdgeChain;
use crate::cw::{circle, simplex_boundary, staircase_product, CwComplex, SimplicialComplex};
use crate::document::{ComplexSpec, EdgeMatrix, EulerSpec, InputDocument, Options, RepresentationSpec};
use crate::error::{Error, Result};
use crate::flat::FlatRep;
use crate::matrix::Matrix;
use crate::scalar::{fmt_q, parse_q, q, qf, Q};

/// `circle(3) × circle(3)`, vertex `(a, b)` numbered `3a + b`.
pub fn torus2() -> SimplicialComplex {
    let c = circle(3).expect("valid");
    staircase_product(&c, &c).expect("valid")
}

/// `T² × circle(3)`, vertex `(a, b, c)` numbered `9a + 3b + c`.
pub fn torus3() -> SimplicialComplex {
    staircase_product(&torus2(), &circle(3).expect("valid")).expect("valid")
}

/// Projection of a `3 × … × 3` staircase torus onto one circle factor.
fn axis_map(k: &SimplicialComplex, axis: usize) -> Result<Vec<usize>> {
    let dim = k.dim();
    if axis >= dim || k.n_vertices() != 3usize.pow(dim as u32) {
        return Err(Error::Structural(format!("axis {axis} on a complex that is not a 3-periodic torus")));
    }
    let div = 3usize.pow((dim - 1 - axis) as u32);
    Ok((0..k.n_vertices()).map(|v| (v / div) % 3).collect())
}

/// The bundle on a staircase torus with monodromy `a` around circle factor
/// `axis` and trivial monodromy around the others.
pub fn axis_bundle(k: &SimplicialComplex, axis: usize, a: &Matrix) -> Result<FlatRep> {
    let c = circle(3)?;
    let base = FlatRep::circle_monodromy(&c, a)?;
    FlatRep::pullback(k, &axis_map(k, axis)?, &c, &base)
}

/// The loop `0 → s → 2s → 0` along circle factor `axis` of a staircase torus.
pub fn axis_loop(k: &SimplicialComplex, axis: usize) -> Result<EdgeChain> {
    let s = 3usize.pow((k.dim() - 1 - axis) as u32);
    EdgeChain::from_vertex_walk(k, &[0, s, 2 * s, 0])
}

/// The generator loop `0 → 1 → … → n-1 → 0` of `circle(n)`.
pub fn circle_loop(k: &SimplicialComplex) -> Result<EdgeChain> {
    let n = k.n_vertices();
    let walk: Vec<usize> = (0..n).chain([0]).collect();
    EdgeChain::from_vertex_walk(k, &walk)
}

/// Rotation with cosine `c` and sine `s`; rational when `(c, s)` is a point of
/// the unit circle with rational coordinates.
pub fn rotation(c: Q, s: Q) -> Result<Matrix> {
    if &c * &c + &s * &s != q(1) {
        return Err(Error::Structural(format!("({}, {}) is not on the unit circle", fmt_q(&c), fmt_q(&s))));
    }
    Matrix::from_rows(vec![vec![c.clone(), -s.clone()], vec![s, c]])
}

pub fn signs(entries: &[i64]) -> Matrix {
    Matrix::diag(&entries.iter().map(|&e| q(e)).collect::<Vec<_>>())
}

fn representation_spec(k: &SimplicialComplex, f: &FlatRep) -> RepresentationSpec {
    let id = Matrix::identity(f.rank());
    let edges = k
        .simplices(1)
        .iter()
        .enumerate()
        .filter(|(e, _)| f.edge_matrix(*e) != &id)
        .map(|(e, s)| EdgeMatrix { edge: [s[0], s[1]], matrix: f.edge_matrix(e).to_strings() })
        .collect();
    RepresentationSpec { rank: f.rank(), field: "Q".into(), edges, generators: Vec::new() }
}

/// A simplicial document with canonical Euler data at vertex 0.
pub fn simplicial_document(k: &SimplicialComplex, f: &FlatRep, generator_loop: Option<Vec<usize>>) -> InputDocument {
    let m = k.dim();
    InputDocument {
        complex: ComplexSpec::Simplicial { vertices: k.n_vertices(), facets: k.simplices(m).to_vec() },
        representation: Some(representation_spec(k, f)),
        euler: EulerSpec::default(),
        orientation: None,
        options: Options { generator_loop, ..Options::default() },
    }
}

fn circle_document(n: usize, a: &Matrix) -> Result<InputDocument> {
    let k = circle(n)?;
    let f = FlatRep::circle_monodromy(&k, a)?;
    Ok(simplicial_document(&k, &f, Some((0..n).chain([0]).collect())))
}

fn torus3_document(bundles: &[(usize, Matrix)]) -> Result<InputDocument> {
    let k = torus3();
    let mut f: Option<FlatRep> = None;
    for (axis, a) in bundles {
        let g = axis_bundle(&k, *axis, a)?;
        f = Some(match f {
            None => g,
            Some(h) => h.tensor(&g)?,
        });
    }
    let f = f.unwrap_or_else(|| FlatRep::trivial(&k, 1));
    Ok(simplicial_document(&k, &f, Some(vec![0, 9, 18, 0])))
}

pub const NAMES: [(&str, &str); 14] = [
    ("circle3-t3", "circle(3), scalar monodromy 3"),
    ("circle4-t-2", "circle(4), scalar monodromy -2"),
    ("circle5-t3", "circle(5), scalar monodromy 3"),
    ("circle3-trivial", "circle(3), trivial rank-1 coefficients"),
    ("circle3-diag23", "circle(3), monodromy diag(2,3)"),
    ("circle3-reflection", "circle(3), monodromy diag(1,-1)"),
    ("circle3-rotation", "circle(3), rotation by the angle with cosine 3/5"),
    ("sphere2", "boundary of the 3-simplex, trivial rank-1 coefficients"),
    ("torus2", "staircase T², trivial rank-1 coefficients"),
    ("torus3-diag23", "staircase T³, monodromy diag(2,3) around the first factor"),
    ("torus3-half5", "staircase T³, diag(1/2,5) around the first factor tensor 3 around the third"),
    ("torus3-trivial", "staircase T³, trivial rank-1 coefficients"),
    ("cw-circle-t3", "one-vertex CW circle, scalar monodromy 3"),
    ("cw-circle-t-2", "one-vertex CW circle, scalar monodromy -2"),
];

/// A bundled fixture by name, or a generated circle `circle:<n>:<t>`.
pub fn fixture(name: &str) -> Result<InputDocument> {
    if let Some(rest) = name.strip_prefix("circle:") {
        let (n, t) = rest
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("fixture {name:?}: expected circle:<n>:<t>")))?;
        let n: usize = n.parse().map_err(|_| Error::Parse(format!("fixture {name:?}: bad vertex count")))?;
        return circle_document(n, &Matrix::scalar(parse_q(t)?));
    }
    match name {
        "circle3-t3" => circle_document(3, &Matrix::scalar(q(3))),
        "circle4-t-2" => circle_document(4, &Matrix::scalar(q(-2))),
        "circle5-t3" => circle_document(5, &Matrix::scalar(q(3))),
        "circle3-trivial" => circle_document(3, &Matrix::identity(1)),
        "circle3-diag23" => circle_document(3, &Matrix::diag(&[q(2), q(3)])),
        "circle3-reflection" => circle_document(3, &signs(&[1, -1])),
        "circle3-rotation" => circle_document(3, &rotation(qf(3, 5), qf(4, 5))?),
        "sphere2" => {
            let k = simplex_boundary(3)?;
            Ok(simplicial_document(&k, &FlatRep::trivial(&k, 1), None))
        }
        "torus2" => {
            let k = torus2();
            Ok(simplicial_document(&k, &FlatRep::trivial(&k, 1), Some(vec![0, 3, 6, 0])))
        }
        "torus3-diag23" => torus3_document(&[(0, Matrix::diag(&[q(2), q(3)]))]),
        "torus3-half5" => torus3_document(&[(0, Matrix::diag(&[qf(1, 2), q(5)])), (2, Matrix::scalar(q(3)))]),
        "torus3-trivial" => torus3_document(&[]),
        "cw-circle-t3" | "cw-circle-t-2" => {
            let t = if name == "cw-circle-t3" { "3" } else { "-2" };
            Ok(InputDocument {
                complex: ComplexSpec::Cw(CwComplex::circle()),
                representation: Some(RepresentationSpec {
                    rank: 1,
                    field: "Q".into(),
                    edges: Vec::new(),
                    generators: vec![vec![vec![t.into()]]],
                }),
                euler: EulerSpec::default(),
                orientation: None,
                options: Options::default(),
            })
        }
        _ => Err(Error::Parse(format!("unknown fixture {name:?}"))),
    }
}
