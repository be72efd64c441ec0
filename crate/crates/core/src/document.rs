//! The JSON input document: a complex, a representation, Euler data and an
//! optional homology orientation. See `docs/schema.md` for the format.

use serde::{Deserialize, Serialize};

use crate::cw::paths::EdgeChain;
use crate::cw::{CwComplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::euler::{canonical_structure, EulerStructure};
use crate::flat::{CwRep, FlatRep};
use crate::matrix::Matrix;
use crate::torsion::HomologyOrientation;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub complex: ComplexSpec,
    /// Trivial rank-1 coefficients when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representation: Option<RepresentationSpec>,
    #[serde(default)]
    pub euler: EulerSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<i8>,
    #[serde(default)]
    pub options: Options,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComplexSpec {
    Simplicial { vertices: usize, facets: Vec<Vec<usize>> },
    Cw(CwComplex),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationSpec {
    pub rank: usize,
    #[serde(default = "default_field")]
    pub field: String,
    /// Simplicial complexes: transport from `edge[0]` to `edge[1]`; unlisted
    /// edges carry the identity.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub edges: Vec<EdgeMatrix>,
    /// CW complexes: one matrix per fundamental-group generator.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<Vec<Vec<String>>>,
}

fn default_field() -> String {
    "Q".into()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeMatrix {
    pub edge: [usize; 2],
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EulerSpec {
    #[serde(default)]
    pub basepoint: usize,
    /// Integral 1-cycle acting on the canonical structure at the basepoint.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub offset: Vec<OffsetTerm>,
    /// CW complexes: the offset as a word in the generators (letters `±(g+1)`).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub word: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OffsetTerm {
    pub edge: [usize; 2],
    pub coeff: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    /// Vertex walk of a loop; an integer `--offset k` means `k` times it.
    #[serde(default, rename = "loop", skip_serializing_if = "Option::is_none")]
    pub generator_loop: Option<Vec<usize>>,
    /// Second summand for the multiplicativity check; `F^*` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub other: Option<RepresentationSpec>,
}

pub struct SimplicialInput {
    pub k: SimplicialComplex,
    pub f: FlatRep,
    pub other: Option<FlatRep>,
    pub basepoint: usize,
    pub offset: EdgeChain,
    pub generator_loop: Option<EdgeChain>,
    pub orientation: Option<HomologyOrientation>,
}

impl SimplicialInput {
    pub fn euler(&self) -> Result<EulerStructure> {
        canonical_structure(&self.k, self.basepoint)?.act(&self.k, &self.offset)
    }

    /// The structure offset by `j` times the document loop instead.
    pub fn euler_with_loop_offset(&self, j: i64) -> Result<EulerStructure> {
        let g = self.loop_chain()?;
        canonical_structure(&self.k, self.basepoint)?.act(&self.k, &g.scaled(j))
    }

    pub fn loop_chain(&self) -> Result<&EdgeChain> {
        self.generator_loop
            .as_ref()
            .ok_or_else(|| Error::Parse("options.loop: an integer offset needs a loop in the document".into()))
    }
}

pub struct CwInput {
    pub cw: CwComplex,
    pub rep: CwRep,
    pub word: Vec<i64>,
}

pub enum Resolved {
    Simplicial(Box<SimplicialInput>),
    Cw(CwInput),
}

fn matrix_at(rows: &[Vec<String>], rank: usize, at: &str) -> Result<Matrix> {
    let wrong = |shape: String| Error::Parse(format!("{at}: matrix is {shape}, expected square {rank}x{rank}"));
    if rows.len() != rank {
        return Err(wrong(format!("{} rows", rows.len())));
    }
    if let Some(r) = rows.iter().find(|r| r.len() != rank) {
        return Err(wrong(format!("{}x{}", rows.len(), r.len())));
    }
    Matrix::from_strings(rows).map_err(|e| Error::Parse(format!("{at}: {e}")))
}

fn at<T>(loc: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse(s) => Error::Parse(format!("{loc}: {s}")),
        Error::Structural(s) => Error::Structural(format!("{loc}: {s}")),
        other => other,
    })
}

fn flat_rep(k: &SimplicialComplex, spec: &RepresentationSpec, loc: &str) -> Result<FlatRep> {
    check_field(spec, loc)?;
    if !spec.generators.is_empty() {
        return Err(Error::Parse(format!("{loc}.generators: only CW complexes take generator matrices")));
    }
    let mut edges = Vec::new();
    for (i, e) in spec.edges.iter().enumerate() {
        let here = format!("{loc}.edges[{i}] (edge [{}, {}])", e.edge[0], e.edge[1]);
        let t = matrix_at(&e.matrix, spec.rank, &here)?;
        if k.oriented_edge(e.edge[0], e.edge[1]).is_none() {
            return Err(Error::Parse(format!("{here}: not an edge of the complex")));
        }
        if t.det() == crate::scalar::q(0) {
            return Err(Error::Parse(format!("{here}: singular matrix, not a bundle")));
        }
        edges.push(((e.edge[0], e.edge[1]), t));
    }
    at(loc, FlatRep::from_edges(k, spec.rank, &edges))
}

fn check_field(spec: &RepresentationSpec, loc: &str) -> Result<()> {
    if spec.field != "Q" {
        return Err(Error::Parse(format!("{loc}.field: only \"Q\" is supported, got {:?}", spec.field)));
    }
    if spec.rank == 0 {
        return Err(Error::Parse(format!("{loc}.rank: must be positive")));
    }
    Ok(())
}

impl InputDocument {
    pub fn from_json(text: &str) -> Result<InputDocument> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("document: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Validates and builds the objects. `offset` replaces the document's
    /// Euler offset by that multiple of `options.loop` (or of the generator
    /// word, for CW complexes).
    pub fn resolve(&self, offset: Option<i64>) -> Result<Resolved> {
        let orientation = self.orientation.map(|s| at("orientation", HomologyOrientation::new(s))).transpose()?;
        match &self.complex {
            ComplexSpec::Simplicial { vertices, facets } => {
                let k = at("complex.simplicial", SimplicialComplex::from_facets(*vertices, facets))?;
                let f = match &self.representation {
                    Some(spec) => flat_rep(&k, spec, "representation")?,
                    None => FlatRep::trivial(&k, 1),
                };
                let other = self.options.other.as_ref().map(|s| flat_rep(&k, s, "options.other")).transpose()?;
                if self.euler.basepoint >= k.n_vertices() {
                    return Err(Error::Parse(format!("euler.basepoint: no vertex {}", self.euler.basepoint)));
                }
                if !self.euler.word.is_empty() {
                    return Err(Error::Parse("euler.word: only CW complexes take an offset word".into()));
                }
                let generator_loop = self
                    .options
                    .generator_loop
                    .as_ref()
                    .map(|w| at("options.loop", EdgeChain::from_vertex_walk(&k, w)))
                    .transpose()?;
                let mut chain = EdgeChain::zero(&k);
                for (i, t) in self.euler.offset.iter().enumerate() {
                    let (e, s) = k
                        .oriented_edge(t.edge[0], t.edge[1])
                        .ok_or_else(|| Error::Parse(format!("euler.offset[{i}]: {:?} is not an edge", t.edge)))?;
                    chain.0[e] += s * t.coeff;
                }
                if !chain.is_cycle(&k) {
                    return Err(Error::Parse("euler.offset: not a cycle".into()));
                }
                let input = SimplicialInput {
                    k,
                    f,
                    other,
                    basepoint: self.euler.basepoint,
                    offset: chain,
                    generator_loop,
                    orientation,
                };
                let input = match offset {
                    None => input,
                    Some(j) => {
                        let offset = input.loop_chain()?.scaled(j);
                        SimplicialInput { offset, ..input }
                    }
                };
                Ok(Resolved::Simplicial(Box::new(input)))
            }
            ComplexSpec::Cw(cw) => {
                let cw = at(
                    "complex.cw",
                    CwComplex::new(cw.cells.clone(), cw.boundary.clone(), cw.generators),
                )?;
                let spec = self
                    .representation
                    .clone()
                    .unwrap_or(RepresentationSpec { rank: 1, field: "Q".into(), edges: vec![], generators: vec![] });
                check_field(&spec, "representation")?;
                if !spec.edges.is_empty() {
                    return Err(Error::Parse("representation.edges: CW complexes take generator matrices".into()));
                }
                let mats = if spec.generators.is_empty() && self.representation.is_none() {
                    vec![Matrix::identity(1); cw.generators]
                } else {
                    spec.generators
                        .iter()
                        .enumerate()
                        .map(|(g, m)| matrix_at(m, spec.rank, &format!("representation.generators[{g}]")))
                        .collect::<Result<Vec<_>>>()?
                };
                let rep = at("representation", CwRep::new(&cw, spec.rank, mats))?;
                let word = match offset {
                    None => self.euler.word.clone(),
                    Some(j) if cw.generators == 1 => vec![j.signum(); j.unsigned_abs() as usize],
                    Some(_) => return Err(Error::Parse("--offset on a CW complex needs exactly one generator".into())),
                };
                if let Some(&l) = word.iter().find(|l| **l == 0 || l.unsigned_abs() as usize > cw.generators) {
                    return Err(Error::Parse(format!("euler.word: bad letter {l}")));
                }
                Ok(Resolved::Cw(CwInput { cw, rep, word }))
            }
        }
    }
}
