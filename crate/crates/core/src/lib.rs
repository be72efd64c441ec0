//! Exact sign-refined Reidemeister torsion of flat bundles over triangulated
//! manifolds, with combinatorial Euler structures and the
//! Poincaré–Reidemeister scalar product.
//!
//! ```
//! use rtorsion::cw::circle;
//! use rtorsion::euler::canonical_structure;
//! use rtorsion::flat::FlatRep;
//! use rtorsion::matrix::Matrix;
//! use rtorsion::scalar::{q, qf};
//! use rtorsion::torsion::Twisted;
//!
//! let k = circle(3)?;
//! let f = FlatRep::circle_monodromy(&k, &Matrix::scalar(q(3)))?;
//! let xi = canonical_structure(&k, 0)?;
//! let tau = Twisted::new(&k, f).euler(&xi)?;
//! assert_eq!(tau.coeff(), &qf(1, 2));
//! # Ok::<(), rtorsion::Error>(())
//! ```

pub mod chaincx;
pub mod commands;
pub mod cw;
pub mod detline;
pub mod document;
pub mod error;
pub mod euler;
pub mod flat;
pub mod fixtures;
pub mod matrix;
pub mod pairing;
pub mod report;
pub mod scalar;
pub mod selftest;
pub mod sparse;
pub mod torsion;

pub use error::{Error, Result};
pub use scalar::Q;
