//! Serialization helpers: every scalar leaves the crate as a `"p/q"` string.

use serde::Serializer;

use crate::matrix::Matrix;
use crate::scalar::{fmt_q, Q};

pub fn ser_q<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_q(x))
}

pub fn ser_opt_q<S: Serializer>(x: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.serialize_str(&fmt_q(x)),
        None => s.serialize_none(),
    }
}

pub fn ser_vec_q<S: Serializer>(xs: &[Q], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(fmt_q))
}

pub fn ser_matrices<S: Serializer>(ms: &[Matrix], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(ms.iter().map(Matrix::to_strings))
}
