//! Input documents, built-in examples, class expressions and rendered
//! output.

pub mod args;
pub mod catalog;
pub mod document;
pub mod expr;
pub mod svg;

use serde::Serializer;

use crate::Rational;

pub use document::{load_space, DocumentError, SpaceDocument};
pub use svg::{plot, PlotError, PlotSpec};

/// Serialize a rational as an exact string, `"p/q"` or `"p"`.
pub fn ser_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub fn ser_rationals<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

/// Pretty JSON with a trailing newline; byte-stable for equal inputs.
pub fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types always serialize");
    s.push('\n');
    s
}
