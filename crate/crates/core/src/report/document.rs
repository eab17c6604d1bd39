//! JSON serialization of spaces.

use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::catalog;
use crate::space::{FixedPoint, GkmEdge, GkmSpace};
use crate::{IntVector, Rational};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("JSON error at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported schema version {0}, expected {SCHEMA_VERSION}")]
    Schema(u32),
    #[error("{field}: {value:?} is not an exact rational")]
    BadRational { field: String, value: String },
    #[error("unknown builtin space {0:?}")]
    UnknownBuiltin(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

impl From<serde_json::Error> for DocumentError {
    fn from(e: serde_json::Error) -> Self {
        DocumentError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDocument {
    pub name: String,
    /// Exact rationals as strings, `"p/q"` or `"p"`.
    pub moment: Vec<String>,
    pub weights: Vec<IntVector>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDocument {
    pub from: String,
    pub to: String,
    pub weight: IntVector,
}

/// Version 1 of the space schema.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDocument {
    pub schema: u32,
    pub rank: usize,
    pub complex_dim: usize,
    pub fixed_points: Vec<PointDocument>,
    pub edges: Vec<EdgeDocument>,
}

fn parse_rational(field: &str, s: &str) -> Result<Rational, DocumentError> {
    let bad = || DocumentError::BadRational {
        field: field.to_string(),
        value: s.to_string(),
    };
    let t = s.trim();
    if t.is_empty() || t.contains(['.', 'e', 'E']) {
        return Err(bad());
    }
    Rational::from_str(t).map_err(|_| bad())
}

impl SpaceDocument {
    pub fn parse(json: &str) -> Result<Self, DocumentError> {
        let doc: Self = serde_json::from_str(json)?;
        if doc.schema != SCHEMA_VERSION {
            return Err(DocumentError::Schema(doc.schema));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    pub fn from_space(space: &GkmSpace) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            rank: space.rank(),
            complex_dim: space.complex_dim,
            fixed_points: space
                .points
                .iter()
                .map(|p| PointDocument {
                    name: p.name.clone(),
                    moment: p.moment.iter().map(|r| r.to_string()).collect(),
                    weights: p.weights.clone(),
                })
                .collect(),
            edges: space
                .edges
                .iter()
                .map(|e| EdgeDocument {
                    from: e.from.clone(),
                    to: e.to.clone(),
                    weight: e.weight.clone(),
                })
                .collect(),
        }
    }

    /// Build the space. Data invariants are not checked here; see
    /// [`crate::space::validate`].
    pub fn to_space(&self) -> Result<GkmSpace, DocumentError> {
        let points = self
            .fixed_points
            .iter()
            .map(|p| {
                let moment = p
                    .moment
                    .iter()
                    .map(|s| parse_rational(&format!("moment of {}", p.name), s))
                    .collect::<Result<_, _>>()?;
                Ok(FixedPoint {
                    name: p.name.clone(),
                    moment,
                    weights: p.weights.clone(),
                })
            })
            .collect::<Result<Vec<_>, DocumentError>>()?;
        let edges = self
            .edges
            .iter()
            .map(|e| GkmEdge {
                from: e.from.clone(),
                to: e.to.clone(),
                weight: e.weight.clone(),
            })
            .collect();
        Ok(GkmSpace::new(self.rank, self.complex_dim, points, edges))
    }
}

/// Resolve `builtin:<name>` or a path to a JSON document.
pub fn load_space(spec: &str) -> Result<GkmSpace, DocumentError> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return catalog::builtin(name).ok_or_else(|| DocumentError::UnknownBuiltin(name.to_string()));
    }
    let text = std::fs::read_to_string(Path::new(spec)).map_err(|e| DocumentError::Io {
        path: spec.to_string(),
        message: e.to_string(),
    })?;
    SpaceDocument::parse(&text)?.to_space()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    #[test]
    fn builtins_round_trip() {
        for name in ["point", "cp1", "cp2", "cp2xcp2-k3", "su3-hexagon"] {
            let space = catalog::builtin(name).unwrap();
            let doc = SpaceDocument::from_space(&space);
            let again = SpaceDocument::parse(&doc.to_json()).unwrap();
            assert_eq!(again, doc);
            let rebuilt = again.to_space().unwrap();
            assert_eq!(rebuilt.points, space.points);
            assert_eq!(rebuilt.edges, space.edges);
        }
    }

    #[test]
    fn rationals_are_exact_strings() {
        assert_eq!(parse_rational("m", "5/4").unwrap(), ratio(5, 4));
        assert_eq!(parse_rational("m", "-3").unwrap(), ratio(-3, 1));
        assert!(parse_rational("m", "0.5").is_err());
        assert!(parse_rational("m", "1/0").is_err());
        assert!(parse_rational("m", "").is_err());
    }

    #[test]
    fn floats_and_bad_schema_rejected() {
        let float = r#"{"schema":1,"rank":1,"complex_dim":0,"fixed_points":[{"name":"a","moment":[0.5],"weights":[]}],"edges":[]}"#;
        assert!(matches!(SpaceDocument::parse(float), Err(DocumentError::Json { .. })));
        let v2 = r#"{"schema":2,"rank":1,"complex_dim":0,"fixed_points":[],"edges":[]}"#;
        assert!(matches!(SpaceDocument::parse(v2), Err(DocumentError::Schema(2))));
        match SpaceDocument::parse("{\n  \"schema\": 1,\n  oops") {
            Err(DocumentError::Json { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_builtin() {
        assert!(matches!(
            load_space("builtin:nope"),
            Err(DocumentError::UnknownBuiltin(_))
        ));
        assert!(load_space("builtin:cp2").is_ok());
    }
}
