use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use super::SpaceError;
use crate::linalg::Matrix;
use crate::{rational, IntVector, MultiPoly, RatVector, Rational};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TorusAction {
    rank: usize,
    names: Vec<String>,
}

impl TorusAction {
    pub fn new(rank: usize) -> Self {
        Self {
            rank,
            names: (1..=rank).map(|i| format!("x{i}")).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

/// An isolated fixed point: its moment image and the isotropy weights of
/// the tangent space there.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FixedPoint {
    pub name: String,
    pub moment: RatVector,
    pub weights: Vec<IntVector>,
}

/// An invariant 2-sphere joining two fixed points.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GkmEdge {
    pub from: String,
    pub to: String,
    pub weight: IntVector,
}

/// How a space was constructed. Products and restrictions to a subtorus
/// keep a handle on their inputs so that classes can be transported.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Provenance {
    Plain,
    Product {
        left: Arc<GkmSpace>,
        right: Arc<GkmSpace>,
        dilation: Rational,
    },
    Restricted {
        parent: Arc<GkmSpace>,
        subtorus: Subtorus,
    },
}

/// A compact Hamiltonian torus space with isolated fixed points, given by
/// its fixed-point data and 1-skeleton.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GkmSpace {
    pub action: TorusAction,
    pub points: Vec<FixedPoint>,
    pub edges: Vec<GkmEdge>,
    pub complex_dim: usize,
    pub provenance: Provenance,
}

impl GkmSpace {
    pub fn new(rank: usize, complex_dim: usize, points: Vec<FixedPoint>, edges: Vec<GkmEdge>) -> Self {
        Self {
            action: TorusAction::new(rank),
            points,
            edges,
            complex_dim,
            provenance: Provenance::Plain,
        }
    }

    pub fn rank(&self) -> usize {
        self.action.rank()
    }

    /// Real dimension of the manifold.
    pub fn real_dim(&self) -> usize {
        2 * self.complex_dim
    }

    pub fn point_index(&self, name: &str) -> Option<usize> {
        self.points.iter().position(|p| p.name == name)
    }

    pub fn point(&self, name: &str) -> Option<&FixedPoint> {
        self.points.iter().find(|p| p.name == name)
    }

    /// Endpoint indices of every edge. Fails on a dangling endpoint.
    pub fn edge_indices(&self) -> Result<Vec<(usize, usize)>, SpaceError> {
        self.edges
            .iter()
            .map(|e| {
                let a = self
                    .point_index(&e.from)
                    .ok_or_else(|| SpaceError::UnknownPoint(e.from.clone()))?;
                let b = self
                    .point_index(&e.to)
                    .ok_or_else(|| SpaceError::UnknownPoint(e.to.clone()))?;
                Ok((a, b))
            })
            .collect()
    }

    /// Fails with the full violation list when the data is inconsistent.
    pub fn ensure_valid(&self) -> Result<(), SpaceError> {
        let violations = validate(self);
        if violations.is_empty() {
            Ok(())
        } else {
            Err(SpaceError::Invalid(violations))
        }
    }

    /// `<Phi(p), x>` as a linear polynomial: the restriction of the
    /// equivariant symplectic class (with this moment normalization) to `p`.
    pub fn moment_form(&self, index: usize) -> MultiPoly {
        MultiPoly::linear(&self.points[index].moment)
    }

    pub fn moment_pairing(&self, index: usize, xi: &[Rational]) -> Rational {
        pair(&self.points[index].moment, xi)
    }
}

pub fn weight_form(weight: &[i64]) -> MultiPoly {
    MultiPoly::linear(&crate::to_rational_vector(weight))
}

pub fn pair(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn pair_int(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `Some(c)` with `v = c * w` when `v` is a rational multiple of the nonzero
/// integer vector `w`.
pub fn multiple_of(v: &[Rational], w: &[i64]) -> Option<Rational> {
    let k = w.iter().position(|&x| x != 0)?;
    let c = &v[k] / rational(w[k]);
    v.iter().zip(w).all(|(a, &b)| *a == &c * rational(b)).then_some(c)
}

pub fn parallel(a: &[i64], b: &[i64]) -> bool {
    if a.len() != b.len() || a.iter().all(|&x| x == 0) || b.iter().all(|&x| x == 0) {
        return false;
    }
    // all 2x2 minors vanish
    (0..a.len()).all(|i| (i + 1..a.len()).all(|j| a[i] * b[j] == a[j] * b[i]))
}

/// One failed invariant, naming the offending point or edge.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Violation {
    pub subject: String,
    pub rule: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.subject, self.rule)
    }
}

fn violation(subject: impl Into<String>, rule: impl Into<String>) -> Violation {
    Violation {
        subject: subject.into(),
        rule: rule.into(),
    }
}

fn edge_label(e: &GkmEdge) -> String {
    format!("edge {}-{}", e.from, e.to)
}

/// Check every data invariant; an empty list means the space is valid.
pub fn validate(space: &GkmSpace) -> Vec<Violation> {
    let mut out = Vec::new();
    let d = space.rank();
    if d == 0 {
        out.push(violation("torus", "rank must be at least 1"));
    }
    if space.points.is_empty() {
        out.push(violation("space", "no fixed points"));
    }
    for (i, p) in space.points.iter().enumerate() {
        if space.points[..i].iter().any(|q| q.name == p.name) {
            out.push(violation(format!("point {}", p.name), "duplicate name"));
        }
        if p.moment.len() != d {
            out.push(violation(
                format!("point {}", p.name),
                format!("moment image has length {}, expected {d}", p.moment.len()),
            ));
        }
        if p.weights.len() != space.complex_dim {
            out.push(violation(
                format!("point {}", p.name),
                format!("has {} weights, expected {}", p.weights.len(), space.complex_dim),
            ));
        }
        for w in &p.weights {
            if w.len() != d {
                out.push(violation(
                    format!("point {}", p.name),
                    format!("weight {w:?} has length {}, expected {d}", w.len()),
                ));
            } else if w.iter().all(|&x| x == 0) {
                out.push(violation(
                    format!("point {}", p.name),
                    format!("zero weight at {}", p.name),
                ));
            }
        }
    }
    for e in &space.edges {
        let label = edge_label(e);
        let (Some(a), Some(b)) = (space.point(&e.from), space.point(&e.to)) else {
            out.push(violation(label, "endpoint is not a fixed point"));
            continue;
        };
        if e.from == e.to {
            out.push(violation(label, "loop edge"));
            continue;
        }
        if e.weight.len() != d || e.weight.iter().all(|&x| x == 0) {
            out.push(violation(label, "edge weight must be a nonzero vector of length rank"));
            continue;
        }
        if super::primitive(&e.weight) != e.weight
            && super::primitive(&e.weight) != e.weight.iter().map(|x| -x).collect::<Vec<_>>()
        {
            out.push(violation(label.clone(), "edge weight is not primitive"));
        }
        for end in [a, b] {
            if !end.weights.iter().any(|w| parallel(w, &e.weight)) {
                out.push(violation(
                    label.clone(),
                    format!(
                        "weight {:?} is not among the isotropy weights of {}",
                        e.weight, end.name
                    ),
                ));
            }
        }
        if a.moment.len() != d || b.moment.len() != d {
            continue;
        }
        let delta: RatVector = b.moment.iter().zip(&a.moment).map(|(y, x)| y - x).collect();
        match multiple_of(&delta, &e.weight) {
            None => out.push(violation(label, "moment segment is not parallel to the edge weight")),
            Some(c) if c.is_zero() => out.push(violation(label, "endpoints have the same moment image")),
            Some(_) => {
                for (from, to) in [(a, b), (b, a)] {
                    let toward: RatVector = to.moment.iter().zip(&from.moment).map(|(y, x)| y - x).collect();
                    let points_toward = from
                        .weights
                        .iter()
                        .any(|w| w.len() == d && multiple_of(&toward, w).is_some_and(|c| c.is_positive()));
                    if !points_toward {
                        out.push(violation(
                            label.clone(),
                            format!("no isotropy weight at {} points toward {}", from.name, to.name),
                        ));
                    }
                }
            }
        }
    }
    out
}

/// Soft checks for the strict GKM conditions. These never block a
/// computation; the cohomology module cross-checks dimensions instead.
pub fn gkm_warnings(space: &GkmSpace) -> Vec<String> {
    let mut out = Vec::new();
    for p in &space.points {
        let valence = space
            .edges
            .iter()
            .filter(|e| e.from == p.name || e.to == p.name)
            .count();
        if valence != space.complex_dim {
            out.push(format!(
                "point {} has {valence} edges but complex dimension {}",
                p.name, space.complex_dim
            ));
        }
        let dependent = p
            .weights
            .iter()
            .enumerate()
            .any(|(i, w)| p.weights[i + 1..].iter().any(|v| parallel(w, v)));
        if dependent {
            out.push(format!("weights at {} are not pairwise independent", p.name));
        }
    }
    out
}

/// A subtorus `T` of `G`, given by an integer `d x r` inclusion matrix
/// whose columns span `t` inside `g`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subtorus {
    columns: Vec<IntVector>,
    ambient: usize,
}

impl Subtorus {
    pub fn full(rank: usize) -> Self {
        let columns = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
            .collect();
        Self { columns, ambient: rank }
    }

    pub fn from_columns(ambient: usize, columns: Vec<IntVector>) -> Result<Self, SpaceError> {
        if columns.is_empty() || columns.len() > ambient {
            return Err(SpaceError::BadSubtorus(format!(
                "need between 1 and {ambient} columns, got {}",
                columns.len()
            )));
        }
        if let Some(c) = columns.iter().find(|c| c.len() != ambient) {
            return Err(SpaceError::BadSubtorus(format!(
                "column {c:?} has length {}, expected {ambient}",
                c.len()
            )));
        }
        let m = Matrix::from_rows(ambient, columns.iter().map(|c| crate::to_rational_vector(c)).collect())
            .expect("lengths checked");
        if m.rank() != columns.len() {
            return Err(SpaceError::BadSubtorus(
                "inclusion matrix must have full column rank".into(),
            ));
        }
        Ok(Self { columns, ambient })
    }

    pub fn rank(&self) -> usize {
        self.columns.len()
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn columns(&self) -> &[IntVector] {
        &self.columns
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.ambient
    }

    /// `pi = i^T : g* -> t*`.
    pub fn project(&self, v: &[Rational]) -> RatVector {
        self.columns
            .iter()
            .map(|c| pair(&crate::to_rational_vector(c), v))
            .collect()
    }

    pub fn project_weight(&self, w: &[i64]) -> IntVector {
        self.columns.iter().map(|c| pair_int(c, w)).collect()
    }

    /// `i : t -> g`.
    pub fn embed(&self, xi: &[Rational]) -> RatVector {
        let mut out = vec![Rational::zero(); self.ambient];
        for (c, x) in self.columns.iter().zip(xi) {
            for (o, &ci) in out.iter_mut().zip(c) {
                *o += x * rational(ci);
            }
        }
        out
    }

    /// Rows of the substitution `x_i = sum_j incl[i][j] s_j`.
    pub fn substitution(&self) -> Vec<RatVector> {
        (0..self.ambient)
            .map(|i| self.columns.iter().map(|c| rational(c[i])).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::catalog;

    #[test]
    fn catalog_cp2_is_valid() {
        assert!(validate(&catalog::cp2()).is_empty());
    }

    #[test]
    fn zeroed_weight_is_reported() {
        let mut s = catalog::cp2();
        s.points[1].weights[0] = vec![0, 0];
        let v = validate(&s);
        assert!(v.iter().any(|v| v.rule == "zero weight at p1"), "{v:?}");
    }

    #[test]
    fn perturbed_moment_is_reported() {
        let mut s = catalog::cp2();
        s.points[2].moment = vec![crate::ratio(1, 3), rational(1)];
        let v = validate(&s);
        assert!(
            v.iter()
                .any(|v| v.subject == "edge p0-p2" && v.rule.contains("not parallel")),
            "{v:?}"
        );
    }

    #[test]
    fn dangling_edge_is_reported() {
        let mut s = catalog::cp2();
        s.edges[0].to = "nowhere".into();
        assert!(validate(&s).iter().any(|v| v.rule.contains("endpoint")));
    }

    #[test]
    fn product_weights_are_flagged_as_dependent() {
        let warnings = gkm_warnings(&catalog::cp2xcp2(3));
        assert!(warnings.iter().any(|w| w.contains("pairwise")));
        assert!(gkm_warnings(&catalog::cp2()).is_empty());
    }

    #[test]
    fn subtorus_rank_checks() {
        assert!(Subtorus::from_columns(2, vec![vec![1, 2]]).is_ok());
        assert!(Subtorus::from_columns(2, vec![vec![1, 2], vec![2, 4]]).is_err());
        assert!(Subtorus::from_columns(2, vec![]).is_err());
        let t = Subtorus::from_columns(2, vec![vec![1, 2]]).unwrap();
        assert_eq!(t.project(&[rational(3), rational(1)]), vec![rational(5)]);
        assert_eq!(t.embed(&[rational(2)]), vec![rational(2), rational(4)]);
    }
}
