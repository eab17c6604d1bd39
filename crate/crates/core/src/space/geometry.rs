use std::collections::BTreeSet;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::model::{pair, FixedPoint, GkmEdge, GkmSpace, Provenance, Subtorus};
use super::SpaceError;
use crate::linalg::{Matrix, Subspace};
use crate::{rational, IntVector, RatVector, Rational};

/// Divide out the gcd of the entries. The zero vector is returned as is.
pub fn primitive(v: &[i64]) -> IntVector {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

/// Primitive representative whose first nonzero entry is positive.
pub fn canonical(v: &[i64]) -> IntVector {
    let p = primitive(v);
    match p.iter().find(|&&x| x != 0) {
        Some(&x) if x < 0 => p.iter().map(|x| -x).collect(),
        _ => p,
    }
}

/// Primitive integer vector on the ray of a rational vector.
pub fn primitive_from_rational(v: &[Rational]) -> IntVector {
    let l = v.iter().fold(num_bigint::BigInt::from(1), |l, x| l.lcm(x.denom()));
    let scaled: Vec<num_bigint::BigInt> = v.iter().map(|x| (x * Rational::from(l.clone())).to_integer()).collect();
    let g = scaled.iter().fold(num_bigint::BigInt::zero(), |g, x| g.gcd(x));
    scaled
        .iter()
        .map(|x| {
            let y = if g.is_zero() { x.clone() } else { x / &g };
            i64::try_from(y).expect("normal vector entries fit in i64")
        })
        .collect()
}

/// Rank-`r` moment data: images of the fixed points and the 1-skeleton
/// with (possibly zero) edge weights.
#[derive(Clone, Debug)]
pub struct MomentData {
    pub rank: usize,
    pub names: Vec<String>,
    pub images: Vec<RatVector>,
    pub edges: Vec<(usize, usize, IntVector)>,
}

impl MomentData {
    pub fn of(space: &GkmSpace) -> Result<Self, SpaceError> {
        let idx = space.edge_indices()?;
        Ok(Self {
            rank: space.rank(),
            names: space.points.iter().map(|p| p.name.clone()).collect(),
            images: space.points.iter().map(|p| p.moment.clone()).collect(),
            edges: idx
                .into_iter()
                .zip(&space.edges)
                .map(|((a, b), e)| (a, b, e.weight.clone()))
                .collect(),
        })
    }

    pub fn projected(space: &GkmSpace, subtorus: &Subtorus) -> Result<Self, SpaceError> {
        check_subtorus(space, subtorus)?;
        let full = Self::of(space)?;
        Ok(Self {
            rank: subtorus.rank(),
            names: full.names,
            images: full.images.iter().map(|m| subtorus.project(m)).collect(),
            edges: full
                .edges
                .into_iter()
                .map(|(a, b, w)| (a, b, subtorus.project_weight(&w)))
                .collect(),
        })
    }

    fn directions(&self) -> Vec<IntVector> {
        let set: BTreeSet<IntVector> = self
            .edges
            .iter()
            .filter(|(_, _, w)| w.iter().any(|&x| x != 0))
            .map(|(_, _, w)| canonical(w))
            .collect();
        set.into_iter().collect()
    }

    /// Every subspace of dimension < rank spanned by edge directions, as the
    /// set of directions it contains, with its dimension. Includes `{0}`.
    fn flats(&self) -> Vec<(Vec<bool>, usize)> {
        let dirs = self.directions();
        let rat: Vec<RatVector> = dirs.iter().map(|d| crate::to_rational_vector(d)).collect();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let mut subset = Vec::new();
        self.grow_flats(&rat, 0, &mut subset, &mut seen, &mut out);
        out
    }

    fn grow_flats(
        &self,
        dirs: &[RatVector],
        start: usize,
        subset: &mut Vec<usize>,
        seen: &mut BTreeSet<Vec<bool>>,
        out: &mut Vec<(Vec<bool>, usize)>,
    ) {
        let vectors: Vec<RatVector> = subset.iter().map(|&i| dirs[i].clone()).collect();
        let span = Subspace::span(self.rank, &vectors).expect("directions have length rank");
        if span.dim() < subset.len() {
            return;
        }
        let mask: Vec<bool> = dirs.iter().map(|d| span.contains(d).expect("length checked")).collect();
        if seen.insert(mask.clone()) {
            out.push((mask, span.dim()));
        }
        if subset.len() + 1 >= self.rank {
            return;
        }
        for i in start..dirs.len() {
            subset.push(i);
            self.grow_flats(dirs, i + 1, subset, seen, out);
            subset.pop();
        }
    }

    /// Connected components of the subgraph of edges whose direction lies
    /// in the flat (zero-weight edges lie in every flat), each with the
    /// dimension of the span of its own edge directions.
    fn components(&self, mask: &[bool], dirs: &[IntVector]) -> Vec<(Vec<usize>, Vec<IntVector>)> {
        let n = self.images.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while parent[r] != r {
                r = parent[r];
            }
            parent[i] = r;
            r
        }
        let inside = |w: &IntVector| {
            w.iter().all(|&x| x == 0) || dirs.iter().position(|d| *d == canonical(w)).is_some_and(|k| mask[k])
        };
        let kept: Vec<&(usize, usize, IntVector)> = self.edges.iter().filter(|(_, _, w)| inside(w)).collect();
        for (a, b, _) in &kept {
            let (ra, rb) = (find(&mut parent, *a), find(&mut parent, *b));
            parent[ra] = rb;
        }
        let mut groups: Vec<(usize, Vec<usize>, Vec<IntVector>)> = Vec::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            match groups.iter_mut().find(|g| g.0 == r) {
                Some(g) => g.1.push(i),
                None => groups.push((r, vec![i], Vec::new())),
            }
        }
        for (a, _, w) in kept {
            if w.iter().any(|&x| x != 0) {
                let r = find(&mut parent, *a);
                let g = groups.iter_mut().find(|g| g.0 == r).expect("root present");
                g.2.push(canonical(w));
            }
        }
        groups.into_iter().map(|(_, pts, ws)| (pts, ws)).collect()
    }

    /// Point sets whose convex hulls are the images of fixed components of
    /// subtori of positive dimension, i.e. the critical strata.
    pub fn strata(&self) -> Vec<Vec<usize>> {
        let dirs = self.directions();
        let mut seen = BTreeSet::new();
        for (mask, _) in self.flats() {
            for (pts, _) in self.components(&mask, &dirs) {
                seen.insert(pts);
            }
        }
        seen.into_iter().collect()
    }

    pub fn walls(&self) -> Vec<Wall> {
        let dirs = self.directions();
        let target = self.rank.saturating_sub(1);
        let mut out: Vec<Wall> = Vec::new();
        for (mask, dim) in self.flats() {
            if dim != target || self.rank < 2 {
                continue;
            }
            for (pts, ws) in self.components(&mask, &dirs) {
                if pts.len() < 2 || ws.is_empty() {
                    continue;
                }
                let rows: Vec<RatVector> = ws.iter().map(|w| crate::to_rational_vector(w)).collect();
                let m = Matrix::from_rows(self.rank, rows).expect("lengths checked");
                if m.rank() != target {
                    continue;
                }
                let kernel = m.nullspace();
                let normal = canonical(&primitive_from_rational(&kernel[0]));
                let rn = crate::to_rational_vector(&normal);
                let offset = pair(&self.images[pts[0]], &rn);
                let wall = Wall {
                    normal,
                    offset,
                    support: pts.iter().map(|&i| self.names[i].clone()).collect(),
                };
                if !out.contains(&wall) {
                    out.push(wall);
                }
            }
        }
        out.sort_by(|a, b| (&a.normal, &a.offset, &a.support).cmp(&(&b.normal, &b.offset, &b.support)));
        out
    }

    /// Deduplicated wall normals with both orientations. In rank 1 the two
    /// orientations of the line are returned.
    pub fn wall_normals(&self) -> Vec<IntVector> {
        let base: BTreeSet<IntVector> = if self.rank == 1 {
            [vec![1]].into_iter().collect()
        } else {
            self.walls().into_iter().map(|w| w.normal).collect()
        };
        let mut out = Vec::new();
        for n in base {
            out.push(n.iter().map(|x| -x).collect());
            out.push(n);
        }
        out.sort();
        out
    }

    pub fn is_regular_value(&self, mu: &[Rational]) -> Result<bool, SpaceError> {
        if mu.len() != self.rank {
            return Err(SpaceError::DimensionMismatch {
                expected: self.rank,
                actual: mu.len(),
            });
        }
        Ok(self.strata().iter().all(|pts| {
            let hull: Vec<RatVector> = pts.iter().map(|&i| self.images[i].clone()).collect();
            !in_convex_hull(&hull, mu)
        }))
    }
}

/// A codimension-1 wall `<y, normal> = offset` with the fixed points whose
/// images span it.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Wall {
    pub normal: IntVector,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub offset: Rational,
    pub support: Vec<String>,
}

/// Exact convex hull membership by Caratheodory: some affinely independent
/// subset carries nonnegative barycentric coordinates for `target`.
pub fn in_convex_hull(points: &[RatVector], target: &[Rational]) -> bool {
    let Some(first) = points.first() else {
        return false;
    };
    let dim = first.len();
    let diffs: Vec<RatVector> = points
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    let affine = Matrix::from_rows(dim, diffs).expect("uniform lengths").rank();
    let mut subset = Vec::new();
    hull_search(points, target, affine + 1, 0, &mut subset)
}

fn hull_search(points: &[RatVector], target: &[Rational], max: usize, start: usize, subset: &mut Vec<usize>) -> bool {
    if !subset.is_empty() && barycentric_nonnegative(points, target, subset) {
        return true;
    }
    if subset.len() == max {
        return false;
    }
    for i in start..points.len() {
        subset.push(i);
        if hull_search(points, target, max, i + 1, subset) {
            return true;
        }
        subset.pop();
    }
    false
}

fn barycentric_nonnegative(points: &[RatVector], target: &[Rational], subset: &[usize]) -> bool {
    let dim = target.len();
    let mut rows: Vec<RatVector> = (0..dim)
        .map(|k| subset.iter().map(|&i| points[i][k].clone()).collect())
        .collect();
    rows.push(vec![rational(1); subset.len()]);
    let m = Matrix::from_rows(subset.len(), rows).expect("uniform lengths");
    if m.rank() < subset.len() {
        return false;
    }
    let mut rhs = target.to_vec();
    rhs.push(rational(1));
    match m.solve(&rhs).expect("lengths match") {
        Some(l) => l.iter().all(|x| !x.is_negative()),
        None => false,
    }
}

fn check_subtorus(space: &GkmSpace, subtorus: &Subtorus) -> Result<(), SpaceError> {
    if subtorus.ambient_rank() != space.rank() {
        return Err(SpaceError::RankMismatch {
            left: space.rank(),
            right: subtorus.ambient_rank(),
        });
    }
    Ok(())
}

pub fn walls(space: &GkmSpace) -> Result<Vec<Wall>, SpaceError> {
    Ok(MomentData::of(space)?.walls())
}

pub fn wall_normals(space: &GkmSpace) -> Result<Vec<IntVector>, SpaceError> {
    Ok(MomentData::of(space)?.wall_normals())
}

/// Wall normals of the moment data projected to `t*`: the directions in `t`
/// used by default for kernels over a subtorus.
pub fn wall_normals_for(space: &GkmSpace, subtorus: &Subtorus) -> Result<Vec<IntVector>, SpaceError> {
    Ok(MomentData::projected(space, subtorus)?.wall_normals())
}

pub fn is_regular_value(space: &GkmSpace, mu: &[Rational], subtorus: &Subtorus) -> Result<bool, SpaceError> {
    MomentData::projected(space, subtorus)?.is_regular_value(mu)
}

/// Cartesian product with the moment map `Phi_a + dilation * Phi_b`.
pub fn product(a: &GkmSpace, b: &GkmSpace, dilation: Rational) -> Result<GkmSpace, SpaceError> {
    if a.rank() != b.rank() {
        return Err(SpaceError::RankMismatch {
            left: a.rank(),
            right: b.rank(),
        });
    }
    if !dilation.is_positive() {
        return Err(SpaceError::BadDilation(dilation.to_string()));
    }
    let name = |p: &str, q: &str| format!("({p},{q})");
    let mut points = Vec::new();
    for p in &a.points {
        for q in &b.points {
            points.push(FixedPoint {
                name: name(&p.name, &q.name),
                moment: p.moment.iter().zip(&q.moment).map(|(x, y)| x + &dilation * y).collect(),
                weights: p.weights.iter().chain(&q.weights).cloned().collect(),
            });
        }
    }
    let mut edges = Vec::new();
    for e in &a.edges {
        for q in &b.points {
            edges.push(GkmEdge {
                from: name(&e.from, &q.name),
                to: name(&e.to, &q.name),
                weight: e.weight.clone(),
            });
        }
    }
    for p in &a.points {
        for e in &b.edges {
            edges.push(GkmEdge {
                from: name(&p.name, &e.from),
                to: name(&p.name, &e.to),
                weight: e.weight.clone(),
            });
        }
    }
    let mut out = GkmSpace::new(a.rank(), a.complex_dim + b.complex_dim, points, edges);
    out.provenance = Provenance::Product {
        left: Arc::new(a.clone()),
        right: Arc::new(b.clone()),
        dilation,
    };
    Ok(out)
}

/// The space with its torus restricted to a subtorus.
#[derive(Clone, Debug)]
pub struct Projection {
    pub space: GkmSpace,
    /// `(point, original weight)` for every weight killed by the projection.
    pub zero_weights: Vec<(String, IntVector)>,
    /// Whether the subtorus has the same fixed points as the full torus.
    pub generic: bool,
}

pub fn project_moment(space: &GkmSpace, subtorus: &Subtorus) -> Result<Projection, SpaceError> {
    check_subtorus(space, subtorus)?;
    let mut zero_weights = Vec::new();
    let points = space
        .points
        .iter()
        .map(|p| {
            let weights = p
                .weights
                .iter()
                .map(|w| {
                    let pw = subtorus.project_weight(w);
                    if pw.iter().all(|&x| x == 0) {
                        zero_weights.push((p.name.clone(), w.clone()));
                    }
                    pw
                })
                .collect();
            FixedPoint {
                name: p.name.clone(),
                moment: subtorus.project(&p.moment),
                weights,
            }
        })
        .collect();
    let edges = space
        .edges
        .iter()
        .filter_map(|e| {
            let w = subtorus.project_weight(&e.weight);
            w.iter().any(|&x| x != 0).then(|| GkmEdge {
                from: e.from.clone(),
                to: e.to.clone(),
                weight: primitive(&w),
            })
        })
        .collect();
    let mut projected = GkmSpace::new(subtorus.rank(), space.complex_dim, points, edges);
    projected.provenance = Provenance::Restricted {
        parent: Arc::new(space.clone()),
        subtorus: subtorus.clone(),
    };
    Ok(Projection {
        space: projected,
        generic: zero_weights.is_empty(),
        zero_weights,
    })
}
