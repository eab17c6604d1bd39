use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::structure::StructureConstants;
use super::ReductionError;
use crate::cohomology::{EquivariantClass, GradedCohomology};
use crate::linalg::{monomial_count, Matrix};
use crate::space::{is_regular_value, pair, wall_normals_for, GkmSpace, Subtorus};
use crate::{IntVector, RatSubspace, RatVector, Rational};

/// The fixed points strictly above the hyperplane through `mu` normal to
/// `xi`, for a direction `xi` in the subtorus.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct HalfSpaceCondition {
    pub xi: IntVector,
    #[serde(serialize_with = "crate::report::ser_rationals")]
    pub mu: RatVector,
    pub positive_points: Vec<String>,
}

/// The degree-`degree` piece of a kernel, in coordinates of the degree
/// basis of `H_G`.
#[derive(Clone, PartialEq, Debug)]
pub struct KernelSlice {
    pub degree: u32,
    pub subspace: RatSubspace,
}

impl KernelSlice {
    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }
}

/// Which directions in the subtorus generate the kernel.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DirectionSet {
    Walls,
    WallsPlusSamples { count: usize, seed: u64 },
    Explicit(Vec<IntVector>),
}

/// Whether a class lies in the kernel, and which of the default directions
/// already kill it on their own.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct KernelVerdict {
    pub in_kernel: bool,
    pub witnesses: Vec<IntVector>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SufficiencyReport {
    pub holds: bool,
    pub wall_dims: Vec<usize>,
    pub sampled_dims: Vec<usize>,
    pub samples_used: usize,
    /// Samples rejected because a fixed point sat on their hyperplane.
    pub samples_skipped: usize,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct ReductionReport {
    #[serde(serialize_with = "crate::report::ser_rationals")]
    pub mu: RatVector,
    pub subtorus: Vec<IntVector>,
    /// True when the subtorus is proper, so the numbers describe
    /// `H_{G/T}` of the reduction rather than its ordinary cohomology.
    pub equivariant: bool,
    pub degree_bound: u32,
    pub degrees: Vec<u32>,
    pub dim_h: Vec<usize>,
    pub dim_kernel: Vec<usize>,
    pub betti: Vec<usize>,
    pub directions: Vec<IntVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure: Option<StructureConstants>,
}

impl fmt::Display for ReductionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mu: Vec<String> = self.mu.iter().map(|r| r.to_string()).collect();
        writeln!(f, "mu = ({})", mu.join(", "))?;
        writeln!(f, "subtorus columns = {:?}", self.subtorus)?;
        writeln!(f, "directions = {:?}", self.directions)?;
        writeln!(f, "{:>6} {:>8} {:>8} {:>8}", "degree", "dim H", "kernel", "betti")?;
        for i in 0..self.degrees.len() {
            writeln!(
                f,
                "{:>6} {:>8} {:>8} {:>8}",
                self.degrees[i], self.dim_h[i], self.dim_kernel[i], self.betti[i]
            )?;
        }
        if let Some(s) = &self.structure {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Reproducible nonzero integer directions with entries in `[-9, 9]`.
pub fn sample_directions(rank: usize, count: usize, seed: u64) -> Vec<IntVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            (0..rank)
                .map(|_| {
                    let x: i64 = rng.gen_range(1..=9);
                    if rng.gen_bool(0.5) {
                        x
                    } else {
                        -x
                    }
                })
                .collect()
        })
        .collect()
}

/// The Kirwan map of a space at a regular value of the moment map for a
/// subtorus, with `H_G` computed up to a degree bound.
#[derive(Clone, Debug)]
pub struct KirwanMap {
    space: Arc<GkmSpace>,
    subtorus: Subtorus,
    mu: RatVector,
    cohomology: GradedCohomology,
}

impl KirwanMap {
    /// `degree_bound` defaults to the real dimension of the space.
    pub fn new(
        space: Arc<GkmSpace>,
        subtorus: Subtorus,
        mu: RatVector,
        degree_bound: Option<u32>,
    ) -> Result<Self, ReductionError> {
        space.ensure_valid()?;
        if !is_regular_value(&space, &mu, &subtorus)? {
            return Err(ReductionError::NotRegular);
        }
        let bound = degree_bound.unwrap_or(space.real_dim() as u32);
        let cohomology = GradedCohomology::new(space.clone(), bound)?;
        Ok(Self {
            space,
            subtorus,
            mu,
            cohomology,
        })
    }

    pub fn space(&self) -> &Arc<GkmSpace> {
        &self.space
    }

    pub fn subtorus(&self) -> &Subtorus {
        &self.subtorus
    }

    pub fn mu(&self) -> &[Rational] {
        &self.mu
    }

    pub fn cohomology(&self) -> &GradedCohomology {
        &self.cohomology
    }

    pub fn degree_bound(&self) -> u32 {
        self.cohomology.degree_bound()
    }

    fn basis(&self, degree: u32) -> Result<&crate::cohomology::DegreeBasis, ReductionError> {
        self.cohomology.basis(degree).ok_or(ReductionError::DegreeTooLarge {
            degree,
            bound: self.degree_bound(),
        })
    }

    pub fn condition(&self, xi: &[i64]) -> Result<HalfSpaceCondition, ReductionError> {
        if xi.len() != self.subtorus.rank() {
            return Err(ReductionError::DirectionLength {
                xi: xi.to_vec(),
                expected: self.subtorus.rank(),
                actual: xi.len(),
            });
        }
        if xi.iter().all(|&x| x == 0) {
            return Err(ReductionError::ZeroDirection);
        }
        let rx = crate::to_rational_vector(xi);
        let level = pair(&self.mu, &rx);
        let mut positive_points = Vec::new();
        for p in &self.space.points {
            let h = pair(&self.subtorus.project(&p.moment), &rx);
            if h == level {
                return Err(ReductionError::OnHyperplane {
                    point: p.name.clone(),
                    xi: xi.to_vec(),
                });
            }
            if h > level {
                positive_points.push(p.name.clone());
            }
        }
        Ok(HalfSpaceCondition {
            xi: xi.to_vec(),
            mu: self.mu.clone(),
            positive_points,
        })
    }

    /// Classes of degree `degree` vanishing at every point above the
    /// hyperplane through `mu` normal to `xi`.
    pub fn half_space_kernel(&self, xi: &[i64], degree: u32) -> Result<KernelSlice, ReductionError> {
        let cond = self.condition(xi)?;
        let basis = self.basis(degree)?;
        let width = monomial_count(self.space.rank(), degree / 2);
        let vectors: Vec<RatVector> = basis.classes().iter().map(|c| c.to_vector()).collect();
        let mut rows = Vec::new();
        for name in &cond.positive_points {
            let p = self
                .space
                .point_index(name)
                .expect("condition names come from the space");
            for j in 0..width {
                rows.push(vectors.iter().map(|v| v[p * width + j].clone()).collect());
            }
        }
        let m = Matrix::from_rows(basis.dim(), rows)?;
        let subspace = RatSubspace::span(basis.dim(), &m.nullspace())?;
        Ok(KernelSlice { degree, subspace })
    }

    /// Wall normals of the projected moment data, both orientations.
    pub fn default_directions(&self) -> Result<Vec<IntVector>, ReductionError> {
        Ok(wall_normals_for(&self.space, &self.subtorus)?)
    }

    /// Resolve a direction set. Sampled directions that put a fixed point
    /// on the hyperplane through `mu` are dropped; the count of dropped
    /// samples is returned alongside.
    pub fn directions(&self, set: &DirectionSet) -> Result<(Vec<IntVector>, usize), ReductionError> {
        match set {
            DirectionSet::Walls => Ok((self.default_directions()?, 0)),
            DirectionSet::Explicit(v) => {
                if v.is_empty() {
                    return Err(ReductionError::NoDirections);
                }
                Ok((v.clone(), 0))
            }
            DirectionSet::WallsPlusSamples { count, seed } => {
                let mut out = self.default_directions()?;
                let mut skipped = 0;
                for xi in sample_directions(self.subtorus.rank(), *count, *seed) {
                    match self.condition(&xi) {
                        Ok(_) => out.push(xi),
                        Err(ReductionError::OnHyperplane { .. }) => skipped += 1,
                        Err(e) => return Err(e),
                    }
                }
                Ok((out, skipped))
            }
        }
    }

    /// Degree piece of the ideal generated by the half-space kernels. Each
    /// half-space kernel is already an ideal, so this is the plain span.
    pub fn kernel_ideal(&self, directions: &[IntVector], degree: u32) -> Result<KernelSlice, ReductionError> {
        if directions.is_empty() {
            return Err(ReductionError::NoDirections);
        }
        let dim = self.basis(degree)?.dim();
        let mut span = RatSubspace::zero(dim);
        for xi in directions {
            span = span.sum(&self.half_space_kernel(xi, degree)?.subspace)?;
        }
        Ok(KernelSlice { degree, subspace: span })
    }

    pub fn kernel_slices(&self, directions: &[IntVector]) -> Result<Vec<KernelSlice>, ReductionError> {
        (0..=self.degree_bound() / 2)
            .map(|k| self.kernel_ideal(directions, 2 * k))
            .collect()
    }

    pub fn reduce(&self, set: &DirectionSet, with_structure: bool) -> Result<ReductionReport, ReductionError> {
        let (directions, _) = self.directions(set)?;
        let slices = self.kernel_slices(&directions)?;
        let dim_h = self.cohomology.dims();
        let dim_kernel: Vec<usize> = slices.iter().map(|s| s.dim()).collect();
        let betti = dim_h.iter().zip(&dim_kernel).map(|(h, k)| h - k).collect();
        let structure = if with_structure {
            Some(StructureConstants::compute(&self.cohomology, &slices)?)
        } else {
            None
        };
        Ok(ReductionReport {
            mu: self.mu.clone(),
            subtorus: self.subtorus.columns().to_vec(),
            equivariant: !self.subtorus.is_full(),
            degree_bound: self.degree_bound(),
            degrees: (0..dim_h.len() as u32).map(|k| 2 * k).collect(),
            dim_h,
            dim_kernel,
            betti,
            directions,
            structure,
        })
    }

    /// Membership in the kernel ideal over the default directions.
    pub fn verify_class_in_kernel(&self, class: &EquivariantClass) -> Result<KernelVerdict, ReductionError> {
        let degree = class.degree();
        let basis = self.basis(degree)?;
        let coords = basis.coordinates(class)?;
        let directions = self.default_directions()?;
        let mut witnesses = Vec::new();
        let mut span = RatSubspace::zero(basis.dim());
        for xi in &directions {
            let slice = self.half_space_kernel(xi, degree)?;
            if slice.subspace.contains(&coords)? {
                witnesses.push(xi.clone());
            }
            span = span.sum(&slice.subspace)?;
        }
        Ok(KernelVerdict {
            in_kernel: span.contains(&coords)?,
            witnesses,
        })
    }

    /// Compare kernel dimensions from wall normals alone against wall
    /// normals plus `count` sampled directions, in every degree.
    pub fn wall_sufficiency_check(&self, count: usize, seed: u64) -> Result<SufficiencyReport, ReductionError> {
        let walls = self.default_directions()?;
        let (all, skipped) = self.directions(&DirectionSet::WallsPlusSamples { count, seed })?;
        let wall_dims: Vec<usize> = self.kernel_slices(&walls)?.iter().map(|s| s.dim()).collect();
        let sampled_dims: Vec<usize> = self.kernel_slices(&all)?.iter().map(|s| s.dim()).collect();
        Ok(SufficiencyReport {
            holds: wall_dims == sampled_dims,
            samples_used: all.len() - walls.len(),
            samples_skipped: skipped,
            wall_dims,
            sampled_dims,
        })
    }

    pub fn structure_constants(&self, set: &DirectionSet) -> Result<StructureConstants, ReductionError> {
        let (directions, _) = self.directions(set)?;
        let slices = self.kernel_slices(&directions)?;
        StructureConstants::compute(&self.cohomology, &slices)
    }
}

/// One-shot reduction with wall-normal directions.
pub fn reduce(
    space: &Arc<GkmSpace>,
    mu: &[Rational],
    subtorus: &Subtorus,
    degree_bound: Option<u32>,
) -> Result<ReductionReport, ReductionError> {
    KirwanMap::new(space.clone(), subtorus.clone(), mu.to_vec(), degree_bound)?.reduce(&DirectionSet::Walls, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::catalog;
    use crate::{ratio, rational};

    fn cp1_map() -> KirwanMap {
        KirwanMap::new(Arc::new(catalog::cp1()), Subtorus::full(1), vec![ratio(1, 2)], None).unwrap()
    }

    #[test]
    fn cp1_slices() {
        let k = cp1_map();
        assert_eq!(k.half_space_kernel(&[1], 2).unwrap().dim(), 1);
        assert_eq!(k.half_space_kernel(&[-1], 2).unwrap().dim(), 1);
        assert_eq!(k.kernel_ideal(&[vec![1], vec![-1]], 2).unwrap().dim(), 2);
        assert_eq!(k.kernel_ideal(&[vec![1], vec![-1]], 0).unwrap().dim(), 0);
        assert_eq!(k.condition(&[1]).unwrap().positive_points, vec!["p1".to_string()]);
        assert_eq!(k.half_space_kernel(&[0], 2).unwrap_err(), ReductionError::ZeroDirection);
    }

    #[test]
    fn cp1_reduces_to_a_point() {
        let r = cp1_map().reduce(&DirectionSet::Walls, false).unwrap();
        assert_eq!(r.betti, vec![1, 0]);
    }

    #[test]
    fn cp2_full_torus_reduces_to_a_point() {
        let r = reduce(
            &Arc::new(catalog::cp2()),
            &[ratio(1, 4), ratio(1, 4)],
            &Subtorus::full(2),
            None,
        )
        .unwrap();
        assert_eq!(r.betti, vec![1, 0, 0]);
    }

    #[test]
    fn singular_values_are_rejected() {
        let err = KirwanMap::new(Arc::new(catalog::cp1()), Subtorus::full(1), vec![rational(1)], None).unwrap_err();
        assert_eq!(err, ReductionError::NotRegular);
    }

    #[test]
    fn sampling_is_reproducible() {
        assert_eq!(sample_directions(2, 5, 7), sample_directions(2, 5, 7));
        assert!(sample_directions(3, 50, 1)
            .iter()
            .flatten()
            .all(|&x| x != 0 && x.abs() <= 9));
    }

    #[test]
    fn scaling_does_not_change_slices() {
        let k = KirwanMap::new(
            Arc::new(catalog::cp2xcp2(3)),
            Subtorus::full(2),
            vec![ratio(5, 4), ratio(5, 4)],
            Some(4),
        )
        .unwrap();
        assert_eq!(
            k.half_space_kernel(&[1, 2], 4).unwrap(),
            k.half_space_kernel(&[3, 6], 4).unwrap()
        );
    }
}
