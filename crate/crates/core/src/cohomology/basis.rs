use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use super::class::{forget_into, same_space};
use super::morse::{generic_direction, morse_counts};
use super::{CohomologyError, EquivariantClass};
use crate::linalg::{monomial_count, monomials, Matrix, Monomial};
use crate::space::{canonical, multiple_of, parallel, weight_form, GkmSpace, Provenance};
use crate::{rational, MultiPoly, RatSubspace, RatVector, Rational};

/// A basis of `H^degree` as a subspace of the fixed-point coefficient
/// space. The basis classes are the reduced echelon rows, so coordinates of
/// a class are its entries at the pivot columns.
#[derive(Clone, Debug)]
pub struct DegreeBasis {
    space: Arc<GkmSpace>,
    degree: u32,
    span: RatSubspace,
    classes: Vec<EquivariantClass>,
}

impl DegreeBasis {
    fn from_span(space: Arc<GkmSpace>, degree: u32, span: RatSubspace) -> Self {
        let classes = span
            .basis_vectors()
            .iter()
            .map(|v| EquivariantClass::from_vector(space.clone(), degree, v))
            .collect();
        Self {
            space,
            degree,
            span,
            classes,
        }
    }

    pub fn space(&self) -> &Arc<GkmSpace> {
        &self.space
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[EquivariantClass] {
        &self.classes
    }

    pub fn span(&self) -> &RatSubspace {
        &self.span
    }

    /// Coordinates of a class of this degree in the basis.
    pub fn coordinates(&self, class: &EquivariantClass) -> Result<RatVector, CohomologyError> {
        if !same_space(class.space(), &self.space) {
            return Err(CohomologyError::SpaceMismatch);
        }
        if class.degree() != self.degree && !class.is_zero() {
            return Err(CohomologyError::NotAClass(self.degree));
        }
        let v = if class.degree() == self.degree {
            class.to_vector()
        } else {
            vec![Rational::zero(); self.span.ambient_dim()]
        };
        self.span
            .coordinates(&v)?
            .ok_or(CohomologyError::NotAClass(self.degree))
    }

    pub fn class_from_coordinates(&self, coords: &[Rational]) -> Result<EquivariantClass, CohomologyError> {
        let v = self.span.basis().combine_rows(coords)?;
        Ok(EquivariantClass::from_vector(self.space.clone(), self.degree, &v))
    }
}

/// Row accumulator for linear conditions on the coefficient vector, keyed
/// by (condition family, division step, remainder monomial).
struct Conditions {
    unknowns: usize,
    rows: BTreeMap<(usize, usize, Monomial), RatVector>,
    family: usize,
}

impl Conditions {
    fn new(unknowns: usize) -> Self {
        Self {
            unknowns,
            rows: BTreeMap::new(),
            family: 0,
        }
    }

    fn next_family(&mut self) {
        self.family += 1;
    }

    fn add(&mut self, step: usize, residue: &MultiPoly, unknown: usize, sign: &Rational) {
        for (m, c) in residue.terms() {
            let row = self
                .rows
                .entry((self.family, step, m.clone()))
                .or_insert_with(|| vec![Rational::zero(); self.unknowns]);
            row[unknown] += c * sign;
        }
    }

    fn solutions(self) -> Result<Vec<RatVector>, CohomologyError> {
        let rows: Vec<RatVector> = self.rows.into_values().collect();
        Ok(Matrix::from_rows(self.unknowns, rows)?.nullspace())
    }
}

/// Remainders of successive division by `alpha`; all vanish iff
/// `alpha^power` divides `f`. The map is linear in `f`.
fn power_residues(f: &MultiPoly, alpha: &MultiPoly, power: usize) -> Result<Vec<MultiPoly>, CohomologyError> {
    let mut out = Vec::with_capacity(power);
    let mut cur = f.clone();
    for _ in 0..power {
        let (q, r) = cur.div_rem_linear(alpha)?;
        out.push(r);
        cur = q;
    }
    Ok(out)
}

/// Solve the fixed-point conditions in degree `degree` from scratch:
/// divisibility across every edge, plus integrality over the fixed
/// components of codimension-one subtori that carry several parallel
/// weights (where edge conditions alone are too weak).
fn solve_conditions(space: &GkmSpace, degree: u32) -> Result<Vec<RatVector>, CohomologyError> {
    let d = space.rank();
    let k = degree / 2;
    let mons = monomials(d, k);
    let width = mons.len();
    let n = space.points.len();
    let mut cond = Conditions::new(n * width);
    let one = rational(1);
    let minus = -rational(1);
    let mono = |m: &Monomial| MultiPoly::monomial(m.clone(), rational(1));

    let idx = space.edge_indices()?;
    for (e, &(a, b)) in space.edges.iter().zip(&idx) {
        cond.next_family();
        let alpha = weight_form(&e.weight);
        for (j, m) in mons.iter().enumerate() {
            let (_, r) = mono(m).div_rem_linear(&alpha)?;
            cond.add(0, &r, a * width + j, &one);
            cond.add(0, &r, b * width + j, &minus);
        }
    }

    for (dir, comp, power) in parallel_components(space, &idx) {
        let alpha = weight_form(&dir);
        for j in 0..power {
            cond.next_family();
            for &p in &comp {
                // Euler class of the component's tangent space at p is c_p * alpha^power
                let c_p = space.points[p]
                    .weights
                    .iter()
                    .filter(|w| parallel(w, &dir))
                    .fold(rational(1), |acc, w| {
                        acc * multiple_of(&crate::to_rational_vector(w), &dir).expect("parallel")
                    });
                let factor = space.moment_form(p).pow(j as u32).scale(&(rational(1) / c_p));
                for (i, m) in mons.iter().enumerate() {
                    let residues = power_residues(&(&mono(m) * &factor), &alpha, power)?;
                    for (step, r) in residues.iter().enumerate() {
                        cond.add(step, r, p * width + i, &one);
                    }
                }
            }
        }
    }
    cond.solutions()
}

/// Connected components of the subgraph of edges parallel to a direction
/// whose points carry at least two weights parallel to it, with that
/// multiplicity.
fn parallel_components(space: &GkmSpace, idx: &[(usize, usize)]) -> Vec<(Vec<i64>, Vec<usize>, usize)> {
    let mut dirs: Vec<Vec<i64>> = space.edges.iter().map(|e| canonical(&e.weight)).collect();
    dirs.sort();
    dirs.dedup();
    let n = space.points.len();
    let mut out = Vec::new();
    for dir in dirs {
        let mult: Vec<usize> = space
            .points
            .iter()
            .map(|p| p.weights.iter().filter(|w| parallel(w, &dir)).count())
            .collect();
        let mut comp: Vec<usize> = (0..n).collect();
        fn root(comp: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while comp[r] != r {
                r = comp[r];
            }
            comp[i] = r;
            r
        }
        for (e, &(a, b)) in space.edges.iter().zip(idx) {
            if parallel(&e.weight, &dir) {
                let (ra, rb) = (root(&mut comp, a), root(&mut comp, b));
                comp[ra] = rb;
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..n {
            let r = root(&mut comp, i);
            groups.entry(r).or_default().push(i);
        }
        for pts in groups.into_values() {
            let m = pts.iter().map(|&p| mult[p]).min().unwrap_or(0);
            if pts.len() >= 2 && m >= 2 {
                out.push((dir.clone(), pts, m));
            }
        }
    }
    out
}

/// Basis of `H^degree` of the space.
///
/// For spaces restricted to a subtorus the basis is the image of the
/// parent's basis under the forgetful map, which is onto. Otherwise the
/// fixed-point conditions are solved directly. Whenever the data admits a
/// generic direction, the dimension is cross-checked against the Morse
/// count and a disagreement is an error.
pub fn basis(space: &Arc<GkmSpace>, degree: u32) -> Result<DegreeBasis, CohomologyError> {
    if !degree.is_multiple_of(2) {
        return Err(CohomologyError::OddDegree(degree));
    }
    let ambient = space.points.len() * monomial_count(space.rank(), degree / 2);
    let vectors = match &space.provenance {
        Provenance::Restricted { parent, .. } => {
            let up = basis(parent, degree)?;
            up.classes()
                .iter()
                .map(|c| forget_into(c, space).map(|f| f.to_vector()))
                .collect::<Result<Vec<_>, _>>()?
        }
        _ => solve_conditions(space, degree)?,
    };
    let span = RatSubspace::span(ambient, &vectors)?;
    if let Some(xi) = generic_direction(space) {
        let morse = morse_counts(space, &xi, degree)?[(degree / 2) as usize];
        if morse != span.dim() {
            return Err(CohomologyError::MorseMismatch {
                degree,
                solved: span.dim(),
                morse,
            });
        }
    }
    Ok(DegreeBasis::from_span(space.clone(), degree, span))
}

/// Bases of every even degree up to a bound.
#[derive(Clone, Debug)]
pub struct GradedCohomology {
    space: Arc<GkmSpace>,
    bases: Vec<DegreeBasis>,
}

impl GradedCohomology {
    pub fn new(space: Arc<GkmSpace>, degree_bound: u32) -> Result<Self, CohomologyError> {
        let bases = (0..=degree_bound / 2)
            .map(|k| basis(&space, 2 * k))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { space, bases })
    }

    pub fn space(&self) -> &Arc<GkmSpace> {
        &self.space
    }

    pub fn degree_bound(&self) -> u32 {
        2 * (self.bases.len() as u32 - 1)
    }

    pub fn basis(&self, degree: u32) -> Option<&DegreeBasis> {
        if !degree.is_multiple_of(2) {
            return None;
        }
        self.bases.get((degree / 2) as usize)
    }

    pub fn bases(&self) -> &[DegreeBasis] {
        &self.bases
    }

    /// `dim H^{2k}` for `k = 0..=bound/2`.
    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(|b| b.dim()).collect()
    }
}
