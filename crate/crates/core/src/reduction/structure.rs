use std::fmt;

use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::kernel::KernelSlice;
use super::ReductionError;
use crate::cohomology::{EquivariantClass, GradedCohomology};
use crate::Rational;

/// A coset representative of `H^degree / kernel`: the basis class at a
/// coordinate outside the kernel's pivots.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct Product {
    pub left: String,
    pub right: String,
    /// `None` when the product's degree exceeds the bound.
    #[serde(serialize_with = "ser_terms")]
    pub result: Option<Vec<(String, Rational)>>,
}

fn ser_terms<S: Serializer>(terms: &Option<Vec<(String, Rational)>>, s: S) -> Result<S::Ok, S::Error> {
    match terms {
        None => s.serialize_str("truncated"),
        Some(t) => s.collect_seq(t.iter().map(|(n, c)| (n, c.to_string()))),
    }
}

/// Multiplication table of `H_G / ker` in a basis of coset representatives.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct StructureConstants {
    pub generators: Vec<Generator>,
    pub products: Vec<Product>,
}

impl StructureConstants {
    pub fn compute(cohomology: &GradedCohomology, slices: &[KernelSlice]) -> Result<Self, ReductionError> {
        let bound = cohomology.degree_bound();
        let mut reps: Vec<(Generator, EquivariantClass)> = Vec::new();
        for (basis, slice) in cohomology.bases().iter().zip(slices) {
            for (i, idx) in slice.subspace.complement_indices().into_iter().enumerate() {
                reps.push((
                    Generator {
                        name: format!("e{}_{}", basis.degree(), i),
                        degree: basis.degree(),
                    },
                    basis.classes()[idx].clone(),
                ));
            }
        }
        let mut products = Vec::new();
        for a in 0..reps.len() {
            for b in a..reps.len() {
                let (ga, ca) = &reps[a];
                let (gb, cb) = &reps[b];
                let degree = ga.degree + gb.degree;
                let result = if degree > bound {
                    None
                } else {
                    let basis = cohomology.basis(degree).expect("degree within bound");
                    let slice = &slices[(degree / 2) as usize];
                    let coords = basis.coordinates(&ca.mul(cb)?)?;
                    let residual = slice.subspace.residual(&coords)?;
                    Some(
                        slice
                            .subspace
                            .complement_indices()
                            .into_iter()
                            .enumerate()
                            .filter(|(_, idx)| !residual[*idx].is_zero())
                            .map(|(i, idx)| (format!("e{degree}_{i}"), residual[idx].clone()))
                            .collect(),
                    )
                };
                products.push(Product {
                    left: ga.name.clone(),
                    right: gb.name.clone(),
                    result,
                });
            }
        }
        Ok(Self {
            generators: reps.into_iter().map(|(g, _)| g).collect(),
            products,
        })
    }

    pub fn generators_in(&self, degree: u32) -> Vec<&Generator> {
        self.generators.iter().filter(|g| g.degree == degree).collect()
    }

    /// Coefficient of `target` in `left * right`.
    pub fn coefficient(&self, left: &str, right: &str, target: &str) -> Option<Rational> {
        let p = self
            .products
            .iter()
            .find(|p| (p.left == left && p.right == right) || (p.left == right && p.right == left))?;
        let terms = p.result.as_ref()?;
        Some(
            terms
                .iter()
                .find(|(n, _)| n == target)
                .map(|(_, c)| c.clone())
                .unwrap_or_else(Rational::zero),
        )
    }

    /// Pairing matrix of the generators of one degree into a one-dimensional
    /// quotient in degree `2 * degree`, if that quotient is one-dimensional.
    pub fn pairing_matrix(&self, degree: u32) -> Option<Vec<Vec<Rational>>> {
        let gens = self.generators_in(degree);
        let top = self.generators_in(2 * degree);
        if top.len() != 1 {
            return None;
        }
        gens.iter()
            .map(|a| {
                gens.iter()
                    .map(|b| self.coefficient(&a.name, &b.name, &top[0].name))
                    .collect::<Option<Vec<_>>>()
            })
            .collect()
    }
}

impl fmt::Display for StructureConstants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "generators:")?;
        for g in &self.generators {
            writeln!(f, "  {} (degree {})", g.name, g.degree)?;
        }
        writeln!(f, "products:")?;
        for p in &self.products {
            let rhs = match &p.result {
                None => "(beyond degree bound)".to_string(),
                Some(t) if t.is_empty() => "0".to_string(),
                Some(t) => t
                    .iter()
                    .map(|(n, c)| format!("{c}*{n}"))
                    .collect::<Vec<_>>()
                    .join(" + "),
            };
            writeln!(f, "  {} * {} = {}", p.left, p.right, rhs)?;
        }
        Ok(())
    }
}
