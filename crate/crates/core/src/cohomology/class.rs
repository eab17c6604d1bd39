use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use super::CohomologyError;
use crate::linalg::monomials;
use crate::space::{weight_form, GkmSpace, Provenance};
use crate::{MultiPoly, RatVector, Rational};

/// A homogeneous equivariant class, stored as its restrictions to the fixed
/// points (in the order of `space.points`).
#[derive(Clone, Debug)]
pub struct EquivariantClass {
    space: Arc<GkmSpace>,
    restrictions: Vec<MultiPoly>,
    degree: u32,
}

pub(crate) fn same_space(a: &Arc<GkmSpace>, b: &Arc<GkmSpace>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl PartialEq for EquivariantClass {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.restrictions == other.restrictions && same_space(&self.space, &other.space)
    }
}

impl EquivariantClass {
    /// Checks shape and homogeneity; GKM divisibility is checked separately
    /// by [`gkm_check`].
    pub fn new(space: Arc<GkmSpace>, restrictions: Vec<MultiPoly>, degree: u32) -> Result<Self, CohomologyError> {
        if !degree.is_multiple_of(2) {
            return Err(CohomologyError::OddDegree(degree));
        }
        if restrictions.len() != space.points.len() {
            return Err(CohomologyError::MissingRestriction {
                expected: space.points.len(),
                actual: restrictions.len(),
            });
        }
        for (p, f) in space.points.iter().zip(&restrictions) {
            let homogeneous = f.is_zero() || (f.is_homogeneous() && f.degree() == Some(degree / 2));
            if f.rank() != space.rank() || !homogeneous {
                return Err(CohomologyError::NotHomogeneous {
                    point: p.name.clone(),
                    degree,
                });
            }
        }
        Ok(Self {
            space,
            restrictions,
            degree,
        })
    }

    pub fn zero(space: Arc<GkmSpace>, degree: u32) -> Self {
        let restrictions = vec![MultiPoly::zero(space.rank()); space.points.len()];
        Self {
            space,
            restrictions,
            degree,
        }
    }

    pub fn unit(space: Arc<GkmSpace>) -> Self {
        let restrictions = vec![MultiPoly::one(space.rank()); space.points.len()];
        Self {
            space,
            restrictions,
            degree: 0,
        }
    }

    /// `u_i`: the generator `x_i` of `H^2(pt)` pulled back to the space.
    pub fn generator(space: Arc<GkmSpace>, i: usize) -> Self {
        let unit = Self::unit(space);
        let x = MultiPoly::var(unit.space.rank(), i);
        unit.module_action(&x).expect("homogeneous generator")
    }

    /// The class restricting to `<Phi(p), x>` at each fixed point.
    pub fn moment_class(space: Arc<GkmSpace>) -> Self {
        let restrictions = (0..space.points.len()).map(|i| space.moment_form(i)).collect();
        Self {
            space,
            restrictions,
            degree: 2,
        }
    }

    pub fn space(&self) -> &Arc<GkmSpace> {
        &self.space
    }

    pub fn restrictions(&self) -> &[MultiPoly] {
        &self.restrictions
    }

    pub fn restriction(&self, name: &str) -> Option<&MultiPoly> {
        self.space.point_index(name).map(|i| &self.restrictions[i])
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.restrictions.iter().all(|f| f.is_zero())
    }

    fn check_compatible(&self, other: &Self) -> Result<(), CohomologyError> {
        if same_space(&self.space, &other.space) {
            Ok(())
        } else {
            Err(CohomologyError::SpaceMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, CohomologyError> {
        self.check_compatible(other)?;
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(CohomologyError::NotHomogeneous {
                point: "sum".into(),
                degree: self.degree,
            });
        }
        let degree = if self.is_zero() { other.degree } else { self.degree };
        let restrictions = self
            .restrictions
            .iter()
            .zip(&other.restrictions)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            space: self.space.clone(),
            restrictions,
            degree,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CohomologyError> {
        self.add(&other.scale(&-Rational::from_integer(1.into())))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            space: self.space.clone(),
            restrictions: self.restrictions.iter().map(|f| f.scale(c)).collect(),
            degree: self.degree,
        }
    }

    /// Pointwise product of restrictions.
    pub fn mul(&self, other: &Self) -> Result<Self, CohomologyError> {
        self.check_compatible(other)?;
        let restrictions = self
            .restrictions
            .iter()
            .zip(&other.restrictions)
            .map(|(a, b)| a * b)
            .collect();
        Ok(Self {
            space: self.space.clone(),
            restrictions,
            degree: self.degree + other.degree,
        })
    }

    /// Multiply every restriction by a homogeneous polynomial `h`.
    pub fn module_action(&self, h: &MultiPoly) -> Result<Self, CohomologyError> {
        if h.rank() != self.space.rank() {
            return Err(crate::linalg::LinalgError::RankMismatch {
                left: self.space.rank(),
                right: h.rank(),
            }
            .into());
        }
        if !h.is_homogeneous() {
            return Err(CohomologyError::NotHomogeneous {
                point: "multiplier".into(),
                degree: self.degree,
            });
        }
        let extra = h.degree().unwrap_or(0) * 2;
        Ok(Self {
            space: self.space.clone(),
            restrictions: self.restrictions.iter().map(|f| f * h).collect(),
            degree: self.degree + extra,
        })
    }

    /// Coefficients in the fixed-point monomial layout: for each fixed point
    /// in order, the coefficients of the degree-`k` monomials.
    pub fn to_vector(&self) -> RatVector {
        let mons = monomials(self.space.rank(), self.degree / 2);
        self.restrictions
            .iter()
            .flat_map(|f| mons.iter().map(move |m| f.coefficient(m)))
            .collect()
    }

    pub fn from_vector(space: Arc<GkmSpace>, degree: u32, v: &[Rational]) -> Self {
        let mons = monomials(space.rank(), degree / 2);
        let restrictions = v
            .chunks(mons.len().max(1))
            .take(space.points.len())
            .map(|chunk| {
                MultiPoly::from_terms(
                    space.rank(),
                    mons.iter()
                        .cloned()
                        .zip(chunk.iter().cloned())
                        .filter(|(_, c)| !c.is_zero()),
                )
            })
            .collect::<Vec<_>>();
        let restrictions = if mons.is_empty() {
            vec![MultiPoly::zero(space.rank()); space.points.len()]
        } else {
            restrictions
        };
        Self {
            space,
            restrictions,
            degree,
        }
    }
}

impl fmt::Display for EquivariantClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .space
            .points
            .iter()
            .zip(&self.restrictions)
            .map(|(p, r)| format!("{}: {}", p.name, r))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Divisibility of restriction differences by every edge weight.
pub fn gkm_check(class: &EquivariantClass) -> Result<bool, CohomologyError> {
    let space = class.space();
    for (e, (a, b)) in space.edges.iter().zip(space.edge_indices()?) {
        let diff = &class.restrictions[a] - &class.restrictions[b];
        if diff.divide_by_linear(&weight_form(&e.weight))?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(a ⊗ b)|_(p,q) = a|_p * b|_q` on a space built by `product`.
pub fn kunneth(
    a: &EquivariantClass,
    b: &EquivariantClass,
    product: &Arc<GkmSpace>,
) -> Result<EquivariantClass, CohomologyError> {
    let Provenance::Product { left, right, .. } = &product.provenance else {
        return Err(CohomologyError::Provenance("target space is not a product".into()));
    };
    if !same_space(left, a.space()) || !same_space(right, b.space()) {
        return Err(CohomologyError::Provenance("factors do not match the product".into()));
    }
    let mut restrictions = Vec::with_capacity(product.points.len());
    for fa in a.restrictions() {
        for fb in b.restrictions() {
            restrictions.push(fa * fb);
        }
    }
    Ok(EquivariantClass {
        space: product.clone(),
        restrictions,
        degree: a.degree + b.degree,
    })
}

/// Pull back along `t -> g`: substitute `x_i = sum_j incl[i][j] s_j`. The
/// target must be the restriction of the class's space to a subtorus.
pub fn forget_into(class: &EquivariantClass, target: &Arc<GkmSpace>) -> Result<EquivariantClass, CohomologyError> {
    let Provenance::Restricted { parent, subtorus } = &target.provenance else {
        return Err(CohomologyError::Provenance(
            "target is not restricted to a subtorus".into(),
        ));
    };
    if !same_space(parent, class.space()) {
        return Err(CohomologyError::Provenance(
            "class does not live on the parent space".into(),
        ));
    }
    let map = subtorus.substitution();
    let restrictions = class
        .restrictions
        .iter()
        .map(|f| f.substitute_linear(&map, subtorus.rank()))
        .collect();
    Ok(EquivariantClass {
        space: target.clone(),
        restrictions,
        degree: class.degree,
    })
}

/// Forget to a subtorus, building the restricted space on the fly.
pub fn forget_to_subtorus(
    class: &EquivariantClass,
    subtorus: &crate::space::Subtorus,
) -> Result<EquivariantClass, CohomologyError> {
    let target = Arc::new(crate::space::project_moment(class.space(), subtorus)?.space);
    forget_into(class, &target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::catalog;
    use crate::space::{product, Subtorus};
    use crate::{rational, MultiPoly};

    fn x(rank: usize, i: usize) -> MultiPoly {
        MultiPoly::var(rank, i)
    }

    #[test]
    fn cp1_checks() {
        let s = Arc::new(catalog::cp1());
        let ok = EquivariantClass::new(s.clone(), vec![MultiPoly::zero(1), x(1, 0)], 2).unwrap();
        assert!(gkm_check(&ok).unwrap());
        let bad = EquivariantClass::new(s, vec![MultiPoly::zero(1), MultiPoly::one(1)], 0).unwrap();
        assert!(!gkm_check(&bad).unwrap());
    }

    #[test]
    fn cp2_x_class() {
        let s = Arc::new(catalog::cp2());
        let c = EquivariantClass::new(s, vec![MultiPoly::zero(2), x(2, 0), x(2, 1)], 2).unwrap();
        assert!(gkm_check(&c).unwrap());
        let sq = c.mul(&c).unwrap();
        assert_eq!(sq.restrictions()[1], x(2, 0).pow(2));
        assert_eq!(sq.restrictions()[2], x(2, 1).pow(2));
        assert!(gkm_check(&sq).unwrap());
        assert_eq!(EquivariantClass::unit(c.space().clone()).mul(&c).unwrap(), c);
    }

    #[test]
    fn wrong_shapes_rejected() {
        let s = Arc::new(catalog::cp2());
        assert!(EquivariantClass::new(s.clone(), vec![MultiPoly::zero(2)], 2).is_err());
        assert!(EquivariantClass::new(s.clone(), vec![MultiPoly::one(2); 3], 2).is_err());
        assert!(EquivariantClass::new(s, vec![MultiPoly::one(2); 3], 1).is_err());
    }

    #[test]
    fn generators_restrict_to_themselves() {
        let s = Arc::new(catalog::cp2xcp2(3));
        let u1 = EquivariantClass::generator(s.clone(), 0);
        let u2 = EquivariantClass::generator(s, 1);
        assert!(u1.restrictions().iter().all(|f| *f == x(2, 0)));
        let prod = u1.mul(&u2).unwrap();
        assert!(prod.restrictions().iter().all(|f| *f == &x(2, 0) * &x(2, 1)));
        assert_eq!(u1.module_action(&MultiPoly::one(2)).unwrap(), u1);
    }

    #[test]
    fn kunneth_products() {
        let cp2 = catalog::cp2();
        let s = Arc::new(product(&cp2, &cp2, rational(3)).unwrap());
        let left = match &s.provenance {
            Provenance::Product { left, .. } => left.clone(),
            _ => unreachable!(),
        };
        let xc = catalog::cp2_x(&left);
        let one = EquivariantClass::unit(left.clone());
        let x1 = kunneth(&xc, &one, &s).unwrap();
        let x2 = kunneth(&one, &xc, &s).unwrap();
        let xx = kunneth(&xc, &xc, &s).unwrap();
        assert_eq!(x1.mul(&x2).unwrap(), xx);
        assert_eq!(xx.restriction("(p2,p2)").unwrap(), &x(2, 1).pow(2));
        assert_eq!(kunneth(&one, &one, &s).unwrap(), EquivariantClass::unit(s.clone()));
        assert!(gkm_check(&xx).unwrap());
        assert!(kunneth(&xc, &one, &Arc::new(cp2)).is_err());
    }

    #[test]
    fn vector_round_trip() {
        let s = Arc::new(catalog::cp2());
        let c = catalog::cp2_x(&s)
            .mul(&EquivariantClass::generator(s.clone(), 1))
            .unwrap();
        let v = c.to_vector();
        assert_eq!(v.len(), 9);
        assert_eq!(EquivariantClass::from_vector(s, 4, &v), c);
    }

    #[test]
    fn forget_substitutes() {
        let s = Arc::new(catalog::cp2());
        let t = Subtorus::from_columns(2, vec![vec![1, 2]]).unwrap();
        let u1 = forget_to_subtorus(&EquivariantClass::generator(s.clone(), 0), &t).unwrap();
        assert!(u1.restrictions().iter().all(|f| *f == x(1, 0)));
        let u2 = forget_to_subtorus(&EquivariantClass::generator(s.clone(), 1), &t).unwrap();
        assert!(u2.restrictions().iter().all(|f| *f == x(1, 0).scale(&rational(2))));
        let id = forget_to_subtorus(&catalog::cp2_x(&s), &Subtorus::full(2)).unwrap();
        assert_eq!(id.restrictions(), catalog::cp2_x(&s).restrictions());
    }
}
