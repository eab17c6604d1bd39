use std::collections::BTreeSet;
use std::sync::Arc;

use super::basis::basis;
use super::{CohomologyError, EquivariantClass};
use crate::linalg::{monomial_count, monomials, Matrix};
use crate::space::{pair_int, weight_form, FixedPoint, GkmSpace};
use crate::{MultiPoly, Rational};

fn check_generic(point: &FixedPoint, xi: &[i64]) -> Result<(), CohomologyError> {
    match point.weights.iter().find(|w| pair_int(w, xi) == 0) {
        Some(w) => Err(CohomologyError::NonGeneric {
            point: point.name.clone(),
            weight: w.clone(),
        }),
        None => Ok(()),
    }
}

/// Twice the number of weights pairing negatively with `xi`.
pub fn morse_index(point: &FixedPoint, xi: &[i64]) -> Result<u32, CohomologyError> {
    check_generic(point, xi)?;
    Ok(2 * point.weights.iter().filter(|w| pair_int(w, xi) < 0).count() as u32)
}

/// Product of the weights pairing negatively with `xi`, as linear forms.
pub fn negative_euler_class(point: &FixedPoint, xi: &[i64]) -> Result<MultiPoly, CohomologyError> {
    check_generic(point, xi)?;
    Ok(point
        .weights
        .iter()
        .filter(|w| pair_int(w, xi) < 0)
        .fold(MultiPoly::one(xi.len()), |acc, w| &acc * &weight_form(w)))
}

/// `sum_p #monomials(k - lambda_p / 2)` for every `k <= degree_bound / 2`.
pub fn morse_counts(space: &GkmSpace, xi: &[i64], degree_bound: u32) -> Result<Vec<usize>, CohomologyError> {
    let half: Vec<u32> = space
        .points
        .iter()
        .map(|p| morse_index(p, xi).map(|l| l / 2))
        .collect::<Result<_, _>>()?;
    Ok((0..=degree_bound / 2)
        .map(|k| {
            half.iter()
                .filter(|&&h| h <= k)
                .map(|&h| monomial_count(space.rank(), k - h))
                .sum()
        })
        .collect())
}

/// A small integer direction pairing nonzero with every weight, if any
/// exists (it does not when some weight is zero).
pub fn generic_direction(space: &GkmSpace) -> Option<Vec<i64>> {
    let d = space.rank();
    let weights: Vec<&Vec<i64>> = space.points.iter().flat_map(|p| &p.weights).collect();
    if d == 0 || weights.iter().any(|w| w.len() != d || w.iter().all(|&x| x == 0)) {
        return None;
    }
    (2i64..).take(1000).find_map(|c| {
        let xi: Vec<i64> = (0..d as u32).map(|i| c.pow(i)).collect();
        weights.iter().all(|w| pair_int(w, &xi) != 0).then_some(xi)
    })
}

fn height(space: &GkmSpace, i: usize, xi: &[i64]) -> Rational {
    space.moment_pairing(i, &crate::to_rational_vector(xi))
}

/// Fails unless `<Phi, xi>` takes distinct values at the fixed points.
pub fn check_separating(space: &GkmSpace, xi: &[i64]) -> Result<(), CohomologyError> {
    let mut seen: Vec<(Rational, usize)> = Vec::new();
    for i in 0..space.points.len() {
        let h = height(space, i, xi);
        if let Some((_, j)) = seen.iter().find(|(v, _)| *v == h) {
            return Err(CohomologyError::Tie(
                space.points[*j].name.clone(),
                space.points[i].name.clone(),
            ));
        }
        seen.push((h, i));
    }
    Ok(())
}

/// Fixed points reachable from `start` along edges on which `<Phi, xi>`
/// strictly increases; includes `start`.
pub fn ascending_reach(space: &GkmSpace, start: usize, xi: &[i64]) -> Result<BTreeSet<usize>, CohomologyError> {
    let idx = space.edge_indices()?;
    let heights: Vec<Rational> = (0..space.points.len()).map(|i| height(space, i, xi)).collect();
    let mut reached = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(p) = stack.pop() {
        for &(a, b) in &idx {
            let next = if a == p {
                b
            } else if b == p {
                a
            } else {
                continue;
            };
            if heights[next] > heights[p] && reached.insert(next) {
                stack.push(next);
            }
        }
    }
    Ok(reached)
}

/// A class of degree `lambda_p` restricting to the negative Euler class at
/// `p` and vanishing outside the ascending reach of `p`.
pub fn flow_up_class(space: &Arc<GkmSpace>, point: usize, xi: &[i64]) -> Result<EquivariantClass, CohomologyError> {
    check_separating(space, xi)?;
    for p in &space.points {
        check_generic(p, xi)?;
    }
    let p = &space.points[point];
    let degree = morse_index(p, xi)?;
    let euler = negative_euler_class(p, xi)?;
    let reach = ascending_reach(space, point, xi)?;
    let b = basis(space, degree)?;
    let mons = monomials(space.rank(), degree / 2);
    let width = mons.len();
    let vectors: Vec<_> = b.classes().iter().map(|c| c.to_vector()).collect();

    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for q in 0..space.points.len() {
        let value = if q == point {
            Some(euler.clone())
        } else if reach.contains(&q) {
            None
        } else {
            Some(MultiPoly::zero(space.rank()))
        };
        let Some(value) = value else { continue };
        for (j, m) in mons.iter().enumerate() {
            rows.push(vectors.iter().map(|v| v[q * width + j].clone()).collect::<Vec<_>>());
            rhs.push(value.coefficient(m));
        }
    }
    let system = Matrix::from_rows(vectors.len(), rows)?;
    let coords = system
        .solve(&rhs)?
        .ok_or_else(|| CohomologyError::Infeasible(p.name.clone()))?;
    b.class_from_coordinates(&coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::gkm_check;
    use crate::report::catalog;

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(2, i)
    }

    #[test]
    fn cp2_indices_and_euler_classes() {
        let s = catalog::cp2();
        let xi = [1, 2];
        let idx: Vec<u32> = s.points.iter().map(|p| morse_index(p, &xi).unwrap()).collect();
        assert_eq!(idx, vec![0, 2, 4]);
        assert_eq!(negative_euler_class(&s.points[0], &xi).unwrap(), MultiPoly::one(2));
        assert_eq!(negative_euler_class(&s.points[1], &xi).unwrap(), -&x(0));
        assert_eq!(
            negative_euler_class(&s.points[2], &xi).unwrap(),
            &(-&x(1)) * &(&x(0) - &x(1))
        );
        let flipped: Vec<u32> = s.points.iter().map(|p| morse_index(p, &[-1, -2]).unwrap()).collect();
        assert_eq!(flipped, vec![4, 2, 0]);
    }

    #[test]
    fn non_generic_direction_names_weight() {
        let s = catalog::cp2();
        match morse_index(&s.points[0], &[1, 0]) {
            Err(CohomologyError::NonGeneric { point, weight }) => {
                assert_eq!(point, "p0");
                assert_eq!(weight, vec![0, 1]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn flow_up_classes_of_cp2() {
        let s = Arc::new(catalog::cp2());
        let xi = [1, 2];
        let min = flow_up_class(&s, 0, &xi).unwrap();
        assert_eq!(min.restrictions()[0], MultiPoly::one(2));
        let mid = flow_up_class(&s, 1, &xi).unwrap();
        assert!(gkm_check(&mid).unwrap());
        assert!(mid.restrictions()[0].is_zero());
        assert_eq!(mid.restrictions()[1], -&x(0));
    }

    #[test]
    fn ties_are_rejected() {
        let s = Arc::new(catalog::cp2());
        assert!(matches!(flow_up_class(&s, 0, &[1, 1]), Err(CohomologyError::Tie(..))));
    }

    #[test]
    fn morse_counts_match_for_several_directions() {
        let s = catalog::su3_hexagon();
        let a = morse_counts(&s, &[1, 2], 6).unwrap();
        let b = morse_counts(&s, &[3, -1], 6).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, vec![1, 4, 9, 15]);
    }
}
