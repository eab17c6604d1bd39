use std::sync::Arc;

use kirwan::reduction::{check_stage_dimensions, DirectionSet, KirwanMap, ReductionError};
use kirwan::report::catalog;
use kirwan::space::{is_regular_value, project_moment, GkmSpace, Subtorus};
use kirwan::{ratio, Rational};
use num_traits::Zero;
use proptest::prelude::*;

fn full(space: GkmSpace, mu: Vec<Rational>) -> KirwanMap {
    let rank = space.rank();
    KirwanMap::new(Arc::new(space), Subtorus::full(rank), mu, None).unwrap()
}

fn trimmed(mut v: Vec<usize>) -> Vec<usize> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

#[test]
fn half_space_kernels_lie_in_the_kernel() {
    let map = full(catalog::cp2xcp2(3), vec![ratio(5, 4), ratio(5, 4)]);
    let walls = map.default_directions().unwrap();
    for degree in [2, 4, 6] {
        let total = map.kernel_ideal(&walls, degree).unwrap();
        for xi in &walls {
            let k = map.half_space_kernel(xi, degree).unwrap();
            assert!(k.subspace.is_subspace_of(&total.subspace).unwrap());
        }
    }
}

#[test]
fn kernel_is_everything_above_the_reduced_dimension() {
    for (space, mu) in [
        (catalog::cp2xcp2(3), vec![ratio(5, 4), ratio(5, 4)]),
        (catalog::su3_hexagon(), vec![ratio(1, 3), ratio(1, 7)]),
        (catalog::cpn(3), vec![ratio(1, 5), ratio(1, 4), ratio(1, 3)]),
    ] {
        let top = (space.real_dim() - 2 * space.rank()) as u32;
        let r = full(space, mu).reduce(&DirectionSet::Walls, false).unwrap();
        for (i, d) in r.degrees.iter().enumerate() {
            if *d > top {
                assert_eq!(r.dim_kernel[i], r.dim_h[i], "degree {d}");
            }
        }
    }
}

#[test]
fn positive_scaling_of_directions() {
    let map = full(catalog::cp2xcp2(3), vec![ratio(5, 4), ratio(5, 4)]);
    for xi in [[1, 1], [1, 0], [-1, 2]] {
        let scaled = [3 * xi[0], 3 * xi[1]];
        for degree in [2, 4] {
            assert_eq!(
                map.half_space_kernel(&xi, degree).unwrap(),
                map.half_space_kernel(&scaled, degree).unwrap()
            );
        }
    }
}

#[test]
fn hexagon_reduces_to_a_sphere() {
    let r = full(catalog::su3_hexagon(), vec![ratio(1, 3), ratio(1, 7)])
        .reduce(&DirectionSet::Walls, false)
        .unwrap();
    assert_eq!(trimmed(r.betti), vec![1, 1]);
}

#[test]
fn dilation_one_central_chamber_is_a_hexagon() {
    // the reduced polygon has six sides, so the toric surface has b2 = 4
    let r = full(catalog::cp2xcp2(1), vec![ratio(3, 4), ratio(3, 4)])
        .reduce(&DirectionSet::Walls, false)
        .unwrap();
    assert_eq!(trimmed(r.betti), vec![1, 4, 1]);
    assert_eq!(r.dim_kernel[..3], [0, 0, 9]);
}

#[test]
fn dilation_three_chambers_have_fewer_sides() {
    for (mu, b2) in [((5, 4), 1), ((3, 4), 3), ((1, 4), 2)] {
        let r = full(catalog::cp2xcp2(3), vec![ratio(mu.0, mu.1), ratio(mu.0, mu.1)])
            .reduce(&DirectionSet::Walls, false)
            .unwrap();
        assert_eq!(trimmed(r.betti), vec![1, b2, 1], "mu {mu:?}");
    }
}

#[test]
fn reduced_ring_of_a_projective_line() {
    let circle = Subtorus::from_columns(2, vec![vec![1, 2]]).unwrap();
    let projected = project_moment(&catalog::cp2(), &circle).unwrap();
    assert!(projected.generic);
    let map = full(projected.space, vec![ratio(1, 2)]);
    let s = map.structure_constants(&DirectionSet::Walls).unwrap();
    let g = s.generators_in(2);
    assert_eq!(g.len(), 1);
    assert_eq!(
        s.coefficient(&g[0].name, &g[0].name, &g[0].name),
        Some(Rational::zero())
    );
}

#[test]
fn reduced_ring_of_the_central_chamber() {
    let map = full(catalog::cp2xcp2(3), vec![ratio(5, 4), ratio(5, 4)]);
    let s = map.structure_constants(&DirectionSet::Walls).unwrap();
    let pairing = s.pairing_matrix(2).unwrap();
    assert_eq!(pairing.len(), 1);
    assert!(!pairing[0][0].is_zero());
}

#[test]
fn equivariant_reduction_by_a_circle() {
    let circle = Subtorus::from_columns(2, vec![vec![1, 2]]).unwrap();
    let map = KirwanMap::new(Arc::new(catalog::cp2()), circle.clone(), vec![ratio(1, 2)], None).unwrap();
    let r = map.reduce(&DirectionSet::Walls, false).unwrap();
    assert!(r.equivariant);
    // H_{S1}(CP1) has ranks 1, 2, 2, ...
    assert_eq!(r.betti, vec![1, 2, 2]);
    let c = check_stage_dimensions(&Arc::new(catalog::cp2()), &[ratio(3, 2)], &circle, Some(6)).unwrap();
    assert!(c.holds, "{c:?}");
}

#[test]
fn non_generic_subtorus_is_refused() {
    let circle = Subtorus::from_columns(2, vec![vec![1, 1]]).unwrap();
    let e = check_stage_dimensions(&Arc::new(catalog::cp2()), &[ratio(1, 2)], &circle, None).unwrap_err();
    assert!(matches!(e, ReductionError::NonGenericSubtorus(_)));
}

#[test]
fn error_paths() {
    let space = Arc::new(catalog::cp2xcp2(3));
    let singular = KirwanMap::new(space.clone(), Subtorus::full(2), vec![ratio(3, 2), ratio(3, 2)], None);
    assert_eq!(singular.unwrap_err(), ReductionError::NotRegular);
    let map = full(catalog::cp2xcp2(3), vec![ratio(5, 4), ratio(5, 4)]);
    assert!(matches!(
        map.half_space_kernel(&[1], 2),
        Err(ReductionError::DirectionLength { .. })
    ));
    assert_eq!(
        map.half_space_kernel(&[0, 0], 2).unwrap_err(),
        ReductionError::ZeroDirection
    );
    assert!(matches!(
        map.half_space_kernel(&[1, 1], 10),
        Err(ReductionError::DegreeTooLarge { .. })
    ));
    assert_eq!(map.kernel_ideal(&[], 2).unwrap_err(), ReductionError::NoDirections);
    let on_plane = full(catalog::cp2(), vec![ratio(1, 4), ratio(1, 2)]);
    // (1,0) at level 1/4 misses every vertex, (1,-1) at level -1/4 too,
    // but (2,-1) puts the vertex (0,0) on the hyperplane
    assert!(on_plane.half_space_kernel(&[1, 0], 2).is_ok());
    assert!(matches!(
        on_plane.half_space_kernel(&[2, -1], 2),
        Err(ReductionError::OnHyperplane { .. })
    ));
}

#[test]
fn regular_value_on_an_extended_wall_line() {
    // x = 3 carries a wall only for y in [0, 3]
    let mu = vec![ratio(3, 1), ratio(7, 2)];
    let space = catalog::cp2xcp2(3);
    assert!(is_regular_value(&space, &mu, &Subtorus::full(2)).unwrap());
    let e = full(space, mu).reduce(&DirectionSet::Walls, false).unwrap_err();
    assert!(matches!(e, ReductionError::OnHyperplane { .. }));
}

#[test]
fn larger_positive_sets_give_smaller_kernels() {
    let map = full(catalog::cp2xcp2(3), vec![ratio(5, 4), ratio(5, 4)]);
    let (dirs, _) = map
        .directions(&DirectionSet::WallsPlusSamples { count: 16, seed: 9 })
        .unwrap();
    let mut compared = 0;
    for a in &dirs {
        for b in &dirs {
            let pa = map.condition(a).unwrap().positive_points;
            let pb = map.condition(b).unwrap().positive_points;
            if a != b && pa.iter().all(|p| pb.contains(p)) {
                for degree in [2, 4] {
                    let ka = map.half_space_kernel(a, degree).unwrap();
                    let kb = map.half_space_kernel(b, degree).unwrap();
                    assert!(kb.subspace.is_subspace_of(&ka.subspace).unwrap());
                }
                compared += 1;
            }
        }
    }
    assert!(compared > 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn regular_reductions_satisfy_duality(a in 1i64..48, b in 1i64..48) {
        let mu = vec![ratio(a, 12), ratio(b, 12)];
        let space = catalog::cp2xcp2(3);
        prop_assume!(is_regular_value(&space, &mu, &Subtorus::full(2)).unwrap());
        // a regular value on the extension of a wall line puts a fixed
        // point on that wall normal's hyperplane, which is rejected
        let r = match full(space, mu).reduce(&DirectionSet::Walls, false) {
            Err(ReductionError::OnHyperplane { .. }) => return Ok(()),
            other => other.unwrap(),
        };
        let betti = trimmed(r.betti.clone());
        if !betti.is_empty() {
            // a nonempty reduction is a connected closed 4-orbifold
            prop_assert_eq!(betti.len(), 3);
            prop_assert_eq!(betti[0], 1);
            prop_assert_eq!(betti[2], 1);
        }
        let walls = r.dim_kernel.clone();
        let sampled = full(catalog::cp2xcp2(3), r.mu.clone())
            .reduce(&DirectionSet::WallsPlusSamples { count: 8, seed: (a * 100 + b) as u64 }, false)
            .unwrap()
            .dim_kernel;
        prop_assert_eq!(walls, sampled);
    }
}
