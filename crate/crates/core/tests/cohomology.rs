use std::sync::Arc;

use kirwan::cohomology::{
    ascending_reach, basis, flow_up_class, gkm_check, kunneth, morse_counts, morse_index, negative_euler_class,
    EquivariantClass, GradedCohomology,
};
use kirwan::report::{catalog, expr};
use kirwan::space::{product, validate, GkmSpace};
use kirwan::{rational, MultiPoly};
use proptest::prelude::*;

fn spaces() -> Vec<Arc<GkmSpace>> {
    ["point", "cp1", "cp2", "cp3", "cp2xcp2-k3", "su3-hexagon"]
        .iter()
        .map(|n| Arc::new(catalog::builtin(n).unwrap()))
        .collect()
}

#[test]
fn builtins_are_valid() {
    for s in spaces() {
        assert!(validate(&s).is_empty(), "{:?}", validate(&s));
    }
}

#[test]
fn basis_classes_satisfy_gkm_and_are_independent() {
    for s in spaces() {
        for degree in [0, 2, 4] {
            let b = basis(&s, degree).unwrap();
            for c in b.classes() {
                assert!(gkm_check(c).unwrap());
                assert_eq!(c.degree(), degree);
            }
            let coords: Vec<_> = b.classes().iter().map(|c| b.coordinates(c).unwrap()).collect();
            let span = kirwan::RatSubspace::span(b.dim(), &coords).unwrap();
            assert_eq!(span.dim(), b.dim());
        }
    }
}

#[test]
fn dimensions_match_morse_counts() {
    let cases: [(&str, &[i64]); 4] = [
        ("cp2", &[1, 2]),
        ("cp3", &[1, 3, 7]),
        ("cp2xcp2-k3", &[1, 5]),
        ("su3-hexagon", &[2, 7]),
    ];
    for (name, xi) in cases {
        let s = Arc::new(catalog::builtin(name).unwrap());
        let h = GradedCohomology::new(s.clone(), 6).unwrap();
        assert_eq!(h.dims(), morse_counts(&s, xi, 6).unwrap(), "{name}");
    }
}

#[test]
fn free_module_ranks() {
    // H_T of a GKM space is free over H_T(pt) of rank #fixed points
    let h = GradedCohomology::new(Arc::new(catalog::cp2()), 8).unwrap();
    assert_eq!(h.dims(), vec![1, 3, 6, 9, 12]);
    let h = GradedCohomology::new(Arc::new(catalog::su3_hexagon()), 6).unwrap();
    assert_eq!(h.dims(), vec![1, 4, 9, 15]);
}

#[test]
fn products_stay_in_cohomology() {
    let s = Arc::new(catalog::cp2xcp2(3));
    let b2 = basis(&s, 2).unwrap();
    let b4 = basis(&s, 4).unwrap();
    for a in b2.classes() {
        for c in b2.classes() {
            let p = a.mul(c).unwrap();
            assert!(gkm_check(&p).unwrap());
            assert!(b4.coordinates(&p).is_ok());
        }
    }
}

#[test]
fn kunneth_restricts_pointwise() {
    let cp2 = Arc::new(catalog::cp2());
    let s = Arc::new(product(&cp2, &cp2, rational(3)).unwrap());
    let x = EquivariantClass::moment_class(cp2.clone());
    let xx = kunneth(&x, &x, &s).unwrap();
    for (i, p) in cp2.points.iter().enumerate() {
        for (j, q) in cp2.points.iter().enumerate() {
            let expected = &x.restrictions()[i] * &x.restrictions()[j];
            assert_eq!(xx.restriction(&format!("({},{})", p.name, q.name)).unwrap(), &expected);
        }
    }
    assert!(gkm_check(&xx).unwrap());
}

#[test]
fn flow_up_classes() {
    for (s, xi) in [
        (Arc::new(catalog::cp2()), [1i64, 2]),
        (Arc::new(catalog::su3_hexagon()), [1, 2]),
    ] {
        for (i, p) in s.points.iter().enumerate() {
            let c = flow_up_class(&s, i, &xi).unwrap();
            assert!(gkm_check(&c).unwrap());
            assert_eq!(c.degree(), morse_index(p, &xi).unwrap());
            assert_eq!(c.restrictions()[i], negative_euler_class(p, &xi).unwrap());
            let reach = ascending_reach(&s, i, &xi).unwrap();
            for (j, f) in c.restrictions().iter().enumerate() {
                if !reach.contains(&j) {
                    assert!(f.is_zero(), "{} at {}", p.name, s.points[j].name);
                }
            }
        }
    }
}

#[test]
fn class_expressions() {
    let s = Arc::new(catalog::cp2xcp2(3));
    let a = expr::class("u1^2 + u1⊗x", &s).unwrap();
    let b = expr::class("u₁² + u1@x", &s).unwrap();
    assert_eq!(a, b);
    assert!(gkm_check(&a).unwrap());
    assert_eq!(a.degree(), 4);
}

#[test]
fn non_classes_are_rejected() {
    let s = Arc::new(catalog::cp1());
    // 1 at one point and 0 at the other differs by a unit across the edge
    let bad = EquivariantClass::new(s.clone(), vec![MultiPoly::one(1), MultiPoly::zero(1)], 0).unwrap();
    assert!(!gkm_check(&bad).unwrap());
    // whereas u1 at one point only is the Thom class of that point
    let thom = EquivariantClass::new(s, vec![MultiPoly::var(1, 0), MultiPoly::zero(1)], 2).unwrap();
    assert!(gkm_check(&thom).unwrap());
}

fn coefficients(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms_on_cp2(a in coefficients(3), b in coefficients(3), c in coefficients(6)) {
        let s = Arc::new(catalog::cp2());
        let b2 = basis(&s, 2).unwrap();
        let b4 = basis(&s, 4).unwrap();
        let comb = |bs: &kirwan::cohomology::DegreeBasis, cs: &[i64]| {
            bs.class_from_coordinates(&cs.iter().map(|&x| rational(x)).collect::<Vec<_>>()).unwrap()
        };
        let (x, y, z) = (comb(&b2, &a), comb(&b2, &b), comb(&b4, &c));
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        let lhs = x.add(&y).unwrap().mul(&z).unwrap();
        let rhs = x.mul(&z).unwrap().add(&y.mul(&z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(gkm_check(&x.mul(&z).unwrap()).unwrap());
    }

    #[test]
    fn coordinates_round_trip(c in coefficients(10)) {
        let s = Arc::new(catalog::cp2xcp2(3));
        let b4 = basis(&s, 4).unwrap();
        let v: Vec<_> = c.iter().map(|&x| rational(x)).collect();
        let class = b4.class_from_coordinates(&v).unwrap();
        prop_assert_eq!(b4.coordinates(&class).unwrap(), v);
    }
}
