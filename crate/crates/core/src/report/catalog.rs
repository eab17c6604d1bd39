//! Built-in example spaces.

use std::sync::Arc;

use crate::cohomology::EquivariantClass;
use crate::space::{product, FixedPoint, GkmEdge, GkmSpace};
use crate::{rational, RatVector};

/// Names accepted by [`builtin`]; `cpN` works for any `N >= 1`.
pub const NAMES: &[&str] = &["point", "cp1", "cp2", "cpN", "cp2xcp2-k3", "su3-hexagon"];

pub fn builtin(name: &str) -> Option<GkmSpace> {
    match name {
        "point" => Some(point(2)),
        "cp2xcp2-k3" => Some(cp2xcp2(3)),
        "su3-hexagon" => Some(su3_hexagon()),
        _ => {
            if let Some(k) = name.strip_prefix("cp2xcp2-k") {
                return k.parse().ok().filter(|&k: &i64| k > 0).map(cp2xcp2);
            }
            let n: usize = name.strip_prefix("cp")?.parse().ok()?;
            (1..=8).contains(&n).then(|| cpn(n))
        }
    }
}

/// A single fixed point with no weights, for a torus of the given rank.
pub fn point(rank: usize) -> GkmSpace {
    GkmSpace::new(
        rank,
        0,
        vec![FixedPoint {
            name: "pt".into(),
            moment: vec![rational(0); rank],
            weights: vec![],
        }],
        vec![],
    )
}

/// `CP^n` with the standard `T^n` action `[z_0 : t_1 z_1 : ... : t_n z_n]`;
/// the moment image is the unit simplex with the first coordinate point
/// at the origin.
pub fn cpn(n: usize) -> GkmSpace {
    let e = |i: usize| -> Vec<i64> { (1..=n).map(|j| i64::from(i == j)).collect() };
    let diff = |to: usize, from: usize| -> Vec<i64> { e(to).iter().zip(e(from)).map(|(a, b)| a - b).collect() };
    let points = (0..=n)
        .map(|i| FixedPoint {
            name: format!("p{i}"),
            moment: e(i).iter().map(|&x| rational(x)).collect::<RatVector>(),
            weights: (0..=n).filter(|&j| j != i).map(|j| diff(j, i)).collect(),
        })
        .collect();
    let mut edges = Vec::new();
    for i in 0..=n {
        for j in i + 1..=n {
            edges.push(GkmEdge {
                from: format!("p{i}"),
                to: format!("p{j}"),
                weight: diff(j, i),
            });
        }
    }
    GkmSpace::new(n, n, points, edges)
}

pub fn cp1() -> GkmSpace {
    cpn(1)
}

pub fn cp2() -> GkmSpace {
    cpn(2)
}

/// `CP^2 x CP^2` with the diagonal `T^2` action, the second factor's moment
/// map dilated by `k`.
pub fn cp2xcp2(k: i64) -> GkmSpace {
    product(&cp2(), &cp2(), rational(k)).expect("equal ranks, positive dilation")
}

/// The full flag manifold of `C^3` as the coadjoint orbit through
/// `diag(2, 0, -2)`, for the maximal torus of `SU(3)`. Coordinates on `t*`
/// are `(v1 - v3, v2 - v3)`, in which the characters `e1, e2, e3` are
/// `(1, 0), (0, 1), (-1, -1)`.
pub fn su3_hexagon() -> GkmSpace {
    let lambda = [2i64, 0, -2];
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let character = [[1i64, 0], [0, 1], [-1, -1]];
    let root = |i: usize, j: usize| -> Vec<i64> { (0..2).map(|k| character[i][k] - character[j][k]).collect() };
    let name = |p: &[usize; 3]| format!("w{}{}{}", p[0] + 1, p[1] + 1, p[2] + 1);
    let value = |p: &[usize; 3]| -> [i64; 3] { [lambda[p[0]], lambda[p[1]], lambda[p[2]]] };
    let pairs = [(0, 1), (0, 2), (1, 2)];

    let points = perms
        .iter()
        .map(|p| {
            let v = value(p);
            FixedPoint {
                name: name(p),
                moment: vec![rational(v[0] - v[2]), rational(v[1] - v[2])],
                // swapping v_i and v_j moves the image by (v_j - v_i)(e_i - e_j)
                weights: pairs
                    .iter()
                    .map(|&(i, j)| {
                        let s = (v[j] - v[i]).signum();
                        root(i, j).iter().map(|x| s * x).collect()
                    })
                    .collect(),
            }
        })
        .collect();
    let mut edges = Vec::new();
    for p in &perms {
        for &(i, j) in &pairs {
            let mut q = *p;
            q.swap(i, j);
            if name(p) < name(&q) {
                let v = value(p);
                let s = (v[j] - v[i]).signum();
                edges.push(GkmEdge {
                    from: name(p),
                    to: name(&q),
                    weight: root(i, j).iter().map(|x| s * x).collect(),
                });
            }
        }
    }
    GkmSpace::new(2, 3, points, edges)
}

/// The hyperplane class of `CP^n`: restriction `x_i` at `p_i` and `0` at
/// `p_0`. With the catalog's moment normalization this is the class
/// `<Phi, x>`.
pub fn cp2_x(space: &Arc<GkmSpace>) -> EquivariantClass {
    EquivariantClass::moment_class(space.clone())
}
