//! SVG rendering of rank-2 moment polytopes.

use std::fmt::Write;

use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::cohomology::EquivariantClass;
use crate::space::{walls, GkmSpace, SpaceError};
use crate::{rational, IntVector, RatVector, Rational};

const SIZE: f64 = 600.0;
const MARGIN: f64 = 60.0;

#[derive(Debug, Error)]
pub enum PlotError {
    #[error("plots need a rank-2 torus, got rank {0}")]
    Unsupported(usize),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

#[derive(Clone, Debug, Default)]
pub struct PlotSpec {
    pub mu: Option<RatVector>,
    /// Hyperplanes through `mu` with these normals.
    pub hyperplanes: Vec<IntVector>,
    pub draw_walls: bool,
    /// Label each fixed point with this class's restriction.
    pub class: Option<EquivariantClass>,
}

/// Convex hull (counter-clockwise, exact) of planar points.
fn hull(points: &[RatVector]) -> Vec<RatVector> {
    let mut pts: Vec<RatVector> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: &RatVector, a: &RatVector, b: &RatVector| -> Rational {
        (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
    };
    let mut lower: Vec<RatVector> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<RatVector> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

struct Frame {
    min: [f64; 2],
    scale: f64,
}

impl Frame {
    fn new(points: &[RatVector]) -> Self {
        let f = |r: &Rational| r.to_f64().unwrap_or(0.0);
        let mut min = [f64::INFINITY; 2];
        let mut max = [f64::NEG_INFINITY; 2];
        for p in points {
            for k in 0..2 {
                min[k] = min[k].min(f(&p[k]));
                max[k] = max[k].max(f(&p[k]));
            }
        }
        let span = (max[0] - min[0]).max(max[1] - min[1]).max(1e-9);
        Self {
            min,
            scale: (SIZE - 2.0 * MARGIN) / span,
        }
    }

    fn map(&self, p: &[Rational]) -> (f64, f64) {
        let x = p[0].to_f64().unwrap_or(0.0);
        let y = p[1].to_f64().unwrap_or(0.0);
        (
            MARGIN + (x - self.min[0]) * self.scale,
            SIZE - MARGIN - (y - self.min[1]) * self.scale,
        )
    }
}

/// The segment of `<y, normal> = level` inside the box spanned by `lo`
/// and `hi`, exactly.
fn clip_line(normal: &[i64], level: &Rational, lo: &[Rational], hi: &[Rational]) -> Option<(RatVector, RatVector)> {
    let (a, b) = (rational(normal[0]), rational(normal[1]));
    let mut hits: Vec<RatVector> = Vec::new();
    for x in [&lo[0], &hi[0]] {
        if !b.is_zero() {
            let y = (level - &a * x) / &b;
            if y >= lo[1] && y <= hi[1] {
                hits.push(vec![x.clone(), y]);
            }
        }
    }
    for y in [&lo[1], &hi[1]] {
        if !a.is_zero() {
            let x = (level - &b * y) / &a;
            if x >= lo[0] && x <= hi[0] {
                hits.push(vec![x, y.clone()]);
            }
        }
    }
    hits.sort();
    hits.dedup();
    (hits.len() >= 2).then(|| (hits[0].clone(), hits[hits.len() - 1].clone()))
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Deterministic SVG: hull, GKM edges, walls, hyperplanes through `mu`,
/// the `mu` marker, fixed points with names, and optional restriction
/// labels. Every element carries a `class` attribute naming its role.
pub fn plot(space: &GkmSpace, spec: &PlotSpec) -> Result<String, PlotError> {
    if space.rank() != 2 {
        return Err(PlotError::Unsupported(space.rank()));
    }
    let images: Vec<RatVector> = space.points.iter().map(|p| p.moment.clone()).collect();
    let mut framed = images.clone();
    if let Some(mu) = &spec.mu {
        framed.push(mu.clone());
    }
    let frame = Frame::new(&framed);
    // box for clipping hyperplanes: data bounds padded by a quarter
    let lo: RatVector = (0..2)
        .map(|k| framed.iter().map(|p| p[k].clone()).min().expect("nonempty"))
        .collect();
    let hi: RatVector = (0..2)
        .map(|k| framed.iter().map(|p| p[k].clone()).max().expect("nonempty"))
        .collect();
    let pad = (&hi[0] - &lo[0]).max(&hi[1] - &lo[1]) / rational(4) + rational(1) / rational(4);
    let lo: RatVector = lo.iter().map(|x| x - &pad).collect();
    let hi: RatVector = hi.iter().map(|x| x + &pad).collect();

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SIZE} {SIZE}" width="{SIZE}" height="{SIZE}">"#
    );
    let _ = writeln!(
        out,
        r#"<rect class="background" x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>"#
    );

    let poly: Vec<String> = hull(&images)
        .iter()
        .map(|p| {
            let (x, y) = frame.map(p);
            format!("{x:.2},{y:.2}")
        })
        .collect();
    let _ = writeln!(
        out,
        r##"<polygon class="hull" points="{}" fill="#eef3fb" stroke="#333" stroke-width="1.5"/>"##,
        poly.join(" ")
    );

    for (e, (a, b)) in space.edges.iter().zip(space.edge_indices()?) {
        let (x1, y1) = frame.map(&images[a]);
        let (x2, y2) = frame.map(&images[b]);
        let _ = writeln!(
            out,
            r##"<line class="edge" data-from="{}" data-to="{}" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="#999" stroke-width="1"/>"##,
            escape(&e.from),
            escape(&e.to)
        );
    }

    if spec.draw_walls {
        for w in walls(space)? {
            // extreme support points along the wall direction
            let dir = [-w.normal[1], w.normal[0]];
            let along = |name: &String| {
                let p = space.point(name).expect("support names come from the space");
                &p.moment[0] * rational(dir[0]) + &p.moment[1] * rational(dir[1])
            };
            let first = w.support.iter().min_by_key(|n| along(n)).expect("support nonempty");
            let last = w.support.iter().max_by_key(|n| along(n)).expect("support nonempty");
            let (x1, y1) = frame.map(&space.point(first).expect("known").moment);
            let (x2, y2) = frame.map(&space.point(last).expect("known").moment);
            let _ = writeln!(
                out,
                r##"<line class="wall" data-normal="{},{}" data-offset="{}" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="#1f4e9c" stroke-width="2.5"/>"##,
                w.normal[0], w.normal[1], w.offset
            );
        }
    }

    if let Some(mu) = &spec.mu {
        for n in &spec.hyperplanes {
            if n.len() != 2 || n.iter().all(|&x| x == 0) {
                continue;
            }
            let level = &mu[0] * rational(n[0]) + &mu[1] * rational(n[1]);
            if let Some((p, q)) = clip_line(n, &level, &lo, &hi) {
                let (x1, y1) = frame.map(&p);
                let (x2, y2) = frame.map(&q);
                let _ = writeln!(
                    out,
                    r##"<line class="hyperplane" data-normal="{},{}" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="#c0392b" stroke-width="1.5" stroke-dasharray="6,4"/>"##,
                    n[0], n[1]
                );
            }
        }
        let (x, y) = frame.map(mu);
        let _ = writeln!(
            out,
            r##"<g class="mu"><line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#c0392b" stroke-width="2"/><line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#c0392b" stroke-width="2"/><text x="{:.2}" y="{:.2}" font-size="14" fill="#c0392b">μ</text></g>"##,
            x - 7.0,
            y - 7.0,
            x + 7.0,
            y + 7.0,
            x - 7.0,
            y + 7.0,
            x + 7.0,
            y - 7.0,
            x + 9.0,
            y - 9.0
        );
    }

    for (i, p) in space.points.iter().enumerate() {
        let (x, y) = frame.map(&p.moment);
        let _ = writeln!(
            out,
            r##"<circle class="fixed-point" data-name="{}" cx="{x:.2}" cy="{y:.2}" r="5" fill="#111"/>"##,
            escape(&p.name)
        );
        let _ = writeln!(
            out,
            r##"<text class="point-name" x="{:.2}" y="{:.2}" font-size="12" fill="#111">{}</text>"##,
            x + 8.0,
            y + 16.0,
            escape(&p.name)
        );
        if let Some(c) = &spec.class {
            let _ = writeln!(
                out,
                r##"<text class="restriction" data-name="{}" x="{:.2}" y="{:.2}" font-size="12" fill="#1e7b34">{}</text>"##,
                escape(&p.name),
                x + 8.0,
                y - 8.0,
                escape(&c.restrictions()[i].to_string())
            );
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::ratio;
    use crate::report::{catalog, expr};

    fn count(svg: &str, class: &str) -> usize {
        svg.matches(&format!("class=\"{class}\"")).count()
    }

    #[test]
    fn product_inventory() {
        let s = Arc::new(catalog::cp2xcp2(3));
        let spec = PlotSpec {
            mu: Some(vec![ratio(5, 4), ratio(5, 4)]),
            hyperplanes: vec![vec![1, 1]],
            draw_walls: true,
            class: Some(expr::class("x⊗x", &s).unwrap()),
        };
        let svg = plot(&s, &spec).unwrap();
        assert_eq!(count(&svg, "fixed-point"), 9);
        assert_eq!(count(&svg, "edge"), 18);
        assert_eq!(count(&svg, "wall"), 9);
        assert_eq!(count(&svg, "hyperplane"), 1);
        assert_eq!(count(&svg, "mu"), 1);
        assert_eq!(count(&svg, "restriction"), 9);
        assert_eq!(svg, plot(&s, &spec).unwrap());
    }

    #[test]
    fn hexagon_without_labels() {
        let s = catalog::su3_hexagon();
        let svg = plot(
            &s,
            &PlotSpec {
                draw_walls: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(count(&svg, "fixed-point"), 6);
        assert_eq!(count(&svg, "restriction"), 0);
        assert_eq!(count(&svg, "hull"), 1);
        assert_eq!(
            hull(&s.points.iter().map(|p| p.moment.clone()).collect::<Vec<_>>()).len(),
            6
        );
    }

    #[test]
    fn rank_one_is_unsupported() {
        assert!(matches!(
            plot(&catalog::cp1(), &PlotSpec::default()),
            Err(PlotError::Unsupported(1))
        ));
    }
}
