//! Pencils of circles for a pair of foci.
//!
//! The hyperbolic pencil is the family of Apollonius circles `|z - f1|/|z - f2| = k`;
//! the elliptic pencil is the family of circles through both foci. Every
//! member of one meets every member of the other at right angles. With foci
//! `0` and `∞` the two families become the circles about `0` and the lines
//! through `0`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::construct::{ConstructionTrace, GeomObject};
use crate::error::{Error, Result};
use crate::geom::{apollonius_circle, circle_intersections, crossing_cosine, Circle, Line, Point};
use crate::moduli::Triangle;
use crate::svg::{BBox, SvgDocument};
use crate::tolerance::Tolerance;

pub const HYPERBOLIC_COLOR: &str = "black";
pub const ELLIPTIC_COLOR: &str = "blue";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PencilKind {
    Hyperbolic,
    Elliptic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Foci {
    Points(Point, Point),
    /// `0` and the point at infinity.
    ZeroInfinity,
}

/// Parameters are distance ratios in `(0, 1)` for a hyperbolic pencil and
/// chord angles in `(0, π)` for an elliptic one. With foci `0, ∞` they are
/// radii (hyperbolic) and line directions (elliptic).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PencilSpec {
    pub kind: PencilKind,
    pub foci: Foci,
    pub parameters: Vec<f64>,
    pub viewport: Option<BBox>,
}

impl PencilSpec {
    pub fn new(kind: PencilKind, foci: Foci, parameters: Vec<f64>) -> Result<Self> {
        if let Foci::Points(f1, f2) = foci {
            if !(f1.is_finite() && f2.is_finite()) {
                return Err(Error::NonFinite);
            }
            if f1 == f2 {
                return Err(Error::CoincidentFoci);
            }
        }
        for &p in &parameters {
            let ok = match (kind, foci) {
                (PencilKind::Hyperbolic, Foci::Points(..)) => p > 0.0 && p < 1.0,
                (PencilKind::Elliptic, Foci::Points(..)) => p > 0.0 && p < PI,
                (PencilKind::Hyperbolic, Foci::ZeroInfinity) => p > 0.0 && p.is_finite(),
                (PencilKind::Elliptic, Foci::ZeroInfinity) => p.is_finite(),
            };
            if !ok {
                return Err(Error::DomainError(format!("pencil parameter {p} out of range")));
            }
        }
        Ok(Self {
            kind,
            foci,
            parameters,
            viewport: None,
        })
    }

    pub fn with_viewport(mut self, viewport: BBox) -> Self {
        self.viewport = Some(viewport);
        self
    }

    /// Ratios `0.1, 0.2, …, 0.9`, or the same radii with foci `0, ∞`.
    pub fn default_parameters(kind: PencilKind, foci: Foci) -> Vec<f64> {
        match (kind, foci) {
            (PencilKind::Hyperbolic, _) => (1..10).map(|k| f64::from(k) / 10.0).collect(),
            (PencilKind::Elliptic, Foci::Points(..)) => (1..12).map(|k| f64::from(k) * PI / 12.0).collect(),
            (PencilKind::Elliptic, Foci::ZeroInfinity) => (0..12).map(|k| f64::from(k) * PI / 12.0).collect(),
        }
    }

    /// Members, sorted by parameter.
    pub fn members(&self) -> Result<Vec<PencilMember>> {
        let mut params = self.parameters.clone();
        params.sort_by(f64::total_cmp);
        params.dedup();
        params
            .into_iter()
            .map(|p| {
                let shape = match (self.kind, self.foci) {
                    (PencilKind::Hyperbolic, Foci::Points(f1, f2)) => Shape::Circle(apollonius_circle(f1, f2, p)?),
                    (PencilKind::Elliptic, Foci::Points(f1, f2)) => Shape::Circle(circle_through_foci(f1, f2, p)?),
                    (PencilKind::Hyperbolic, Foci::ZeroInfinity) => Shape::Circle(Circle::new(Point::ZERO, p)?),
                    (PencilKind::Elliptic, Foci::ZeroInfinity) => {
                        Shape::Line(Line::new(Point::ZERO, Point::from_polar(1.0, p))?)
                    }
                };
                Ok(PencilMember {
                    kind: self.kind,
                    parameter: p,
                    shape,
                })
            })
            .collect()
    }
}

/// The circle through `f1`, `f2` meeting the chord `f1 f2` at angle `psi`;
/// its centre lies to the left of `f1 → f2` for `psi < π/2`.
pub fn circle_through_foci(f1: Point, f2: Point, psi: f64) -> Result<Circle> {
    if !(psi > 0.0 && psi < PI) {
        return Err(Error::DomainError(format!("chord angle {psi} outside (0, π)")));
    }
    let half = f1.distance(f2) / 2.0;
    if half == 0.0 {
        return Err(Error::CoincidentFoci);
    }
    let normal = (f2 - f1).rot90() / (2.0 * half);
    let center = f1.midpoint(f2) + normal * (half / psi.tan());
    Circle::new(center, half / psi.sin())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    Circle(Circle),
    Line(Line),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PencilMember {
    pub kind: PencilKind,
    pub parameter: f64,
    pub shape: Shape,
}

/// Crossing points and the cosine of the crossing angle there (zero when
/// orthogonal).
pub fn crossings(m1: &Shape, m2: &Shape, tol: Tolerance) -> Vec<(Point, f64)> {
    match (m1, m2) {
        (Shape::Circle(c1), Shape::Circle(c2)) => circle_intersections(c1, c2, tol)
            .into_iter()
            .map(|p| (p, crossing_cosine(c1, c2, p)))
            .collect(),
        (Shape::Circle(c), Shape::Line(l)) | (Shape::Line(l), Shape::Circle(c)) => {
            circle_line_intersections(c, l)
                .into_iter()
                .map(|p| {
                    // Angle between the circle's radius and the line's normal.
                    let r = (p - c.center) / c.radius;
                    (p, r.cross(l.direction))
                })
                .collect()
        }
        (Shape::Line(a), Shape::Line(b)) => crate::geom::line_intersection(a, b, tol)
            .map(|p| vec![(p, a.direction.dot(b.direction))])
            .unwrap_or_default(),
    }
}

fn circle_line_intersections(c: &Circle, l: &Line) -> Vec<Point> {
    let t0 = (c.center - l.anchor).dot(l.direction);
    let foot = l.point_at(t0);
    let h2 = c.radius * c.radius - foot.distance(c.center).powi(2);
    if h2 < 0.0 {
        return Vec::new();
    }
    let h = h2.sqrt();
    vec![l.point_at(t0 - h), l.point_at(t0 + h)]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrthogonalityReport {
    pub crossings: usize,
    pub max_abs_cosine: f64,
}

/// Checks every crossing of a hyperbolic member with an elliptic member.
pub fn orthogonality(hyperbolic: &[PencilMember], elliptic: &[PencilMember], tol: Tolerance) -> OrthogonalityReport {
    let mut report = OrthogonalityReport {
        crossings: 0,
        max_abs_cosine: 0.0,
    };
    for h in hyperbolic {
        for e in elliptic {
            for (_, cos) in crossings(&h.shape, &e.shape, tol) {
                report.crossings += 1;
                report.max_abs_cosine = report.max_abs_cosine.max(cos.abs());
            }
        }
    }
    report
}

/// Bounding box of the foci and the members of moderate size, plus a 5%
/// margin. Members much larger than the focal distance are left to clipping.
fn auto_viewport(specs: &[PencilSpec], members: &[PencilMember]) -> BBox {
    let mut scale: f64 = 0.0;
    let mut bbox: Option<BBox> = None;
    let add = |b: &mut Option<BBox>, p: Point| match b {
        Some(bb) => bb.include(p),
        None => *b = Some(BBox::around(p)),
    };
    for s in specs {
        match s.foci {
            Foci::Points(f1, f2) => {
                add(&mut bbox, f1);
                add(&mut bbox, f2);
                scale = scale.max(f1.distance(f2));
            }
            Foci::ZeroInfinity => add(&mut bbox, Point::ZERO),
        }
    }
    for m in members {
        if let Shape::Circle(c) = m.shape {
            if scale == 0.0 || c.radius <= 2.0 * scale {
                add(&mut bbox, c.center - Point::new(c.radius, c.radius));
                add(&mut bbox, c.center + Point::new(c.radius, c.radius));
            }
        }
    }
    bbox.unwrap_or(BBox::new(Point::new(-1.0, -1.0), Point::new(1.0, 1.0)))
        .with_margin(0.05)
}

/// Renders one or more pencils. Hyperbolic members are drawn in black,
/// elliptic ones in blue, each group in parameter order, hyperbolic first.
pub fn render_pencils(specs: &[PencilSpec]) -> Result<String> {
    let mut members = Vec::new();
    for s in specs {
        members.extend(s.members()?);
    }
    members.sort_by(|a, b| a.kind.cmp(&b.kind).then(a.parameter.total_cmp(&b.parameter)));
    let view = specs
        .iter()
        .filter_map(|s| s.viewport)
        .reduce(|mut a, b| {
            a.include(b.min);
            a.include(b.max);
            a
        })
        .unwrap_or_else(|| auto_viewport(specs, &members));
    let mut doc = SvgDocument::new(view);
    for m in &members {
        let color = match m.kind {
            PencilKind::Hyperbolic => HYPERBOLIC_COLOR,
            PencilKind::Elliptic => ELLIPTIC_COLOR,
        };
        match m.shape {
            Shape::Circle(c) => doc.circle(&c, color, 1.0),
            Shape::Line(l) => doc.line(&l, color, 1.0),
        }
    }
    let mut foci: Vec<Point> = specs
        .iter()
        .flat_map(|s| match s.foci {
            Foci::Points(a, b) => [a, b],
            Foci::ZeroInfinity => [Point::ZERO, Point::ZERO],
        })
        .collect();
    foci.sort_by(|p, q| p.x.total_cmp(&q.x).then(p.y.total_cmp(&q.y)));
    foci.dedup();
    for f in foci {
        doc.dot(f, "red");
    }
    Ok(doc.finish())
}

/// Diagram of a construction trace in the plane of `t1`: the triangle, `D`,
/// `D̄`, `Â'`, both circles through `D` and `D̄`, `C_A`, and `θ`.
pub fn render_trace(trace: &ConstructionTrace, t1: &Triangle) -> String {
    let (a, b, c) = (t1.a(), t1.b(), t1.c());
    let base = b.distance(c);
    let find = |i: usize, name: &str| trace.step(i).and_then(|s| s.get(name));
    let point = |i, name| match find(i, name) {
        Some(GeomObject::Point(p)) => Some(p),
        _ => None,
    };
    let d = point(1, "D");
    let d_bar = point(1, "D_bar");
    let a_hat = point(2, "A_hat");

    let mut bbox = BBox::new(b, c);
    bbox.include(a);
    for p in [d, d_bar, a_hat].into_iter().flatten() {
        bbox.include(p);
    }
    let circles: Vec<(&str, GeomObject)> = ["Gamma_A", "Gamma_A_hat"]
        .into_iter()
        .filter_map(|n| find(3, n).map(|o| (n, o)))
        .chain(find(4, "C_A").map(|o| ("C_A", o)))
        .collect();
    for (_, o) in &circles {
        let circle = match o {
            GeomObject::OrientedCircle(oc) => Some(oc.circle),
            GeomObject::Circle(c) => Some(*c),
            _ => None,
        };
        if let Some(cc) = circle.filter(|cc| cc.radius <= 4.0 * base) {
            bbox.include_circle(&cc);
        }
    }
    let mut doc = SvgDocument::new(bbox.with_margin(0.05));

    doc.polygon(&[a, b, c], "black", 1.5);
    for (name, o) in &circles {
        let color = if *name == "C_A" {
            HYPERBOLIC_COLOR
        } else {
            ELLIPTIC_COLOR
        };
        match o {
            GeomObject::OrientedCircle(oc) => doc.circle(&oc.circle, color, 1.0),
            GeomObject::Circle(cc) if cc.radius > 0.0 => doc.circle(cc, color, 1.0),
            GeomObject::Line(l) => doc.line(l, color, 1.0),
            _ => {}
        }
    }
    for (p, name) in [
        (Some(a), "A"),
        (Some(b), "B"),
        (Some(c), "C"),
        (d, "D"),
        (d_bar, "D̄"),
        (a_hat, "Â'"),
    ] {
        if let Some(p) = p {
            doc.dot(p, "red");
            doc.label(p, name, "black");
        }
    }
    if let (Some(theta), Some(d)) = (trace.theta, d) {
        let r = base / 6.0;
        let start = match find(3, "Gamma_A") {
            Some(GeomObject::OrientedCircle(oc)) => oc.tangent_at(d).arg(),
            Some(GeomObject::Line(l)) => l.direction.arg(),
            _ => 0.0,
        };
        doc.arc(d, r, start, start + theta, "darkgreen", 1.5);
        doc.label(
            d + Point::from_polar(r, start + theta / 2.0),
            &format!("θ = {:.6}", theta),
            "darkgreen",
        );
    }
    doc.finish()
}
