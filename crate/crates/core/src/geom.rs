//! Planar primitives: points (doubling as complex numbers), lines, circles,
//! oriented circles, tangents and signed angles between oriented circles.
//!
//! Orientation convention: counterclockwise is `+1`, clockwise is `-1`. The
//! oriented tangent of a counterclockwise circle at `p` is the radius vector
//! `p - center` turned by +90°.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerance::Tolerance;

/// A point of the plane, used interchangeably as the complex number `x + iy`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ZERO: Point = Point { x: 0.0, y: 0.0 };
    pub const ONE: Point = Point { x: 1.0, y: 0.0 };
    pub const I: Point = Point { x: 0.0, y: 1.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn from_polar(r: f64, theta: f64) -> Self {
        Self::new(r * theta.cos(), r * theta.sin())
    }

    #[inline]
    pub fn real(x: f64) -> Self {
        Self::new(x, 0.0)
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    /// Euclidean length, `|z|` as a complex number.
    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Argument in `(-π, π]`.
    #[inline]
    pub fn arg(self) -> f64 {
        reduce_angle(self.y.atan2(self.x))
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.x, -self.y)
    }

    #[inline]
    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    #[inline]
    pub fn cross(self, other: Self) -> f64 {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn distance(self, other: Self) -> f64 {
        (self - other).norm()
    }

    /// Rotation by +90°, i.e. multiplication by `i`.
    #[inline]
    pub fn rot90(self) -> Self {
        Self::new(-self.y, self.x)
    }

    #[inline]
    pub fn recip(self) -> Self {
        let n = self.norm_sqr();
        Self::new(self.x / n, -self.y / n)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Unit vector in the direction of `self`; `None` for the zero vector.
    pub fn normalized(self) -> Option<Self> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| self / n)
    }

    pub fn midpoint(self, other: Self) -> Self {
        (self + other) * 0.5
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add for Point {
    type Output = Point;
    #[inline]
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    #[inline]
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Point {
    type Output = Point;
    #[inline]
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// Complex multiplication.
impl Mul for Point {
    type Output = Point;
    #[inline]
    fn mul(self, rhs: Point) -> Point {
        Point::new(self.x * rhs.x - self.y * rhs.y, self.x * rhs.y + self.y * rhs.x)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    #[inline]
    fn mul(self, rhs: f64) -> Point {
        Point::new(self.x * rhs, self.y * rhs)
    }
}

impl Mul<Point> for f64 {
    type Output = Point;
    #[inline]
    fn mul(self, rhs: Point) -> Point {
        rhs * self
    }
}

/// Complex division.
impl Div for Point {
    type Output = Point;
    #[inline]
    fn div(self, rhs: Point) -> Point {
        let n = rhs.norm_sqr();
        Point::new(
            (self.x * rhs.x + self.y * rhs.y) / n,
            (self.y * rhs.x - self.x * rhs.y) / n,
        )
    }
}

impl Div<f64> for Point {
    type Output = Point;
    #[inline]
    fn div(self, rhs: f64) -> Point {
        Point::new(self.x / rhs, self.y / rhs)
    }
}

/// `ρ = e^{iπ/3}`, apex of the equilateral triangle over `[0, 1]`.
pub const RHO: Point = Point {
    x: 0.5,
    y: 0.866_025_403_784_438_6,
};

/// `ρ⁻¹ = e^{-iπ/3}`, the reflection of [`RHO`] in the real axis.
pub const RHO_INV: Point = Point {
    x: 0.5,
    y: -0.866_025_403_784_438_6,
};

/// Reduces an angle to `(-π, π]`.
///
/// Every angle that leaves this crate goes through here.
pub fn reduce_angle(theta: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut r = theta % two_pi;
    if r <= -PI {
        r += two_pi;
    } else if r > PI {
        r -= two_pi;
    }
    r
}

/// Distance between two angles on the circle, in `[0, π]`.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    reduce_angle(a - b).abs()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Line {
    pub anchor: Point,
    /// Unit vector.
    pub direction: Point,
}

impl Line {
    /// Builds a line; `direction` is normalized.
    pub fn new(anchor: Point, direction: Point) -> Result<Self> {
        if !anchor.is_finite() || !direction.is_finite() {
            return Err(Error::NonFinite);
        }
        let direction = direction.normalized().ok_or(Error::DuplicatePoints)?;
        Ok(Self { anchor, direction })
    }

    /// The line through `p` and `q`, directed from `p` to `q`.
    pub fn through(p: Point, q: Point) -> Result<Self> {
        Self::new(p, q - p)
    }

    pub fn distance_to(&self, p: Point) -> f64 {
        self.direction.cross(p - self.anchor).abs()
    }

    pub fn contains(&self, p: Point, tol: Tolerance) -> bool {
        let scale = (p - self.anchor).norm().max(1.0);
        self.distance_to(p) <= tol.at_scale(scale)
    }

    pub fn point_at(&self, t: f64) -> Point {
        self.anchor + self.direction * t
    }
}

/// The perpendicular bisector of `p`–`q`, directed by `(q - p)` turned +90°.
pub fn perpendicular_bisector(p: Point, q: Point) -> Result<Line> {
    Line::new(p.midpoint(q), (q - p).rot90())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        if !center.is_finite() || !radius.is_finite() {
            return Err(Error::NonFinite);
        }
        if radius <= 0.0 {
            return Err(Error::DomainError(format!("radius {radius} is not positive")));
        }
        Ok(Self { center, radius })
    }

    /// Signed distance of `p` from the circle (positive outside).
    pub fn offset(&self, p: Point) -> f64 {
        self.center.distance(p) - self.radius
    }

    /// Membership with a threshold relative to the diameter.
    pub fn contains(&self, p: Point, tol: Tolerance) -> bool {
        self.offset(p).abs() <= tol.at_scale(2.0 * self.radius)
    }

    pub fn point_at(&self, angle: f64) -> Point {
        self.center + Point::from_polar(self.radius, angle)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Counterclockwise,
    Clockwise,
}

impl Orientation {
    #[inline]
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Counterclockwise => 1.0,
            Orientation::Clockwise => -1.0,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::Counterclockwise => Orientation::Clockwise,
            Orientation::Clockwise => Orientation::Counterclockwise,
        }
    }

    /// Orientation of the turn `p1 -> p2 -> p3`; `None` when collinear.
    pub fn of(p1: Point, p2: Point, p3: Point) -> Option<Self> {
        let c = (p2 - p1).cross(p3 - p1);
        if c > 0.0 {
            Some(Orientation::Counterclockwise)
        } else if c < 0.0 {
            Some(Orientation::Clockwise)
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrientedCircle {
    pub circle: Circle,
    pub orientation: Orientation,
}

impl OrientedCircle {
    /// Unit tangent at `p` in the direction of travel. `p` is assumed on the
    /// circle.
    pub fn tangent_at(&self, p: Point) -> Point {
        (p - self.circle.center).rot90() * (self.orientation.sign() / self.circle.radius)
    }

    pub fn reversed(&self) -> Self {
        Self {
            circle: self.circle,
            orientation: self.orientation.reversed(),
        }
    }
}

/// An oriented generalized circle: a genuine circle, or a line regarded as a
/// circle through infinity (its direction carries the orientation).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cline {
    Circle(OrientedCircle),
    Line(Line),
}

impl Cline {
    pub fn tangent_at(&self, p: Point) -> Point {
        match self {
            Cline::Circle(c) => c.tangent_at(p),
            Cline::Line(l) => l.direction,
        }
    }

    pub fn contains(&self, p: Point, tol: Tolerance) -> bool {
        match self {
            Cline::Circle(c) => c.circle.contains(p, tol),
            Cline::Line(l) => l.contains(p, tol),
        }
    }
}

fn check_distinct(p1: Point, p2: Point, p3: Point, tol: Tolerance) -> Result<f64> {
    if !(p1.is_finite() && p2.is_finite() && p3.is_finite()) {
        return Err(Error::NonFinite);
    }
    let d12 = p1.distance(p2);
    let d23 = p2.distance(p3);
    let d31 = p3.distance(p1);
    let diameter = d12.max(d23).max(d31);
    let min = d12.min(d23).min(d31);
    if diameter == 0.0 || min <= tol.at_scale(diameter) {
        return Err(Error::DuplicatePoints);
    }
    Ok(diameter)
}

/// The circle through three points, oriented by their cyclic order.
pub fn circle_through(p1: Point, p2: Point, p3: Point, tol: Tolerance) -> Result<OrientedCircle> {
    let diameter = check_distinct(p1, p2, p3, tol)?;
    let b = p2 - p1;
    let c = p3 - p1;
    let cross = b.cross(c);
    if cross.abs() <= tol.at_scale(diameter * diameter) {
        return Err(Error::CollinearPoints);
    }
    let d = 2.0 * cross;
    let (bb, cc) = (b.norm_sqr(), c.norm_sqr());
    let u = Point::new((c.y * bb - b.y * cc) / d, (b.x * cc - c.x * bb) / d);
    let orientation = if cross > 0.0 {
        Orientation::Counterclockwise
    } else {
        Orientation::Clockwise
    };
    Ok(OrientedCircle {
        circle: Circle::new(p1 + u, u.norm())?,
        orientation,
    })
}

/// Like [`circle_through`], but collinear input yields the oriented line
/// through the three points instead of an error.
///
/// The line is directed so that travelling from `p1` meets `p2` before `p3`,
/// passing through infinity if needed.
pub fn cline_through(p1: Point, p2: Point, p3: Point, tol: Tolerance) -> Result<Cline> {
    match circle_through(p1, p2, p3, tol) {
        Ok(c) => Ok(Cline::Circle(c)),
        Err(Error::CollinearPoints) => {
            // Tangent at p1 of the circle through p1, p2, p3 is proportional
            // to (p2 - p1)(p3 - p1)/(p3 - p2); on a line this is real.
            let t = (p2 - p1) * (p3 - p1) / (p3 - p2);
            let along = (p3 - p1).normalized().ok_or(Error::DuplicatePoints)?;
            let direction = if t.dot(along) >= 0.0 { along } else { -along };
            Ok(Cline::Line(Line::new(p1, direction)?))
        }
        Err(e) => Err(e),
    }
}

/// The circle of points `X` with `|X f1| / |X f2| = k`.
pub fn apollonius_circle(f1: Point, f2: Point, k: f64) -> Result<Circle> {
    if !(f1.is_finite() && f2.is_finite()) {
        return Err(Error::NonFinite);
    }
    if !(k > 0.0 && k < 1.0) {
        return Err(Error::DegenerateRatio(k));
    }
    let sep = f1.distance(f2);
    if sep == 0.0 {
        return Err(Error::CoincidentFoci);
    }
    let k2 = k * k;
    let center = (f1 - f2 * k2) / (1.0 - k2);
    Circle::new(center, k * sep / (1.0 - k2))
}

pub fn tangent_line_at(c: &Circle, p: Point, tol: Tolerance) -> Result<Line> {
    if !c.contains(p, tol) {
        return Err(Error::PointNotOnCircle);
    }
    Line::new(p, (p - c.center).rot90())
}

pub fn line_intersection(l1: &Line, l2: &Line, tol: Tolerance) -> Result<Point> {
    let cr = l1.direction.cross(l2.direction);
    if cr.abs() <= tol.relative {
        return Err(Error::ParallelLines);
    }
    let t = (l2.anchor - l1.anchor).cross(l2.direction) / cr;
    Ok(l1.point_at(t))
}

fn angle_from_to(t1: Point, t2: Point) -> f64 {
    reduce_angle(t1.cross(t2).atan2(t1.dot(t2)))
}

/// Angle in `(-π, π]` from the oriented tangent of `c1` at `p` to that of
/// `c2` at `p`.
pub fn signed_angle_between_circles_at(
    c1: &OrientedCircle,
    c2: &OrientedCircle,
    p: Point,
    tol: Tolerance,
) -> Result<f64> {
    if !c1.circle.contains(p, tol) || !c2.circle.contains(p, tol) {
        return Err(Error::PointNotOnCircle);
    }
    Ok(angle_from_to(c1.tangent_at(p), c2.tangent_at(p)))
}

/// [`signed_angle_between_circles_at`] for generalized circles.
pub fn signed_angle_between_clines_at(c1: &Cline, c2: &Cline, p: Point, tol: Tolerance) -> Result<f64> {
    if !c1.contains(p, tol) || !c2.contains(p, tol) {
        return Err(Error::PointNotOnCircle);
    }
    Ok(angle_from_to(c1.tangent_at(p), c2.tangent_at(p)))
}

/// Intersection points of two circles, sorted by `(x, y)`.
///
/// Tangency (within tolerance relative to the larger radius) yields a single
/// point; disjoint or concentric circles yield none.
pub fn circle_intersections(c1: &Circle, c2: &Circle, tol: Tolerance) -> Vec<Point> {
    let delta = c2.center - c1.center;
    let d = delta.norm();
    if d == 0.0 {
        return Vec::new();
    }
    let scale = c1.radius.max(c2.radius);
    let a = (c1.radius * c1.radius - c2.radius * c2.radius + d * d) / (2.0 * d);
    let h2 = c1.radius * c1.radius - a * a;
    let threshold = tol.at_scale(scale * scale);
    let base = c1.center + delta * (a / d);
    if h2 < -threshold {
        Vec::new()
    } else if h2 <= threshold {
        vec![base]
    } else {
        let off = delta.rot90() * (h2.sqrt() / d);
        let mut pts = vec![base + off, base - off];
        pts.sort_by(|p, q| p.x.total_cmp(&q.x).then(p.y.total_cmp(&q.y)));
        pts
    }
}

/// Cosine of the angle between two circles at a common point `p`; zero for
/// orthogonal circles.
pub fn crossing_cosine(c1: &Circle, c2: &Circle, p: Point) -> f64 {
    let r1 = p - c1.center;
    let r2 = p - c2.center;
    r1.dot(r2) / (r1.norm() * r2.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_3, SQRT_2};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn close(a: Point, b: Point, eps: f64) -> bool {
        a.distance(b) <= eps
    }

    #[test]
    fn rho_constants() {
        assert!((RHO.norm() - 1.0).abs() < 1e-15);
        assert!(close(RHO * RHO_INV, Point::ONE, 1e-15));
        assert!(close(RHO, Point::from_polar(1.0, FRAC_PI_3), 1e-15));
    }

    #[test]
    fn complex_ops() {
        let z = Point::new(1.0, 2.0);
        let w = Point::new(-0.5, 3.0);
        assert!(close(z * w / w, z, 1e-15));
        assert!(close(z * z.recip(), Point::ONE, 1e-15));
        assert!(close(Point::I * Point::I, -Point::ONE, 0.0));
    }

    #[test]
    fn angle_reduction_range() {
        assert_eq!(reduce_angle(PI), PI);
        assert_eq!(reduce_angle(-PI), PI);
        assert!((reduce_angle(5.0 * PI) - PI).abs() < 1e-12);
        assert!(reduce_angle(4.0 * PI).abs() < 1e-12);
        assert!((reduce_angle(-0.5) + 0.5).abs() < 1e-15);
    }

    /// Three-point circle by least squares on the normal equations of
    /// `x² + y² + D x + E y + F = 0`.
    fn circle_oracle(pts: [Point; 3]) -> (Point, f64) {
        // Direct 3x3 Cramer's rule on the linear system.
        let rows: Vec<[f64; 4]> = pts.iter().map(|p| [p.x, p.y, 1.0, -(p.x * p.x + p.y * p.y)]).collect();
        let det3 = |m: [[f64; 3]; 3]| {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        };
        let a = [
            [rows[0][0], rows[0][1], rows[0][2]],
            [rows[1][0], rows[1][1], rows[1][2]],
            [rows[2][0], rows[2][1], rows[2][2]],
        ];
        let det = det3(a);
        let mut sol = [0.0; 3];
        for (k, s) in sol.iter_mut().enumerate() {
            let mut m = a;
            for r in 0..3 {
                m[r][k] = rows[r][3];
            }
            *s = det3(m) / det;
        }
        let center = Point::new(-sol[0] / 2.0, -sol[1] / 2.0);
        (center, (center.norm_sqr() - sol[2]).sqrt())
    }

    #[test]
    fn circle_through_right_angle_corner() {
        let pts = [Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.0, 1.0)];
        let c = circle_through(pts[0], pts[1], pts[2], tol()).unwrap();
        let (oc, or) = circle_oracle(pts);
        assert!(close(c.circle.center, oc, 1e-14));
        assert!((c.circle.radius - or).abs() < 1e-14);
        assert!(close(c.circle.center, Point::new(0.5, 0.5), 1e-15));
        assert!((c.circle.radius - SQRT_2 / 2.0).abs() < 1e-15);
        // (0,0) -> (1,0) -> (0,1) runs counterclockwise around (0.5, 0.5).
        assert_eq!(c.orientation, Orientation::Counterclockwise);
    }

    #[test]
    fn circle_through_unit_circle_points() {
        let c = circle_through(Point::new(1.0, 0.0), Point::new(0.0, 1.0), Point::new(-1.0, 0.0), tol()).unwrap();
        assert!(close(c.circle.center, Point::ZERO, 1e-15));
        assert!((c.circle.radius - 1.0).abs() < 1e-15);
        assert_eq!(c.orientation, Orientation::Counterclockwise);
    }

    #[test]
    fn circle_through_foci_is_elliptic_member() {
        let c = circle_through(RHO, Point::I, RHO_INV, tol()).unwrap();
        let r = c.circle.radius;
        assert!((c.circle.center.distance(RHO) - r).abs() < 1e-14);
        assert!((c.circle.center.distance(RHO_INV) - r).abs() < 1e-14);
        assert!((c.circle.center.distance(Point::I) - r).abs() < 1e-14);
    }

    #[test]
    fn circle_through_errors() {
        let p = Point::new(0.0, 0.0);
        assert_eq!(
            circle_through(p, Point::new(1.0, 1.0), Point::new(2.0, 2.0), tol()),
            Err(Error::CollinearPoints)
        );
        assert_eq!(
            circle_through(p, p, Point::new(2.0, 2.0), tol()),
            Err(Error::DuplicatePoints)
        );
    }

    #[test]
    fn cline_through_orients_lines_by_cyclic_order() {
        let o = Point::ZERO;
        let line = |p2: f64, p3: f64| match cline_through(o, Point::real(p2), Point::real(p3), tol()).unwrap() {
            Cline::Line(l) => l.direction.x,
            Cline::Circle(_) => panic!("expected a line"),
        };
        assert_eq!(line(1.0, 2.0), 1.0);
        assert_eq!(line(-1.0, 2.0), -1.0);
        assert_eq!(line(3.0, 2.0), -1.0);
    }

    #[test]
    fn apollonius_examples() {
        let c = apollonius_circle(Point::ZERO, Point::ONE, 0.5).unwrap();
        assert!(close(c.center, Point::new(-1.0 / 3.0, 0.0), 1e-15));
        assert!((c.radius - 2.0 / 3.0).abs() < 1e-15);

        let k = 2.0 - 3f64.sqrt();
        let c = apollonius_circle(RHO, RHO_INV, k).unwrap();
        for p in [Point::new(0.5, 0.5), Point::new(0.0, 1.0), Point::new(1.0, 1.0)] {
            assert!((p.distance(RHO) / p.distance(RHO_INV) - k).abs() < 1e-15);
            assert!(c.offset(p).abs() < 1e-14);
        }
    }

    #[test]
    fn apollonius_matches_grid_fit() {
        // Brute force: scan x on the real axis for the two sign changes of
        // |X|/|X-1| - 1/2; the circle is symmetric about the axis so these are
        // the diameter endpoints.
        let g = |x: f64| x.abs() / (x - 1.0).abs() - 0.5;
        let mut roots = Vec::new();
        let n = 200_000;
        for i in 0..n {
            let (x0, x1) = (-3.0 + 6.0 * i as f64 / n as f64, -3.0 + 6.0 * (i + 1) as f64 / n as f64);
            if g(x0).signum() != g(x1).signum() {
                let (mut lo, mut hi) = (x0, x1);
                for _ in 0..100 {
                    let mid = 0.5 * (lo + hi);
                    if g(lo).signum() == g(mid).signum() {
                        lo = mid
                    } else {
                        hi = mid
                    }
                }
                roots.push(lo);
            }
        }
        assert_eq!(roots.len(), 2);
        let c = apollonius_circle(Point::ZERO, Point::ONE, 0.5).unwrap();
        assert!((c.center.x - 0.5 * (roots[0] + roots[1])).abs() < 1e-12);
        assert!((c.radius - 0.5 * (roots[1] - roots[0])).abs() < 1e-12);
    }

    #[test]
    fn apollonius_errors() {
        assert_eq!(
            apollonius_circle(Point::ZERO, Point::ONE, 0.0),
            Err(Error::DegenerateRatio(0.0))
        );
        assert_eq!(
            apollonius_circle(Point::ZERO, Point::ONE, 1.0),
            Err(Error::DegenerateRatio(1.0))
        );
        assert_eq!(
            apollonius_circle(Point::ONE, Point::ONE, 0.3),
            Err(Error::CoincidentFoci)
        );
    }

    #[test]
    fn tangent_examples() {
        let unit = Circle::new(Point::ZERO, 1.0).unwrap();
        let l = tangent_line_at(&unit, Point::ONE, tol()).unwrap();
        assert!(close(l.direction, Point::I, 1e-15));
        let l = tangent_line_at(&unit, Point::I, tol()).unwrap();
        assert!(l.direction.y.abs() < 1e-15 && (l.direction.x.abs() - 1.0).abs() < 1e-15);

        let c = Circle::new(Point::new(0.5, 0.5), SQRT_2 / 2.0).unwrap();
        let l = tangent_line_at(&c, Point::ZERO, tol()).unwrap();
        assert!(close(l.direction, Point::new(FRAC_1_SQRT_2, -FRAC_1_SQRT_2), 1e-15));
        assert!(l.direction.dot(Point::ZERO - c.center).abs() < 1e-15);

        assert_eq!(
            tangent_line_at(&unit, Point::new(2.0, 0.0), tol()),
            Err(Error::PointNotOnCircle)
        );
    }

    #[test]
    fn line_intersection_examples() {
        let x_axis = Line::through(Point::ZERO, Point::ONE).unwrap();
        let y_axis = Line::through(Point::ZERO, Point::I).unwrap();
        assert!(close(
            line_intersection(&x_axis, &y_axis, tol()).unwrap(),
            Point::ZERO,
            0.0
        ));

        let (a, b, c) = (Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.5, 0.8));
        let ma = Line::through(a, b.midpoint(c)).unwrap();
        let mb = Line::through(b, a.midpoint(c)).unwrap();
        let g = line_intersection(&ma, &mb, tol()).unwrap();
        assert!(close(g, Point::new(0.5, 0.8 / 3.0), 1e-15));

        let upper = Line::through(Point::I, Point::I + Point::ONE).unwrap();
        assert_eq!(line_intersection(&x_axis, &upper, tol()), Err(Error::ParallelLines));
    }

    #[test]
    fn signed_angle_identity_and_antisymmetry() {
        let c1 = circle_through(RHO, Point::new(0.3, 0.4), RHO_INV, tol()).unwrap();
        let c2 = circle_through(RHO, Point::new(0.9, 0.2), RHO_INV, tol()).unwrap();
        assert_eq!(signed_angle_between_circles_at(&c1, &c1, RHO, tol()).unwrap(), 0.0);
        let a = signed_angle_between_circles_at(&c1, &c2, RHO, tol()).unwrap();
        let b = signed_angle_between_circles_at(&c2, &c1, RHO, tol()).unwrap();
        assert!((a + b).abs() < 1e-14);
        assert_eq!(
            signed_angle_between_circles_at(&c1, &c2, Point::ZERO, tol()),
            Err(Error::PointNotOnCircle)
        );
    }

    #[test]
    fn signed_angle_between_isosceles_leaf_circles() {
        // Apex of the right isosceles triangle lies on Re z = 1/2, so the
        // first "circle" through the foci is a line.
        let z = Point::new(0.5, 0.5);
        let z2 = Point::new(0.5, 1.5);
        let g1 = cline_through(RHO, z, RHO_INV, tol()).unwrap();
        let g2 = cline_through(RHO, z2, RHO_INV, tol()).unwrap();
        assert!(matches!(g1, Cline::Line(_)));
        let theta = signed_angle_between_clines_at(&g1, &g2, RHO, tol()).unwrap();
        // Moduli rotation between the two classes: arg φ(z2) - arg φ(z).
        let f = |z: Point| (z - RHO) / (z - RHO_INV);
        let cube = |w: Point| w * w * w;
        let rotation = cube(f(z2)).arg() - cube(f(z)).arg();
        assert!(angle_distance(3.0 * theta, rotation) < 1e-12);
        assert!((theta.abs() - FRAC_PI_3).abs() < 1e-12 || (theta.abs() - PI).abs() < 1e-12);
    }

    #[test]
    fn circle_intersection_cases() {
        let a = Circle::new(Point::ZERO, 1.0).unwrap();
        let b = Circle::new(Point::ONE, 1.0).unwrap();
        let pts = circle_intersections(&a, &b, tol());
        assert_eq!(pts.len(), 2);
        for p in pts {
            assert!(a.offset(p).abs() < 1e-15 && b.offset(p).abs() < 1e-15);
        }
        let t = Circle::new(Point::new(2.0, 0.0), 1.0).unwrap();
        assert_eq!(circle_intersections(&a, &t, tol()), vec![Point::ONE]);
        let far = Circle::new(Point::new(5.0, 0.0), 1.0).unwrap();
        assert!(circle_intersections(&a, &far, tol()).is_empty());
    }
}
