//! The moduli disc of similarity classes of triangles.
//!
//! A triangle is normalized to base `[0, 1]` with apex `z` in the upper half
//! plane. Its class is the disc point `w = ((z - ρ)/(z - ρ⁻¹))³`, which does
//! not depend on which edge is taken as the base: re-basing acts on `z` by
//! `λ(z) = 1/(1 - z)` and multiplies `(z - ρ)/(z - ρ⁻¹)` by a cube root of
//! unity.
//!
//! Triangles are labeled. A clockwise labeling is normalized by reflecting
//! the plane, so relabeling by a transposition conjugates `w` while
//! reflecting the vertices (labels kept) leaves `w` unchanged.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Orientation, Point, RHO, RHO_INV};
use crate::tolerance::Tolerance;

/// Below this modulus a disc point is treated as the regular triangle.
pub const REGULAR_EPS: f64 = 1e-14;

/// Three labeled, non-collinear vertices `A`, `B`, `C`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Triangle {
    a: Point,
    b: Point,
    c: Point,
}

impl Triangle {
    /// Builds a triangle, rejecting coincident or collinear vertices at the
    /// default tolerance.
    pub fn new(a: Point, b: Point, c: Point) -> Result<Self> {
        Self::with_tolerance(a, b, c, Tolerance::default())
    }

    pub fn with_tolerance(a: Point, b: Point, c: Point, tol: Tolerance) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::NonFinite);
        }
        let t = Self { a, b, c };
        let d = t.diameter();
        let min_side = t.side_lengths().into_iter().fold(f64::INFINITY, f64::min);
        if d == 0.0 || min_side <= tol.at_scale(d) {
            return Err(Error::DegenerateTriangle);
        }
        if t.twice_signed_area().abs() <= tol.at_scale(d * d) {
            return Err(Error::DegenerateTriangle);
        }
        Ok(t)
    }

    /// Triangle `△z01`: apex `z`, base from 0 to 1.
    pub fn from_apex(z: Point) -> Result<Self> {
        Self::new(z, Point::ZERO, Point::ONE)
    }

    /// Skips validation; callers guarantee non-degeneracy.
    pub(crate) fn new_unchecked(a: Point, b: Point, c: Point) -> Self {
        Self { a, b, c }
    }

    #[inline]
    pub fn a(&self) -> Point {
        self.a
    }
    #[inline]
    pub fn b(&self) -> Point {
        self.b
    }
    #[inline]
    pub fn c(&self) -> Point {
        self.c
    }

    pub fn vertices(&self) -> [Point; 3] {
        [self.a, self.b, self.c]
    }

    /// `(|BC|, |CA|, |AB|)`.
    pub fn side_lengths(&self) -> [f64; 3] {
        [
            self.b.distance(self.c),
            self.c.distance(self.a),
            self.a.distance(self.b),
        ]
    }

    pub fn diameter(&self) -> f64 {
        self.side_lengths().into_iter().fold(0.0, f64::max)
    }

    /// `(B - A) × (C - A)`; positive for counterclockwise labeling.
    pub fn twice_signed_area(&self) -> f64 {
        (self.b - self.a).cross(self.c - self.a)
    }

    pub fn area(&self) -> f64 {
        0.5 * self.twice_signed_area().abs()
    }

    pub fn orientation(&self) -> Orientation {
        if self.twice_signed_area() > 0.0 {
            Orientation::Counterclockwise
        } else {
            Orientation::Clockwise
        }
    }

    /// Relabeling `(A, B, C) -> (A, C, B)`: the mirror class.
    pub fn mirrored(&self) -> Self {
        Self::new_unchecked(self.a, self.c, self.b)
    }

    /// Relabeling `(A, B, C) -> (B, C, A)`: the same class.
    pub fn cycled(&self) -> Self {
        Self::new_unchecked(self.b, self.c, self.a)
    }

    /// Applies `p -> scale·p + shift` with a complex `scale` (a direct
    /// similarity).
    pub fn transformed(&self, scale: Point, shift: Point) -> Self {
        let m = |p: Point| scale * p + shift;
        Self::new_unchecked(m(self.a), m(self.b), m(self.c))
    }

    /// Reflection of every vertex in the real axis.
    pub fn reflected(&self) -> Self {
        Self::new_unchecked(self.a.conj(), self.b.conj(), self.c.conj())
    }

    /// The similarity frame mapping this triangle's base `B, C` onto `0, 1`.
    pub fn frame(&self) -> Frame {
        Frame {
            origin: self.b,
            base: self.c - self.b,
            mirrored: self.orientation() == Orientation::Clockwise,
        }
    }
}

/// Similarity between the plane and the normalized frame of a triangle:
/// `B -> 0`, `C -> 1`, and `A` into the upper half plane (reflecting when the
/// triangle is labeled clockwise).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    origin: Point,
    base: Point,
    mirrored: bool,
}

impl Frame {
    pub fn to_normalized(&self, p: Point) -> Point {
        let z = (p - self.origin) / self.base;
        if self.mirrored {
            z.conj()
        } else {
            z
        }
    }

    pub fn to_plane(&self, z: Point) -> Point {
        let z = if self.mirrored { z.conj() } else { z };
        self.origin + self.base * z
    }

    /// `true` when the frame reverses orientation.
    pub fn is_mirrored(&self) -> bool {
        self.mirrored
    }

    pub fn scale(&self) -> f64 {
        self.base.norm()
    }
}

/// Apex of a triangle normalized to base `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Normalized {
    /// Apex in the upper half plane.
    pub z: Point,
    /// The labeling was clockwise and the plane was reflected.
    pub mirrored: bool,
}

/// Apex `z` with `△z01` directly similar to `t` under `A -> z, B -> 0, C -> 1`
/// (after reflection for clockwise labelings).
pub fn normalize(t: &Triangle) -> Normalized {
    let frame = t.frame();
    Normalized {
        z: frame.to_normalized(t.a),
        mirrored: frame.is_mirrored(),
    }
}

/// A point of the open unit disc.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModuliPoint(Point);

impl ModuliPoint {
    pub fn new(w: Point) -> Result<Self> {
        if !w.is_finite() {
            return Err(Error::NonFinite);
        }
        if w.norm() >= 1.0 {
            return Err(Error::DomainError(format!("|w| = {} is not below 1", w.norm())));
        }
        Ok(Self(w))
    }

    pub(crate) fn new_unchecked(w: Point) -> Self {
        Self(w)
    }

    #[inline]
    pub fn w(&self) -> Point {
        self.0
    }

    #[inline]
    pub fn modulus(&self) -> f64 {
        self.0.norm()
    }

    pub fn arg(&self) -> f64 {
        self.0.arg()
    }

    pub fn conj(&self) -> Self {
        Self(self.0.conj())
    }

    /// Rotation about the origin by `angle`.
    pub fn rotated(&self, angle: f64) -> Self {
        Self(self.0 * Point::from_polar(1.0, angle))
    }

    pub fn is_regular(&self) -> bool {
        self.modulus() < REGULAR_EPS
    }

    pub fn distance(&self, other: &Self) -> f64 {
        self.0.distance(other.0)
    }
}

/// `λ(z) = 1/(1 - z)`.
pub fn lambda_map(z: Point) -> Result<Point> {
    let d = Point::ONE - z;
    if d.norm_sqr() == 0.0 {
        return Err(Error::PoleInput(z.to_string()));
    }
    Ok(d.recip())
}

/// `f(z) = -ρ (z - ρ)/(z - ρ⁻¹)`.
pub fn f_map(z: Point) -> Result<Point> {
    let d = z - RHO_INV;
    if d.norm_sqr() == 0.0 {
        return Err(Error::PoleInput(z.to_string()));
    }
    Ok(-RHO * (z - RHO) / d)
}

/// `g(Z) = Z³`.
pub fn g_map(z: Point) -> Point {
    z * z * z
}

/// `μ(Z) = ρ² Z`.
pub fn mu_map(z: Point) -> Point {
    RHO * RHO * z
}

/// `(z - ρ)/(z - ρ⁻¹)`, the cube root of `φ` picked by the base `[0, 1]`.
pub(crate) fn focal_ratio(z: Point) -> Point {
    (z - RHO) / (z - RHO_INV)
}

/// Disc point of `△z01` for an apex in the upper half plane.
pub fn phi_of_apex(z: Point) -> Result<ModuliPoint> {
    if !z.is_finite() {
        return Err(Error::NonFinite);
    }
    if z.y <= 0.0 {
        return Err(Error::DomainError(format!("apex {z} is not in the upper half plane")));
    }
    Ok(ModuliPoint::new_unchecked(g_map(focal_ratio(z))))
}

/// Class of `t` in the moduli disc.
pub fn phi(t: &Triangle) -> ModuliPoint {
    let z = normalize(t).z;
    ModuliPoint::new_unchecked(g_map(focal_ratio(z)))
}

/// `true` when `z` lies in `{|z| < 1, |z - 1| ≤ 1} ∪ {ρ}` up to `tol`.
pub fn in_fundamental_domain(z: Point, tol: Tolerance) -> bool {
    z.y > 0.0 && z.norm() <= 1.0 + tol.relative && (z - Point::ONE).norm() <= 1.0 + tol.relative
}

fn omega_violation(z: Point) -> f64 {
    let v = (z.norm() - 1.0).max(0.0) + ((z - Point::ONE).norm() - 1.0).max(0.0);
    // Rounding noise on the boundary arcs is not a violation.
    if v <= 1e-12 {
        0.0
    } else {
        v
    }
}

/// Picks the candidate in the fundamental domain. On the boundary the point
/// on `|z - 1| = 1` (which has `|z| < 1`) wins over its partner on `|z| = 1`.
fn select_in_omega(candidates: [Point; 3]) -> Point {
    candidates
        .into_iter()
        .min_by(|p, q| {
            omega_violation(*p)
                .total_cmp(&omega_violation(*q))
                .then(p.norm().total_cmp(&q.norm()))
        })
        .expect("three candidates")
}

/// The unique apex in the fundamental domain with the given class.
pub fn phi_inverse(w: ModuliPoint) -> Point {
    let w = w.w();
    let root = Point::from_polar(w.norm().cbrt(), w.arg() / 3.0);
    let omega = RHO * RHO;
    let candidates = [root, root * omega, root * omega * omega].map(|r| (RHO - r * RHO_INV) / (Point::ONE - r));
    select_in_omega(candidates)
}

/// `λᵏ(z)` lying in the fundamental domain: the apex obtained by re-basing on
/// a longest edge. `z` must lie in the upper half plane.
pub fn reduce_to_fundamental_domain(z: Point) -> Point {
    debug_assert!(z.y > 0.0, "apex must be in the upper half plane");
    let l1 = Point::ONE / (Point::ONE - z);
    let l2 = Point::ONE - z.recip();
    select_in_omega([z, l1, l2])
}

/// Direct (orientation-preserving) similarity.
pub fn similar(t1: &Triangle, t2: &Triangle, tol: Tolerance) -> bool {
    phi(t1).distance(&phi(t2)) <= tol.relative
}

/// Similarity by an orientation-reversing map.
pub fn reversely_similar(t1: &Triangle, t2: &Triangle, tol: Tolerance) -> bool {
    phi(t1).distance(&phi(t2).conj()) <= tol.relative
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const SQRT3: f64 = 1.732_050_807_568_877_2;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn close(a: Point, b: Point, eps: f64) -> bool {
        a.distance(b) <= eps
    }

    #[test]
    fn normalize_examples() {
        let t = Triangle::new(p(0.5, 0.5), p(0.0, 0.0), p(1.0, 0.0)).unwrap();
        assert_eq!(normalize(&t).z, p(0.5, 0.5));
        let t = Triangle::new(p(1.0, 1.0), p(0.0, 0.0), p(2.0, 0.0)).unwrap();
        assert!(close(normalize(&t).z, p(0.5, 0.5), 1e-15));
        let t = Triangle::new(p(0.5, 3f64.sqrt() / 2.0), p(0.0, 0.0), p(1.0, 0.0)).unwrap();
        assert!(close(normalize(&t).z, RHO, 1e-15));
    }

    #[test]
    fn normalize_reflects_clockwise_labelings() {
        let t = Triangle::new(p(0.3, -0.7), p(0.0, 0.0), p(1.0, 0.0)).unwrap();
        let n = normalize(&t);
        assert!(n.mirrored);
        assert!(close(n.z, p(0.3, 0.7), 1e-15));
    }

    #[test]
    fn degenerate_triangles_rejected() {
        assert_eq!(
            Triangle::new(p(0.0, 0.0), p(1.0, 1.0), p(2.0, 2.0)),
            Err(Error::DegenerateTriangle)
        );
        assert_eq!(
            Triangle::new(p(0.0, 0.0), p(0.0, 0.0), p(2.0, 2.0)),
            Err(Error::DegenerateTriangle)
        );
        assert_eq!(
            Triangle::new(p(f64::NAN, 0.0), p(0.0, 1.0), p(2.0, 2.0)),
            Err(Error::NonFinite)
        );
    }

    #[test]
    fn map_examples() {
        assert!(close(lambda_map(RHO).unwrap(), RHO, 1e-15));
        assert!(close(f_map(RHO).unwrap(), Point::ZERO, 1e-15));
        assert!(close(g_map(p(0.0, 0.5)), p(0.0, -0.125), 1e-15));
        assert!(matches!(lambda_map(Point::ONE), Err(Error::PoleInput(_))));
        assert!(matches!(f_map(RHO_INV), Err(Error::PoleInput(_))));
    }

    #[test]
    fn phi_examples() {
        let eq = Triangle::from_apex(RHO).unwrap();
        assert!(phi(&eq).modulus() < 1e-15);

        let alpha = 2.0 - SQRT3;
        let right_iso = Triangle::from_apex(p(0.5, 0.5)).unwrap();
        let w = phi(&right_iso).w();
        assert!(close(w, p(-alpha.powi(3), 0.0), 1e-15));
        assert!((w.x + 0.019_237_886_466_840_6).abs() < 1e-15);

        let iso3 = Triangle::from_apex(p(0.5, 1.5)).unwrap();
        assert!(close(phi(&iso3).w(), p(alpha.powi(3), 0.0), 1e-15));
    }

    #[test]
    fn phi_inverse_examples() {
        assert!(close(phi_inverse(ModuliPoint::new(Point::ZERO).unwrap()), RHO, 1e-15));
        let alpha = 2.0 - SQRT3;
        let z = phi_inverse(ModuliPoint::new(p(-alpha.powi(3), 0.0)).unwrap());
        assert!(close(z, p(0.5, 0.5), 1e-12));
        for x in [-0.9, -0.5, -0.1, 0.0] {
            let z = phi_inverse(ModuliPoint::new(p(x, 0.0)).unwrap());
            assert!((z.x - 0.5).abs() < 1e-12, "w = {x}: z = {z}");
        }
        for x in [0.05, 0.3, 0.7, 0.95] {
            let z = phi_inverse(ModuliPoint::new(p(x, 0.0)).unwrap());
            assert!(((z - Point::ONE).norm() - 1.0).abs() < 1e-12, "w = {x}: z = {z}");
            assert!(z.norm() < 1.0);
        }
    }

    #[test]
    fn reduce_examples() {
        let z = reduce_to_fundamental_domain(p(0.5, 1.5));
        assert!(close(z, p(0.2, 0.6), 1e-15));
        assert!(p(0.2, 0.6).norm() < 1.0 && (p(0.2, 0.6) - Point::ONE).norm() <= 1.0 + 1e-15);
        let inside = p(0.6, 0.3);
        assert_eq!(reduce_to_fundamental_domain(inside), inside);
        assert!(close(reduce_to_fundamental_domain(RHO), RHO, 1e-15));
    }

    #[test]
    fn similarity_examples() {
        let tol = Tolerance::default();
        let t = Triangle::new(p(0.2, 0.9), p(-0.4, 0.1), p(1.3, -0.2)).unwrap();
        let moved = t.transformed(Point::from_polar(3.0, 1.1), p(4.0, -2.0));
        assert!(similar(&t, &moved, tol));

        let t345 = Triangle::from_apex(p(0.64, 0.48)).unwrap();
        let mirror = t345.mirrored();
        assert!(!similar(&t345, &mirror, tol));
        assert!(reversely_similar(&t345, &mirror, tol));

        let e1 = Triangle::from_apex(RHO).unwrap();
        let e2 = Triangle::new(
            p(2.0, 0.0),
            p(0.0, 0.0),
            Point::from_polar(2.0, -std::f64::consts::FRAC_PI_3),
        )
        .unwrap();
        assert!(similar(&e1, &e2, tol) && reversely_similar(&e1, &e2, tol));
    }

    fn upper_half_plane() -> impl Strategy<Value = Point> {
        (-3.0..4.0f64, 0.05..4.0f64).prop_map(|(x, y)| Point::new(x, y))
    }

    fn triangle() -> impl Strategy<Value = Triangle> {
        prop::array::uniform3((-10.0..10.0f64, -10.0..10.0f64)).prop_filter_map("well-shaped", |v| {
            let [a, b, c] = v.map(|(x, y)| Point::new(x, y));
            let t = Triangle::new(a, b, c).ok()?;
            (t.twice_signed_area().abs() > 1e-2 * t.diameter().powi(2)).then_some(t)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn diagram_commutes(z in upper_half_plane()) {
            let lhs = f_map(lambda_map(z).unwrap()).unwrap();
            let rhs = mu_map(f_map(z).unwrap());
            prop_assert!(lhs.distance(rhs) <= 1e-10);
        }

        #[test]
        fn phi_invariant_under_rebasing(z in upper_half_plane()) {
            let w = phi_of_apex(z).unwrap();
            let w2 = phi_of_apex(lambda_map(z).unwrap()).unwrap();
            prop_assert!(w.distance(&w2) <= 1e-10);
        }

        #[test]
        fn phi_modulus_is_cubed_focal_ratio(z in upper_half_plane()) {
            let expected = (z.distance(RHO) / z.distance(RHO_INV)).powi(3);
            prop_assert!((phi_of_apex(z).unwrap().modulus() - expected).abs() <= 1e-12);
        }

        #[test]
        fn phi_inverse_round_trip(z in upper_half_plane()) {
            let omega = reduce_to_fundamental_domain(z);
            prop_assert!(in_fundamental_domain(omega, Tolerance::new(1e-12)));
            let back = phi_inverse(phi_of_apex(omega).unwrap());
            prop_assert!(back.distance(omega) <= 1e-9, "{} vs {}", back, omega);
        }

        #[test]
        fn mirror_conjugates(t in triangle()) {
            prop_assert!(phi(&t.mirrored()).distance(&phi(&t).conj()) <= 1e-10);
            prop_assert!(phi(&t.reflected()).distance(&phi(&t)) <= 1e-10);
            prop_assert!(phi(&t.cycled()).distance(&phi(&t)) <= 1e-10);
        }
    }
}
