//! Right, isosceles and SAP (sides in arithmetic progression) triangles.
//!
//! Each family meets every equivalence class, so each class has
//! representatives in it. Within the right and SAP families, equivalent
//! triangles are similar or mirror images. Isosceles partners have base
//! angles with `tan θ · tan θ' = 3`.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{apollonius_circle, Point, RHO, RHO_INV};
use crate::moduli::{focal_ratio, normalize, phi, phi_inverse, ModuliPoint, Triangle};
use crate::operators::{RatioQ, Q_EPS};
use crate::tolerance::Tolerance;

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// `2 - √3 = (√3 - 1)²/2`, the α of the right isosceles triangle and the
/// smallest α of any right triangle.
pub const RIGHT_ALPHA_MIN: f64 = 0.267_949_192_431_122_7;

/// Sides `a`, `b` of the triangle with sides `1, a, b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SideLengths {
    a: f64,
    b: f64,
}

impl SideLengths {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) {
            return Err(Error::NonFinite);
        }
        if a <= 0.0 || b <= 0.0 || a + b <= 1.0 || 1.0 + a <= b || 1.0 + b <= a {
            return Err(Error::TriangleInequalityViolated);
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn swapped(&self) -> Self {
        Self { a: self.b, b: self.a }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct TriangleClass {
    pub equilateral: bool,
    pub isosceles: bool,
    pub right: bool,
    pub sap: bool,
}

/// Side-length tests, each relative to the longest side. The result depends
/// on the tolerance; use the `exact` module for rational sides.
pub fn classify(t: &Triangle, tol: Tolerance) -> TriangleClass {
    let mut s = t.side_lengths();
    s.sort_by(f64::total_cmp);
    let [s1, s2, s3] = s;
    let eps = tol.at_scale(s3);
    TriangleClass {
        equilateral: s3 - s1 <= eps,
        isosceles: s2 - s1 <= eps || s3 - s2 <= eps,
        right: (s1 * s1 + s2 * s2 - s3 * s3).abs() <= tol.at_scale(s3 * s3),
        sap: (s1 + s3 - 2.0 * s2).abs() <= eps,
    }
}

/// Triangle with `|BC| = s1`, `|CA| = s2`, `|AB| = s3`, labeled
/// counterclockwise, `B` at the origin and `C` on the positive real axis.
pub fn triangle_from_sides(s1: f64, s2: f64, s3: f64) -> Result<Triangle> {
    if ![s1, s2, s3].iter().all(|s| s.is_finite()) {
        return Err(Error::NonFinite);
    }
    if s1 <= 0.0 || s2 <= 0.0 || s3 <= 0.0 || s1 + s2 <= s3 || s2 + s3 <= s1 || s3 + s1 <= s2 {
        return Err(Error::TriangleInequalityViolated);
    }
    let x = (s3 * s3 - s2 * s2 + s1 * s1) / (2.0 * s1);
    let y2 = s3 * s3 - x * x;
    if y2 <= 0.0 {
        return Err(Error::TriangleInequalityViolated);
    }
    Triangle::new(Point::new(x, y2.sqrt()), Point::ZERO, Point::real(s1))
}

/// The triangle over the base `[0, 1]` with apex `|z| = a`, `|z - 1| = b`.
pub fn from_sides(s: SideLengths) -> Triangle {
    triangle_from_sides(1.0, s.b, s.a).expect("validated side lengths")
}

/// The source triangle of the mirror relation: apex `|z| = b`, `|z - 1| = a`.
/// It is the mirror image of [`from_sides`] across `Re z = 1/2`.
pub fn lemma_source(s: SideLengths) -> Triangle {
    from_sides(s.swapped())
}

/// Ratios `q` for which `T_q` carries [`lemma_source`] to the class of its
/// mirror image [`from_sides`]:
/// `(b² - 1)/(a² + b² - 2)`, `(1 - a²)/(b² + 1 - 2a²)`, `(a² - b²)/(1 + a² - 2b²)`.
/// Branches with a vanishing denominator are left out; the regular triangle
/// gives `{0}`.
pub fn mirror_q_values(s: SideLengths) -> Result<Vec<RatioQ>> {
    let (a2, b2) = (s.a * s.a, s.b * s.b);
    if (a2 - 1.0).abs() <= Q_EPS && (b2 - 1.0).abs() <= Q_EPS {
        return Ok(vec![0.0]);
    }
    let branches = [
        (b2 - 1.0, a2 + b2 - 2.0),
        (1.0 - a2, b2 + 1.0 - 2.0 * a2),
        (a2 - b2, 1.0 + a2 - 2.0 * b2),
    ];
    let mut out: Vec<RatioQ> = Vec::with_capacity(3);
    for (n, d) in branches {
        if d.abs() <= Q_EPS {
            continue;
        }
        let q = n / d;
        if !out.iter().any(|v| (v - q).abs() <= Q_EPS) {
            out.push(q);
        }
    }
    if out.is_empty() {
        return Err(Error::AllBranchesDegenerate);
    }
    Ok(out)
}

fn alpha_of(t: &Triangle) -> f64 {
    focal_ratio(normalize(t).z).norm()
}

/// Whether the class of `t` contains a right triangle: `α ≥ 2 - √3`.
pub fn right_partner_exists(t: &Triangle, tol: Tolerance) -> bool {
    alpha_of(t) >= RIGHT_ALPHA_MIN - tol.relative
}

/// Right triangles equivalent to `t`: apexes where the hemicircle
/// `|z - 1/2| = 1/2` meets the Apollonius circle of `ρ, ρ⁻¹` with ratio `α`.
/// One triangle at tangency (the right isosceles case), otherwise a mirror
/// pair with the apex left of `Re z = 1/2` first.
pub fn right_representatives(t: &Triangle, tol: Tolerance) -> Result<Vec<Triangle>> {
    if !right_partner_exists(t, tol) {
        return Err(Error::NoRightPartner);
    }
    let alpha = alpha_of(t).max(RIGHT_ALPHA_MIN);
    let circle = apollonius_circle(RHO, RHO_INV, alpha)?;
    // Both centres lie on Re z = 1/2, so the crossings are (1/2 ± u, v).
    let c = circle.center.y;
    let r = circle.radius;
    let v = (c * c + 0.25 - r * r) / (2.0 * c);
    let u2 = 0.25 - v * v;
    if u2 <= tol.relative * tol.relative || alpha == RIGHT_ALPHA_MIN {
        return Ok(vec![Triangle::from_apex(Point::new(0.5, v))?]);
    }
    let u = u2.sqrt();
    Ok(vec![
        Triangle::from_apex(Point::new(0.5 - u, v))?,
        Triangle::from_apex(Point::new(0.5 + u, v))?,
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    Plus,
    Minus,
}

/// `P±(d) = ((1 ± (2d - 3d²))/2, (√3/2)·√((1 - d)(1 - d²)(1 - 3d)))`. The
/// triangle `△P₊(d)01` has `|P| = 1 - d` and `|P - 1| = 1 - 2d`; `P₋` is its
/// mirror image.
pub fn sap_apex(d: f64, branch: Branch) -> Result<Point> {
    if !(0.0..1.0 / 3.0).contains(&d) {
        return Err(Error::DomainError(format!("d = {d} outside [0, 1/3)")));
    }
    let shift = 2.0 * d - 3.0 * d * d;
    let x = match branch {
        Branch::Plus => (1.0 + shift) / 2.0,
        Branch::Minus => (1.0 - shift) / 2.0,
    };
    let y = SQRT3 / 2.0 * ((1.0 - d) * (1.0 - d * d) * (1.0 - 3.0 * d)).sqrt();
    Ok(Point::new(x, y))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SapRepresentatives {
    /// Common difference: sides `1 : 1 - d : 1 - 2d`.
    pub d: f64,
    pub plus: Triangle,
    pub minus: Triangle,
}

const SAP_MAX_ITER: usize = 200;

/// The SAP triangles equivalent to `t`, one per branch, by bisection on the
/// monotone map `d ↦ |φ(P±(d))|`. Both branches share `d`.
pub fn sap_representatives(t: &Triangle) -> SapRepresentatives {
    // Bisect on α = |φ|^{1/3}; it is linear in d near 0, where |φ| is flat.
    let target = alpha_of(t);
    let alpha_at = |d: f64| focal_ratio(sap_apex(d, Branch::Plus).expect("d in range")).norm();
    let (mut lo, mut hi) = (0.0_f64, 1.0 / 3.0);
    for _ in 0..SAP_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if alpha_at(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let d = if target <= 0.0 { 0.0 } else { lo };
    let tri = |b| Triangle::from_apex(sap_apex(d, b).expect("d in range")).expect("apex above the base");
    SapRepresentatives {
        d,
        plus: tri(Branch::Plus),
        minus: tri(Branch::Minus),
    }
}

/// `θ' = arctan(3/tan θ)` for a base angle `θ ∈ (0, π/2)`.
pub fn isosceles_partner_angle(theta: f64) -> Result<f64> {
    if !(theta > 0.0 && theta < FRAC_PI_2) {
        return Err(Error::DomainError(format!("base angle {theta} outside (0, π/2)")));
    }
    Ok((3.0 / theta.tan()).atan())
}

/// Isosceles triangle over `[0, 1]` with base angle `theta`.
pub fn isosceles_from_base_angle(theta: f64) -> Result<Triangle> {
    if !(theta > 0.0 && theta < FRAC_PI_2) {
        return Err(Error::DomainError(format!("base angle {theta} outside (0, π/2)")));
    }
    Triangle::from_apex(Point::new(0.5, 0.5 * theta.tan()))
}

/// Base angle of a (near-)isosceles triangle, taking the two closest sides as
/// the legs.
pub fn isosceles_base_angle(t: &Triangle) -> f64 {
    let s = t.side_lengths();
    let pairs = [(0, 1, 2), (1, 2, 0), (2, 0, 1)];
    let (_, _, k) = pairs
        .into_iter()
        .min_by(|p, q| (s[p.0] - s[p.1]).abs().total_cmp(&(s[q.0] - s[q.1]).abs()))
        .expect("three pairs");
    let base = s[k];
    // atan2 stays accurate for flat and tall triangles alike.
    (2.0 * t.area() / base).atan2(0.5 * base)
}

/// The two isosceles classes equivalent to `t`: the fundamental-domain apexes
/// with `φ = +α³` and `φ = -α³`, in that order.
pub fn isosceles_representatives(t: &Triangle) -> (Triangle, Triangle) {
    let m = phi(t).modulus();
    let tri = |w: f64| {
        let z = phi_inverse(ModuliPoint::new(Point::real(w)).expect("|w| < 1"));
        Triangle::from_apex(z).expect("fundamental domain apex")
    };
    (tri(m), tri(-m))
}
