//! Equisectional equivalence: the invariants α and β, the four equivalent
//! ways of deciding it, and the closed-form ratio solver.
//!
//! Over a base `BC`, let `D` and `D̄` be the apexes of the two equilateral
//! triangles, `D` on the side of `A`. Then `α = |AD|/|AD̄|` and
//! `β = area/|AD̄|²`, with `β = (1 - α²)/(4√3)`. Two triangles are equivalent
//! iff their α agree, i.e. iff their classes lie on one circle about the
//! origin of the moduli disc.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{angle_distance, circle_through, reduce_angle, Point, RHO, RHO_INV};
use crate::moduli::{lambda_map, normalize, phi, ModuliPoint, Triangle};
use crate::operators::{t_q_geometric, RatioQ};
use crate::tolerance::Tolerance;

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Branches of the ratio formula closer than this (in radians) to a pole of
/// the tangent are skipped.
pub const POLE_EPS: f64 = 1e-9;

/// Residual allowed when a solved ratio is checked against the geometric
/// operator.
pub const ROUND_TRIP_EPS: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EquivalenceInvariants {
    /// `|AD|/|AD̄|`, in `[0, 1)`.
    pub alpha: f64,
    /// `area/|AD̄|²`, in `(0, 1/(4√3)]`.
    pub beta: f64,
}

/// Apexes `(D, D̄)` of the equilateral triangles over `b`–`c`, with `D` on the
/// same side as `side_of`.
pub fn regular_apex_points(b: Point, c: Point, side_of: Point, tol: Tolerance) -> Result<(Point, Point)> {
    let base = c - b;
    let len = base.norm();
    if len == 0.0 {
        return Err(Error::DuplicatePoints);
    }
    let side = base.cross(side_of - b);
    if side.abs() <= tol.at_scale(len * len.max((side_of - b).norm())) {
        return Err(Error::CollinearReference);
    }
    let left = b + base * RHO;
    let right = b + base * RHO_INV;
    Ok(if side > 0.0 { (left, right) } else { (right, left) })
}

/// α and β measured on the triangle itself, with `BC` as base.
pub fn invariants_of(t: &Triangle) -> EquivalenceInvariants {
    let (d, d_bar) = regular_apex_points(t.b(), t.c(), t.a(), Tolerance::new(0.0))
        .expect("vertices of a valid triangle are not collinear");
    let far = t.a().distance(d_bar);
    EquivalenceInvariants {
        alpha: t.a().distance(d) / far,
        beta: t.area() / (far * far),
    }
}

/// α read off the moduli disc: `|φ|^{1/3}`.
pub fn alpha_spectral(w: ModuliPoint) -> f64 {
    w.modulus().cbrt()
}

/// Equivalence by the moduli circle: `|α(t1) - α(t2)| ≤ tol`.
pub fn equivalent(t1: &Triangle, t2: &Triangle, tol: Tolerance) -> bool {
    (alpha_spectral(phi(t1)) - alpha_spectral(phi(t2))).abs() <= tol.relative
}

/// Equivalence by the normalized area β.
pub fn equivalent_by_area(t1: &Triangle, t2: &Triangle, tol: Tolerance) -> bool {
    let (b1, b2) = (invariants_of(t1).beta, invariants_of(t2).beta);
    // dβ/dα = -α/(2√3); compare on the α scale so the threshold is uniform.
    let scale = (invariants_of(t1).alpha.max(invariants_of(t2).alpha) / (2.0 * SQRT3)).max(tol.relative);
    (b1 - b2).abs() <= tol.relative * scale
}

/// Equivalence by existence of an operator: solve for `q` without the
/// equivalence guard and check `T_q(t1) ~ t2` geometrically. The check never
/// runs tighter than [`ROUND_TRIP_EPS`].
pub fn equivalent_by_operator(t1: &Triangle, t2: &Triangle, tol: Tolerance) -> bool {
    let eps = tol.relative.max(ROUND_TRIP_EPS);
    ratio_candidates(phi(t1), phi(t2))
        .into_iter()
        .any(|q| phi(&t_q_geometric(t1, q)).distance(&phi(t2)) <= eps)
}

/// Apexes of the three similar copies of a triangle standing on its own base
/// in the normalized frame, for the three choices of which vertex goes to the
/// apex.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThreePositions {
    /// `z`
    pub a: Point,
    /// `λ²(z)`
    pub a2: Point,
    /// `λ(z)`
    pub a3: Point,
}

pub fn three_position_points(t: &Triangle) -> ThreePositions {
    let z = normalize(t).z;
    let l1 = lambda_map(z).expect("apex in the upper half plane is not 1");
    let l2 = lambda_map(l1).expect("apex in the upper half plane is not 1");
    ThreePositions { a: z, a2: l2, a3: l1 }
}

/// Apex `Â'` in the plane of `t1`: the point on `t1`'s side of its base `BC`
/// with `△Â'BC` similar to `t2` (labels `A', B', C'` onto `Â', B, C`).
pub fn rebased_apex(t1: &Triangle, t2: &Triangle) -> Point {
    t1.frame().to_plane(normalize(t2).z)
}

/// Equivalence by concyclicity: `Â'` lies on the circle through the three
/// positions of `t1`'s apex. For a regular `t1` that circle is the point `ρ`.
pub fn equivalent_via_circle(t1: &Triangle, t2: &Triangle, tol: Tolerance) -> bool {
    let z2 = normalize(t2).z;
    let three = three_position_points(t1);
    match circle_through(three.a, three.a3, three.a2, tol) {
        Ok(c) => c.circle.offset(z2).abs() <= tol.at_scale(c.circle.radius.max(1.0)),
        // Coincident positions: t1 is regular.
        Err(_) => z2.distance(RHO) <= tol.relative,
    }
}

/// Ratio from the constructed angle: `q = ½(1 + tan(θ/2 + nπ/3)/√3)`, or
/// `None` on a pole of the tangent.
pub fn q_from_angle(theta: f64, n: i32) -> Option<RatioQ> {
    let x = theta / 2.0 + f64::from(n) * FRAC_PI_3;
    // Distance of x from π/2 modulo π.
    if angle_distance(2.0 * x, 2.0 * FRAC_PI_2) / 2.0 <= POLE_EPS {
        return None;
    }
    Some(0.5 * (1.0 + x.tan() / SQRT3))
}

/// The angle `θ ∈ (-π/3, π/3]` with `3θ ≡ arg w2 - arg w1`; zero when either
/// point is the regular class.
pub fn transport_angle(w1: ModuliPoint, w2: ModuliPoint) -> f64 {
    if w1.is_regular() || w2.is_regular() {
        return 0.0;
    }
    reduce_angle(w2.arg() - w1.arg()) / 3.0
}

fn ratio_candidates(w1: ModuliPoint, w2: ModuliPoint) -> Vec<RatioQ> {
    let theta = transport_angle(w1, w2);
    (0..3).filter_map(|n| q_from_angle(theta, n)).collect()
}

/// Every `q` with `[T_q(t1)] = [t2]`, one per branch `n ∈ {0, 1, 2}` of the
/// tangent formula.
pub fn solve_q(t1: &Triangle, t2: &Triangle, tol: Tolerance) -> Result<Vec<RatioQ>> {
    if !equivalent(t1, t2, tol) {
        return Err(Error::NotEquivalent);
    }
    let qs = ratio_candidates(phi(t1), phi(t2));
    if qs.is_empty() {
        return Err(Error::AllBranchesPole);
    }
    Ok(qs)
}
