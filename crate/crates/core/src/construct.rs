//! Compass-and-straightedge decision of equivalence, with the ratio `q`
//! read off a constructed angle.
//!
//! Everything happens in the plane of `t1 = △ABC`:
//!
//! 1. `D`, `D̄`: apexes of the equilateral triangles over `BC`, `D` on `A`'s side.
//! 2. `Â'`: apex on `A`'s side with `△Â'BC` similar to `t2`.
//! 3. The circles `Γ(D, A, D̄)` and `Γ(D, Â', D̄)`, oriented by that order.
//!    For an apex on the bisector of `BC` the "circle" is the line `DD̄`.
//! 4. `C_A`, the Apollonius circle of `D`, `D̄` through `A`. Its centre is
//!    where the tangent to `Γ(D, A, D̄)` at `A` meets the bisector of `BC`.
//! 5. Verdict: `Â' ∈ C_A`.
//! 6. `θ`, the angle at `D` from the first circle to the second.
//! 7. A branch `n` with `θ/2 + nπ/3 ∈ (π/2, 3π/2) mod 2π`.
//! 8. `q = ½(1 + tan(θ/2 + nπ/3)/√3)`.
//!
//! [`replay`] rebuilds every object from the inputs with the `geom`
//! primitives and checks it against the trace.

use std::f64::consts::{FRAC_PI_3, PI};

use serde::Serialize;

use crate::equivalence::{q_from_angle, regular_apex_points, POLE_EPS, ROUND_TRIP_EPS};
use crate::error::{Error, Result};
use crate::geom::{
    circle_intersections, cline_through, line_intersection, perpendicular_bisector, reduce_angle,
    signed_angle_between_clines_at, tangent_line_at, Circle, Cline, Line, OrientedCircle, Point,
};
use crate::moduli::{normalize, phi, Triangle};
use crate::operators::{t_q_geometric, RatioQ};
use crate::tolerance::Tolerance;

const TWO_PI_3: f64 = 2.0 * FRAC_PI_3;

/// Branches tried in step 7. Six suffice: `tan` has period π, i.e. three
/// branches, and the admissible window is half a turn of `θ/2 + nπ/3`.
const BRANCHES: std::ops::Range<i32> = 0..6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeomObject {
    Point(Point),
    Line(Line),
    Circle(Circle),
    OrientedCircle(OrientedCircle),
    Real(f64),
}

impl From<Cline> for GeomObject {
    fn from(c: Cline) -> Self {
        match c {
            Cline::Circle(c) => GeomObject::OrientedCircle(c),
            Cline::Line(l) => GeomObject::Line(l),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedObject {
    pub name: &'static str,
    pub object: GeomObject,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstructionStep {
    pub index: usize,
    pub label: &'static str,
    pub objects: Vec<NamedObject>,
}

impl ConstructionStep {
    pub fn get(&self, name: &str) -> Option<GeomObject> {
        self.objects.iter().find(|o| o.name == name).map(|o| o.object)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Equivalent,
    NotEquivalent,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstructionWarning {
    /// `Â'` is within a factor of ten of the membership threshold, so the
    /// verdict may flip under a small perturbation.
    NearTangency { distance: f64, threshold: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BranchChoice {
    pub n: i32,
    pub q: RatioQ,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstructionTrace {
    pub verdict: Verdict,
    pub q: Option<RatioQ>,
    /// Reduced into `(-2π/3, 2π/3)`.
    pub theta: Option<f64>,
    pub n: Option<i32>,
    /// Multiples of `2π/3` added to the measured angle to bring it in range.
    pub theta_reduction: i32,
    /// Every admissible branch among `n = 0..6`, in order.
    pub admissible: Vec<BranchChoice>,
    /// Distance from `Â'` to `C_A`.
    pub distance: f64,
    pub threshold: f64,
    pub warning: Option<ConstructionWarning>,
    /// `|φ(T_q(t1)) - φ(t2)|` for the chosen `q`.
    pub residual: Option<f64>,
    pub steps: Vec<ConstructionStep>,
}

impl ConstructionTrace {
    pub fn is_equivalent(&self) -> bool {
        self.verdict == Verdict::Equivalent
    }

    /// Whether the chosen `q` passed the end-to-end similarity check.
    pub fn verified(&self) -> bool {
        self.residual.is_some_and(|r| r <= ROUND_TRIP_EPS)
    }

    pub fn step(&self, index: usize) -> Option<&ConstructionStep> {
        self.steps.iter().find(|s| s.index == index)
    }
}

fn obj(name: &'static str, object: GeomObject) -> NamedObject {
    NamedObject { name, object }
}

/// Centre of the Apollonius circle of `foci` through `a`, built as the
/// intersection of the tangent to `gamma` at `a` with `base_bisector`. When
/// `gamma` is the line through the foci the tangent is that line itself; the
/// centre is then the midpoint of `a` and its harmonic conjugate.
pub fn apollonius_center_by_tangency(
    gamma: &Cline,
    base_bisector: &Line,
    a: Point,
    foci: (Point, Point),
    tol: Tolerance,
) -> Result<Point> {
    let (d, d_bar) = foci;
    if a.distance(d) <= tol.at_scale(d.distance(d_bar)) {
        return Err(Error::ParallelLines);
    }
    match gamma {
        Cline::Circle(c) => {
            let tangent = tangent_line_at(&c.circle, a, tol)?;
            line_intersection(&tangent, base_bisector, tol)
        }
        Cline::Line(_) => Ok(a.midpoint(harmonic_conjugate(a, d, d_bar)?)),
    }
}

/// The point `x` on the line through collinear `a`, `d`, `e` with cross
/// ratio `(x, a; d, e) = -1`.
fn harmonic_conjugate(a: Point, d: Point, e: Point) -> Result<Point> {
    let den = a * 2.0 - d - e;
    if den.norm() == 0.0 {
        return Err(Error::DivisionByZero);
    }
    Ok((a * (d + e) - d * e * 2.0) / den)
}

/// Runs steps 1 to 8 on `t1`, `t2`.
pub fn run_construction(t1: &Triangle, t2: &Triangle, tol: Tolerance) -> Result<ConstructionTrace> {
    let (a, b, c) = (t1.a(), t1.b(), t1.c());
    let mut steps = Vec::with_capacity(8);

    // (1)
    let (d, d_bar) = regular_apex_points(b, c, a, tol).map_err(|_| Error::DegenerateTriangle)?;
    steps.push(ConstructionStep {
        index: 1,
        label: "equilateral apexes over BC",
        objects: vec![obj("D", GeomObject::Point(d)), obj("D_bar", GeomObject::Point(d_bar))],
    });

    // (2)
    let frame = t1.frame();
    let a_hat = frame.to_plane(normalize(t2).z);
    steps.push(ConstructionStep {
        index: 2,
        label: "apex of t2 re-based on BC",
        objects: vec![obj("A_hat", GeomObject::Point(a_hat))],
    });

    let regular = a.distance(d) <= tol.at_scale(d.distance(d_bar));

    // (3)
    let gamma_a = if regular {
        None
    } else {
        Some(cline_through(d, a, d_bar, tol)?)
    };
    let gamma_hat = cline_through(d, a_hat, d_bar, tol).ok();
    let mut objects = Vec::new();
    if let Some(g) = gamma_a {
        objects.push(obj("Gamma_A", g.into()));
    }
    if let Some(g) = gamma_hat {
        objects.push(obj("Gamma_A_hat", g.into()));
    }
    steps.push(ConstructionStep {
        index: 3,
        label: "circles through D and D_bar",
        objects,
    });

    // (4)
    let bisector = perpendicular_bisector(b, c)?;
    let mut objects = vec![obj("bisector", GeomObject::Line(bisector))];
    let c_a = match gamma_a {
        // Regular t1: C_A degenerates to the point D.
        None => Circle { center: d, radius: 0.0 },
        Some(g) => {
            if let Cline::Circle(oc) = g {
                objects.push(obj("tangent", GeomObject::Line(tangent_line_at(&oc.circle, a, tol)?)));
            }
            let center = apollonius_center_by_tangency(&g, &bisector, a, (d, d_bar), tol)?;
            Circle::new(center, center.distance(a))?
        }
    };
    objects.push(obj("center", GeomObject::Point(c_a.center)));
    objects.push(obj("C_A", GeomObject::Circle(c_a)));
    steps.push(ConstructionStep {
        index: 4,
        label: "Apollonius circle through A",
        objects,
    });

    // (5)
    let distance = (c_a.center.distance(a_hat) - c_a.radius).abs();
    let threshold = tol.at_scale(b.distance(c).max(c_a.radius));
    let verdict = if distance <= threshold {
        Verdict::Equivalent
    } else {
        Verdict::NotEquivalent
    };
    let warning = (distance > threshold / 10.0 && distance < threshold * 10.0)
        .then_some(ConstructionWarning::NearTangency { distance, threshold });
    steps.push(ConstructionStep {
        index: 5,
        label: "membership of A_hat in C_A",
        objects: vec![
            obj("distance", GeomObject::Real(distance)),
            obj("threshold", GeomObject::Real(threshold)),
        ],
    });

    let mut trace = ConstructionTrace {
        verdict,
        q: None,
        theta: None,
        n: None,
        theta_reduction: 0,
        admissible: Vec::new(),
        distance,
        threshold,
        warning,
        residual: None,
        steps,
    };
    if verdict == Verdict::NotEquivalent {
        return Ok(trace);
    }

    // (6) Angles are measured in the normalized frame, which mirrors a
    // clockwise t1.
    let measured = match (gamma_a, gamma_hat) {
        (Some(g1), Some(g2)) => {
            let raw = signed_angle_between_clines_at(&g1, &g2, d, tol)?;
            if frame.is_mirrored() {
                reduce_angle(-raw)
            } else {
                raw
            }
        }
        // Both apexes at D: the regular class, fixed by every operator.
        _ => 0.0,
    };
    let (theta, reduction) = reduce_theta(measured);
    trace.steps.push(ConstructionStep {
        index: 6,
        label: "angle at D between the circles",
        objects: vec![
            obj("theta_measured", GeomObject::Real(measured)),
            obj("theta", GeomObject::Real(theta)),
        ],
    });

    // (7)
    let admissible: Vec<BranchChoice> = BRANCHES
        .filter(|&n| branch_admissible(theta, n))
        .filter_map(|n| q_from_angle(theta, n).map(|q| BranchChoice { n, q }))
        .collect();
    let Some(choice) = admissible.first().copied() else {
        return Err(Error::AllBranchesPole);
    };
    trace.steps.push(ConstructionStep {
        index: 7,
        label: "branch n",
        objects: vec![obj("n", GeomObject::Real(f64::from(choice.n)))],
    });

    // (8)
    trace.steps.push(ConstructionStep {
        index: 8,
        label: "ratio q",
        objects: vec![obj("q", GeomObject::Real(choice.q))],
    });
    let rebased = Triangle::new(a_hat, b, c)?;
    let residual = phi(&t_q_geometric(t1, choice.q)).distance(&phi(&rebased));
    trace.q = Some(choice.q);
    trace.theta = Some(theta);
    trace.n = Some(choice.n);
    trace.theta_reduction = reduction;
    trace.admissible = admissible;
    trace.residual = Some(residual);
    Ok(trace)
}

/// Brings an angle in `(-π, π]` into `(-2π/3, 2π/3)` by adding multiples of
/// `2π/3`; returns the angle and the multiple.
fn reduce_theta(theta: f64) -> (f64, i32) {
    if theta >= TWO_PI_3 {
        (theta - TWO_PI_3, -1)
    } else if theta <= -TWO_PI_3 {
        (theta + TWO_PI_3, 1)
    } else {
        (theta, 0)
    }
}

/// `θ/2 + nπ/3 ∈ (π/2, 3π/2)` modulo 2π, away from the poles.
pub fn branch_admissible(theta: f64, n: i32) -> bool {
    let x = (theta / 2.0 + f64::from(n) * FRAC_PI_3).rem_euclid(2.0 * PI);
    x > PI / 2.0 + POLE_EPS && x < 1.5 * PI - POLE_EPS
}

fn point_of(step: &ConstructionStep, name: &str) -> Option<Point> {
    match step.get(name)? {
        GeomObject::Point(p) => Some(p),
        _ => None,
    }
}

fn real_of(step: &ConstructionStep, name: &str) -> Option<f64> {
    match step.get(name)? {
        GeomObject::Real(x) => Some(x),
        _ => None,
    }
}

fn mismatch(step: usize, detail: impl Into<String>) -> Error {
    Error::ReplayMismatch {
        step,
        detail: detail.into(),
    }
}

/// Rebuilds the trace from `t1` and `t2` using only circles through points,
/// lines through points, intersections and tangents, and compares each
/// object with the recorded one. The ratio is checked against the formula.
pub fn replay(trace: &ConstructionTrace, t1: &Triangle, t2: &Triangle, tol: Tolerance) -> Result<()> {
    let (a, b, c) = (t1.a(), t1.b(), t1.c());
    let base = b.distance(c);
    let eps = 1e-9 * base.max(1.0);
    let step = |i: usize| trace.step(i).ok_or_else(|| mismatch(i, "step missing"));
    let same = |i: usize, name: &str, want: Point, got: Option<Point>| -> Result<()> {
        match got {
            Some(p) if p.distance(want) <= eps * want.norm().max(1.0) => Ok(()),
            Some(p) => Err(mismatch(i, format!("{name}: recorded {p}, rebuilt {want}"))),
            None => Err(mismatch(i, format!("{name} missing"))),
        }
    };

    // (1) Two compass circles of radius |BC| about B and C.
    let pts = circle_intersections(&Circle::new(b, base)?, &Circle::new(c, base)?, tol);
    let side = |p: Point| (c - b).cross(p - b) * (c - b).cross(a - b) > 0.0;
    let (d, d_bar) = match pts.as_slice() {
        [p, q] if side(*p) => (*p, *q),
        [p, q] => (*q, *p),
        _ => return Err(mismatch(1, "base circles do not cross")),
    };
    let s1 = step(1)?;
    same(1, "D", d, point_of(s1, "D"))?;
    same(1, "D_bar", d_bar, point_of(s1, "D_bar"))?;

    // (2) Transfer t2's sides, scaled to BC, with the compass.
    let [l_bc, l_ca, l_ab] = t2.side_lengths();
    let (r_b, r_c) = (base * l_ab / l_bc, base * l_ca / l_bc);
    let pts = circle_intersections(&Circle::new(b, r_b)?, &Circle::new(c, r_c)?, tol);
    let a_hat = pts
        .iter()
        .copied()
        .find(|p| side(*p))
        .ok_or_else(|| mismatch(2, "side circles do not cross on A's side"))?;
    same(2, "A_hat", a_hat, point_of(step(2)?, "A_hat"))?;

    // (3)-(4)
    let s4 = step(4)?;
    let center = point_of(s4, "center").ok_or_else(|| mismatch(4, "center missing"))?;
    if a.distance(d) > tol.at_scale(d.distance(d_bar)) {
        let gamma = cline_through(d, a, d_bar, tol)?;
        let bisector = Line::through(d, d_bar)?;
        let rebuilt = apollonius_center_by_tangency(&gamma, &bisector, a, (d, d_bar), tol)?;
        same(4, "center", rebuilt, Some(center))?;
    } else {
        same(4, "center", d, Some(center))?;
    }

    // (5)
    let radius = center.distance(a);
    let equivalent = ((center.distance(a_hat) - radius).abs() <= trace.threshold) == trace.is_equivalent();
    if !equivalent {
        return Err(mismatch(5, "verdict differs"));
    }
    if !trace.is_equivalent() {
        return Ok(());
    }

    // (6)-(8)
    let theta = real_of(step(6)?, "theta").ok_or_else(|| mismatch(6, "theta missing"))?;
    let n = real_of(step(7)?, "n").ok_or_else(|| mismatch(7, "n missing"))? as i32;
    let q = real_of(step(8)?, "q").ok_or_else(|| mismatch(8, "q missing"))?;
    if !branch_admissible(theta, n) {
        return Err(mismatch(7, format!("n = {n} not admissible for θ = {theta}")));
    }
    match q_from_angle(theta, n) {
        Some(want) if (want - q).abs() <= 1e-12 * want.abs().max(1.0) => Ok(()),
        _ => Err(mismatch(8, "q does not follow from θ and n")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivalence::{equivalent, transport_angle};
    use crate::geom::{apollonius_circle, crossing_cosine, RHO, RHO_INV};
    use crate::special::{isosceles_from_base_angle, triangle_from_sides};
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_4;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn apex(x: f64, y: f64) -> Triangle {
        Triangle::from_apex(Point::new(x, y)).unwrap()
    }

    #[test]
    fn identity_pair() {
        let t = apex(0.3, 0.7);
        let tr = run_construction(&t, &t, tol()).unwrap();
        assert!(tr.is_equivalent());
        assert_eq!(tr.steps.len(), 8);
        assert!(tr.theta.unwrap().abs() < 1e-12);
        assert_eq!(tr.n, Some(2));
        assert!(tr.q.unwrap().abs() < 1e-12);
        assert!(tr.verified());
        replay(&tr, &t, &t, tol()).unwrap();
    }

    #[test]
    fn right_isosceles_to_arctan3() {
        let t1 = isosceles_from_base_angle(FRAC_PI_4).unwrap();
        let t2 = isosceles_from_base_angle(3f64.atan()).unwrap();
        let tr = run_construction(&t1, &t2, tol()).unwrap();
        assert!(tr.is_equivalent());
        assert!((tr.theta.unwrap() - FRAC_PI_3).abs() < 1e-9);
        assert_eq!(tr.n, Some(2));
        assert!((tr.q.unwrap() - 1.0 / 3.0).abs() < 1e-9);
        assert!(tr.verified());
        // Γ(D, A, D̄) is the line Re z = 1/2 here.
        assert!(matches!(tr.step(3).unwrap().get("Gamma_A"), Some(GeomObject::Line(_))));
        replay(&tr, &t1, &t2, tol()).unwrap();
    }

    #[test]
    fn equilateral_vs_345() {
        let t1 = triangle_from_sides(1.0, 1.0, 1.0).unwrap();
        let t2 = triangle_from_sides(3.0, 4.0, 5.0).unwrap();
        let tr = run_construction(&t1, &t2, tol()).unwrap();
        assert_eq!(tr.verdict, Verdict::NotEquivalent);
        assert_eq!(tr.steps.len(), 5);
        assert!(tr.q.is_none());
        let s4 = tr.step(4).unwrap();
        assert!(matches!(s4.get("C_A"), Some(GeomObject::Circle(c)) if c.radius == 0.0));
        replay(&tr, &t1, &t2, tol()).unwrap();
    }

    #[test]
    fn equilateral_pair() {
        let t1 = triangle_from_sides(1.0, 1.0, 1.0).unwrap();
        let t2 = triangle_from_sides(2.0, 2.0, 2.0).unwrap();
        let tr = run_construction(&t1, &t2, tol()).unwrap();
        assert!(tr.is_equivalent());
        assert!(tr.q.unwrap().abs() < 1e-12);
    }

    #[test]
    fn center_by_tangency_examples() {
        let (d, d_bar) = (RHO, RHO_INV);
        let bisector = perpendicular_bisector(Point::ZERO, Point::ONE).unwrap();
        let a = Point::new(0.5, 0.5);
        let gamma = cline_through(d, a, d_bar, tol()).unwrap();
        let center = apollonius_center_by_tangency(&gamma, &bisector, a, (d, d_bar), tol()).unwrap();
        let oracle = apollonius_circle(d, d_bar, 2.0 - 3f64.sqrt()).unwrap();
        assert!(center.distance(oracle.center) < 1e-9);
        assert!((center.distance(a) - oracle.radius).abs() < 1e-9);
        assert!((center.x - 0.5).abs() < 1e-12);
        assert_eq!(
            apollonius_center_by_tangency(&gamma, &bisector, d, (d, d_bar), tol()),
            Err(Error::ParallelLines)
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn center_matches_formula_and_is_orthogonal(x in -1.5f64..2.5, y in 0.05f64..2.5) {
            let a = Point::new(x, y);
            prop_assume!(a.distance(RHO) > 1e-3);
            let bisector = perpendicular_bisector(Point::ZERO, Point::ONE).unwrap();
            let gamma = cline_through(RHO, a, RHO_INV, tol()).unwrap();
            let center = apollonius_center_by_tangency(&gamma, &bisector, a, (RHO, RHO_INV), tol()).unwrap();
            let k = a.distance(RHO) / a.distance(RHO_INV);
            let oracle = apollonius_circle(RHO, RHO_INV, k).unwrap();
            let scale = oracle.radius.max(1.0);
            prop_assert!(center.distance(oracle.center) <= 1e-9 * scale);
            if let Cline::Circle(g) = gamma {
                let ca = Circle::new(center, center.distance(a)).unwrap();
                prop_assert!(crossing_cosine(&ca, &g.circle, a).abs() <= 1e-9);
            }
        }

        #[test]
        fn trace_agrees_with_spectral_path(
            x in -1.0f64..2.0, y in 0.1f64..2.0, q in -2.0f64..3.0,
            s in 0.2f64..3.0, rot in -3.1f64..3.1, flip in any::<bool>(), cw in any::<bool>(),
        ) {
            let t1 = if cw { apex(x, y).mirrored() } else { apex(x, y) };
            let img = t_q_geometric(&t1, q).transformed(Point::from_polar(s, rot), Point::new(0.3, -1.0));
            let t2 = if flip { img.reflected() } else { img };
            let tr = run_construction(&t1, &t2, tol()).unwrap();
            prop_assert!(tr.is_equivalent());
            prop_assert!(tr.verified(), "residual {:?}", tr.residual);
            let theta = tr.theta.unwrap();
            prop_assert!(theta.abs() < TWO_PI_3);
            let spectral = 3.0 * transport_angle(phi(&t1), phi(&t2));
            prop_assert!(crate::geom::angle_distance(3.0 * theta, spectral) <= 1e-8);
            replay(&tr, &t1, &t2, tol()).unwrap();
        }

        #[test]
        fn verdict_matches_decider(x1 in -1.0f64..2.0, y1 in 0.1f64..2.0, x2 in -1.0f64..2.0, y2 in 0.1f64..2.0, cw in any::<bool>()) {
            let t1 = if cw { apex(x1, y1).mirrored() } else { apex(x1, y1) };
            let t2 = apex(x2, y2);
            let tr = run_construction(&t1, &t2, tol()).unwrap();
            prop_assert_eq!(tr.is_equivalent(), equivalent(&t1, &t2, tol()));
            replay(&tr, &t1, &t2, tol()).unwrap();
        }
    }
}
