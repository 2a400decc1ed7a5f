//! Subcommand bodies. Each returns the value printed on stdout.

use std::fs;

use clap::ArgMatches;
use equisect::construct::{replay, run_construction};
use equisect::equivalence::{alpha_spectral, invariants_of, solve_q, ROUND_TRIP_EPS};
use equisect::geom::{RHO, RHO_INV};
use equisect::moduli::{normalize, phi_inverse};
use equisect::operators::t_q_geometric;
use equisect::pencil::{orthogonality, render_pencils, render_trace, Foci, PencilKind, PencilSpec};
use equisect::special::classify;
use equisect::svg::BBox;
use equisect::{phi, Error, Point, Tolerance, Triangle, TriangleClass};
use serde::Serialize;
use serde_json::Value;

use crate::input::{parse_numbers, parse_ratio, triangles};
use crate::output::CliError;

/// Largest allowed drift of an orbit off its circle.
const ORBIT_EPS: f64 = 1e-9;
/// Largest allowed `|cos|` at a pencil crossing.
const ORTHOGONALITY_EPS: f64 = 1e-9;

#[derive(Serialize)]
struct Complex {
    re: f64,
    im: f64,
}

impl From<Point> for Complex {
    fn from(p: Point) -> Self {
        Self { re: p.x, im: p.y }
    }
}

#[derive(Serialize)]
struct ModuliOut {
    w: Complex,
    alpha: f64,
    beta: f64,
    omega_apex: Complex,
    class_flags: TriangleClass,
}

pub fn moduli(m: &ArgMatches, tol: Tolerance) -> Result<Value, CliError> {
    let t = triangles(m, 1, tol)?.remove(0);
    let w = phi(&t);
    let out = ModuliOut {
        w: w.w().into(),
        alpha: alpha_spectral(w),
        beta: invariants_of(&t).beta,
        omega_apex: phi_inverse(w).into(),
        class_flags: classify(&t, tol),
    };
    Ok(serde_json::to_value(out).expect("serializable"))
}

#[derive(Serialize)]
struct EquivOut {
    equivalent: bool,
    alpha1: f64,
    alpha2: f64,
    q_candidates: Vec<f64>,
}

/// Round-trip residual `|φ(T_q(t1)) - φ(t2)|`.
fn residual(t1: &Triangle, t2: &Triangle, q: f64) -> f64 {
    phi(&t_q_geometric(t1, q)).distance(&phi(t2))
}

pub fn equiv(m: &ArgMatches, tol: Tolerance) -> Result<Value, CliError> {
    let ts = triangles(m, 2, tol)?;
    let (t1, t2) = (&ts[0], &ts[1]);
    let q_candidates = match solve_q(t1, t2, tol) {
        Ok(qs) => qs,
        Err(Error::NotEquivalent) => Vec::new(),
        Err(e) => return Err(CliError::verification(e.to_string())),
    };
    for &q in &q_candidates {
        let r = residual(t1, t2, q);
        if r > ROUND_TRIP_EPS {
            return Err(CliError::verification(format!(
                "candidate q = {q} failed its round trip (residual {r:e})"
            )));
        }
    }
    let out = EquivOut {
        equivalent: !q_candidates.is_empty(),
        alpha1: alpha_spectral(phi(t1)),
        alpha2: alpha_spectral(phi(t2)),
        q_candidates,
    };
    Ok(serde_json::to_value(out).expect("serializable"))
}

pub fn construct(m: &ArgMatches, tol: Tolerance) -> Result<Value, CliError> {
    let ts = triangles(m, 2, tol)?;
    let (t1, t2) = (&ts[0], &ts[1]);
    let trace = run_construction(t1, t2, tol).map_err(CliError::validation)?;
    replay(&trace, t1, t2, tol).map_err(|e| CliError::verification(e.to_string()))?;
    if trace.is_equivalent() && !trace.verified() {
        return Err(CliError::verification(format!(
            "constructed q = {:?} failed its round trip (residual {:?})",
            trace.q, trace.residual
        )));
    }
    let mut svg_path = Value::Null;
    if let Some(out) = m.get_one::<String>("out").filter(|_| !m.get_flag("json-only")) {
        fs::write(out, render_trace(&trace, t1)).map_err(|e| CliError::io(format!("{out}: {e}")))?;
        svg_path = Value::String(out.clone());
    }
    let mut v = serde_json::to_value(&trace).expect("serializable");
    v.as_object_mut()
        .expect("trace is an object")
        .insert("svg".into(), svg_path);
    Ok(v)
}

#[derive(Serialize)]
struct PencilOut {
    out: String,
    hyperbolic: Vec<f64>,
    elliptic: Vec<f64>,
    crossings: usize,
    max_abs_cosine: f64,
}

fn param_list(m: &ArgMatches, id: &str) -> Result<Option<Vec<f64>>, CliError> {
    let Some(text) = m.get_one::<String>(id) else {
        return Ok(None);
    };
    let count = text.split(',').count();
    parse_numbers(text, count, id).map(Some)
}

pub fn pencil(m: &ArgMatches, tol: Tolerance) -> Result<Value, CliError> {
    let foci = if m.get_flag("infinity") {
        Foci::ZeroInfinity
    } else if let Some(text) = m.get_one::<String>("foci") {
        let v = parse_numbers(text, 4, "foci")?;
        Foci::Points(Point::new(v[0], v[1]), Point::new(v[2], v[3]))
    } else {
        Foci::Points(RHO, RHO_INV)
    };
    let kind = m.get_one::<String>("kind").map_or("both", String::as_str);
    let kinds: &[PencilKind] = match kind {
        "hyperbolic" => &[PencilKind::Hyperbolic],
        "elliptic" => &[PencilKind::Elliptic],
        _ => &[PencilKind::Hyperbolic, PencilKind::Elliptic],
    };
    let viewport = match m.get_one::<String>("viewport") {
        Some(text) => {
            let v = parse_numbers(text, 4, "viewport")?;
            if v[0] >= v[2] || v[1] >= v[3] {
                return Err(CliError::parse(
                    "--viewport: expected min_x,min_y,max_x,max_y with min < max",
                ));
            }
            Some(BBox::new(Point::new(v[0], v[1]), Point::new(v[2], v[3])))
        }
        None => None,
    };
    let mut specs = Vec::new();
    for &k in kinds {
        let id = match k {
            PencilKind::Hyperbolic => "hyperbolic-params",
            PencilKind::Elliptic => "elliptic-params",
        };
        let params = param_list(m, id)?.unwrap_or_else(|| PencilSpec::default_parameters(k, foci));
        let mut spec = PencilSpec::new(k, foci, params).map_err(CliError::validation)?;
        if let Some(v) = viewport {
            spec = spec.with_viewport(v);
        }
        specs.push(spec);
    }
    let members = |k: PencilKind| -> Result<Vec<_>, CliError> {
        let mut all = Vec::new();
        for s in specs.iter().filter(|s| s.kind == k) {
            all.extend(s.members().map_err(CliError::validation)?);
        }
        Ok(all)
    };
    let (h, e) = (members(PencilKind::Hyperbolic)?, members(PencilKind::Elliptic)?);
    let report = orthogonality(&h, &e, tol);
    if report.max_abs_cosine > ORTHOGONALITY_EPS {
        return Err(CliError::verification(format!(
            "pencils cross at |cos| = {:e}, not orthogonal",
            report.max_abs_cosine
        )));
    }
    let out = m.get_one::<String>("out").expect("required").clone();
    let svg = render_pencils(&specs).map_err(CliError::validation)?;
    fs::write(&out, svg).map_err(|e| CliError::io(format!("{out}: {e}")))?;
    let out = PencilOut {
        out,
        hyperbolic: h.iter().map(|m| m.parameter).collect(),
        elliptic: e.iter().map(|m| m.parameter).collect(),
        crossings: report.crossings,
        max_abs_cosine: report.max_abs_cosine,
    };
    Ok(serde_json::to_value(out).expect("serializable"))
}

#[derive(Serialize)]
struct OrbitOut {
    q: f64,
    steps: usize,
    modulus: f64,
    rotation: f64,
    points: Vec<Complex>,
}

pub fn orbit(m: &ArgMatches, tol: Tolerance) -> Result<Value, CliError> {
    let mut t = triangles(m, 1, tol)?.remove(0);
    let q = parse_ratio(m.get_one::<String>("q").expect("required"))?;
    let steps = *m.get_one::<usize>("steps").expect("required");
    if steps == 0 {
        return Err(CliError::parse("--steps must be at least 1"));
    }
    let w0 = phi(&t);
    let mut points = vec![w0.w()];
    for _ in 0..steps {
        // Re-normalize so that repeated scaling cannot overflow.
        let next = t_q_geometric(&t, q);
        t = Triangle::from_apex(normalize(&next).z).map_err(|e| CliError::verification(e.to_string()))?;
        points.push(phi(&t).w());
    }
    let modulus = w0.modulus();
    if let Some(p) = points.iter().find(|p| (p.norm() - modulus).abs() > ORBIT_EPS) {
        return Err(CliError::verification(format!("orbit left its circle at {p}")));
    }
    let out = OrbitOut {
        q,
        steps,
        modulus,
        rotation: equisect::operators::t_q_rotation_angle(q),
        points: points.into_iter().map(Complex::from).collect(),
    };
    Ok(serde_json::to_value(out).expect("serializable"))
}
