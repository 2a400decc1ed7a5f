//! Triangle inputs: `--vertices x1,y1,x2,y2,x3,y3`, `--sides s1,s2,s3` or
//! `--apex re,im` (base `[0, 1]`).

use clap::{Arg, ArgAction, ArgMatches};
use equisect::special::triangle_from_sides;
use equisect::{Point, Rational, Tolerance, Triangle};

use crate::output::CliError;

pub const VERTICES: &str = "vertices";
pub const SIDES: &str = "sides";
pub const APEX: &str = "apex";

#[derive(Debug, Clone, PartialEq)]
pub enum TriangleInput {
    Vertices([Point; 3]),
    Sides([f64; 3]),
    Apex(Point),
}

pub fn triangle_args() -> [Arg; 3] {
    [
        Arg::new(VERTICES)
            .long(VERTICES)
            .value_name("X1,Y1,X2,Y2,X3,Y3")
            .help("Vertices A, B, C")
            .allow_hyphen_values(true)
            .action(ArgAction::Append),
        Arg::new(SIDES)
            .long(SIDES)
            .value_name("S1,S2,S3")
            .help("Side lengths |BC|, |CA|, |AB|")
            .action(ArgAction::Append),
        Arg::new(APEX)
            .long(APEX)
            .value_name("RE,IM")
            .help("Apex over the base [0, 1]")
            .allow_hyphen_values(true)
            .action(ArgAction::Append),
    ]
}

pub fn parse_numbers(text: &str, count: usize, what: &str) -> Result<Vec<f64>, CliError> {
    let nums: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::parse(format!("--{what}: cannot parse {text:?} as numbers")))?;
    if nums.len() != count {
        return Err(CliError::parse(format!(
            "--{what}: expected {count} comma-separated numbers, got {}",
            nums.len()
        )));
    }
    if nums.iter().any(|x| !x.is_finite()) {
        return Err(CliError::parse(format!("--{what}: non-finite value in {text:?}")));
    }
    Ok(nums)
}

/// A ratio given as a decimal or as `p/q`.
pub fn parse_ratio(text: &str) -> Result<f64, CliError> {
    let q = if text.contains('/') {
        text.parse::<Rational>()
            .map_err(|e| CliError::parse(format!("--q: {e}")))?
            .to_f64()
    } else {
        text.trim()
            .parse::<f64>()
            .map_err(|_| CliError::parse(format!("--q: cannot parse {text:?}")))?
    };
    if !q.is_finite() {
        return Err(CliError::parse("--q: non-finite ratio"));
    }
    Ok(q)
}

impl TriangleInput {
    pub fn parse(kind: &str, text: &str) -> Result<Self, CliError> {
        Ok(match kind {
            VERTICES => {
                let v = parse_numbers(text, 6, kind)?;
                TriangleInput::Vertices([Point::new(v[0], v[1]), Point::new(v[2], v[3]), Point::new(v[4], v[5])])
            }
            SIDES => {
                let v = parse_numbers(text, 3, kind)?;
                TriangleInput::Sides([v[0], v[1], v[2]])
            }
            _ => {
                let v = parse_numbers(text, 2, kind)?;
                TriangleInput::Apex(Point::new(v[0], v[1]))
            }
        })
    }

    pub fn to_triangle(&self, tol: Tolerance) -> Result<Triangle, CliError> {
        let t = match *self {
            TriangleInput::Vertices([a, b, c]) => Triangle::with_tolerance(a, b, c, tol),
            TriangleInput::Sides([s1, s2, s3]) => triangle_from_sides(s1, s2, s3),
            TriangleInput::Apex(z) => Triangle::from_apex(z),
        };
        t.map_err(CliError::validation)
    }
}

/// All triangle inputs in command-line order.
pub fn collect_inputs(m: &ArgMatches) -> Result<Vec<TriangleInput>, CliError> {
    let mut found: Vec<(usize, &str, &String)> = Vec::new();
    for kind in [VERTICES, SIDES, APEX] {
        if let (Some(idx), Some(vals)) = (m.indices_of(kind), m.get_many::<String>(kind)) {
            found.extend(idx.zip(vals).map(|(i, v)| (i, kind, v)));
        }
    }
    found.sort_by_key(|(i, _, _)| *i);
    found
        .into_iter()
        .map(|(_, kind, text)| TriangleInput::parse(kind, text))
        .collect()
}

pub fn triangles(m: &ArgMatches, count: usize, tol: Tolerance) -> Result<Vec<Triangle>, CliError> {
    let inputs = collect_inputs(m)?;
    if inputs.len() != count {
        return Err(CliError::parse(format!(
            "expected {count} triangle input(s) (--vertices, --sides or --apex), got {}",
            inputs.len()
        )));
    }
    inputs.iter().map(|i| i.to_triangle(tol)).collect()
}
