//! `equisect`: classify triangles, decide equisectional equivalence, solve for
//! the ratio, trace the construction and draw pencils of circles.
//!
//! JSON goes to stdout. Exit codes: 0 success, 2 bad input, 3 a result
//! failed its own verification.

mod commands;
mod input;
mod output;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{value_parser, Arg, ArgAction, ArgMatches, Command};
use equisect::Tolerance;

use input::triangle_args;
use output::{emit, render, CliError, EXIT_OK};

const TOLERANCE_ENV: &str = "EQUISECT_TOLERANCE";

fn cli() -> Command {
    Command::new("equisect")
        .version(env!("CARGO_PKG_VERSION"))
        .about("Triangle moduli, equisection operators and their constructions")
        .after_help(format!(
            "Triangles are given by --vertices, --sides or --apex; commands taking two \
             triangles read them in command-line order.\nThe environment variable {TOLERANCE_ENV} \
             overrides the default relative tolerance ({}).",
            Tolerance::DEFAULT_RELATIVE
        ))
        .subcommand_required(true)
        .subcommand(
            Command::new("moduli")
                .about("Moduli point, invariants and family flags of one triangle")
                .args(triangle_args()),
        )
        .subcommand(
            Command::new("equiv")
                .about("Decide equivalence of two triangles and list every ratio q")
                .args(triangle_args()),
        )
        .subcommand(
            Command::new("construct")
                .about("Run the compass-and-straightedge construction for two triangles")
                .args(triangle_args())
                .arg(
                    Arg::new("out")
                        .long("out")
                        .value_name("PATH")
                        .help("Write the diagram as SVG"),
                )
                .arg(
                    Arg::new("json-only")
                        .long("json-only")
                        .action(ArgAction::SetTrue)
                        .help("Do not write the SVG diagram"),
                ),
        )
        .subcommand(
            Command::new("pencil")
                .visible_alias("render-pencil")
                .about("Draw hyperbolic (black) and elliptic (blue) pencils of circles as SVG")
                .arg(
                    Arg::new("kind")
                        .long("kind")
                        .value_parser(["hyperbolic", "elliptic", "both"])
                        .default_value("both"),
                )
                .arg(
                    Arg::new("foci")
                        .long("foci")
                        .value_name("X1,Y1,X2,Y2")
                        .allow_hyphen_values(true)
                        .help("Foci (default: e^{±iπ/3})"),
                )
                .arg(
                    Arg::new("infinity")
                        .long("infinity")
                        .action(ArgAction::SetTrue)
                        .conflicts_with("foci")
                        .help("Use the foci 0 and ∞: circles about 0 and lines through 0"),
                )
                .arg(
                    Arg::new("hyperbolic-params")
                        .long("hyperbolic-params")
                        .value_name("LIST")
                        .help("Distance ratios in (0, 1), or radii with --infinity"),
                )
                .arg(
                    Arg::new("elliptic-params")
                        .long("elliptic-params")
                        .value_name("LIST")
                        .allow_hyphen_values(true)
                        .help("Chord angles in (0, π), or line directions with --infinity"),
                )
                .arg(
                    Arg::new("viewport")
                        .long("viewport")
                        .value_name("MINX,MINY,MAXX,MAXY")
                        .allow_hyphen_values(true),
                )
                .arg(Arg::new("out").long("out").value_name("PATH").required(true)),
        )
        .subcommand(
            Command::new("orbit")
                .about("Iterate T_q on one triangle and list the moduli points")
                .args(triangle_args())
                .arg(
                    Arg::new("q")
                        .long("q")
                        .value_name("Q")
                        .required(true)
                        .allow_hyphen_values(true)
                        .help("Ratio, decimal or p/q"),
                )
                .arg(
                    Arg::new("steps")
                        .long("steps")
                        .value_name("N")
                        .required(true)
                        .value_parser(value_parser!(usize)),
                ),
        )
}

fn tolerance() -> Result<Tolerance, CliError> {
    match std::env::var(TOLERANCE_ENV) {
        Ok(text) => match text.trim().parse::<f64>() {
            Ok(x) if x > 0.0 && x.is_finite() => Ok(Tolerance::new(x)),
            _ => Err(CliError::parse(format!(
                "{TOLERANCE_ENV}: expected a positive number, got {text:?}"
            ))),
        },
        Err(_) => Ok(Tolerance::default()),
    }
}

fn dispatch(m: &ArgMatches) -> Result<serde_json::Value, CliError> {
    let tol = tolerance()?;
    match m.subcommand() {
        Some(("moduli", sub)) => commands::moduli(sub, tol),
        Some(("equiv", sub)) => commands::equiv(sub, tol),
        Some(("construct", sub)) => commands::construct(sub, tol),
        Some(("pencil", sub)) => commands::pencil(sub, tol),
        Some(("orbit", sub)) => commands::orbit(sub, tol),
        _ => unreachable!("subcommand_required"),
    }
}

fn main() -> ExitCode {
    let matches = match cli().try_get_matches() {
        Ok(m) => m,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = CliError::parse(e.render().to_string().trim().to_string());
            emit(&render(&err.to_json()));
            return ExitCode::from(err.code as u8);
        }
    };
    match dispatch(&matches) {
        Ok(v) => {
            emit(&render(&v));
            ExitCode::from(EXIT_OK as u8)
        }
        Err(err) => {
            emit(&render(&err.to_json()));
            ExitCode::from(err.code as u8)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn command_definition_is_consistent() {
        cli().debug_assert();
    }
}
