//! `septool` — exact local analysis of planar analytic vector fields:
//! blow-up reduction, formal separatrices, certified Poincaré–Hopf
//! indices, and divergence diagnostics for weak separatrices.

mod dsl;
mod error;
mod pipeline;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use septool_core::rational::{parse_rational, Rational};
use septool_core::series::Series1;

use dsl::{build_document, parse_document, BuiltDocument, FieldValue};
use error::CliError;
use report::{emit, RunReport};

#[derive(Parser)]
#[command(
    name = "septool",
    version,
    about = "Exact local analysis of planar analytic vector fields",
    long_about = "Exact local analysis of planar (and simple three-dimensional) real analytic \
vector fields: blow-up reduction trees, formal separatrices with verified invariance, \
certified Poincaré–Hopf indices, and divergence diagnostics for weak separatrices. \
All core computations run in arbitrary-precision rational arithmetic."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonDocArgs {
    /// Field description document.
    file: PathBuf,
    /// Override the working truncation order (default: document, then 24).
    #[arg(long)]
    trunc: Option<u32>,
    /// Write the JSON report here ("-" prints JSON to stdout only).
    #[arg(long)]
    json: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce the singularity by iterated blow-ups and print the tree.
    Reduce {
        #[command(flatten)]
        common: CommonDocArgs,
        /// Maximum blow-up depth per branch.
        #[arg(long, default_value_t = 8)]
        max_depth: u32,
        /// Blow up saddle-node points instead of stopping at them.
        #[arg(long)]
        expand_saddle_nodes: bool,
    },
    /// Compute all formal separatrices with their blow-down chains.
    Separatrix {
        #[command(flatten)]
        common: CommonDocArgs,
        /// Number of series coefficients to determine per curve.
        #[arg(long, default_value_t = 12)]
        order: u32,
        /// Maximum blow-up depth per branch.
        #[arg(long, default_value_t = 8)]
        max_depth: u32,
    },
    /// Certified Poincaré–Hopf index by winding number.
    Index {
        #[command(flatten)]
        common: CommonDocArgs,
        /// Fixed circle radius p/q (default: radius-stabilised run).
        #[arg(long)]
        radius: Option<String>,
        /// Lower-bound tolerance for the zero-free certificate.
        #[arg(long, default_value = "0")]
        tolerance: String,
        /// Dump dense circle samples for plotting.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Verify a first-integral candidate (`integral = ...` in the document).
    CheckIntegral {
        #[command(flatten)]
        common: CommonDocArgs,
    },
    /// Divergence diagnostics for the weak separatrix of the ramified
    /// saddle-node family with perturbation δ·α.
    Diverge {
        /// Optional document defining a series named `alpha`.
        file: Option<PathBuf>,
        /// Perturbation coefficients from degree 0, e.g. "0,0,1" for z².
        #[arg(long)]
        alpha: Option<String>,
        /// Perturbation scale.
        #[arg(long, default_value = "1/10")]
        delta: String,
        /// Number of separatrix coefficients to compute.
        #[arg(long, default_value_t = 40)]
        trunc: u32,
        /// Write the JSON report here ("-" prints JSON to stdout only).
        #[arg(long)]
        json: Option<String>,
        /// Dump (n, ln|c_n|) pairs of the separatrix for plotting.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run the end-to-end showcase: blow-up chain, ramification,
    /// separatrix uniqueness, and divergence diagnostics, with golden
    /// checks embedded.
    PaperExample {
        /// Perturbation coefficients from degree 0 (default z²).
        #[arg(long, default_value = "0,0,1")]
        alpha: String,
        /// Perturbation scale for the divergence stage.
        #[arg(long, default_value = "1")]
        delta: String,
        /// Number of separatrix coefficients for the divergence stage.
        #[arg(long, default_value_t = 40)]
        trunc: u32,
        /// Write the JSON report here ("-" prints JSON to stdout only).
        #[arg(long)]
        json: Option<String>,
    },
}

fn load(file: &PathBuf, trunc: Option<u32>) -> Result<(BuiltDocument, String), CliError> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| CliError::Other(format!("cannot read {}: {e}", file.display())))?;
    let doc = parse_document(&text)?;
    let built = build_document(&doc, trunc)?;
    Ok((built, text))
}

fn parse_flag_rational(s: &str, what: &str) -> Result<Rational, CliError> {
    parse_rational(s).map_err(|e| CliError::Parse(format!("--{what}: {e}")))
}

fn parse_alpha(spec: &str, trunc: u32) -> Result<Series1, CliError> {
    let mut coeffs = Vec::new();
    for part in spec.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        coeffs.push(parse_rational(part).map_err(|e| CliError::Parse(format!("--alpha: {e}")))?);
    }
    Ok(Series1::from_coeffs("z", &coeffs, trunc.max(2)))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Reduce {
            common,
            max_depth,
            expand_saddle_nodes,
        } => {
            let (built, text) = load(&common.file, common.trunc)?;
            let (out, human) = pipeline::run_reduce(&built, max_depth, expand_saddle_nodes)?;
            let report = RunReport::new(
                "reduce",
                &[
                    &text,
                    &built.trunc.to_string(),
                    &max_depth.to_string(),
                    &expand_saddle_nodes.to_string(),
                ],
                out,
            );
            emit(&report, common.json.as_deref(), &human)?;
        }
        Command::Separatrix {
            common,
            order,
            max_depth,
        } => {
            let (built, text) = load(&common.file, common.trunc)?;
            let (out, human) = pipeline::run_separatrix(&built, order, max_depth)?;
            let report = RunReport::new(
                "separatrix",
                &[
                    &text,
                    &built.trunc.to_string(),
                    &order.to_string(),
                    &max_depth.to_string(),
                ],
                out,
            );
            emit(&report, common.json.as_deref(), &human)?;
        }
        Command::Index {
            common,
            radius,
            tolerance,
            csv,
        } => {
            let (built, text) = load(&common.file, common.trunc)?;
            let radius_val = radius
                .as_deref()
                .map(|r| parse_flag_rational(r, "radius"))
                .transpose()?;
            let tolerance_val = parse_flag_rational(&tolerance, "tolerance")?;
            let (out, human) = pipeline::run_index(&built, radius_val, tolerance_val)?;
            if let Some(path) = csv {
                if let FieldValue::Planar(f) = &built.field {
                    std::fs::write(&path, pipeline::circle_csv(f, &out.report.radius, 360))?;
                }
            }
            let report = RunReport::new(
                "index",
                &[
                    &text,
                    &built.trunc.to_string(),
                    radius.as_deref().unwrap_or("stabilized"),
                    &tolerance,
                ],
                out,
            );
            emit(&report, common.json.as_deref(), &human)?;
        }
        Command::CheckIntegral { common } => {
            let (built, text) = load(&common.file, common.trunc)?;
            let (out, human) = pipeline::run_check_integral(&built)?;
            let report = RunReport::new("check-integral", &[&text, &built.trunc.to_string()], out);
            emit(&report, common.json.as_deref(), &human)?;
        }
        Command::Diverge {
            file,
            alpha,
            delta,
            trunc,
            json,
            csv,
        } => {
            let delta_val = parse_flag_rational(&delta, "delta")?;
            let (alpha_series, digest_src) = match (&alpha, &file) {
                (Some(spec), _) => (parse_alpha(spec, trunc + 2)?, spec.clone()),
                (None, Some(path)) => {
                    let (built, text) = load(path, Some(trunc))?;
                    let s = built.series.get("alpha").cloned().ok_or_else(|| {
                        CliError::Parse(
                            "document defines no series named `alpha`; pass --alpha".to_string(),
                        )
                    })?;
                    (s.rename_var("z").pad_to(trunc + 2), text)
                }
                (None, None) => {
                    return Err(CliError::Parse(
                        "diverge needs --alpha or a document defining series `alpha`".to_string(),
                    ))
                }
            };
            let (out, human) = pipeline::run_diverge(&alpha_series, &delta_val, trunc)?;
            if let Some(path) = csv {
                std::fs::write(&path, pipeline::loglog_csv(&out.separatrix))?;
            }
            let report = RunReport::new("diverge", &[&digest_src, &delta, &trunc.to_string()], out);
            emit(&report, json.as_deref(), &human)?;
        }
        Command::PaperExample {
            alpha,
            delta,
            trunc,
            json,
        } => {
            let delta_val = parse_flag_rational(&delta, "delta")?;
            let alpha_series = parse_alpha(&alpha, trunc + 2)?;
            let (out, human) = pipeline::run_showcase(&alpha_series, &delta_val, trunc)?;
            let all_pass = out.all_pass;
            let report =
                RunReport::new("paper-example", &[&alpha, &delta, &trunc.to_string()], out);
            emit(&report, json.as_deref(), &human)?;
            if !all_pass {
                return Err(CliError::Certification(
                    "one or more showcase golden checks failed".to_string(),
                ));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("septool: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
