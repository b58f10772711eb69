//! Command-line front end: `eval`, `check`, `detect` and `sharpness`.
//!
//! Every command writes one JSON report to standard output. Exit codes:
//!
//! | code | meaning                                  |
//! |------|------------------------------------------|
//! | 0    | success                                  |
//! | 2    | a required bound failed (`eval`, `check`, `sharpness`) |
//! | 3    | the norm is not an inner-product norm (`detect`) |
//! | 64   | usage error                              |
//! | 65   | data error (e.g. a vector too close to zero) |

pub mod check;
pub mod json;
pub mod report;

use std::io::Write;

use clap::{Args, Parser, Subcommand};

use crate::detector::{classify_space, SearchConfig, SpaceVerdict};
use crate::error::Error;
use crate::functionals::{evaluate_pair, sharpness_ratio};
use crate::norm::{parse_norm_spec, parse_vector, NormSpec, RngSeed};
use report::{
    CheckResults, DetectResults, EvalResults, Inputs, Results, RunReport, SharpnessResults,
    SharpnessRow, SCHEMA_VERSION,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_BOUND_FAILURE: i32 = 2;
pub const EXIT_NOT_INNER_PRODUCT: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;

/// Largest allowed |ratio − closed form| in the sharpness table.
pub const SHARPNESS_TOL: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(name = "normgeom", version, about = "Angular distances and inner-product detection in normed spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate distances, gaps and every bound for one pair.
    Eval(EvalArgs),
    /// Run the property suite on seeded random pairs.
    Check(CheckArgs),
    /// Decide whether the norm looks like an inner-product norm.
    Detect(DetectArgs),
    /// Tabulate the sharpness ratio of the m-type estimate.
    Sharpness(SharpnessArgs),
}

#[derive(Debug, Args)]
struct Output {
    /// Indented output.
    #[arg(long)]
    pretty: bool,
}

#[derive(Debug, Args)]
struct EvalArgs {
    /// lp:<p> | wlp:<p>:<w,...> | gram:<path> | gram:identity<n>
    #[arg(long, allow_hyphen_values = true)]
    norm: String,
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    #[arg(long, allow_hyphen_values = true)]
    y: String,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[arg(long)]
    norm: String,
    /// Defaults to the dimension fixed by the norm, or 2.
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long, default_value_t = 10_000)]
    pairs: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct DetectArgs {
    #[arg(long)]
    norm: String,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Minimum α − β (or normalized defect) that counts as a violation.
    #[arg(long)]
    threshold: Option<f64>,
    #[arg(long)]
    max_iters: Option<usize>,
    /// Worker threads; the report does not depend on this.
    #[arg(long)]
    threads: Option<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct SharpnessArgs {
    /// Comma-separated list of ε values.
    #[arg(long, conflicts_with_all = ["eps_start", "eps_end", "steps"])]
    eps_list: Option<String>,
    #[arg(long, requires_all = ["eps_end", "steps"])]
    eps_start: Option<f64>,
    #[arg(long, requires_all = ["eps_start", "steps"])]
    eps_end: Option<f64>,
    #[arg(long, requires_all = ["eps_start", "eps_end"])]
    steps: Option<usize>,
    /// Emit the table as CSV instead of a JSON report.
    #[arg(long)]
    csv: bool,
    #[command(flatten)]
    output: Output,
}

/// A failure that ends the command with a given exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NearZeroVector(_) | Error::Internal(_) => EXIT_DATA,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

/// Parses `args` (including the program name), runs the command, writes
/// the report to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let outcome = match cli.command {
        Command::Eval(a) => cmd_eval(a),
        Command::Check(a) => cmd_check(a),
        Command::Detect(a) => cmd_detect(a),
        Command::Sharpness(a) => cmd_sharpness(a),
    };
    match outcome {
        Ok((text, code)) => {
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_DATA;
            }
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

type Outcome = Result<(String, i32), Failure>;

/// Canonical spec text: lp and wlp are reprinted, gram keeps its source text.
fn normalize_spec(text: &str, spec: &NormSpec) -> String {
    match spec {
        NormSpec::Gram { .. } => text.trim().to_string(),
        _ => spec.to_string(),
    }
}

fn render(report: &RunReport, pretty: bool) -> Result<String, Failure> {
    let mut s = json::to_string(report, pretty).map_err(|e| Failure {
        code: EXIT_DATA,
        message: e.to_string(),
    })?;
    s.push('\n');
    Ok(s)
}

fn resolve_dim(spec: &NormSpec, dim: Option<usize>) -> Result<usize, Failure> {
    match (dim, spec.intrinsic_dim()) {
        (Some(0), _) => Err(usage("--dim must be positive")),
        (Some(d), Some(n)) if d != n => Err(Error::DimensionMismatch {
            expected: d,
            found: n,
        }
        .into()),
        (Some(d), _) => Ok(d),
        (None, Some(n)) => Ok(n),
        (None, None) => Ok(2),
    }
}

fn cmd_eval(a: EvalArgs) -> Outcome {
    let spec = parse_norm_spec(&a.norm)?;
    let x = parse_vector(&a.x)?;
    let y = parse_vector(&a.y)?;
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            found: y.dim(),
        }
        .into());
    }
    let norm = spec.build(x.dim())?;
    let pair = evaluate_pair(&norm, &x, &y)?;
    let advisory = !norm.is_inner_product();
    let all_required_hold = pair.universal_hold() && (advisory || pair.dunkl_williams_2.holds);
    let report = RunReport {
        schema_version: SCHEMA_VERSION.into(),
        command: "eval".into(),
        spec: normalize_spec(&a.norm, &spec),
        inputs: Inputs {
            x: Some(x),
            y: Some(y),
            ..Inputs::default()
        },
        results: Results::Eval(EvalResults {
            pair,
            dunkl_williams_2_advisory: advisory,
            all_required_hold,
        }),
    };
    let code = if all_required_hold {
        EXIT_OK
    } else {
        EXIT_BOUND_FAILURE
    };
    Ok((render(&report, a.output.pretty)?, code))
}

fn cmd_check(a: CheckArgs) -> Outcome {
    let spec = parse_norm_spec(&a.norm)?;
    let dim = resolve_dim(&spec, a.dim)?;
    let norm = spec.build(dim)?;
    let failures = check::property_suite(&norm, a.pairs, RngSeed(a.seed))?;
    let total_failures = failures.values().sum();
    let report = RunReport {
        schema_version: SCHEMA_VERSION.into(),
        command: "check".into(),
        spec: normalize_spec(&a.norm, &spec),
        inputs: Inputs {
            dim: Some(dim),
            pairs: Some(a.pairs),
            seed: Some(a.seed),
            ..Inputs::default()
        },
        results: Results::Check(CheckResults {
            pairs: a.pairs,
            failures,
            total_failures,
        }),
    };
    let code = if total_failures == 0 {
        EXIT_OK
    } else {
        EXIT_BOUND_FAILURE
    };
    Ok((render(&report, a.output.pretty)?, code))
}

fn cmd_detect(a: DetectArgs) -> Outcome {
    let spec = parse_norm_spec(&a.norm)?;
    let dim = resolve_dim(&spec, a.dim)?;
    let norm = spec.build(dim)?;
    let defaults = SearchConfig::default();
    let config = SearchConfig {
        dim,
        restarts: a.restarts.unwrap_or(defaults.restarts),
        seed: RngSeed(a.seed),
        violation_threshold: a.threshold.unwrap_or(defaults.violation_threshold),
        max_iters_per_restart: a.max_iters.unwrap_or(defaults.max_iters_per_restart),
        ..defaults
    };
    config.validate()?;
    let classification = match a.threads {
        Some(0) => return Err(usage("--threads must be positive")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Failure {
                code: EXIT_DATA,
                message: e.to_string(),
            })?
            .install(|| classify_space(&norm, &config))?,
        None => classify_space(&norm, &config)?,
    };
    let (status, code) = match classification.verdict {
        SpaceVerdict::NotInnerProduct => ("certified", EXIT_NOT_INNER_PRODUCT),
        SpaceVerdict::ConsistentWithInnerProduct => ("no violation found at budget", EXIT_OK),
    };
    let report = RunReport {
        schema_version: SCHEMA_VERSION.into(),
        command: "detect".into(),
        spec: normalize_spec(&a.norm, &spec),
        inputs: Inputs {
            config: Some(config),
            ..Inputs::default()
        },
        results: Results::Detect(DetectResults {
            status: status.into(),
            classification,
        }),
    };
    Ok((render(&report, a.output.pretty)?, code))
}

/// `steps` values from `start` to `end`, equally spaced in log scale.
pub fn geometric_grid(start: f64, end: f64, steps: usize) -> Vec<f64> {
    if steps == 1 {
        return vec![start];
    }
    let ratio = end / start;
    (0..steps)
        .map(|k| match k {
            0 => start,
            k if k == steps - 1 => end,
            k => start * ratio.powf(k as f64 / (steps - 1) as f64),
        })
        .collect()
}

/// Closed form `(1 + ε²)/(1 + ε)²` of the sharpness ratio.
pub fn sharpness_closed_form(eps: f64) -> f64 {
    (1.0 + eps * eps) / ((1.0 + eps) * (1.0 + eps))
}

pub fn sharpness_table(eps: &[f64]) -> crate::Result<SharpnessResults> {
    let rows = eps
        .iter()
        .map(|&e| {
            let ratio = sharpness_ratio(e)?;
            let closed_form = sharpness_closed_form(e);
            Ok(SharpnessRow {
                eps: e,
                ratio,
                closed_form,
                abs_diff: (ratio - closed_form).abs(),
            })
        })
        .collect::<crate::Result<Vec<_>>>()?;
    let all_within_tolerance = rows.iter().all(|r| r.abs_diff <= SHARPNESS_TOL);
    let mut by_eps: Vec<&SharpnessRow> = rows.iter().collect();
    by_eps.sort_by(|a, b| a.eps.total_cmp(&b.eps));
    let gap_monotone = by_eps
        .windows(2)
        .all(|w| 1.0 - w[0].ratio < 1.0 - w[1].ratio);
    Ok(SharpnessResults {
        rows,
        tolerance: SHARPNESS_TOL,
        all_within_tolerance,
        gap_monotone,
    })
}

fn cmd_sharpness(a: SharpnessArgs) -> Outcome {
    let eps = match (&a.eps_list, a.eps_start, a.eps_end, a.steps) {
        (Some(list), ..) => list
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|_| usage(format!("`{t}` is not a number")))
            })
            .collect::<Result<Vec<_>, _>>()?,
        (None, Some(start), Some(end), Some(steps)) => {
            if steps == 0 {
                return Err(usage("--steps must be positive"));
            }
            if !(start > 0.0 && end > 0.0 && start.is_finite() && end.is_finite()) {
                return Err(usage("--eps-start and --eps-end must be positive"));
            }
            geometric_grid(start, end, steps)
        }
        _ => geometric_grid(1e-1, 1e-6, 6),
    };
    if let Some(bad) = eps.iter().find(|e| !(**e > 0.0 && e.is_finite())) {
        return Err(usage(format!("eps must be positive, got {bad}")));
    }
    let table = sharpness_table(&eps)?;
    let code = if table.all_within_tolerance {
        EXIT_OK
    } else {
        EXIT_BOUND_FAILURE
    };
    if a.csv {
        return Ok((sharpness_csv(&table)?, code));
    }
    let report = RunReport {
        schema_version: SCHEMA_VERSION.into(),
        command: "sharpness".into(),
        spec: String::new(),
        inputs: Inputs {
            eps: Some(eps),
            ..Inputs::default()
        },
        results: Results::Sharpness(table),
    };
    Ok((render(&report, a.output.pretty)?, code))
}

fn sharpness_csv(table: &SharpnessResults) -> Result<String, Failure> {
    let io_failure = |e: csv::Error| Failure {
        code: EXIT_DATA,
        message: e.to_string(),
    };
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["eps", "ratio", "closed_form", "abs_diff"])
        .map_err(io_failure)?;
    for r in &table.rows {
        w.write_record([r.eps, r.ratio, r.closed_form, r.abs_diff].map(json::format_f64))
            .map_err(io_failure)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure {
        code: EXIT_DATA,
        message: e.to_string(),
    })?;
    Ok(String::from_utf8(bytes).expect("ascii csv"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (String, String, i32) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("normgeom").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
            code,
        )
    }

    #[test]
    fn grid_endpoints() {
        let g = geometric_grid(1e-1, 1e-6, 6);
        assert_eq!(g.len(), 6);
        assert_eq!((g[0], g[5]), (1e-1, 1e-6));
        for (k, v) in g.iter().enumerate() {
            assert!((v / 10f64.powi(-(k as i32) - 1) - 1.0).abs() < 1e-12);
        }
        assert_eq!(geometric_grid(0.5, 0.1, 1), vec![0.5]);
    }

    #[test]
    fn usage_errors_exit_64() {
        assert_eq!(run_args(&["eval", "--norm", "lp:1"]).2, EXIT_USAGE);
        assert_eq!(run_args(&["frobnicate"]).2, EXIT_USAGE);
        assert_eq!(
            run_args(&["eval", "--norm", "lp:1", "--x", "1,2", "--y", "1"]).2,
            EXIT_USAGE
        );
        assert_eq!(
            run_args(&["eval", "--norm", "lp:1", "--x", "1,a", "--y", "1,2"]).2,
            EXIT_USAGE
        );
        let (out, err, code) = run_args(&["check", "--norm", "lp:0.5"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(out.is_empty());
        assert!(err.contains("invalid exponent"), "{err}");
        assert_eq!(run_args(&["sharpness", "--eps-list", "0.1,0"]).2, EXIT_USAGE);
        assert_eq!(run_args(&["sharpness", "--eps-list", "-1"]).2, EXIT_USAGE);
        assert_eq!(run_args(&["detect", "--norm", "lp:2", "--restarts", "0"]).2, EXIT_USAGE);
        assert_eq!(
            run_args(&["detect", "--norm", "gram:identity3", "--dim", "2"]).2,
            EXIT_USAGE
        );
    }

    #[test]
    fn near_zero_is_data_error() {
        let (_, err, code) = run_args(&["eval", "--norm", "lp:2", "--x", "0,0", "--y", "1,0"]);
        assert_eq!(code, EXIT_DATA);
        assert!(err.contains("too close to zero"));
    }

    #[test]
    fn help_exits_zero() {
        let (out, _, code) = run_args(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("sharpness"));
    }

    #[test]
    fn dunkl_williams_2_is_advisory_off_inner_product() {
        // ℓ1 pair violating the constant-2 bound, still exit 0
        let (out, _, code) = run_args(&["eval", "--norm", "lp:1", "--x", "1,0", "--y", "1,1"]);
        assert_eq!(code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["results"]["eval"]["dunkl_williams_2"]["holds"], false);
        assert_eq!(v["results"]["eval"]["dunkl_williams_2_advisory"], true);
    }

    #[test]
    fn csv_output() {
        let (out, _, code) = run_args(&["sharpness", "--eps-list", "1,0.5", "--csv"]);
        assert_eq!(code, EXIT_OK);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "eps,ratio,closed_form,abs_diff");
        assert!(lines[1].starts_with("1.0000000000000000e0,5.0000000000000000e-1,"));
        assert_eq!(lines.len(), 3);
    }
}
