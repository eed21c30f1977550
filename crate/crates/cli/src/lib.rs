//! Command-line surface for the `equibasis` library.
//!
//! Subcommands: `construct`, `curve`, `verify`, `search`. Structured results
//! are JSON, curves are CSV. Exit codes: 0 success, 1 check failed (Gram
//! failure or search not converged), 2 bad arguments, 3 I/O failure.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use equibasis::families::{table1_phases, FamilyId};
use equibasis::{
    alternating_projection_search, build_state, entanglement, interpolate, synthesize_coefficients,
    verify_coefficients, verify_solution, BasisLabel, CoefficientVector, PhaseVector, SearchConfig,
};

pub mod output;
pub mod parse;

use output::{emit, grid_value, sig15, to_json, RunManifest};
use parse::TableKey;

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_IO: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Invalid(#[from] equibasis::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Usage(_) | Self::Invalid(_) => EXIT_USAGE,
            Self::Io { .. } => EXIT_IO,
        }
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

#[derive(Debug, Parser)]
#[command(name = "equibasis", version, about = "Equi-entangled orthonormal bases for two qudits")]
pub struct Cli {
    /// Write the data to this file (a `<file>.manifest.json` is written next to it).
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Suppress informational output.
    #[arg(long, global = true)]
    pub quiet: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build all d² basis states from phases, a family or raw coefficients.
    Construct(SourceArgs),
    /// Tabulate entanglement along a family or an interpolation path.
    Curve(CurveArgs),
    /// Check orthonormality and maximal entanglement of a basis.
    Verify(SourceArgs),
    /// Search for phases giving a maximally entangled basis.
    Search(SearchArgs),
}

/// Exactly one coefficient source must be given.
#[derive(Debug, Clone, Args)]
pub struct SourceArgs {
    /// Dimension; optional, checked against the source when given.
    #[arg(long)]
    pub d: Option<usize>,

    /// Comma-separated phases in radians (`pi` syntax allowed, e.g. `0,0,0,pi`).
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<String>,

    /// Closed-form family: d3-real, d3-complex, d4-real, d4-complex.
    #[arg(long)]
    pub family: Option<FamilyId>,

    /// Family parameter in degrees.
    #[arg(long, allow_hyphen_values = true)]
    pub param_deg: Option<f64>,

    /// Tabulated endpoint phases, e.g. `d=4,v=0`.
    #[arg(long)]
    pub table1: Option<TableKey>,

    /// Raw coefficients `re,im;re,im;…`, normalized before use.
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct CurveArgs {
    #[arg(long)]
    pub family: Option<FamilyId>,

    #[arg(long)]
    pub table1: Option<TableKey>,

    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<String>,

    /// Sweep `t ∈ [0, 1]` along `θ = t θ⁰` (required with --table1/--theta).
    #[arg(long)]
    pub interpolate: bool,

    /// Start of the grid (degrees for families, `t` for interpolation).
    #[arg(long, allow_hyphen_values = true)]
    pub from: Option<f64>,

    #[arg(long, allow_hyphen_values = true)]
    pub to: Option<f64>,

    #[arg(long, allow_hyphen_values = true)]
    pub step: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub d: usize,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, default_value_t = 32)]
    pub restarts: usize,

    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,

    #[arg(long, default_value_t = 10_000)]
    pub max_iters: usize,
}

/// Resolved coefficient source.
struct Source {
    label: String,
    theta: Option<PhaseVector>,
    coeffs: CoefficientVector,
}

impl SourceArgs {
    fn resolve(&self) -> Result<Source, CliError> {
        let given = [self.theta.is_some(), self.family.is_some(), self.table1.is_some(), self.coeffs.is_some()];
        if given.iter().filter(|&&g| g).count() != 1 {
            return usage("exactly one of --theta, --family, --table1, --coeffs is required");
        }
        if self.param_deg.is_some() && self.family.is_none() {
            return usage("--param-deg only applies to --family");
        }

        let source = if let Some(text) = &self.theta {
            let theta = PhaseVector::new(parse::angle_list(text).map_err(CliError::Usage)?)?;
            Source { label: format!("theta={text}"), coeffs: synthesize_coefficients(&theta), theta: Some(theta) }
        } else if let Some(family) = self.family {
            let Some(deg) = self.param_deg else {
                return usage("--family requires --param-deg");
            };
            if !deg.is_finite() {
                return usage("--param-deg must be finite");
            }
            Source {
                label: format!("family={family},param_deg={deg}"),
                theta: None,
                coeffs: family.coefficients(deg.to_radians()),
            }
        } else if let Some(key) = self.table1 {
            let entry = table1_phases(key.d, key.variant)?;
            Source {
                label: format!("table1=d={},v={}", key.d, key.variant),
                coeffs: synthesize_coefficients(&entry.theta0),
                theta: Some(entry.theta0),
            }
        } else {
            let text = self.coeffs.as_deref().unwrap_or_default();
            let raw = parse::coefficient_list(text).map_err(CliError::Usage)?;
            Source { label: format!("coeffs={text}"), theta: None, coeffs: CoefficientVector::normalized(raw)? }
        };

        if let Some(d) = self.d {
            if d != source.coeffs.d() {
                return usage(format!("--d {d} does not match the source dimension {}", source.coeffs.d()));
            }
        }
        Ok(source)
    }
}

fn invocation(args: &[String]) -> String {
    args.iter().skip(1).cloned().collect::<Vec<_>>().join(" ")
}

fn base_config(cli: &Cli) -> BTreeMap<String, String> {
    let mut config = BTreeMap::new();
    if let Some(f) = cli.format {
        config.insert("format".into(), format!("{f:?}").to_lowercase());
    }
    config.insert("quiet".into(), cli.quiet.to_string());
    config
}

/// Run a parsed command line; returns the process exit code.
///
/// `argv` is only recorded in the manifest.
pub fn run(cli: &Cli, argv: &[String]) -> Result<u8, CliError> {
    let mut config = base_config(cli);
    match &cli.command {
        Command::Construct(args) => construct(cli, args, argv, &mut config),
        Command::Curve(args) => curve(cli, args, argv, &mut config),
        Command::Verify(args) => verify(cli, args, argv, &mut config),
        Command::Search(args) => search(cli, args, argv, &mut config),
    }
}

fn construct(
    cli: &Cli,
    args: &SourceArgs,
    argv: &[String],
    config: &mut BTreeMap<String, String>,
) -> Result<u8, CliError> {
    let src = args.resolve()?;
    let a = &src.coeffs;
    let d = a.d();
    let e = entanglement(a)?.value();

    let mut rows = Vec::with_capacity(d * d * d);
    for label in BasisLabel::all(d) {
        let state = build_state(a, label)?;
        for i in 0..d {
            let (j, k) = ((i + label.m) % d, (i + label.m + label.n) % d);
            rows.push((label.m, label.n, j, k, state.amp(j, k)));
        }
    }

    let data = match cli.format.unwrap_or(Format::Json) {
        Format::Json => {
            let doc = json!({
                "d": d,
                "source": src.label,
                "theta": src.theta.as_ref().map(|t| t.theta().to_vec()),
                "coefficients": a.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
                "entanglement": e,
                "states": rows.iter().map(|&(m, n, j, k, z)| json!([m, n, j, k, z.re, z.im])).collect::<Vec<_>>(),
            });
            to_json(&doc)
        }
        Format::Csv => {
            let mut s = String::from("m,n,j,k,re,im\n");
            for (m, n, j, k, z) in &rows {
                s.push_str(&format!("{m},{n},{j},{k},{},{}\n", z.re, z.im));
            }
            s
        }
    };

    config.insert("source".into(), src.label.clone());
    config.insert("d".into(), d.to_string());
    config.insert("entanglement".into(), e.to_string());
    config.insert("coefficients".into(), a.iter().map(|z| format!("{},{}", z.re, z.im)).collect::<Vec<_>>().join(";"));
    emit(cli.output.as_deref(), &data, &RunManifest::new(invocation(argv), config.clone()))?;
    if cli.output.is_some() && !cli.quiet {
        println!("d={d} states={} entanglement={}", d * d, sig15(e));
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct CurveRow {
    param_deg: f64,
    entanglement: f64,
}

fn grid(from: f64, to: f64, step: f64) -> Vec<f64> {
    let n = ((to - from) / step + 1e-9).floor() as usize;
    (0..=n).map(|i| (from + i as f64 * step).min(to)).collect()
}

fn curve(cli: &Cli, args: &CurveArgs, argv: &[String], config: &mut BTreeMap<String, String>) -> Result<u8, CliError> {
    let sources = [args.family.is_some(), args.table1.is_some(), args.theta.is_some()];
    if sources.iter().filter(|&&g| g).count() != 1 {
        return usage("exactly one of --family, --table1, --theta is required");
    }

    enum Path {
        Family(FamilyId),
        Interp(PhaseVector),
    }
    let (path, lo, hi, defaults) = if let Some(f) = args.family {
        if args.interpolate {
            return usage("--interpolate applies to --table1 or --theta");
        }
        config.insert("family".into(), f.to_string());
        (Path::Family(f), 0.0, 360.0, (0.0, 180.0, 0.25))
    } else {
        if !args.interpolate {
            return usage("--table1/--theta curves require --interpolate");
        }
        let theta0 = match (&args.table1, &args.theta) {
            (Some(key), _) => {
                config.insert("table1".into(), format!("d={},v={}", key.d, key.variant));
                table1_phases(key.d, key.variant)?.theta0
            }
            (None, Some(text)) => {
                config.insert("theta".into(), text.clone());
                PhaseVector::new(parse::angle_list(text).map_err(CliError::Usage)?)?
            }
            (None, None) => unreachable!(),
        };
        (Path::Interp(theta0), 0.0, 1.0, (0.0, 1.0, 1e-3))
    };

    let from = args.from.unwrap_or(defaults.0);
    let to = args.to.unwrap_or(defaults.1);
    let step = args.step.unwrap_or(defaults.2);
    if !(step > 0.0 && step.is_finite()) {
        return usage("--step must be positive");
    }
    if !(from.is_finite() && to.is_finite() && lo <= from && from <= to && to <= hi) {
        return usage(format!("range must satisfy {lo} <= from <= to <= {hi}"));
    }
    config.insert("from".into(), from.to_string());
    config.insert("to".into(), to.to_string());
    config.insert("step".into(), step.to_string());

    let mut rows = Vec::new();
    for x in grid(from, to, step) {
        let e = match &path {
            Path::Family(f) => entanglement(&f.coefficients(x.to_radians()))?,
            Path::Interp(theta0) => entanglement(&synthesize_coefficients(&interpolate(theta0, x)?))?,
        };
        rows.push(CurveRow { param_deg: x, entanglement: e.value() });
    }

    let data = match cli.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut s = String::from("param_deg,entanglement\n");
            for r in &rows {
                s.push_str(&format!("{},{}\n", grid_value(r.param_deg), sig15(r.entanglement)));
            }
            s
        }
        Format::Json => to_json(&rows),
    };
    emit(cli.output.as_deref(), &data, &RunManifest::new(invocation(argv), config.clone()))?;

    let best = rows.iter().fold(&rows[0], |b, r| if r.entanglement > b.entanglement { r } else { b });
    if !cli.quiet {
        let line = format!("max_entanglement={} argmax={}", sig15(best.entanglement), grid_value(best.param_deg));
        // keep stdout clean when it carries the CSV
        if cli.output.is_some() {
            println!("{line}");
        } else {
            eprintln!("{line}");
        }
    }
    Ok(EXIT_OK)
}

/// Certificate as printed by `verify`; key order is part of the format.
#[derive(Debug, Serialize)]
pub struct CertificateJson {
    pub residual: f64,
    pub gram_max_offdiag: f64,
    pub gram_max_diag_dev: f64,
    pub entanglement: f64,
    pub maximal: bool,
}

fn verify(
    cli: &Cli,
    args: &SourceArgs,
    argv: &[String],
    config: &mut BTreeMap<String, String>,
) -> Result<u8, CliError> {
    if cli.format == Some(Format::Csv) {
        return usage("verify only supports --format json");
    }
    let src = args.resolve()?;
    let cert = match &src.theta {
        Some(theta) => verify_solution(theta),
        None => verify_coefficients(&src.coeffs)?,
    };
    let out = CertificateJson {
        residual: cert.residual,
        gram_max_offdiag: cert.gram.max_offdiag,
        gram_max_diag_dev: cert.gram.max_diag_dev,
        entanglement: cert.entanglement.value(),
        maximal: cert.maximal(),
    };
    config.insert("source".into(), src.label);
    let data = to_json(&out);
    emit(cli.output.as_deref(), &data, &RunManifest::new(invocation(argv), config.clone()))?;
    if cli.output.is_some() && !cli.quiet {
        print!("{data}");
    }
    Ok(if cert.gram_pass() { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn search(
    cli: &Cli,
    args: &SearchArgs,
    argv: &[String],
    config: &mut BTreeMap<String, String>,
) -> Result<u8, CliError> {
    if cli.format == Some(Format::Csv) {
        return usage("search only supports --format json");
    }
    let cfg = SearchConfig {
        d: args.d,
        max_iters: args.max_iters,
        residual_tol: args.tol,
        restarts: args.restarts,
        rng_seed: args.seed,
    };
    let result = alternating_projection_search(&cfg)?;
    for (k, v) in [
        ("d", cfg.d.to_string()),
        ("seed", cfg.rng_seed.to_string()),
        ("restarts", cfg.restarts.to_string()),
        ("tol", cfg.residual_tol.to_string()),
        ("max_iters", cfg.max_iters.to_string()),
    ] {
        config.insert(k.into(), v);
    }
    let doc = json!({
        "d": cfg.d,
        "theta": result.theta.theta(),
        "residual": result.residual,
        "iterations": result.iterations,
        "converged": result.converged,
        "restart_index": result.restart_index,
    });
    let data = to_json(&doc);
    emit(cli.output.as_deref(), &data, &RunManifest::new(invocation(argv), config.clone()))?;
    if cli.output.is_some() && !cli.quiet {
        print!("{data}");
    }
    Ok(if result.converged { EXIT_OK } else { EXIT_CHECK_FAILED })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("equibasis").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn grid_is_inclusive_and_increasing() {
        let g = grid(0.0, 180.0, 0.25);
        assert_eq!(g.len(), 721);
        assert_eq!(*g.last().unwrap(), 180.0);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(grid(0.0, 1.0, 1e-3).len(), 1001);
        assert_eq!(grid(0.0, 1.0, 0.3), vec![0.0, 0.3, 0.6, 0.8999999999999999]);
    }

    #[test]
    fn source_requires_exactly_one() {
        let Command::Construct(args) = parse(&["construct", "--d", "3"]).command else { panic!() };
        assert!(matches!(args.resolve(), Err(CliError::Usage(_))));
        let Command::Construct(args) = parse(&["construct", "--theta", "0,1", "--family", "d3-real"]).command else {
            panic!()
        };
        assert!(matches!(args.resolve(), Err(CliError::Usage(_))));
        let Command::Construct(args) = parse(&["construct", "--family", "d3-real"]).command else { panic!() };
        assert!(args.resolve().is_err());
    }

    #[test]
    fn dimension_must_match_source() {
        let Command::Construct(args) = parse(&["construct", "--d", "3", "--theta", "0,0,0,pi"]).command else {
            panic!()
        };
        assert!(matches!(args.resolve(), Err(CliError::Usage(_))));
    }

    #[test]
    fn raw_coefficients_are_normalized() {
        let Command::Verify(args) = parse(&["verify", "--coeffs", "0.7071,0;0.7071,0"]).command else { panic!() };
        let src = args.resolve().unwrap();
        assert!((src.coeffs[0].re - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Usage("x".into()).exit_code(), EXIT_USAGE);
        assert_eq!(CliError::Invalid(equibasis::Error::InvalidConfig("x")).exit_code(), EXIT_USAGE);
        let io = CliError::Io { path: "p".into(), source: std::io::Error::other("boom") };
        assert_eq!(io.exit_code(), EXIT_IO);
    }
}
