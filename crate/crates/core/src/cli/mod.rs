//! Command-line front end. Every command resolves a [`RunConfig`] (JSON file
//! first, flags on top), runs one operation and writes a CSV or JSON artifact.

pub mod output;

use std::f64::consts::{FRAC_PI_2, PI};
use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};

pub use output::{
    emit, parse_json, render, render_csv, render_json, sampled_csv, sweep_csv, Artifact, Format, Metadata, Payload,
    SampledFunction, ScalarRow, WriteError, TOOL_NAME,
};

use crate::analysis::{
    coincidence_check, limit_check, reproduce_norm_table, sweep_alpha, uniform_grid, DegreeParity, SweepOptions, DEFAULT_SWEEP_STEPS,
    TABLE_DEGREES,
};
use crate::error::SplineError;
use crate::factor::{FactorKind, FactorSpec};
use crate::functionals::{
    self, natural_seminorm_order, norm_quadrature, total_variation_partition, FunctionalKind, FunctionalValue,
};
use crate::kernel::{interpolant_series, SplineBasis, TailNorm};
use crate::series::HarmonicSeries;
use crate::spec::{GammaVector, GridPair, SplineSpec, TruncationMode, TruncationPolicy};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Sample one fundamental spline (or a derivative).
    Eval,
    /// Sample the interpolant through --values.
    Interp,
    /// L² norm by Parseval, with a quadrature cross-check.
    Norm,
    /// Total variation.
    Variation,
    /// Arc length over one period.
    Arclength,
    /// Semi-norm of order --q (default (r+1)/2).
    Seminorm,
    /// Squared norms of the power-factor family for r = 1..8 and 50.
    Table,
    /// A functional over a grid of α values.
    Sweep,
    /// Coincidence of sinc-factor splines at α = kπ/N.
    Coincide,
    /// Limit r → ∞ and monotonicity in r.
    Limit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum FunctionalArg {
    Norm,
    Norm2,
    Seminorm,
    Variation,
    Arclength,
}

/// Fully resolved parameters of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<Command>,
    #[serde(rename = "N")]
    pub n: usize,
    pub r: u32,
    #[serde(rename = "I1")]
    pub i1: u8,
    #[serde(rename = "I2")]
    pub i2: u8,
    pub gamma: GammaVector,
    pub factor: FactorKind,
    /// Defaults to π/N.
    pub alpha: Option<f64>,
    pub k: usize,
    pub q: u32,
    pub samples: usize,
    pub tail_tol: f64,
    pub m_max: usize,
    /// Defaults to `fixed:20` for `table` and `limit`, adaptive otherwise.
    pub truncation: Option<TruncationMode>,
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub alpha_steps: usize,
    pub functional: FunctionalArg,
    /// Defaults to the parity of `r`.
    pub parity: Option<DegreeParity>,
    /// Defaults to 1,2,3 (odd) or 1,3 (even).
    pub ks: Option<Vec<i64>>,
    pub values: Option<Vec<f64>>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub strict: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            command: None,
            n: 7,
            r: 3,
            i1: 0,
            i2: 0,
            gamma: GammaVector::SIMPLE,
            factor: FactorKind::SincPower,
            alpha: None,
            k: 1,
            q: 0,
            samples: functionals::DEFAULT_NORM_SAMPLES,
            tail_tol: TruncationPolicy::DEFAULT_TAIL_TOL,
            m_max: TruncationPolicy::DEFAULT_M_MAX,
            truncation: None,
            alpha_min: 0.01,
            alpha_max: FRAC_PI_2 - 0.01,
            alpha_steps: DEFAULT_SWEEP_STEPS,
            functional: FunctionalArg::Norm,
            parity: None,
            ks: None,
            values: None,
            out: None,
            format: Format::Csv,
            strict: false,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "trigspline", version, about = "Fundamental trigonometric splines: values, norms, variation and α sweeps")]
pub struct Args {
    /// Operation to run; may also come from --config.
    #[arg(value_enum)]
    pub command: Option<Command>,
    /// Number of nodes (odd, at least 3).
    #[arg(long = "N")]
    pub n: Option<usize>,
    /// Spline degree.
    #[arg(long)]
    pub r: Option<u32>,
    /// Stitching grid indicator.
    #[arg(long = "I1")]
    pub i1: Option<u8>,
    /// Interpolation grid indicator.
    #[arg(long = "I2")]
    pub i2: Option<u8>,
    /// Branch weights γ1,γ2,γ3.
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<GammaVector>,
    /// Convergence factor: sinc or power.
    #[arg(long)]
    pub factor: Option<FactorKind>,
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Node index, 1-based.
    #[arg(long)]
    pub k: Option<usize>,
    /// Derivative order (semi-norm order for seminorm).
    #[arg(long)]
    pub q: Option<u32>,
    /// Sample count or quadrature resolution.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub tail_tol: Option<f64>,
    #[arg(long)]
    pub m_max: Option<usize>,
    /// adaptive, zeta or fixed:<terms>.
    #[arg(long)]
    pub truncation: Option<TruncationMode>,
    #[arg(long)]
    pub alpha_min: Option<f64>,
    #[arg(long)]
    pub alpha_max: Option<f64>,
    #[arg(long)]
    pub alpha_steps: Option<usize>,
    /// Functional swept over α.
    #[arg(long, value_enum)]
    pub functional: Option<FunctionalArg>,
    /// odd or even.
    #[arg(long)]
    pub parity: Option<DegreeParity>,
    /// Multipliers k for α = kπ/N.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub ks: Option<Vec<i64>>,
    /// Values at the interpolation nodes.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub values: Option<Vec<f64>>,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Treat numeric warnings as failures.
    #[arg(long)]
    pub strict: bool,
    /// JSON file with default values for any of the above.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Spline(#[from] SplineError),
    #[error(transparent)]
    Write(#[from] WriteError),
    #[error("numeric warnings in strict mode: {}", .0.join("; "))]
    Strict(Vec<String>),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Spline(e) if e.is_numeric() => EXIT_NUMERIC,
            CliError::Spline(_) => EXIT_USAGE,
            CliError::Write(_) | CliError::Strict(_) => EXIT_NUMERIC,
        }
    }
}

impl RunConfig {
    /// Config file values (if any) overridden by explicit flags.
    pub fn resolve(args: &Args) -> Result<Self, CliError> {
        let mut c = match &args.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
                serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))?
            }
            None => RunConfig::default(),
        };
        macro_rules! take {
            ($($field:ident),*) => {$(
                if let Some(v) = args.$field.clone() {
                    c.$field = v;
                }
            )*};
        }
        take!(n, r, i1, i2, gamma, factor, k, q, samples, tail_tol, m_max, alpha_min, alpha_max, alpha_steps, functional, format);
        macro_rules! take_opt {
            ($($field:ident),*) => {$(
                if args.$field.is_some() {
                    c.$field = args.$field.clone();
                }
            )*};
        }
        take_opt!(command, alpha, truncation, parity, ks, values, out);
        c.strict |= args.strict;
        if c.command.is_none() {
            return Err(CliError::Usage("no command given (eval, interp, norm, variation, arclength, seminorm, table, sweep, coincide, limit)".into()));
        }
        Ok(c)
    }

    pub fn command(&self) -> Result<Command, CliError> {
        self.command.ok_or_else(|| CliError::Usage("no command given".into()))
    }

    pub fn policy(&self) -> Result<TruncationPolicy, CliError> {
        let fallback = match self.command {
            Some(Command::Table | Command::Limit) => TruncationMode::Fixed { terms: TruncationPolicy::TABLE_TERMS },
            _ => TruncationMode::Adaptive,
        };
        let policy = TruncationPolicy { tail_tol: self.tail_tol, m_max: self.m_max, mode: self.truncation.unwrap_or(fallback) };
        policy.validate()?;
        Ok(policy)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha.unwrap_or(PI / self.n as f64)
    }

    /// Spline family described by the config.
    pub fn spec(&self) -> Result<SplineSpec, CliError> {
        let grids = GridPair::new(self.i1, self.i2)?;
        if self.n < 3 || self.n.is_multiple_of(2) {
            return Err(SplineError::InvalidGrid(self.n as i64).into());
        }
        let factor = FactorSpec::new(self.factor, self.alpha(), self.r)?;
        let spec = SplineSpec::new(grids, self.gamma, factor, self.n)?.with_truncation(self.policy()?);
        spec.validate()?;
        Ok(spec)
    }

    fn seminorm_order(&self) -> u32 {
        if self.q > 0 {
            self.q
        } else {
            natural_seminorm_order(self.r)
        }
    }

    fn functional_kind(&self) -> FunctionalKind {
        match self.functional {
            FunctionalArg::Norm => FunctionalKind::NormL2,
            FunctionalArg::Norm2 => FunctionalKind::NormL2Squared,
            FunctionalArg::Seminorm => FunctionalKind::SemiNorm(self.seminorm_order()),
            FunctionalArg::Variation => FunctionalKind::Variation,
            FunctionalArg::Arclength => FunctionalKind::ArcLength,
        }
    }
}

fn scalar(quantity: &str, v: FunctionalValue) -> ScalarRow {
    ScalarRow {
        quantity: quantity.to_string(),
        value: v.value,
        error_estimate: v.error_estimate.is_finite().then_some(v.error_estimate),
        method: v.method,
    }
}

fn note_series(meta: &mut Metadata, what: &str, s: &HarmonicSeries) {
    meta.record_tails(s.tail_bound, s.l2_tail);
    if !s.converged {
        meta.warnings.push(format!("{what}: truncation did not reach tail_tol"));
    }
}

/// Runs the configured command and returns the artifact to be written.
pub fn run(config: &RunConfig) -> Result<Artifact, CliError> {
    let command = config.command()?;
    if config.samples == 0 {
        return Err(SplineError::InvalidResolution(0).into());
    }
    let payload;
    let mut meta;
    match command {
        Command::Eval | Command::Interp => {
            let spec = config.spec()?;
            meta = Metadata::new(config, Some(spec));
            let series = if command == Command::Eval {
                SplineBasis::new(&spec)?.series(config.k, config.q)?
            } else {
                let values = config.values.as_ref().ok_or_else(|| CliError::Usage("interp needs --values".into()))?;
                interpolant_series(&spec, values, config.q)?
            };
            note_series(&mut meta, "series", &series);
            payload = Payload::Sampled(SampledFunction::uniform(series.sample_uniform(config.samples)));
        }
        Command::Norm => {
            let spec = config.spec()?;
            meta = Metadata::new(config, Some(spec));
            let basis = SplineBasis::new(&spec)?;
            let energy = basis.spectral_energy(0)?;
            meta.record_tails(f64::INFINITY, energy.l2_tail);
            if !energy.converged {
                meta.warnings.push("norm: truncation did not reach tail_tol".into());
            }
            let norms = functionals::spline_norm(&spec)?;
            let series = basis.series(1, 0)?;
            note_series(&mut meta, "quadrature series", &series);
            let quad = norm_quadrature(&series, config.samples)?;
            payload = Payload::Scalars(vec![
                scalar("norm_squared", norms.squared),
                scalar("norm", norms.norm),
                scalar("norm_quadrature", quad),
            ]);
        }
        Command::Seminorm => {
            let spec = config.spec()?;
            meta = Metadata::new(config, Some(spec));
            let order = config.seminorm_order();
            let energy = SplineBasis::new(&spec)?.spectral_energy(order)?;
            meta.record_tails(f64::INFINITY, energy.l2_tail);
            if !energy.converged {
                meta.warnings.push("semi-norm: truncation did not reach tail_tol".into());
            }
            payload = Payload::Scalars(vec![scalar(&format!("seminorm_{order}"), functionals::seminorm(&spec, order)?)]);
        }
        Command::Variation => {
            let spec = config.spec()?;
            meta = Metadata::new(config, Some(spec));
            let basis = SplineBasis::new(&spec)?;
            let mut rows = Vec::new();
            if spec.degree() >= 2 {
                let d = basis.series_with(1, 1, TailNorm::Energy)?;
                note_series(&mut meta, "derivative series", &d);
                rows.push(scalar("variation", functionals::variation_from_derivative(&d, config.samples)?));
            }
            let s = basis.series(1, 0)?;
            note_series(&mut meta, "series", &s);
            rows.push(scalar("variation_partition", total_variation_partition(&s, config.samples)?));
            payload = Payload::Scalars(rows);
        }
        Command::Arclength => {
            let spec = config.spec()?;
            meta = Metadata::new(config, Some(spec));
            if spec.degree() < 2 {
                return Err(SplineError::UnsupportedForDegree(spec.degree()).into());
            }
            let d = SplineBasis::new(&spec)?.series_with(1, 1, TailNorm::Energy)?;
            note_series(&mut meta, "derivative series", &d);
            payload = Payload::Scalars(vec![scalar("arc_length", functionals::arc_length_from_derivative(&d, config.samples)?)]);
        }
        Command::Table => {
            meta = Metadata::new(config, None);
            payload = Payload::Table(reproduce_norm_table(config.gamma, config.n, &TABLE_DEGREES, config.policy()?)?);
        }
        Command::Sweep => {
            let spec = config.spec()?;
            meta = Metadata::new(config, Some(spec));
            let alphas = uniform_grid(config.alpha_min, config.alpha_max, config.alpha_steps);
            let options = SweepOptions { samples: config.samples, ..SweepOptions::default() };
            let curve = sweep_alpha(&spec, &alphas, config.functional_kind(), &options)?;
            if !curve.unconverged.is_empty() {
                meta.warnings.push(format!("sweep: {} α values did not reach tail_tol", curve.unconverged.len()));
            }
            for e in &curve.excluded {
                meta.warnings.push(format!("sweep: α={} excluded ({})", e.alpha, e.reason));
            }
            payload = Payload::Sweep(curve);
        }
        Command::Coincide => {
            let spec = config.spec()?;
            meta = Metadata::new(config, Some(spec));
            let parity = config.parity.unwrap_or_else(|| DegreeParity::of_degree(config.r));
            let ks = config.ks.clone().unwrap_or_else(|| match parity {
                DegreeParity::Odd => vec![1, 2, 3],
                DegreeParity::Even => vec![1, 3],
            });
            let report = coincidence_check(&spec, parity, &ks)?;
            for r in &report.rejected {
                meta.warnings.push(format!("k={} rejected: {}", r.k, r.reason));
            }
            payload = Payload::Coincidence(report);
        }
        Command::Limit => {
            let grids = GridPair::new(config.i1, config.i2)?;
            meta = Metadata::new(config, None);
            payload = Payload::Limit(limit_check(config.gamma, config.n, config.factor, config.alpha(), grids, config.policy()?)?);
        }
    }
    Ok(Artifact { metadata: meta, payload })
}

fn execute(args: &Args) -> Result<(), CliError> {
    let config = RunConfig::resolve(args)?;
    let artifact = run(&config)?;
    let warnings = &artifact.metadata.warnings;
    if config.strict && !warnings.is_empty() {
        return Err(CliError::Strict(warnings.clone()));
    }
    for w in warnings {
        eprintln!("warning: {w}");
    }
    emit(config.out.as_deref(), &render(&artifact, config.format))?;
    Ok(())
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&args) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> RunConfig {
        RunConfig::resolve(&Args::try_parse_from(std::iter::once("trigspline").chain(args.iter().copied())).unwrap()).unwrap()
    }

    #[test]
    fn defaults() {
        let c = parse(&["norm"]);
        assert_eq!((c.n, c.r, c.gamma, c.factor), (7, 3, GammaVector::SIMPLE, FactorKind::SincPower));
        assert!((c.alpha() - PI / 7.0).abs() < 1e-15);
        assert_eq!(c.policy().unwrap().mode, TruncationMode::Adaptive);
        assert_eq!(parse(&["table"]).policy().unwrap().mode, TruncationMode::Fixed { terms: 20 });
    }

    #[test]
    fn flags_override_config_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        std::fs::write(&path, r#"{"command": "seminorm", "r": 5, "N": 9, "gamma": {"low": 0.1, "medium": 0.5, "high": 1.5}}"#).unwrap();
        let c = parse(&["--config", path.to_str().unwrap(), "--r", "7"]);
        assert_eq!(c.command, Some(Command::Seminorm));
        assert_eq!((c.r, c.n), (7, 9));
        assert_eq!(c.gamma, GammaVector::new(0.1, 0.5, 1.5));
    }

    #[test]
    fn unknown_config_keys_are_usage_errors() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        std::fs::write(&path, r#"{"command": "norm", "degree": 3}"#).unwrap();
        let args = Args::try_parse_from(["trigspline", "--config", path.to_str().unwrap()]).unwrap();
        assert_eq!(RunConfig::resolve(&args).unwrap_err().exit_code(), EXIT_USAGE);
    }

    #[test]
    fn lists_and_negative_values() {
        let c = parse(&["coincide", "--ks", "1,-3", "--gamma", "-1,2,3", "--values", "1,0,0,0,0,0,-1"]);
        assert_eq!(c.ks, Some(vec![1, -3]));
        assert_eq!(c.gamma, GammaVector::new(-1.0, 2.0, 3.0));
        assert_eq!(c.values.unwrap().len(), 7);
    }

    #[test]
    fn seminorm_sweep_on_power_factor_is_usage_error() {
        let c = parse(&["sweep", "--functional", "seminorm", "--r", "3", "--factor", "power", "--alpha-steps", "10"]);
        assert_eq!(run(&c).unwrap_err().exit_code(), EXIT_USAGE);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(main_with_args(["trigspline", "bogus"]), EXIT_USAGE);
        assert_eq!(main_with_args(["trigspline", "norm", "--N", "8"]), EXIT_USAGE);
        assert_eq!(main_with_args(["trigspline", "eval", "--k", "9"]), EXIT_USAGE);
    }
}
