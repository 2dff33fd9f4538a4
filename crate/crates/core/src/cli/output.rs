//! Artifacts written by the command-line front end and their CSV/JSON forms.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::RunConfig;
use crate::analysis::{CoincidenceReport, LimitReport, NormTable, SweepCurve};
use crate::functionals::Method;
use crate::spec::SplineSpec;

pub const TOOL_NAME: &str = "trigspline";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Values of a periodic function at `t_i = 2πi/S`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledFunction {
    pub t: Vec<f64>,
    pub value: Vec<f64>,
}

impl SampledFunction {
    pub fn uniform(values: Vec<f64>) -> Self {
        let s = values.len();
        let t = (0..s).map(|i| 2.0 * std::f64::consts::PI * i as f64 / s as f64).collect();
        Self { t, value: values }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalarRow {
    pub quantity: String,
    pub value: f64,
    /// Absent when no finite estimate is available.
    pub error_estimate: Option<f64>,
    pub method: Method,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "snake_case")]
pub enum Payload {
    Sampled(SampledFunction),
    Scalars(Vec<ScalarRow>),
    Table(NormTable),
    Sweep(SweepCurve),
    Coincidence(CoincidenceReport),
    Limit(LimitReport),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool: String,
    pub version: String,
    pub config: RunConfig,
    /// Resolved spline family, when the command works on a single one.
    pub spec: Option<SplineSpec>,
    /// Largest sup-norm truncation bound among the series behind the output.
    pub tail_bound: Option<f64>,
    /// Largest L² truncation bound among the series behind the output.
    pub l2_tail: Option<f64>,
    /// Numeric warnings; fatal in strict mode.
    pub warnings: Vec<String>,
}

impl Metadata {
    pub fn new(config: &RunConfig, spec: Option<SplineSpec>) -> Self {
        Self {
            tool: TOOL_NAME.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            config: config.clone(),
            spec,
            tail_bound: None,
            l2_tail: None,
            warnings: Vec::new(),
        }
    }

    pub(crate) fn record_tails(&mut self, sup: f64, l2: f64) {
        let merge = |slot: &mut Option<f64>, v: f64| {
            if v.is_finite() {
                *slot = Some(slot.map_or(v, |old| old.max(v)));
            }
        };
        merge(&mut self.tail_bound, sup);
        merge(&mut self.l2_tail, l2);
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Artifact {
    pub metadata: Metadata,
    pub payload: Payload,
}

pub fn render(artifact: &Artifact, format: Format) -> String {
    match format {
        Format::Json => render_json(artifact),
        Format::Csv => render_csv(&artifact.payload),
    }
}

pub fn render_json(artifact: &Artifact) -> String {
    let mut text = serde_json::to_string_pretty(artifact).expect("artifacts serialize");
    text.push('\n');
    text
}

pub fn parse_json(text: &str) -> serde_json::Result<Artifact> {
    serde_json::from_str(text)
}

pub fn render_csv(payload: &Payload) -> String {
    match payload {
        Payload::Sampled(f) => sampled_csv(f),
        Payload::Scalars(rows) => scalars_csv(rows),
        Payload::Table(t) => table_csv(t),
        Payload::Sweep(c) => sweep_csv(c),
        Payload::Coincidence(r) => coincidence_csv(r),
        Payload::Limit(r) => limit_csv(r),
    }
}

/// `t,value`
pub fn sampled_csv(f: &SampledFunction) -> String {
    let mut out = String::from("t,value\n");
    for (t, v) in f.t.iter().zip(&f.value) {
        let _ = writeln!(out, "{t},{v}");
    }
    out
}

/// `alpha,value,valid[,reference]`, excluded samples included with `NaN` and
/// `valid = 0`.
pub fn sweep_csv(curve: &SweepCurve) -> String {
    let mut rows: Vec<(f64, f64, bool)> = curve
        .alphas
        .iter()
        .zip(&curve.values)
        .map(|(&a, &v)| (a, v, !curve.unconverged.contains(&a)))
        .chain(curve.excluded.iter().map(|e| (e.alpha, f64::NAN, false)))
        .collect();
    rows.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut out = String::from("alpha,value,valid");
    if curve.reference.is_some() {
        out.push_str(",reference");
    }
    out.push('\n');
    for (alpha, value, valid) in rows {
        let _ = write!(out, "{alpha},{value},{}", u8::from(valid));
        if let Some(r) = curve.reference {
            let _ = write!(out, ",{r}");
        }
        out.push('\n');
    }
    out
}

fn scalars_csv(rows: &[ScalarRow]) -> String {
    let mut out = String::from("quantity,value,error_estimate,method\n");
    for row in rows {
        let err = row.error_estimate.map(|e| e.to_string()).unwrap_or_default();
        let method = serde_json::to_value(row.method).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default();
        let _ = writeln!(out, "{},{},{err},{method}", row.quantity, row.value);
    }
    out
}

/// Header `I1,I2,<degrees...>`, one row per grid pair.
fn table_csv(t: &NormTable) -> String {
    let mut out = String::from("I1,I2");
    for d in &t.degrees {
        let _ = write!(out, ",{d}");
    }
    out.push('\n');
    for row in &t.rows {
        let _ = write!(out, "{},{}", u8::from(row.grids.stitching), u8::from(row.grids.interpolation));
        for v in &row.values {
            let _ = write!(out, ",{v}");
        }
        out.push('\n');
    }
    out
}

fn coincidence_csv(r: &CoincidenceReport) -> String {
    let mut out = String::from("alpha_a,alpha_b,deviation,coincide\n");
    for p in &r.pairs {
        let _ = writeln!(out, "{},{},{},{}", p.alpha_a, p.alpha_b, p.deviation, u8::from(p.coincide));
    }
    out
}

fn limit_csv(r: &LimitReport) -> String {
    let mut out = String::from("r,squared_norm,limit\n");
    for (d, v) in r.degrees.iter().zip(&r.values) {
        let _ = writeln!(out, "{d},{v},{}", r.exact_limit);
    }
    let _ = writeln!(out, "{},{},{}", crate::analysis::LIMIT_DEGREE, r.limit_value, r.exact_limit);
    out
}

#[derive(Debug, thiserror::Error)]
#[error("cannot write {path}: {source}")]
pub struct WriteError {
    pub path: PathBuf,
    #[source]
    pub source: std::io::Error,
}

/// Writes `text` to `path` through a temporary file in the same directory and
/// a rename, so readers never see a partial file. `None` writes to stdout.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), WriteError> {
    let Some(path) = path else {
        let mut stdout = std::io::stdout().lock();
        return stdout
            .write_all(text.as_bytes())
            .and_then(|_| stdout.flush())
            .map_err(|source| WriteError { path: PathBuf::from("<stdout>"), source });
    };
    let wrap = |source| WriteError { path: path.to_path_buf(), source };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(wrap)?;
    tmp.write_all(text.as_bytes()).map_err(wrap)?;
    tmp.flush().map_err(wrap)?;
    tmp.persist(path).map_err(|e| wrap(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::{FactorKind, FactorSpec};
    use crate::spec::{GammaVector, GridPair};

    fn curve(n: usize, reference: Option<f64>) -> SweepCurve {
        let spec = SplineSpec::new(GridPair::SAME, GammaVector::SIMPLE, FactorSpec::new(FactorKind::SincPower, 0.5, 3).unwrap(), 7).unwrap();
        SweepCurve {
            kind: crate::functionals::FunctionalKind::SemiNorm(2),
            template: spec,
            alphas: (0..n).map(|i| 0.1 * (i + 1) as f64).collect(),
            values: (0..n).map(|i| 1.0 + i as f64).collect(),
            minima: Vec::new(),
            excluded: Vec::new(),
            unconverged: Vec::new(),
            reference,
        }
    }

    #[test]
    fn three_point_curve_has_four_lines() {
        let csv = sweep_csv(&curve(3, None));
        assert_eq!(csv.lines().count(), 4);
        assert_eq!(csv.lines().next(), Some("alpha,value,valid"));
    }

    #[test]
    fn reference_column_repeats() {
        let csv = sweep_csv(&curve(5, Some(4.25)));
        assert!(csv.starts_with("alpha,value,valid,reference\n"));
        assert!(csv.lines().skip(1).all(|l| l.ends_with(",4.25")));
        assert!(csv.lines().all(|l| l.split(',').count() == 4));
    }

    #[test]
    fn sampled_csv_schema() {
        let f = SampledFunction::uniform(vec![1.0, 0.5, 0.25, 0.125]);
        let csv = sampled_csv(&f);
        assert_eq!(csv.lines().next(), Some("t,value"));
        assert_eq!(csv.lines().nth(1), Some("0,1"));
    }

    #[test]
    fn write_is_atomic_and_reports_bad_paths() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        emit(Some(&path), "a,b\n1,2\n").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "a,b\n1,2\n");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
        assert!(emit(Some(&dir.path().join("missing/out.csv")), "x").is_err());
    }
}
