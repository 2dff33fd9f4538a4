//! Functionals of a spline family sampled over the factor parameter α.

use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::golden::golden_section_min;
use crate::error::{Result, SplineError};
use crate::factor::FactorKind;
use crate::functionals::{
    arc_length_from_derivative, l2_error, total_variation_partition, variation_from_derivative, FunctionalKind,
    DEFAULT_VARIATION_SAMPLES,
};
use crate::series::HarmonicSeries;
use crate::kernel::{SplineBasis, TailNorm};
use crate::spec::SplineSpec;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub value: f64,
    pub converged: bool,
    /// L² bound on the omitted part of the series behind the value.
    pub l2_tail: f64,
}

/// One functional of the spline family `spec` (node-independent, node 1 used).
pub fn evaluate_functional(spec: &SplineSpec, kind: FunctionalKind, samples: usize) -> Result<Evaluation> {
    let basis = SplineBasis::new(spec)?;
    let from_energy = |q: u32, root: bool| -> Result<Evaluation> {
        let e = basis.spectral_energy(q)?;
        let value = if root { e.integral.sqrt() } else { e.integral };
        Ok(Evaluation { value, converged: e.converged, l2_tail: e.l2_tail })
    };
    let from_series = |s: &HarmonicSeries, value: f64| Evaluation { value, converged: s.converged, l2_tail: l2_error(s) };
    match kind {
        FunctionalKind::NormL2 => from_energy(0, true),
        FunctionalKind::NormL2Squared => from_energy(0, false),
        FunctionalKind::SemiNorm(0) => Err(SplineError::InvalidInput("semi-norm order must be positive".into())),
        FunctionalKind::SemiNorm(k) => from_energy(k, true),
        FunctionalKind::Variation if spec.degree() >= 2 => {
            let s = basis.series_with(1, 1, TailNorm::Energy)?;
            Ok(from_series(&s, variation_from_derivative(&s, samples)?.value))
        }
        FunctionalKind::Variation => {
            let s = basis.series(1, 0)?;
            Ok(from_series(&s, total_variation_partition(&s, samples)?.value))
        }
        FunctionalKind::ArcLength => {
            if spec.degree() < 2 {
                return Err(SplineError::UnsupportedForDegree(spec.degree()));
            }
            let s = basis.series_with(1, 1, TailNorm::Energy)?;
            Ok(from_series(&s, arc_length_from_derivative(&s, samples)?.value))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepOptions {
    /// Quadrature resolution for variation and arc length.
    pub samples: usize,
    /// Golden-section refinement of each located minimum.
    pub refine: bool,
    pub refine_xtol: f64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self { samples: DEFAULT_VARIATION_SAMPLES, refine: true, refine_xtol: 1e-7 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Minimum {
    pub alpha: f64,
    pub value: f64,
    /// Index of the bracketing sample in `alphas`.
    pub sample_index: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExcludedSample {
    pub alpha: f64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepCurve {
    pub kind: FunctionalKind,
    pub template: SplineSpec,
    pub alphas: Vec<f64>,
    pub values: Vec<f64>,
    pub minima: Vec<Minimum>,
    pub excluded: Vec<ExcludedSample>,
    /// α values whose series did not reach the truncation tolerance.
    pub unconverged: Vec<f64>,
    /// Value at α = π/N, where the sinc family has a polynomial counterpart.
    pub reference: Option<f64>,
}

/// Default number of α samples in a sweep.
pub const DEFAULT_SWEEP_STEPS: usize = 200;

/// `steps` uniform values on `[0.01, π/2 - 0.01]`.
pub fn default_alpha_grid(steps: usize) -> Vec<f64> {
    uniform_grid(0.01, FRAC_PI_2 - 0.01, steps)
}

/// `steps` uniform values on `[lo, hi]`.
pub fn uniform_grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..steps).map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64).collect(),
    }
}

fn validate_sweep(template: &SplineSpec, alphas: &[f64], kind: FunctionalKind) -> Result<()> {
    if alphas.len() < 8 {
        return Err(SplineError::InvalidSweep(format!("need at least 8 α values, got {}", alphas.len())));
    }
    if !alphas.windows(2).all(|w| w[0] < w[1]) {
        return Err(SplineError::InvalidSweep("α values must be strictly increasing".into()));
    }
    if alphas.iter().any(|&a| !(a > 0.0 && a < FRAC_PI_2)) {
        return Err(SplineError::InvalidSweep("α values must lie in (0, π/2)".into()));
    }
    if matches!(kind, FunctionalKind::SemiNorm(_)) && template.factor.kind == FactorKind::PowerSignConstant {
        return Err(SplineError::InvalidSweep(
            "semi-norm sweeps need the sinc factor; the power factor is α-invariant".into(),
        ));
    }
    if let FunctionalKind::SemiNorm(k) = kind {
        template.check_derivative_order(k)?;
    }
    Ok(())
}

/// Sample `kind` over `alphas`, locate interior local minima and refine them.
pub fn sweep_alpha(template: &SplineSpec, alphas: &[f64], kind: FunctionalKind, options: &SweepOptions) -> Result<SweepCurve> {
    validate_sweep(template, alphas, kind)?;
    let eval_at = |alpha: f64| evaluate_functional(&template.with_alpha(alpha), kind, options.samples);

    let results: Vec<Result<Evaluation>> = alphas.par_iter().map(|&a| eval_at(a)).collect();
    let mut curve = SweepCurve {
        kind,
        template: *template,
        alphas: Vec::with_capacity(alphas.len()),
        values: Vec::with_capacity(alphas.len()),
        minima: Vec::new(),
        excluded: Vec::new(),
        unconverged: Vec::new(),
        reference: None,
    };
    for (&alpha, result) in alphas.iter().zip(results) {
        match result {
            Ok(e) => {
                if !e.converged {
                    curve.unconverged.push(alpha);
                }
                curve.alphas.push(alpha);
                curve.values.push(e.value);
            }
            Err(err @ SplineError::NearSingularDenominator { .. }) => {
                curve.excluded.push(ExcludedSample { alpha, reason: err.to_string() })
            }
            Err(err) => return Err(err),
        }
    }

    let brackets = local_minima(&curve.values);
    curve.minima = brackets
        .par_iter()
        .map(|&i| {
            let sample = Minimum { alpha: curve.alphas[i], value: curve.values[i], sample_index: i };
            if !options.refine {
                return sample;
            }
            let refined = golden_section_min(
                |a| eval_at(a).ok().map(|e| e.value),
                curve.alphas[i - 1],
                curve.alphas[i + 1],
                options.refine_xtol,
                200,
            );
            match refined {
                Some((alpha, value)) if value <= sample.value => Minimum { alpha, value, sample_index: i },
                _ => sample,
            }
        })
        .collect();

    if template.factor.kind == FactorKind::SincPower {
        let alpha_ref = PI / template.n as f64;
        curve.reference = eval_at(alpha_ref).ok().map(|e| e.value);
    }
    Ok(curve)
}

/// Indices of interior samples not above either neighbour and strictly below
/// at least one of them beyond round-off.
fn local_minima(values: &[f64]) -> Vec<usize> {
    (1..values.len().saturating_sub(1))
        .filter(|&i| {
            let (l, v, r) = (values[i - 1], values[i], values[i + 1]);
            let flat = 1e-12 * v.abs().max(1.0);
            v <= l && v <= r && (l - v > flat || r - v > flat)
        })
        .collect()
}
