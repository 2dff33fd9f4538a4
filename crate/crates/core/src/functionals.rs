//! L² norms, semi-norms, total variation and arc length over one period.
//!
//! Norm-type quantities have two independent routes: Parseval on the
//! Fourier coefficients and periodic trapezoid quadrature on point values.
//! Variation likewise has a derivative-integral route and a partition route.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SplineError};
use crate::kernel::{SpectralEnergy, SplineBasis, TailNorm};
use crate::series::HarmonicSeries;
use crate::spec::SplineSpec;

pub const DEFAULT_NORM_SAMPLES: usize = 4096;
pub const DEFAULT_VARIATION_SAMPLES: usize = 16384;
pub const MIN_DERIVATIVE_SAMPLES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionalKind {
    NormL2,
    NormL2Squared,
    SemiNorm(u32),
    Variation,
    ArcLength,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Parseval,
    Quadrature,
    Partition,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FunctionalValue {
    pub kind: FunctionalKind,
    pub value: f64,
    pub method: Method,
    pub error_estimate: f64,
}

/// A 2π-periodic real function that can be sampled.
pub trait PeriodicFunction: Sync {
    fn value(&self, t: f64) -> f64;

    /// Values at `2πi/s` for `i = 0..s`.
    fn sample_uniform(&self, s: usize) -> Vec<f64> {
        (0..s).map(|i| self.value(2.0 * PI * i as f64 / s as f64)).collect()
    }
}

impl PeriodicFunction for HarmonicSeries {
    fn value(&self, t: f64) -> f64 {
        self.eval(t)
    }

    fn sample_uniform(&self, s: usize) -> Vec<f64> {
        HarmonicSeries::sample_uniform(self, s)
    }
}

/// Adapter for plain closures.
pub struct FnPeriodic<F>(pub F);

impl<F: Fn(f64) -> f64 + Sync> PeriodicFunction for FnPeriodic<F> {
    fn value(&self, t: f64) -> f64 {
        (self.0)(t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormValues {
    pub squared: FunctionalValue,
    pub norm: FunctionalValue,
}

/// `∫₀^{2π} f² = 2π·c0² + π·Σ(aₙ² + bₙ²)`, exact for the series model.
pub fn norm_parseval(series: &HarmonicSeries) -> NormValues {
    let squared = 2.0 * PI * series.c0 * series.c0 + PI * series.harmonic_energy();
    let norm = squared.sqrt();
    let err_norm = l2_error(series);
    let err_sq = 2.0 * norm * err_norm + err_norm * err_norm;
    NormValues {
        squared: FunctionalValue {
            kind: FunctionalKind::NormL2Squared,
            value: squared,
            method: Method::Parseval,
            error_estimate: err_sq,
        },
        norm: FunctionalValue { kind: FunctionalKind::NormL2, value: norm, method: Method::Parseval, error_estimate: err_norm },
    }
}

/// Bound on `‖f - f_M‖₂`, using `√(2π)·sup|f - f_M|` as a fallback.
pub(crate) fn l2_error(series: &HarmonicSeries) -> f64 {
    let from_sup = (2.0 * PI).sqrt() * series.tail_bound;
    let e = series.l2_tail.min(if from_sup.is_nan() { f64::INFINITY } else { from_sup });
    if e.is_nan() {
        f64::INFINITY
    } else {
        e
    }
}

fn trapezoid_mean_square(values: &[f64]) -> f64 {
    2.0 * PI * values.iter().map(|v| v * v).sum::<f64>() / values.len() as f64
}

/// Periodic trapezoid estimate of `(∫ f²)^{1/2}`; the error estimate compares
/// against the doubled resolution.
pub fn norm_quadrature<F: PeriodicFunction + ?Sized>(f: &F, samples: usize) -> Result<FunctionalValue> {
    if samples < 2 {
        return Err(SplineError::InvalidResolution(samples));
    }
    let coarse = trapezoid_mean_square(&f.sample_uniform(samples)).sqrt();
    let fine = trapezoid_mean_square(&f.sample_uniform(2 * samples)).sqrt();
    Ok(FunctionalValue {
        kind: FunctionalKind::NormL2,
        value: coarse,
        method: Method::Quadrature,
        error_estimate: (fine - coarse).abs(),
    })
}

/// `(∫ [f^{(k)}]²)^{1/2}` of a series already differentiated `k` times.
pub fn seminorm_of_derivative(derivative: &HarmonicSeries) -> FunctionalValue {
    let NormValues { norm, .. } = norm_parseval(derivative);
    FunctionalValue { kind: FunctionalKind::SemiNorm(derivative.derivative_order), ..norm }
}

fn norms_from_energy(e: &SpectralEnergy) -> NormValues {
    let norm = e.integral.sqrt();
    let err = if e.l2_tail.is_nan() { f64::INFINITY } else { e.l2_tail };
    NormValues {
        squared: FunctionalValue {
            kind: FunctionalKind::NormL2Squared,
            value: e.integral,
            method: Method::Parseval,
            error_estimate: 2.0 * norm * err + err * err,
        },
        norm: FunctionalValue { kind: FunctionalKind::NormL2, value: norm, method: Method::Parseval, error_estimate: err },
    }
}

/// L² norm of the fundamental spline (node-independent).
pub fn spline_norm(spec: &SplineSpec) -> Result<NormValues> {
    Ok(norms_from_energy(&SplineBasis::new(spec)?.spectral_energy(0)?))
}

/// Semi-norm of order `k_order` of the fundamental spline (node-independent).
pub fn seminorm(spec: &SplineSpec, k_order: u32) -> Result<FunctionalValue> {
    if k_order == 0 {
        return Err(SplineError::InvalidInput("semi-norm order must be positive".into()));
    }
    let energy = SplineBasis::new(spec)?.spectral_energy(k_order)?;
    Ok(FunctionalValue { kind: FunctionalKind::SemiNorm(k_order), ..norms_from_energy(&energy).norm })
}

/// Default semi-norm order for degree `r`: `(r + 1) / 2` (odd degree `2k - 1`).
pub fn natural_seminorm_order(r: u32) -> u32 {
    r.div_ceil(2)
}

/// `∫|f'|` from samples of `f'`, with one bisection pass around each sign
/// change. Midpoints come from the same sampling on the doubled grid.
pub fn variation_from_derivative<F: PeriodicFunction + ?Sized>(derivative: &F, samples: usize) -> Result<FunctionalValue> {
    if samples < MIN_DERIVATIVE_SAMPLES {
        return Err(SplineError::InvalidResolution(samples));
    }
    let fine = derivative.sample_uniform(2 * samples);
    let d: Vec<f64> = fine.iter().step_by(2).copied().collect();
    let h = 2.0 * PI / samples as f64;
    let mut total = 0.0;
    let mut correction = 0.0;
    for i in 0..samples {
        let (da, db) = (d[i], d[(i + 1) % samples]);
        let base = 0.5 * h * (da.abs() + db.abs());
        if da * db >= 0.0 {
            total += base;
            continue;
        }
        let dm = fine[2 * i + 1];
        let half = 0.5 * h;
        let refined = if da * dm < 0.0 {
            kink_trapezoid(da, dm, half) + 0.5 * half * (dm.abs() + db.abs())
        } else {
            0.5 * half * (da.abs() + dm.abs()) + kink_trapezoid(dm, db, half)
        };
        total += refined;
        correction += (refined - base).abs();
    }
    Ok(FunctionalValue { kind: FunctionalKind::Variation, value: total, method: Method::Quadrature, error_estimate: correction })
}

/// `∫|g|` over an interval of width `w` where `g` is linear and changes sign.
fn kink_trapezoid(ga: f64, gb: f64, w: f64) -> f64 {
    let (aa, ab) = (ga.abs(), gb.abs());
    if aa + ab == 0.0 {
        return 0.0;
    }
    0.5 * w * (aa * aa + ab * ab) / (aa + ab)
}

/// Total variation of a spline over `[0, 2π]` as `∫|f'|`.
pub fn total_variation_derivative(spec: &SplineSpec, samples: usize) -> Result<FunctionalValue> {
    if spec.degree() < 2 {
        return Err(SplineError::UseDPartitionVariation(spec.degree()));
    }
    let derivative = SplineBasis::new(spec)?.series_with(1, 1, TailNorm::Energy)?;
    variation_from_derivative(&derivative, samples)
}

/// `Σ|f(x_i) - f(x_{i-1})|` over the uniform `P`-point partition of one period.
pub fn total_variation_partition<F: PeriodicFunction + ?Sized>(f: &F, partition: usize) -> Result<FunctionalValue> {
    if partition < 2 {
        return Err(SplineError::InvalidResolution(partition));
    }
    let sum_abs_increments = |values: &[f64]| -> f64 {
        let n = values.len();
        (0..n).map(|i| (values[(i + 1) % n] - values[i]).abs()).sum()
    };
    let values = f.sample_uniform(partition);
    let value = sum_abs_increments(&values);
    // Every other point gives the coarser partition.
    let coarse: Vec<f64> = values.iter().step_by(2).copied().collect();
    let error_estimate = if partition.is_multiple_of(2) && coarse.len() >= 2 {
        value - sum_abs_increments(&coarse)
    } else {
        f64::NAN
    };
    Ok(FunctionalValue { kind: FunctionalKind::Variation, value, method: Method::Partition, error_estimate })
}

/// `∫√(1 + f'²)` from samples of `f'`.
pub fn arc_length_from_derivative<F: PeriodicFunction + ?Sized>(derivative: &F, samples: usize) -> Result<FunctionalValue> {
    if samples < MIN_DERIVATIVE_SAMPLES {
        return Err(SplineError::InvalidResolution(samples));
    }
    let integrate = |d: &[f64]| 2.0 * PI * d.iter().map(|v| (1.0 + v * v).sqrt()).sum::<f64>() / d.len() as f64;
    let d = derivative.sample_uniform(samples);
    let fine = integrate(&d);
    let coarse: Vec<f64> = d.iter().step_by(2).copied().collect();
    let error_estimate = if samples.is_multiple_of(2) { (fine - integrate(&coarse)).abs() } else { f64::NAN };
    Ok(FunctionalValue { kind: FunctionalKind::ArcLength, value: fine, method: Method::Quadrature, error_estimate })
}

pub fn arc_length(spec: &SplineSpec, samples: usize) -> Result<FunctionalValue> {
    if spec.degree() < 2 {
        return Err(SplineError::UnsupportedForDegree(spec.degree()));
    }
    let derivative = SplineBasis::new(spec)?.series_with(1, 1, TailNorm::Energy)?;
    arc_length_from_derivative(&derivative, samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Term;

    fn cosine() -> HarmonicSeries {
        HarmonicSeries::from_terms(0.0, vec![Term { n: 1, a: 1.0, b: 0.0 }])
    }

    #[test]
    fn parseval_constant_and_cosine() {
        let c = norm_parseval(&HarmonicSeries::constant(1.0));
        assert!((c.squared.value - 2.0 * PI).abs() < 1e-15);
        let cs = norm_parseval(&cosine());
        assert!((cs.squared.value - PI).abs() < 1e-15);
        assert!((cs.norm.value * cs.norm.value - cs.squared.value).abs() < 1e-12 * cs.squared.value);
    }

    #[test]
    fn quadrature_constant_and_cosine() {
        let one = norm_quadrature(&FnPeriodic(|_| 1.0), 16).unwrap();
        assert!((one.value - (2.0 * PI).sqrt()).abs() < 1e-14);
        let c = norm_quadrature(&cosine(), 64).unwrap();
        assert!((c.value - PI.sqrt()).abs() < 1e-12);
        assert_eq!(norm_quadrature(&cosine(), 1), Err(SplineError::InvalidResolution(1)));
    }

    #[test]
    fn seminorm_of_cosine() {
        let v = seminorm_of_derivative(&cosine().derivative(2));
        assert_eq!(v.kind, FunctionalKind::SemiNorm(2));
        assert!((v.value - PI.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn variation_of_cosine() {
        let d = cosine().derivative(1);
        let v = variation_from_derivative(&d, 16384).unwrap();
        assert!((v.value - 4.0).abs() < 1e-6, "{}", v.value);
        let flat = variation_from_derivative(&FnPeriodic(|_| 0.0), 128).unwrap();
        assert_eq!(flat.value, 0.0);
    }

    #[test]
    fn partition_variation_of_cosine() {
        let v = total_variation_partition(&cosine(), 4096).unwrap();
        assert!(v.value <= 4.0 && 4.0 - v.value < 1e-5);
        let coarse = total_variation_partition(&cosine(), 2048).unwrap();
        assert!(coarse.value <= v.value + 1e-12);
    }

    #[test]
    fn arc_length_of_cosine_and_constant() {
        let flat = arc_length_from_derivative(&FnPeriodic(|_| 0.0), 64).unwrap();
        assert!((flat.value - 2.0 * PI).abs() < 1e-14);
        let l = arc_length_from_derivative(&cosine().derivative(1), 4096).unwrap();
        // Oracle: Simpson's rule on ∫₀^{2π} √(1 + sin² t) with 20000 panels.
        let n = 20000;
        let h = 2.0 * PI / n as f64;
        let g = |t: f64| (1.0 + t.sin().powi(2)).sqrt();
        let simpson = h / 3.0
            * (0..=n)
                .map(|i| {
                    let w = if i == 0 || i == n { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
                    w * g(i as f64 * h)
                })
                .sum::<f64>();
        assert!((simpson - 7.640396).abs() < 1e-6);
        assert!((l.value - simpson).abs() < 1e-10);
    }

    #[test]
    fn low_degree_rejected() {
        use crate::factor::{FactorKind, FactorSpec};
        use crate::spec::{GammaVector, GridPair};
        let f = FactorSpec::new(FactorKind::SincPower, 0.4, 1).unwrap();
        let spec = SplineSpec::new(GridPair::SAME, GammaVector::SIMPLE, f, 7).unwrap();
        assert_eq!(total_variation_derivative(&spec, 1024), Err(SplineError::UseDPartitionVariation(1)));
        assert_eq!(arc_length(&spec, 1024), Err(SplineError::UnsupportedForDegree(1)));
        assert!(matches!(seminorm(&spec, 1), Err(SplineError::DerivativeOrderTooHigh { .. })));
    }
}
