//! Assembly of fundamental splines as explicit harmonic series.
//!
//! For `j = 1..=(N-1)/2` the spline carries three branches per `m >= 1`:
//! the low-frequency harmonic `j`, the medium-frequency harmonic `mN - j` and
//! the high-frequency harmonic `mN + j`. Each branch is weighted by its `Γ`
//! component, the convergence factor and a sign that depends on the factor
//! family:
//!
//! * power sign-constant: `(-1)^{m(I₁+I₂)}` on both branches, with an extra
//!   `(-1)^{1+r}` on the medium branch;
//! * sinc power: `(-1)^{m(r+1+I₁+I₂)}` on both branches.
//!
//! The spline is `(1/N)(I(q) + 2 Σ_j c_j(t) / h_j)` where `h_j` is the sum of
//! the same branch weights without the cosines.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SplineError};
use crate::factor::{FactorKind, FactorSpec};
use crate::series::{HarmonicSeries, Term};
use crate::spec::{SplineSpec, TruncationMode};
use crate::zeta::hurwitz_zeta;

/// Relative threshold under which `h_j` counts as singular.
pub const SINGULARITY_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Denominator {
    pub j: usize,
    pub value: f64,
    /// Number of `m` values summed (0 in closed form).
    pub terms: usize,
    /// Bound on the omitted part of the m-series.
    pub tail_bound: f64,
    pub converged: bool,
    pub largest_summand: f64,
}

impl Denominator {
    pub fn ensure_converged(&self, tol: f64) -> Result<()> {
        if self.converged {
            Ok(())
        } else {
            Err(SplineError::TruncationNotConverged { tol, achieved: self.tail_bound, terms: self.terms })
        }
    }
}

/// Signs applied to the medium (`mN - j`) and high (`mN + j`) branches.
#[inline]
fn branch_signs(spec: &SplineSpec, m: usize) -> (f64, f64) {
    let r = spec.factor.r as usize;
    let grid_sum = spec.grids.index_sum() as usize;
    match spec.factor.kind {
        FactorKind::PowerSignConstant => {
            let outer = parity_sign(m * grid_sum);
            let inner = parity_sign(1 + r);
            (outer * inner, outer)
        }
        FactorKind::SincPower => {
            let s = parity_sign(m * (r + 1 + grid_sum));
            (s, s)
        }
    }
}

#[inline]
fn parity_sign(e: usize) -> f64 {
    if e.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Integral bound on `Σ_{m>M} (mN - j)^-p`, valid for `p > 1`.
fn power_tail(m: usize, n: usize, j: usize, p: f64) -> f64 {
    if p <= 1.0 {
        return f64::INFINITY;
    }
    if m == 0 {
        // Σ_{m>=1} (mN-j)^-p <= (N-j)^-p + ∫_1^∞
        let first = ((n - j) as f64).powf(-p);
        return first + power_tail(1, n, j, p);
    }
    let x = (m * n - j) as f64;
    x.powf(1.0 - p) / ((p - 1.0) * n as f64)
}

/// Smallest `M` (capped at `m_max`) whose bound `K·Σ_{m>M}(mN - j)^-p` drops
/// below `tol` for every `j <= jmax`.
fn adaptive_terms(k: f64, n: usize, jmax: usize, p: f64, tol: f64, m_max: usize) -> usize {
    if k == 0.0 {
        return 0;
    }
    if p <= 1.0 {
        return m_max;
    }
    // K (MN - J)^{1-p} / ((p-1)N) < tol
    let x = (k / ((p - 1.0) * n as f64 * tol)).powf(1.0 / (p - 1.0));
    let mut m = ((x + jmax as f64) / n as f64).ceil().max(1.0);
    if !m.is_finite() || m > m_max as f64 {
        return m_max;
    }
    // Guard against rounding right at the threshold.
    while (m as usize) < m_max && k * power_tail(m as usize, n, jmax, p) >= tol {
        m += 1.0;
    }
    m as usize
}

/// Parseval data of a derivative of a fundamental spline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralEnergy {
    /// `∫₀^{2π} (f⁽q⁾)²`, including the closed-form tail when one is known.
    pub integral: f64,
    /// Number of `m` blocks kept.
    pub terms: usize,
    /// Bound on `‖f⁽q⁾ - f⁽q⁾_M‖₂`.
    pub l2_tail: f64,
    pub converged: bool,
}

/// Norm in which the omitted tail of a series is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailNorm {
    /// Pointwise evaluation, interpolation and sampling.
    Sup,
    /// Parseval and quadrature functionals; the tail is measured in L², which
    /// also bounds its effect on `∫|f'|` and on arc length.
    Energy,
}

/// Precomputed denominators for one spline family; cheap to query per node and
/// derivative order.
#[derive(Debug, Clone)]
pub struct SplineBasis {
    spec: SplineSpec,
    denominators: Vec<Denominator>,
}

impl SplineBasis {
    pub fn new(spec: &SplineSpec) -> Result<Self> {
        spec.validate()?;
        let denominators = (1..=spec.harmonics())
            .map(|j| compute_denominator(spec, j))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { spec: *spec, denominators })
    }

    pub fn spec(&self) -> &SplineSpec {
        &self.spec
    }

    pub fn denominators(&self) -> &[Denominator] {
        &self.denominators
    }

    fn branch_weight(&self) -> f64 {
        (self.spec.gamma.medium.abs() + self.spec.gamma.high.abs()) * self.spec.factor.majorant_scale()
    }

    /// Branch weight measured against the factor's own magnitude, so that the
    /// stopping rule does not depend on an overall scale of the factor.
    fn relative_branch_weight(&self) -> f64 {
        self.branch_weight() / self.spec.factor.magnitude()
    }

    /// Number of `m` values kept in the order-`q` series.
    fn series_terms(&self, q: u32, norm: TailNorm) -> usize {
        let spec = &self.spec;
        let policy = &spec.truncation;
        let h_terms = self.denominators.iter().map(|d| d.terms).max().unwrap_or(0);
        match (policy.mode, norm) {
            (TruncationMode::Fixed { terms }, _) => terms,
            (_, TailNorm::Energy) => self.energy_terms(q).0,
            (mode, TailNorm::Sup) => {
                let p = (spec.factor.r + 1 - q) as f64;
                let mq = adaptive_terms(self.relative_branch_weight(), spec.n, spec.harmonics(), p, policy.tail_tol, policy.m_max);
                if mode == TruncationMode::Adaptive {
                    mq.max(h_terms)
                } else {
                    mq
                }
            }
        }
    }

    /// Sum of squared amplitudes of the order-`q` terms in the low block
    /// (`m = 0`) or in both branches of block `m`.
    fn block_energy(&self, m: usize, q: u32) -> f64 {
        let spec = &self.spec;
        let n = spec.n;
        let g = spec.gamma;
        let scale = 2.0 / n as f64;
        (1..=spec.harmonics())
            .zip(&self.denominators)
            .map(|(j, d)| {
                let c = scale / d.value;
                if m == 0 {
                    (c * g.low * spec.factor.eval_weighted(j as f64, q)).powi(2)
                } else {
                    let med = g.medium * spec.factor.eval_weighted((m * n - j) as f64, q);
                    let high = g.high * spec.factor.eval_weighted((m * n + j) as f64, q);
                    c * c * (med * med + high * high)
                }
            })
            .sum()
    }

    /// Bound on `‖f⁽q⁾ - f⁽q⁾_M‖₂` from the omitted branch terms alone.
    fn energy_tail(&self, big_m: usize, q: u32) -> f64 {
        let spec = &self.spec;
        if spec.gamma.is_polynomial_regime() {
            return 0.0;
        }
        let n = spec.n;
        let g = spec.gamma;
        let p = (spec.factor.r + 1 - q) as f64;
        let k2 = (g.medium * g.medium + g.high * g.high) * spec.factor.majorant_scale().powi(2);
        let scale = 2.0 / n as f64;
        let omitted: f64 = (1..=spec.harmonics())
            .zip(&self.denominators)
            .map(|(j, d)| (scale / d.value).powi(2) * k2 * power_tail(big_m, n, j, 2.0 * p))
            .sum();
        (PI * omitted).sqrt()
    }

    /// Number of blocks `M` whose omitted L² mass is below `tail_tol` relative
    /// to the retained one (absolute when that is below 1), together with the
    /// retained `Σ(a² + b²)`.
    fn energy_terms(&self, q: u32) -> (usize, f64) {
        let policy = &self.spec.truncation;
        let mut retained = self.block_energy(0, q);
        if self.spec.gamma.is_polynomial_regime() {
            return (0, retained);
        }
        let fixed = match policy.mode {
            TruncationMode::Fixed { terms } => Some(terms),
            _ => None,
        };
        let mut m = 0;
        loop {
            let wanted = match fixed {
                Some(terms) => terms,
                None => {
                    let target = policy.tail_tol * (PI * retained).sqrt().max(1.0);
                    self.blocks_for_tail(q, target)
                }
            };
            if m >= wanted {
                break;
            }
            // The retained mass only grows, so the requirement can only drop.
            while m < wanted {
                m += 1;
                retained += self.block_energy(m, q);
            }
        }
        (m, retained)
    }

    /// Smallest `M <= m_max` with `energy_tail(M) <= target`.
    fn blocks_for_tail(&self, q: u32, target: f64) -> usize {
        let m_max = self.spec.truncation.m_max;
        if self.energy_tail(1, q) <= target {
            return 1;
        }
        if self.energy_tail(m_max, q) > target {
            return m_max;
        }
        let (mut lo, mut hi) = (1, m_max);
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.energy_tail(mid, q) <= target {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    }

    /// `∫₀^{2π} (f⁽q⁾)²` of any fundamental spline of the family, from the
    /// amplitudes alone (the phases do not enter).
    pub fn spectral_energy(&self, q: u32) -> Result<SpectralEnergy> {
        let spec = &self.spec;
        spec.check_derivative_order(q)?;
        let (big_m, retained) = self.energy_terms(q);
        let c0 = if q == 0 { 1.0 / spec.n as f64 } else { 0.0 };
        let tail_energy = self.closed_form_tail_energy(big_m, q);
        let branch_l2 = self.energy_tail(big_m, q);
        let h_rel = self.denominators.iter().map(|d| d.tail_bound / d.value.abs()).fold(0.0, f64::max);
        let retained_l2 = (PI * retained).sqrt();
        let converged = match spec.truncation.mode {
            TruncationMode::Fixed { .. } => true,
            _ => self.denominators.iter().all(|d| d.converged) && branch_l2 <= spec.truncation.tail_tol * retained_l2.max(1.0),
        };
        Ok(SpectralEnergy {
            integral: 2.0 * PI * c0 * c0 + PI * (retained + tail_energy),
            terms: big_m,
            l2_tail: if tail_energy > 0.0 { retained_l2 * h_rel } else { branch_l2 + retained_l2 * h_rel },
            converged,
        })
    }

    /// Series of the `k`-th fundamental spline (1-based) differentiated `q`
    /// times, truncated for pointwise use.
    pub fn series(&self, k: usize, q: u32) -> Result<HarmonicSeries> {
        self.series_with(k, q, TailNorm::Sup)
    }

    /// Same series truncated under the chosen tail norm.
    pub fn series_with(&self, k: usize, q: u32, norm: TailNorm) -> Result<HarmonicSeries> {
        let spec = &self.spec;
        let n = spec.n;
        if k == 0 || k > n {
            return Err(SplineError::NodeOutOfRange { k, n });
        }
        spec.check_derivative_order(q)?;

        let big_m = if self.spec.gamma.is_polynomial_regime() { 0 } else { self.series_terms(q, norm) };
        let jmax = spec.harmonics();
        let scale = 2.0 / n as f64;
        // Anchor phase n·x_k = π·L/N with L = n·c mod 2N, so reduction is exact.
        let anchor = match spec.grids.interpolation {
            crate::grid::Indicator::Zero => 2 * (k as u64 - 1),
            crate::grid::Indicator::One => 2 * k as u64 - 1,
        };
        let n64 = n as u64;
        let make_term = |freq: u64, amplitude: f64| -> Term {
            let l = (freq % (2 * n64)) * anchor % (2 * n64);
            // φ = n·x_k - qπ/2 = π(2L - qN)/(2N)
            let shift = (q as u64 % 4) * n64;
            let p = (2 * l + 4 * n64 - shift) % (4 * n64);
            let phi = PI * p as f64 / (2.0 * n as f64);
            let (s, c) = phi.sin_cos();
            Term { n: freq, a: amplitude * c, b: amplitude * s }
        };

        let factor = &spec.factor;
        let g = spec.gamma;
        let mut terms = Vec::with_capacity(jmax * (1 + 2 * big_m));
        for (j, d) in (1..=jmax).zip(&self.denominators) {
            let w = factor.eval_weighted(j as f64, q);
            terms.push(make_term(j as u64, scale * g.low * w / d.value));
        }
        for m in 1..=big_m {
            let (s_med, s_high) = branch_signs(spec, m);
            for j in (1..=jmax).rev() {
                let d = &self.denominators[j - 1];
                let freq = (m * n - j) as u64;
                let w = factor.eval_weighted(freq as f64, q);
                terms.push(make_term(freq, scale * s_med * g.medium * w / d.value));
            }
            for (j, d) in (1..=jmax).zip(&self.denominators) {
                let freq = (m * n + j) as u64;
                let w = factor.eval_weighted(freq as f64, q);
                terms.push(make_term(freq, scale * s_high * g.high * w / d.value));
            }
        }
        debug_assert!(terms.windows(2).all(|w| w[0].n < w[1].n));

        let (tail_bound, sup_ok) = self.truncation_bound(&terms, big_m, q);
        let tail_energy = self.closed_form_tail_energy(big_m, q);
        let retained: f64 = PI * terms.iter().map(Term::energy).sum::<f64>();
        let h_rel = self.denominators.iter().map(|d| d.tail_bound / d.value.abs()).fold(0.0, f64::max);
        let branch_l2 = self.energy_tail(big_m, q);
        let l2_tail = branch_l2 + retained.sqrt() * h_rel;
        let converged = match (spec.truncation.mode, norm) {
            (TruncationMode::Fixed { .. }, _) => true,
            (_, TailNorm::Sup) => sup_ok,
            (_, TailNorm::Energy) => {
                self.denominators.iter().all(|d| d.converged)
                    && branch_l2 <= spec.truncation.tail_tol * retained.sqrt().max(1.0)
            }
        };
        Ok(HarmonicSeries {
            c0: if q == 0 { 1.0 / n as f64 } else { 0.0 },
            terms,
            tail_bound,
            l2_tail,
            tail_energy,
            derivative_order: q,
            converged,
        })
    }

    /// Sup-norm bound on the distance between the truncated and the full
    /// series: omitted amplitudes plus the effect of the `h_j` tails.
    fn truncation_bound(&self, terms: &[Term], big_m: usize, q: u32) -> (f64, bool) {
        let spec = &self.spec;
        if spec.gamma.is_polynomial_regime() {
            return (0.0, true);
        }
        let n = spec.n;
        let jmax = spec.harmonics();
        let p = (spec.factor.r + 1 - q) as f64;
        let k = self.branch_weight();
        let mut amp_sum = vec![0.0; jmax];
        for t in terms {
            let j = (t.n % n as u64) as usize;
            let j = if j > jmax { n - j } else { j };
            amp_sum[j - 1] += t.a.hypot(t.b);
        }
        let mut bound = 0.0;
        for (j, d) in (1..=jmax).zip(&self.denominators) {
            let series_tail = k * power_tail(big_m, n, j, p) / d.value.abs();
            let h_effect = amp_sum[j - 1] * d.tail_bound / d.value.abs();
            bound += 2.0 / n as f64 * series_tail + h_effect;
        }
        let converged = match spec.truncation.mode {
            TruncationMode::Fixed { .. } => true,
            _ => {
                self.denominators.iter().all(|d| d.converged)
                    && self.relative_branch_weight() * power_tail(big_m, n, jmax, p) < spec.truncation.tail_tol
            }
        };
        (bound, converged)
    }

    fn closed_form_tail_energy(&self, big_m: usize, q: u32) -> f64 {
        let spec = &self.spec;
        if spec.truncation.mode != TruncationMode::ClosedFormZeta || spec.gamma.is_polynomial_regime() {
            return 0.0;
        }
        let n = spec.n as f64;
        let s = 2.0 * (spec.factor.r + 1 - q) as f64;
        let alpha = spec.factor.alpha;
        let g = spec.gamma;
        let start = big_m as f64 + 1.0;
        (1..=spec.harmonics())
            .zip(&self.denominators)
            .map(|(j, d)| {
                let x = j as f64 / n;
                let med = g.medium * g.medium * hurwitz_zeta(s, start - x);
                let high = g.high * g.high * hurwitz_zeta(s, start + x);
                let coef = 2.0 * alpha / (n * d.value);
                coef * coef * n.powf(-s) * (med + high)
            })
            .sum()
    }
}

fn compute_denominator(spec: &SplineSpec, j: usize) -> Result<Denominator> {
    let n = spec.n;
    let jmax = spec.harmonics();
    if j == 0 || j > jmax {
        return Err(SplineError::IndexOutOfRange { j, max: jmax });
    }
    let factor = &spec.factor;
    let g = spec.gamma;
    let low = g.low * factor.eval(j as f64);
    let mut largest = low.abs();

    let d = if g.is_polynomial_regime() {
        Denominator { j, value: low, terms: 0, tail_bound: 0.0, converged: true, largest_summand: largest }
    } else {
        match spec.truncation.mode {
            TruncationMode::ClosedFormZeta => {
                let (med, high) = zeta_branch_sums(spec, j)?;
                let med = g.medium * parity_sign(1 + factor.r as usize) * med;
                let high = g.high * high;
                largest = largest.max(g.medium.abs() * factor.eval((n - j) as f64));
                largest = largest.max(g.high.abs() * factor.eval((n + j) as f64));
                Denominator {
                    j,
                    value: low + med + high,
                    terms: 0,
                    tail_bound: 0.0,
                    converged: true,
                    largest_summand: largest,
                }
            }
            mode => {
                let policy = &spec.truncation;
                let k = (g.medium.abs() + g.high.abs()) * factor.majorant_scale();
                let p = (factor.r + 1) as f64;
                let relative = k / factor.magnitude();
                // Tolerance relative to min(1, |h_j|); a second pass tightens
                // it when h_j turns out smaller than the low-frequency term.
                let level = |value: f64| (value.abs() / factor.magnitude()).min(1.0);
                let mut target = policy.tail_tol * if low != 0.0 { level(low) } else { 1.0 };
                let mut pass = 0;
                loop {
                    let terms = match mode {
                        TruncationMode::Fixed { terms } => terms,
                        _ => adaptive_terms(relative, n, jmax, p, target, policy.m_max),
                    };
                    // Sum from the far tail inwards.
                    let mut tail = 0.0;
                    let mut big = largest;
                    for m in (1..=terms).rev() {
                        let (s_med, s_high) = branch_signs(spec, m);
                        let med = s_med * g.medium * factor.eval((m * n - j) as f64);
                        let high = s_high * g.high * factor.eval((m * n + j) as f64);
                        big = big.max(med.abs()).max(high.abs());
                        tail += med + high;
                    }
                    let value = low + tail;
                    let rel_tail = relative * power_tail(terms, n, j, p);
                    let wanted = policy.tail_tol * level(value);
                    let fixed = matches!(mode, TruncationMode::Fixed { .. });
                    let converged = fixed || rel_tail < wanted;
                    if converged || fixed || pass == 1 || terms >= policy.m_max || wanted == 0.0 {
                        break Denominator {
                            j,
                            value,
                            terms,
                            tail_bound: k * power_tail(terms, n, j, p),
                            converged,
                            largest_summand: big,
                        };
                    }
                    target = wanted * 0.5;
                    pass += 1;
                }
            }
        }
    };

    if !d.value.is_finite() || d.value.abs() <= SINGULARITY_THRESHOLD * d.largest_summand || d.largest_summand == 0.0 {
        return Err(SplineError::NearSingularDenominator { j, value: d.value, scale: d.largest_summand });
    }
    Ok(d)
}

/// `Σ_m s_m (mN ∓ j)^-(1+r)` in closed form, `s_m = (-1)^{m(I₁+I₂)}`, scaled by α.
fn zeta_branch_sums(spec: &SplineSpec, j: usize) -> Result<(f64, f64)> {
    let factor: &FactorSpec = &spec.factor;
    if factor.r == 0 {
        return Err(SplineError::InvalidInput("closed-form zeta truncation needs r >= 1".into()));
    }
    let p = (factor.r + 1) as f64;
    let n = spec.n as f64;
    let x = j as f64;
    let alternating = spec.grids.index_sum() % 2 == 1;
    let sum = |sign: f64| -> f64 {
        if alternating {
            // even m = 2p' (p' >= 1) minus odd m = 2p'+1 (p' >= 0)
            let two_n = 2.0 * n;
            two_n.powf(-p) * (hurwitz_zeta(p, 1.0 + sign * x / two_n) - hurwitz_zeta(p, (n + sign * x) / two_n))
        } else {
            n.powf(-p) * hurwitz_zeta(p, 1.0 + sign * x / n)
        }
    };
    Ok((factor.alpha * sum(-1.0), factor.alpha * sum(1.0)))
}

/// Denominator `h_j` of a spline family.
pub fn denominator(spec: &SplineSpec, j: usize) -> Result<Denominator> {
    spec.validate()?;
    compute_denominator(spec, j)
}

/// Series of the `k`-th fundamental spline, differentiated `q` times.
pub fn harmonic_series(spec: &SplineSpec, k: usize, q: u32) -> Result<HarmonicSeries> {
    SplineBasis::new(spec)?.series(k, q)
}

pub fn eval_series(series: &HarmonicSeries, t: f64) -> f64 {
    series.eval(t)
}

/// Series of the interpolant `Σ_k samples[k]·s_k`, differentiated `q` times.
pub fn interpolant_series(spec: &SplineSpec, samples: &[f64], q: u32) -> Result<HarmonicSeries> {
    if samples.len() != spec.n {
        return Err(SplineError::ArityMismatch { expected: spec.n, got: samples.len() });
    }
    let basis = SplineBasis::new(spec)?;
    let mut acc: Option<HarmonicSeries> = None;
    for (k, &value) in samples.iter().enumerate() {
        let s = basis.series(k + 1, q)?;
        match acc.as_mut() {
            None => acc = Some(s.scaled(value)),
            Some(total) => {
                total.c0 += value * s.c0;
                for (dst, src) in total.terms.iter_mut().zip(&s.terms) {
                    dst.a += value * src.a;
                    dst.b += value * src.b;
                }
                total.tail_bound += value.abs() * s.tail_bound;
                total.converged &= s.converged;
            }
        }
    }
    let mut total = acc.expect("at least three nodes");
    // Cross terms make the closed-form tail energy meaningless here.
    total.tail_energy = 0.0;
    Ok(total)
}

/// Value of the interpolating spline through `samples` (one per node) at `t`.
pub fn eval_interpolant(spec: &SplineSpec, samples: &[f64], t: f64) -> Result<f64> {
    Ok(interpolant_series(spec, samples, 0)?.eval(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::FactorKind;
    use crate::spec::{GammaVector, GridPair, TruncationPolicy};

    fn power_spec(r: u32, gamma: GammaVector, grids: GridPair) -> SplineSpec {
        let f = FactorSpec::new(FactorKind::PowerSignConstant, 1.0, r).unwrap();
        SplineSpec::new(grids, gamma, f, 7).unwrap()
    }

    fn sinc_spec(alpha: f64, r: u32, grids: GridPair) -> SplineSpec {
        let f = FactorSpec::new(FactorKind::SincPower, alpha, r).unwrap();
        SplineSpec::new(grids, GammaVector::SIMPLE, f, 7).unwrap()
    }

    #[test]
    fn polynomial_regime_denominator_is_low_branch() {
        for kind in [FactorKind::PowerSignConstant, FactorKind::SincPower] {
            let f = FactorSpec::new(kind, 0.37, 3).unwrap();
            let spec = SplineSpec::new(GridPair::SAME, GammaVector::POLYNOMIAL, f, 7).unwrap();
            for j in 1..=3 {
                let d = denominator(&spec, j).unwrap();
                assert_eq!(d.value, f.value(j as u64).unwrap());
                assert_eq!(d.terms, 0);
            }
        }
    }

    /// Direct summation of h_1 for Γ=(1,1,1), r=3, N=7 with a large fixed
    /// number of terms; the remaining tail is below 1e-15.
    fn h1_oracle() -> f64 {
        let mut s = 0.0;
        for m in (1..=20_000u32).rev() {
            let m = m as f64;
            s += (7.0 * m - 1.0).powi(-4) + (7.0 * m + 1.0).powi(-4);
        }
        1.0 + s
    }

    #[test]
    fn denominator_direct_sum() {
        let oracle = h1_oracle();
        assert!((oracle - 1.001_087_318_064_74).abs() < 1e-13, "{oracle}");
        let spec = power_spec(3, GammaVector::SIMPLE, GridPair::SAME);
        let adaptive = denominator(&spec, 1).unwrap();
        assert!(adaptive.converged);
        assert!((adaptive.value - oracle).abs() < 1e-8);
        let zeta = denominator(&spec.with_truncation(TruncationPolicy::closed_form()), 1).unwrap();
        assert!((zeta.value - oracle).abs() < 1e-14);
    }

    #[test]
    fn zeta_matches_long_sum_for_alternating_signs() {
        for r in 1..6 {
            for grids in [GridPair::MIXED, GridPair::SAME] {
                let spec = power_spec(r, GammaVector::new(0.1, 0.5, 1.5), grids);
                let fixed = spec.with_truncation(TruncationPolicy { m_max: 400_000, ..TruncationPolicy::fixed(400_000) });
                let zeta = spec.with_truncation(TruncationPolicy::closed_form());
                for j in 1..=3 {
                    let a = denominator(&fixed, j).unwrap().value;
                    let b = denominator(&zeta, j).unwrap().value;
                    let tol = denominator(&fixed, j).unwrap().tail_bound + 1e-14;
                    assert!((a - b).abs() < tol, "r={r} {grids} j={j}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn power_denominator_linear_in_alpha() {
        let spec = power_spec(2, GammaVector::new(0.1, 0.5, 1.5), GridPair::MIXED)
            .with_truncation(TruncationPolicy::fixed(50));
        let base = denominator(&spec, 2).unwrap().value;
        for alpha in [0.1, 0.5, 1.7, 3.0] {
            let h = denominator(&spec.with_alpha(alpha), 2).unwrap().value;
            assert!((h / base - alpha).abs() < 1e-13);
        }
    }

    #[test]
    fn polynomial_regime_series() {
        let f = FactorSpec::new(FactorKind::SincPower, 0.2, 3).unwrap();
        let spec = SplineSpec::new(GridPair::SAME, GammaVector::POLYNOMIAL, f, 7).unwrap();
        let s = harmonic_series(&spec, 3, 0).unwrap();
        assert_eq!(s.terms.len(), 3);
        let x3 = 2.0 * PI * 2.0 / 7.0;
        for i in 0..50 {
            let t = i as f64 * 0.13;
            let expected = (1.0 + 2.0 * (1..=3).map(|j| (j as f64 * (t - x3)).cos()).sum::<f64>()) / 7.0;
            assert!((s.eval(t) - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn derivative_series_has_no_constant() {
        let s = harmonic_series(&sinc_spec(0.4, 4, GridPair::SAME), 2, 1).unwrap();
        assert_eq!(s.c0, 0.0);
        assert_eq!(s.derivative_order, 1);
    }

    #[test]
    fn power_series_alpha_invariant() {
        let spec = power_spec(3, GammaVector::new(0.1, 0.5, 1.5), GridPair::MIXED);
        let a = harmonic_series(&spec.with_alpha(0.5), 1, 0).unwrap();
        let b = harmonic_series(&spec.with_alpha(1.5), 1, 0).unwrap();
        assert_eq!(a.terms.len(), b.terms.len());
        for (x, y) in a.terms.iter().zip(&b.terms) {
            assert_eq!(x.n, y.n);
            assert!((x.a - y.a).abs() < 1e-14 && (x.b - y.b).abs() < 1e-14);
        }
    }

    #[test]
    fn fundamental_condition() {
        for grids in [GridPair::SAME, GridPair::MIXED, GridPair::new(1, 1).unwrap(), GridPair::new(1, 0).unwrap()] {
            let spec = sinc_spec(PI / 7.0, 3, grids);
            let nodes = spec.interpolation_grid().nodes();
            let basis = SplineBasis::new(&spec).unwrap();
            for k in 1..=7 {
                let s = basis.series(k, 0).unwrap();
                for (j, &t) in nodes.iter().enumerate() {
                    let expected = if j + 1 == k { 1.0 } else { 0.0 };
                    assert!((s.eval(t) - expected).abs() <= 10.0 * s.tail_bound + 1e-13);
                }
            }
        }
    }

    #[test]
    fn frequencies_unique() {
        for n in [3usize, 5, 7, 9, 15] {
            let f = FactorSpec::new(FactorKind::SincPower, 0.3, 3).unwrap();
            let spec = SplineSpec::new(GridPair::SAME, GammaVector::SIMPLE, f, n).unwrap();
            let s = harmonic_series(&spec, 1, 0).unwrap();
            assert!(s.has_unique_frequencies());
        }
    }

    #[test]
    fn derivative_order_checked() {
        let spec = sinc_spec(0.4, 2, GridPair::SAME);
        assert!(matches!(harmonic_series(&spec, 1, 2), Err(SplineError::DerivativeOrderTooHigh { q: 2, r: 2 })));
    }

    #[test]
    fn singular_denominator_named() {
        // γ1σ(j) cancels the remaining branches when γ1 is chosen as -h_j(0 weight).
        let spec = power_spec(3, GammaVector::new(0.0, 1.0, 1.0), GridPair::SAME)
            .with_truncation(TruncationPolicy::fixed(20));
        let tail = denominator(&spec, 2).unwrap().value;
        let low = FactorSpec::new(FactorKind::PowerSignConstant, 1.0, 3).unwrap().value(2).unwrap();
        let bad = spec.with_gamma(GammaVector::new(-tail / low, 1.0, 1.0));
        match SplineBasis::new(&bad) {
            Err(SplineError::NearSingularDenominator { j, .. }) => assert_eq!(j, 2),
            other => panic!("expected singular denominator, got {other:?}"),
        }
    }

    #[test]
    fn unconverged_truncation_flagged() {
        let f = FactorSpec::new(FactorKind::SincPower, 0.01, 1).unwrap();
        let spec = SplineSpec::new(GridPair::SAME, GammaVector::SIMPLE, f, 7)
            .unwrap()
            .with_truncation(TruncationPolicy { m_max: 1000, ..TruncationPolicy::default() });
        let d = denominator(&spec, 1).unwrap();
        assert!(!d.converged);
        assert_eq!(d.terms, 1000);
        assert!(matches!(d.ensure_converged(1e-8), Err(SplineError::TruncationNotConverged { .. })));
        assert!(!harmonic_series(&spec, 1, 0).unwrap().converged);
    }

    #[test]
    fn interpolant_arity() {
        let spec = sinc_spec(0.4, 3, GridPair::SAME);
        assert_eq!(
            eval_interpolant(&spec, &[1.0; 5], 0.3),
            Err(SplineError::ArityMismatch { expected: 7, got: 5 })
        );
    }

    #[test]
    fn interpolant_of_ones_is_constant() {
        let spec = sinc_spec(0.4, 3, GridPair::MIXED);
        let s = interpolant_series(&spec, &[1.0; 7], 0).unwrap();
        for i in 0..64 {
            let t = i as f64 * 0.1;
            assert!((s.eval(t) - 1.0).abs() < 10.0 * s.tail_bound + 1e-13);
        }
    }

    #[test]
    fn spectral_energy_matches_series_parseval() {
        for spec in [sinc_spec(0.6, 3, GridPair::SAME), sinc_spec(0.3, 4, GridPair::MIXED), power_spec(5, GammaVector::SIMPLE, GridPair::MIXED)] {
            let basis = SplineBasis::new(&spec).unwrap();
            for q in [0, 1, 2] {
                let e = basis.spectral_energy(q).unwrap();
                let s = basis.series_with(3, q, TailNorm::Energy).unwrap();
                let parseval = 2.0 * PI * s.c0 * s.c0 + PI * s.harmonic_energy();
                assert!((e.integral - parseval).abs() < 1e-12 * parseval, "{} vs {parseval}", e.integral);
                assert!(e.converged && s.converged);
                assert!(e.l2_tail <= spec.truncation.tail_tol * parseval.sqrt().max(1.0) * 2.0);
            }
        }
    }

    #[test]
    fn energy_truncation_is_shorter_than_sup() {
        let basis = SplineBasis::new(&sinc_spec(0.4, 3, GridPair::SAME)).unwrap();
        let sup = basis.series(1, 2).unwrap();
        let energy = basis.series_with(1, 2, TailNorm::Energy).unwrap();
        assert!(energy.terms.len() < sup.terms.len());
        assert!(energy.l2_tail.is_finite());
    }
}
