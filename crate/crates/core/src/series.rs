//! Finite trigonometric series `c0 + Σ (a·cos nt + b·sin nt)`.

use std::f64::consts::PI;

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub n: u64,
    pub a: f64,
    pub b: f64,
}

impl Term {
    #[inline]
    pub fn eval(&self, t: f64) -> f64 {
        let (s, c) = (self.n as f64 * t).sin_cos();
        self.a * c + self.b * s
    }

    #[inline]
    pub fn energy(&self) -> f64 {
        self.a * self.a + self.b * self.b
    }
}

/// Truncated Fourier model of a spline (or one of its derivatives).
///
/// `tail_bound` bounds the sup-norm distance to the untruncated function and
/// `l2_tail` the L² distance (either may be infinite).
/// `tail_energy` is the exact value of `Σ (a² + b²)` over the omitted terms
/// when it is known in closed form, zero otherwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HarmonicSeries {
    pub c0: f64,
    pub terms: Vec<Term>,
    pub tail_bound: f64,
    #[serde(default)]
    pub l2_tail: f64,
    #[serde(default)]
    pub tail_energy: f64,
    pub derivative_order: u32,
    #[serde(default = "yes")]
    pub converged: bool,
}

fn yes() -> bool {
    true
}

impl HarmonicSeries {
    pub fn constant(c0: f64) -> Self {
        Self::from_terms(c0, Vec::new())
    }

    /// Exact series built from explicit terms; frequencies must be strictly increasing.
    pub fn from_terms(c0: f64, terms: Vec<Term>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].n < w[1].n));
        Self { c0, terms, tail_bound: 0.0, l2_tail: 0.0, tail_energy: 0.0, derivative_order: 0, converged: true }
    }

    pub fn eval(&self, t: f64) -> f64 {
        let t = t.rem_euclid(2.0 * PI);
        self.c0 + self.terms.iter().map(|term| term.eval(t)).sum::<f64>()
    }

    /// Values at `t_i = 2πi/s`, `i = 0..s`, folding every frequency onto the
    /// `s`-point grid and applying one inverse FFT. Exact at the grid points.
    pub fn sample_uniform(&self, s: usize) -> Vec<f64> {
        if s == 0 {
            return Vec::new();
        }
        let mut bins = vec![Complex64::new(0.0, 0.0); s];
        for term in &self.terms {
            bins[(term.n % s as u64) as usize] += Complex64::new(term.a, -term.b);
        }
        let fft = FftPlanner::new().plan_fft_inverse(s);
        fft.process(&mut bins);
        bins.iter().map(|z| self.c0 + z.re).collect()
    }

    /// `Σ (a² + b²)` over the retained terms plus any known tail energy.
    pub fn harmonic_energy(&self) -> f64 {
        self.terms.iter().map(Term::energy).sum::<f64>() + self.tail_energy
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            c0: self.c0 * c,
            terms: self.terms.iter().map(|t| Term { n: t.n, a: t.a * c, b: t.b * c }).collect(),
            tail_bound: self.tail_bound * c.abs(),
            l2_tail: self.l2_tail * c.abs(),
            tail_energy: self.tail_energy * c * c,
            derivative_order: self.derivative_order,
            converged: self.converged,
        }
    }

    /// Termwise derivative of order `q`.
    pub fn derivative(&self, q: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let w = (t.n as f64).powi(q as i32);
                // d/dt of (a cos + b sin) = n(b cos - a sin)
                let (a, b) = match q % 4 {
                    0 => (t.a, t.b),
                    1 => (t.b, -t.a),
                    2 => (-t.a, -t.b),
                    _ => (-t.b, t.a),
                };
                Term { n: t.n, a: a * w, b: b * w }
            })
            .collect();
        Self {
            c0: if q == 0 { self.c0 } else { 0.0 },
            terms,
            tail_bound: f64::NAN,
            l2_tail: f64::NAN,
            tail_energy: 0.0,
            derivative_order: self.derivative_order + q,
            converged: self.converged,
        }
    }

    pub fn max_frequency(&self) -> u64 {
        self.terms.last().map_or(0, |t| t.n)
    }

    pub fn has_unique_frequencies(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].n < w[1].n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn constant_series() {
        let s = HarmonicSeries::constant(1.0 / 7.0);
        for t in [0.0, 1.0, -3.0, 100.0] {
            assert_eq!(s.eval(t), 1.0 / 7.0);
        }
    }

    #[test]
    fn periodic_low_frequencies() {
        let s = HarmonicSeries::from_terms(0.3, (1..=40).map(|n| Term { n, a: 1.0 / n as f64, b: -0.5 }).collect());
        for i in 0..100 {
            let t = -7.0 + 0.137 * i as f64;
            assert!((s.eval(t) - s.eval(t + 2.0 * PI)).abs() < 1e-12);
        }
    }

    #[test]
    fn derivative_of_cosine() {
        let s = HarmonicSeries::from_terms(0.0, vec![Term { n: 2, a: 1.0, b: 0.0 }]);
        let d = s.derivative(1);
        for t in [0.1, 0.7, 2.0] {
            assert!((d.eval(t) + 2.0 * (2.0 * t).sin()).abs() < 1e-14);
        }
        let d2 = s.derivative(2);
        for t in [0.1, 0.7, 2.0] {
            assert!((d2.eval(t) + 4.0 * (2.0 * t).cos()).abs() < 1e-14);
        }
    }

    fn arb_series() -> impl Strategy<Value = HarmonicSeries> {
        (-2.0..2.0f64, prop::collection::btree_map(1u64..5000, (-1.0..1.0f64, -1.0..1.0f64), 0..40)).prop_map(
            |(c0, m)| HarmonicSeries::from_terms(c0, m.into_iter().map(|(n, (a, b))| Term { n, a, b }).collect()),
        )
    }

    proptest! {
        #[test]
        fn periodic(s in arb_series(), t in -10.0..10.0f64) {
            // Shifting t by 2π perturbs n·t by about n·ε.
            let tol = 1e-12 * (1.0 + s.max_frequency() as f64);
            prop_assert!((s.eval(t) - s.eval(t + 2.0 * PI)).abs() < tol);
        }

        #[test]
        fn fft_sampling_matches_pointwise(s in arb_series(), size in 3usize..300) {
            let fast = s.sample_uniform(size);
            for (i, v) in fast.iter().enumerate() {
                let t = 2.0 * PI * i as f64 / size as f64;
                prop_assert!((v - s.eval(t)).abs() < 1e-10);
            }
        }
    }
}
