use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::factor::{FactorKind, FactorSpec};
use crate::kernel::SplineBasis;
use crate::spec::{GammaVector, GridPair, SplineSpec, TruncationPolicy};

/// Degree standing in for `r → ∞`.
pub const LIMIT_DEGREE: u32 = 50;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitReport {
    pub gamma: GammaVector,
    pub factor: FactorKind,
    pub alpha: f64,
    pub grids: GridPair,
    pub n: usize,
    /// Squared norm of the fundamental trigonometric polynomial, `2π/N`.
    pub exact_limit: f64,
    pub limit_value: f64,
    pub deviation: f64,
    pub degrees: Vec<u32>,
    pub values: Vec<f64>,
    /// Degrees whose norms should rise towards the limit from below: odd on
    /// (0,0), even on (0,1).
    pub rising_degrees: Vec<u32>,
    pub rising_strictly_increasing: bool,
    pub rising_below_limit: bool,
    pub falling_degrees: Vec<u32>,
    pub falling_strictly_decreasing: bool,
    pub falling_above_limit: bool,
}

impl LimitReport {
    pub fn monotone(&self) -> bool {
        self.rising_strictly_increasing && self.rising_below_limit && self.falling_strictly_decreasing && self.falling_above_limit
    }
}

/// Squared norm at `r = 50` against `2π/N`, plus the monotonicity scan over
/// `r = 1..=8` split by degree parity.
pub fn limit_check(
    gamma: GammaVector,
    n: usize,
    kind: FactorKind,
    alpha: f64,
    grids: GridPair,
    truncation: TruncationPolicy,
) -> Result<LimitReport> {
    let squared_norm = |r: u32| -> Result<f64> {
        let spec = SplineSpec::new(grids, gamma, FactorSpec::new(kind, alpha, r)?, n)?.with_truncation(truncation);
        Ok(SplineBasis::new(&spec)?.spectral_energy(0)?.integral)
    };
    let exact_limit = 2.0 * PI / n as f64;
    let limit_value = squared_norm(LIMIT_DEGREE)?;
    let degrees: Vec<u32> = (1..=8).collect();
    let values = degrees.iter().map(|&r| squared_norm(r)).collect::<Result<Vec<_>>>()?;

    let rising_parity = if grids.index_sum().is_multiple_of(2) { 1 } else { 0 };
    let pick = |parity: u32| -> (Vec<u32>, Vec<f64>) {
        degrees.iter().zip(&values).filter(|(r, _)| *r % 2 == parity).map(|(r, v)| (*r, *v)).unzip()
    };
    let (rising_degrees, rising) = pick(rising_parity);
    let (falling_degrees, falling) = pick(1 - rising_parity);

    Ok(LimitReport {
        gamma,
        factor: kind,
        alpha,
        grids,
        n,
        exact_limit,
        limit_value,
        deviation: (limit_value - exact_limit).abs(),
        rising_strictly_increasing: rising.windows(2).all(|w| w[0] < w[1]),
        rising_below_limit: rising.iter().all(|&v| v < exact_limit),
        falling_strictly_decreasing: falling.windows(2).all(|w| w[0] > w[1]),
        falling_above_limit: falling.iter().all(|&v| v > exact_limit),
        rising_degrees,
        falling_degrees,
        degrees,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_power_splines_converge() {
        for grids in [GridPair::SAME, GridPair::MIXED] {
            let rep = limit_check(GammaVector::SIMPLE, 7, FactorKind::PowerSignConstant, 1.0, grids, TruncationPolicy::fixed(20)).unwrap();
            assert!(rep.deviation < 1e-3);
            assert!(rep.monotone(), "{rep:?}");
        }
    }

    #[test]
    fn parity_split() {
        let rep = limit_check(GammaVector::SIMPLE, 7, FactorKind::PowerSignConstant, 1.0, GridPair::MIXED, TruncationPolicy::fixed(20)).unwrap();
        assert_eq!(rep.rising_degrees, vec![2, 4, 6, 8]);
        assert_eq!(rep.falling_degrees, vec![1, 3, 5, 7]);
    }

    #[test]
    fn sinc_limit_at_pi_over_n() {
        let rep = limit_check(GammaVector::SIMPLE, 7, FactorKind::SincPower, PI / 7.0, GridPair::SAME, TruncationPolicy::default()).unwrap();
        assert!(rep.deviation < 1e-3, "{}", rep.deviation);
    }
}
