//! Checks that sinc-factor splines coincide for the special parameter values
//! `α = kπ/N` (odd degree) and `α = (2k+1)π/N` (even degree).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SplineError};
use crate::factor::FactorKind;
use crate::kernel::SplineBasis;
use crate::spec::{GridPair, SplineSpec};

pub const COINCIDENCE_TOLERANCE: f64 = 1e-6;
pub const COINCIDENCE_SAMPLES: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeParity {
    /// Grid pair (0,0), multipliers coprime with N.
    Odd,
    /// Grid pair (0,1), odd multipliers coprime with N.
    Even,
}

impl DegreeParity {
    pub fn of_degree(r: u32) -> Self {
        if r % 2 == 1 {
            DegreeParity::Odd
        } else {
            DegreeParity::Even
        }
    }

    pub fn grids(self) -> GridPair {
        match self {
            DegreeParity::Odd => GridPair::SAME,
            DegreeParity::Even => GridPair::MIXED,
        }
    }
}

impl std::str::FromStr for DegreeParity {
    type Err = SplineError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "odd" => Ok(DegreeParity::Odd),
            "even" => Ok(DegreeParity::Even),
            other => Err(SplineError::InvalidInput(format!("parity '{other}': expected odd or even"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RejectedMultiplier {
    pub k: i64,
    pub reason: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairDeviation {
    pub alpha_a: f64,
    pub alpha_b: f64,
    pub deviation: f64,
    pub coincide: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoincidenceReport {
    pub parity: DegreeParity,
    pub template: SplineSpec,
    pub multipliers: Vec<i64>,
    pub alpha_set: Vec<f64>,
    pub rejected: Vec<RejectedMultiplier>,
    pub pairs: Vec<PairDeviation>,
    pub tolerance: f64,
}

impl CoincidenceReport {
    pub fn max_deviation(&self) -> f64 {
        self.pairs.iter().map(|p| p.deviation).fold(0.0, f64::max)
    }

    pub fn all_coincide(&self) -> bool {
        !self.pairs.is_empty() && self.pairs.iter().all(|p| p.coincide)
    }
}

/// `max_t |s_a(t) - s_b(t)|` over `samples` uniform points, node 1 of each family.
pub fn max_deviation(a: &SplineSpec, b: &SplineSpec, samples: usize) -> Result<f64> {
    let va = SplineBasis::new(a)?.series(1, 0)?.sample_uniform(samples);
    let vb = SplineBasis::new(b)?.series(1, 0)?.sample_uniform(samples);
    Ok(va.iter().zip(&vb).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max))
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Pairwise deviations of the sinc-factor splines at `α = |k|π/N` for `k` in
/// `multipliers`. The grid pair is taken from `parity`; degree, `Γ` and `N`
/// from `template`.
pub fn coincidence_check(template: &SplineSpec, parity: DegreeParity, multipliers: &[i64]) -> Result<CoincidenceReport> {
    if template.factor.kind != FactorKind::SincPower {
        return Err(SplineError::InvalidInput("coincidence checks need the sinc factor".into()));
    }
    let n = template.n as u64;
    let spec = template.with_grids(parity.grids());
    let mut accepted = Vec::new();
    let mut rejected = Vec::new();
    for &k in multipliers {
        let mag = k.unsigned_abs();
        let reason = if k == 0 {
            Some("k must be nonzero".to_string())
        } else if gcd(mag, n) != 1 {
            Some(format!("k={k} and N={n} are not coprime"))
        } else if parity == DegreeParity::Even && mag % 2 == 0 {
            Some(format!("k={k} must be odd for even-degree splines"))
        } else if accepted.iter().any(|&(m, _)| m == mag) {
            Some(format!("duplicate α for k={k}"))
        } else {
            None
        };
        match reason {
            Some(reason) => rejected.push(RejectedMultiplier { k, reason }),
            None => accepted.push((mag, mag as f64 * PI / n as f64)),
        }
    }

    let samples = accepted
        .iter()
        .map(|&(_, alpha)| Ok(SplineBasis::new(&spec.with_alpha(alpha))?.series(1, 0)?.sample_uniform(COINCIDENCE_SAMPLES)))
        .collect::<Result<Vec<_>>>()?;
    let mut pairs = Vec::new();
    for i in 0..accepted.len() {
        for j in i + 1..accepted.len() {
            let deviation = samples[i].iter().zip(&samples[j]).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
            pairs.push(PairDeviation {
                alpha_a: accepted[i].1,
                alpha_b: accepted[j].1,
                deviation,
                coincide: deviation <= COINCIDENCE_TOLERANCE,
            });
        }
    }
    Ok(CoincidenceReport {
        parity,
        template: spec,
        multipliers: multipliers.to_vec(),
        alpha_set: accepted.iter().map(|&(_, a)| a).collect(),
        rejected,
        pairs,
        tolerance: COINCIDENCE_TOLERANCE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::FactorSpec;
    use crate::spec::GammaVector;

    fn sinc(r: u32) -> SplineSpec {
        SplineSpec::new(GridPair::SAME, GammaVector::SIMPLE, FactorSpec::new(FactorKind::SincPower, 0.3, r).unwrap(), 7).unwrap()
    }

    #[test]
    fn odd_degree_coincide() {
        let rep = coincidence_check(&sinc(3), DegreeParity::Odd, &[1, 2, 3]).unwrap();
        assert_eq!(rep.pairs.len(), 3);
        assert!(rep.all_coincide(), "{}", rep.max_deviation());
    }

    #[test]
    fn even_degree_coincide() {
        let rep = coincidence_check(&sinc(2), DegreeParity::Even, &[1, 3]).unwrap();
        assert!(rep.all_coincide(), "{}", rep.max_deviation());
    }

    #[test]
    fn non_coprime_and_even_multipliers_rejected() {
        let rep = coincidence_check(&sinc(2), DegreeParity::Even, &[1, 2, 7, 0, -3]).unwrap();
        let ks: Vec<i64> = rep.rejected.iter().map(|r| r.k).collect();
        assert_eq!(ks, vec![2, 7, 0]);
        assert_eq!(rep.alpha_set.len(), 2);
    }

    #[test]
    fn generic_alphas_do_not_coincide() {
        let spec = sinc(3);
        let d = max_deviation(&spec.with_alpha(0.15), &spec.with_alpha(PI / 7.0), 512).unwrap();
        assert!(d > 1e-3);
    }

    #[test]
    fn needs_sinc_factor() {
        let spec = sinc(3);
        let power = SplineSpec { factor: FactorSpec::new(FactorKind::PowerSignConstant, 1.0, 3).unwrap(), ..spec };
        assert!(coincidence_check(&power, DegreeParity::Odd, &[1, 2]).is_err());
    }
}
