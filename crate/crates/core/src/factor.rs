//! Convergence factors applied to the k-th harmonic.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SplineError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorKind {
    /// `α·k^-(1+r)`
    PowerSignConstant,
    /// `(sin(αk)/(αk))^(1+r)`
    SincPower,
}

impl fmt::Display for FactorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FactorKind::PowerSignConstant => "power",
            FactorKind::SincPower => "sinc",
        })
    }
}

impl FromStr for FactorKind {
    type Err = SplineError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "power" | "power_sign_constant" | "sigma0" => Ok(FactorKind::PowerSignConstant),
            "sinc" | "sinc_power" | "sigma" => Ok(FactorKind::SincPower),
            other => Err(SplineError::InvalidInput(format!("unknown factor kind '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FactorSpec {
    pub kind: FactorKind,
    pub alpha: f64,
    pub r: u32,
}

impl FactorSpec {
    pub fn new(kind: FactorKind, alpha: f64, r: u32) -> Result<Self> {
        let spec = Self { kind, alpha, r };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha.is_finite() && self.alpha > 0.0) {
            return Err(SplineError::InvalidAlpha(self.alpha));
        }
        Ok(())
    }

    /// Factor value at harmonic `k >= 1`.
    pub fn value(&self, k: u64) -> Result<f64> {
        if k == 0 {
            return Err(SplineError::InvalidFrequency(k));
        }
        Ok(self.eval(k as f64))
    }

    /// Unchecked evaluation at a positive real frequency.
    #[inline]
    pub(crate) fn eval(&self, k: f64) -> f64 {
        let p = self.r as i32 + 1;
        match self.kind {
            FactorKind::PowerSignConstant => self.alpha * k.powi(-p),
            FactorKind::SincPower => sinc(self.alpha * k).powi(p),
        }
    }

    /// `k^q·σ(k)`, evaluated without forming `k^q` on its own (which overflows
    /// for large `q`).
    #[inline]
    pub(crate) fn eval_weighted(&self, k: f64, q: u32) -> f64 {
        if q == 0 {
            return self.eval(k);
        }
        let p = self.r as i32 + 1;
        let q = q as i32;
        match self.kind {
            FactorKind::PowerSignConstant => self.alpha * k.powi(q - p),
            FactorKind::SincPower => {
                let x = self.alpha * k;
                let s = x.sin();
                let sc = if x.abs() < 1e-4 { sinc(x) } else { s / x };
                sc.powi(p - q) * (s / self.alpha).powi(q)
            }
        }
    }

    /// Overall scale of the factor (`α` for the power factor; the sinc factor
    /// is bounded by 1).
    pub(crate) fn magnitude(&self) -> f64 {
        match self.kind {
            FactorKind::PowerSignConstant => self.alpha,
            FactorKind::SincPower => 1.0,
        }
    }

    /// Constant `B` with `|σ(k)| <= B·k^-(1+r)` for every `k >= 1`.
    pub(crate) fn majorant_scale(&self) -> f64 {
        match self.kind {
            FactorKind::PowerSignConstant => self.alpha,
            FactorKind::SincPower => self.alpha.powi(-(self.r as i32 + 1)),
        }
    }
}

#[inline]
pub(crate) fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn power_factor_value() {
        let f = FactorSpec::new(FactorKind::PowerSignConstant, 1.0, 1).unwrap();
        assert_eq!(f.value(2).unwrap(), 0.25);
    }

    #[test]
    fn sinc_factor_vanishes_at_pi() {
        let f = FactorSpec::new(FactorKind::SincPower, PI / 7.0, 2).unwrap();
        assert!(f.value(7).unwrap().abs() < 1e-15);
    }

    #[test]
    fn sinc_factor_small_alpha_limit() {
        for alpha in [1e-3, 1e-6, 1e-10] {
            let f = FactorSpec::new(FactorKind::SincPower, alpha, 3).unwrap();
            assert!((f.value(3).unwrap() - 1.0).abs() < 1e-4);
        }
    }

    #[test]
    fn zero_frequency_rejected() {
        let f = FactorSpec::new(FactorKind::SincPower, 0.3, 1).unwrap();
        assert_eq!(f.value(0), Err(SplineError::InvalidFrequency(0)));
        assert!(FactorSpec::new(FactorKind::SincPower, 0.0, 1).is_err());
        assert!(FactorSpec::new(FactorKind::SincPower, f64::NAN, 1).is_err());
    }

    #[test]
    fn sinc_bounded_and_majorised() {
        for r in 0..6 {
            for &alpha in &[0.05, 0.3, PI / 7.0, 1.4] {
                let f = FactorSpec::new(FactorKind::SincPower, alpha, r).unwrap();
                for k in 1..400u64 {
                    let v = f.value(k).unwrap();
                    assert!(v.abs() <= 1.0 + 1e-15);
                    assert!(v.abs() <= f.majorant_scale() * (k as f64).powi(-(r as i32 + 1)) * (1.0 + 1e-12));
                }
            }
        }
    }

    #[test]
    fn power_factor_positive() {
        let f = FactorSpec::new(FactorKind::PowerSignConstant, 0.7, 4).unwrap();
        assert!((1..1000u64).all(|k| f.value(k).unwrap() > 0.0));
    }
}
