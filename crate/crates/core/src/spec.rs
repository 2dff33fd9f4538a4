use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SplineError};
use crate::factor::{FactorKind, FactorSpec};
use crate::grid::{validate_node_count, GridSpec, Indicator};

/// Weights of the low (`j`), medium (`mN - j`) and high (`mN + j`) frequency branches.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaVector {
    pub low: f64,
    pub medium: f64,
    pub high: f64,
}

impl GammaVector {
    pub const SIMPLE: GammaVector = GammaVector { low: 1.0, medium: 1.0, high: 1.0 };
    /// Trigonometric polynomial weights.
    pub const POLYNOMIAL: GammaVector = GammaVector { low: 1.0, medium: 0.0, high: 0.0 };

    pub const fn new(low: f64, medium: f64, high: f64) -> Self {
        Self { low, medium, high }
    }

    /// Medium and high branches both switched off: the spline is the fundamental
    /// trigonometric polynomial.
    pub fn is_polynomial_regime(&self) -> bool {
        self.medium == 0.0 && self.high == 0.0
    }

    pub fn is_simple(&self) -> bool {
        *self == Self::SIMPLE
    }
}

impl Default for GammaVector {
    fn default() -> Self {
        Self::SIMPLE
    }
}

impl fmt::Display for GammaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.low, self.medium, self.high)
    }
}

impl FromStr for GammaVector {
    type Err = SplineError;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<f64> = s
            .split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| SplineError::InvalidInput(format!("gamma '{s}': {e}")))?;
        match parts.as_slice() {
            [a, b, c] if parts.iter().all(|v| v.is_finite()) => Ok(Self::new(*a, *b, *c)),
            _ => Err(SplineError::InvalidInput(format!(
                "gamma '{s}': expected three finite comma-separated numbers"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum TruncationMode {
    /// Stop at the first `M` whose integral tail bound is below `tail_tol`.
    Adaptive,
    /// Exact denominators and exact tail energy through the Hurwitz zeta
    /// function; power sign-constant factor only.
    ClosedFormZeta,
    /// Exactly `terms` values of `m`, whatever the tail.
    Fixed { terms: usize },
}

impl FromStr for TruncationMode {
    type Err = SplineError;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        match lower.as_str() {
            "adaptive" => Ok(TruncationMode::Adaptive),
            "zeta" | "closed_form_zeta" => Ok(TruncationMode::ClosedFormZeta),
            _ => lower
                .strip_prefix("fixed:")
                .and_then(|t| t.parse::<usize>().ok())
                .map(|terms| TruncationMode::Fixed { terms })
                .ok_or_else(|| {
                    SplineError::InvalidInput(format!(
                        "truncation '{s}': expected adaptive, zeta or fixed:<terms>"
                    ))
                }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationPolicy {
    pub tail_tol: f64,
    pub m_max: usize,
    pub mode: TruncationMode,
}

impl TruncationPolicy {
    pub const DEFAULT_TAIL_TOL: f64 = 1e-8;
    pub const DEFAULT_M_MAX: usize = 1_000_000;
    /// The published tables sum the m-series over `m = 1..=20`.
    pub const TABLE_TERMS: usize = 20;

    pub fn adaptive(tail_tol: f64) -> Self {
        Self { tail_tol, ..Self::default() }
    }

    pub fn fixed(terms: usize) -> Self {
        Self { mode: TruncationMode::Fixed { terms }, ..Self::default() }
    }

    pub fn closed_form() -> Self {
        Self { mode: TruncationMode::ClosedFormZeta, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tail_tol.is_finite() && self.tail_tol > 0.0) {
            return Err(SplineError::InvalidInput(format!("tail_tol must be positive, got {}", self.tail_tol)));
        }
        if self.m_max == 0 {
            return Err(SplineError::InvalidInput("m_max must be at least 1".into()));
        }
        if let TruncationMode::Fixed { terms } = self.mode {
            if terms > self.m_max {
                return Err(SplineError::InvalidInput(format!("fixed terms {terms} exceed m_max {}", self.m_max)));
            }
        }
        Ok(())
    }
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            tail_tol: Self::DEFAULT_TAIL_TOL,
            m_max: Self::DEFAULT_M_MAX,
            mode: TruncationMode::Adaptive,
        }
    }
}

/// Stitching/interpolation grid indicators `(I₁, I₂)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridPair {
    pub stitching: Indicator,
    pub interpolation: Indicator,
}

impl GridPair {
    pub const SAME: GridPair = GridPair { stitching: Indicator::Zero, interpolation: Indicator::Zero };
    pub const MIXED: GridPair = GridPair { stitching: Indicator::Zero, interpolation: Indicator::One };

    pub fn new(stitching: u8, interpolation: u8) -> Result<Self> {
        Ok(Self {
            stitching: Indicator::try_from(stitching)?,
            interpolation: Indicator::try_from(interpolation)?,
        })
    }

    /// `I₁ + I₂`
    pub fn index_sum(&self) -> u32 {
        (self.stitching.as_u8() + self.interpolation.as_u8()) as u32
    }
}

impl fmt::Display for GridPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.stitching, self.interpolation)
    }
}

/// Complete parameterisation of one family of fundamental splines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplineSpec {
    pub grids: GridPair,
    pub gamma: GammaVector,
    pub factor: FactorSpec,
    pub n: usize,
    #[serde(default)]
    pub truncation: TruncationPolicy,
}

impl SplineSpec {
    pub fn new(grids: GridPair, gamma: GammaVector, factor: FactorSpec, n: usize) -> Result<Self> {
        let spec = Self { grids, gamma, factor, n, truncation: TruncationPolicy::default() };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_truncation(mut self, truncation: TruncationPolicy) -> Self {
        self.truncation = truncation;
        self
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.factor.alpha = alpha;
        self
    }

    pub fn with_gamma(mut self, gamma: GammaVector) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn with_grids(mut self, grids: GridPair) -> Self {
        self.grids = grids;
        self
    }

    pub fn with_degree(mut self, r: u32) -> Self {
        self.factor.r = r;
        self
    }

    pub fn validate(&self) -> Result<()> {
        validate_node_count(self.n as i64)?;
        self.factor.validate()?;
        self.truncation.validate()?;
        if self.truncation.mode == TruncationMode::ClosedFormZeta
            && self.factor.kind != FactorKind::PowerSignConstant
        {
            return Err(SplineError::ZetaModeUnsupported);
        }
        let g = self.gamma;
        if ![g.low, g.medium, g.high].iter().all(|v| v.is_finite()) {
            return Err(SplineError::InvalidInput("gamma components must be finite".into()));
        }
        Ok(())
    }

    /// Number of harmonics `(N - 1) / 2` in the low-frequency block.
    pub fn harmonics(&self) -> usize {
        (self.n - 1) / 2
    }

    pub fn degree(&self) -> u32 {
        self.factor.r
    }

    pub fn interpolation_grid(&self) -> GridSpec {
        GridSpec::new(self.n, self.grids.interpolation).expect("validated node count")
    }

    /// Highest derivative order whose series converges absolutely: `r - 1`.
    pub fn max_derivative_order(&self) -> Option<u32> {
        self.factor.r.checked_sub(1)
    }

    pub fn check_derivative_order(&self, q: u32) -> Result<()> {
        if q == 0 {
            return Ok(());
        }
        match self.max_derivative_order() {
            Some(max) if q <= max => Ok(()),
            _ => Err(SplineError::DerivativeOrderTooHigh { q, r: self.factor.r }),
        }
    }

    /// Smoothness class reported for this family: continuous derivatives up to
    /// order `r - 1` (`-1` meaning piecewise constant).
    pub fn smoothness_class(&self) -> i64 {
        self.factor.r as i64 - 1
    }
}
