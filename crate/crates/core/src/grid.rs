//! Uniform grids on `[0, 2π)`.
//!
//! Indicator 0 puts the first node at the origin, indicator 1 shifts every
//! node by half a step.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SplineError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Indicator {
    Zero,
    One,
}

impl Indicator {
    pub fn as_u8(self) -> u8 {
        match self {
            Indicator::Zero => 0,
            Indicator::One => 1,
        }
    }
}

impl TryFrom<u8> for Indicator {
    type Error = SplineError;

    fn try_from(v: u8) -> Result<Self> {
        match v {
            0 => Ok(Indicator::Zero),
            1 => Ok(Indicator::One),
            other => Err(SplineError::InvalidIndicator(other)),
        }
    }
}

impl From<Indicator> for u8 {
    fn from(i: Indicator) -> u8 {
        i.as_u8()
    }
}

impl fmt::Display for Indicator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    n: usize,
    indicator: Indicator,
}

impl GridSpec {
    pub fn new(n: usize, indicator: Indicator) -> Result<Self> {
        validate_node_count(n as i64)?;
        Ok(Self { n, indicator })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn indicator(&self) -> Indicator {
        self.indicator
    }

    pub fn step(&self) -> f64 {
        2.0 * PI / self.n as f64
    }

    /// Position of node `k` (1-based).
    pub fn node(&self, k: usize) -> Result<f64> {
        if k == 0 || k > self.n {
            return Err(SplineError::NodeOutOfRange { k, n: self.n });
        }
        Ok(node_position(self.n, self.indicator, k))
    }

    /// All `N` nodes in ascending order.
    pub fn nodes(&self) -> Vec<f64> {
        (1..=self.n)
            .map(|k| node_position(self.n, self.indicator, k))
            .collect()
    }
}

pub(crate) fn node_position(n: usize, indicator: Indicator, k: usize) -> f64 {
    let n = n as f64;
    let k = k as f64;
    match indicator {
        Indicator::Zero => 2.0 * PI * (k - 1.0) / n,
        Indicator::One => PI * (2.0 * k - 1.0) / n,
    }
}

pub(crate) fn validate_node_count(n: i64) -> Result<()> {
    if n < 3 || n % 2 == 0 {
        return Err(SplineError::InvalidGrid(n));
    }
    Ok(())
}

/// Nodes of a grid given by raw parameters.
pub fn grid_nodes(n: i64, indicator: u8) -> Result<Vec<f64>> {
    validate_node_count(n)?;
    let indicator = Indicator::try_from(indicator)?;
    Ok(GridSpec::new(n as usize, indicator)?.nodes())
}
