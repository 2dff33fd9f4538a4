//! Fundamental trigonometric splines built from convergence-factor-modified
//! trigonometric series, together with their L² norms, semi-norms, total
//! variation and arc length, and the numerical experiments that sweep these
//! quantities over the factor parameter.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod factor;
pub mod functionals;
pub mod grid;
pub mod kernel;
pub mod series;
pub mod spec;
mod zeta;

pub use error::{Result, SplineError};
pub use factor::{FactorKind, FactorSpec};
pub use functionals::{FunctionalKind, FunctionalValue, Method, NormValues, PeriodicFunction};
pub use grid::{grid_nodes, GridSpec, Indicator};
pub use kernel::{denominator, eval_interpolant, eval_series, harmonic_series, interpolant_series, Denominator, SpectralEnergy, SplineBasis, TailNorm};
pub use series::{HarmonicSeries, Term};
pub use spec::{GammaVector, GridPair, SplineSpec, TruncationMode, TruncationPolicy};
pub use zeta::hurwitz_zeta;
