//! Numerical experiments: norm tables, α sweeps, coincidence and limit checks.

mod coincidence;
mod golden;
mod limit;
mod sweep;
mod table;

pub use coincidence::{coincidence_check, max_deviation, CoincidenceReport, DegreeParity, PairDeviation, RejectedMultiplier, COINCIDENCE_TOLERANCE};
pub use golden::golden_section_min;
pub use limit::{limit_check, LimitReport, LIMIT_DEGREE};
pub use sweep::{default_alpha_grid, evaluate_functional, sweep_alpha, uniform_grid, Evaluation, ExcludedSample, Minimum, DEFAULT_SWEEP_STEPS, SweepCurve, SweepOptions};
pub use table::{reproduce_norm_table, NormTable, TableRow, TABLE_DEGREES};
