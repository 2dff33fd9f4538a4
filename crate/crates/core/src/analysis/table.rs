use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::factor::{FactorKind, FactorSpec};
use crate::kernel::SplineBasis;
use crate::spec::{GammaVector, GridPair, SplineSpec, TruncationPolicy};

/// Degrees tabulated by default; 50 stands in for `r → ∞`.
pub const TABLE_DEGREES: [u32; 9] = [1, 2, 3, 4, 5, 6, 7, 8, 50];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub grids: GridPair,
    /// Squared L² norms, one per degree.
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormTable {
    pub gamma: GammaVector,
    pub factor: FactorKind,
    pub n: usize,
    pub degrees: Vec<u32>,
    pub truncation: TruncationPolicy,
    pub rows: Vec<TableRow>,
}

impl NormTable {
    pub fn row(&self, grids: GridPair) -> Option<&TableRow> {
        self.rows.iter().find(|r| r.grids == grids)
    }

    pub fn cell(&self, grids: GridPair, r: u32) -> Option<f64> {
        let col = self.degrees.iter().position(|&d| d == r)?;
        self.row(grids).map(|row| row.values[col])
    }
}

/// Squared norms of power-factor fundamental splines on grids (0,0) and (0,1).
/// The factor is α-invariant, so α = 1 is used.
pub fn reproduce_norm_table(gamma: GammaVector, n: usize, degrees: &[u32], truncation: TruncationPolicy) -> Result<NormTable> {
    let grid_rows = [GridPair::SAME, GridPair::MIXED];
    let cells: Vec<(usize, usize)> = (0..grid_rows.len()).flat_map(|g| (0..degrees.len()).map(move |c| (g, c))).collect();
    let values = cells
        .par_iter()
        .map(|&(g, c)| {
            let factor = FactorSpec::new(FactorKind::PowerSignConstant, 1.0, degrees[c])?;
            let spec = SplineSpec::new(grid_rows[g], gamma, factor, n)?.with_truncation(truncation);
            Ok(SplineBasis::new(&spec)?.spectral_energy(0)?.integral)
        })
        .collect::<Result<Vec<f64>>>()?;
    let rows = grid_rows
        .iter()
        .enumerate()
        .map(|(g, &grids)| TableRow { grids, values: values[g * degrees.len()..(g + 1) * degrees.len()].to_vec() })
        .collect();
    Ok(NormTable {
        gamma,
        factor: FactorKind::PowerSignConstant,
        n,
        degrees: degrees.to_vec(),
        truncation,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_gamma_gives_limit_everywhere() {
        let t = reproduce_norm_table(GammaVector::POLYNOMIAL, 7, &[1, 2, 3], TruncationPolicy::default()).unwrap();
        for row in &t.rows {
            for v in &row.values {
                assert!((v - 2.0 * PI / 7.0).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn cells_positive_and_addressable() {
        let t = reproduce_norm_table(GammaVector::SIMPLE, 7, &TABLE_DEGREES, TruncationPolicy::fixed(20)).unwrap();
        assert_eq!(t.rows.len(), 2);
        assert!(t.rows.iter().flat_map(|r| &r.values).all(|v| v.is_finite() && *v > 0.0));
        assert!(t.cell(GridPair::SAME, 50).is_some());
        assert!(t.cell(GridPair::SAME, 9).is_none());
    }

    #[test]
    fn even_node_count_rejected() {
        assert!(reproduce_norm_table(GammaVector::SIMPLE, 8, &[1], TruncationPolicy::default()).is_err());
    }
}
