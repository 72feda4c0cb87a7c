use rayon::prelude::*;

use crate::error::Result;
use crate::families::{build_family, FamilyId};

use super::integral::{integral_value, IntegralSpec};
use super::series::{check_point, eval_table};

const SERIES_ORDER: usize = 160;

#[derive(Clone, Debug, PartialEq)]
pub struct GridRow {
    pub c: f64,
    pub z: f64,
    pub series: f64,
    pub integral: f64,
    pub abs_diff: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridReport {
    pub family: FamilyId,
    pub m: usize,
    pub rows: Vec<GridRow>,
}

impl GridReport {
    pub fn max_diff(&self) -> f64 {
        self.rows.iter().map(|r| r.abs_diff).fold(0.0, f64::max)
    }

    /// `family,m,c,z,series,integral,abs_diff`, one row per point.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("family,m,c,z,series,integral,abs_diff\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{:.17e},{:.17e},{:.3e}\n",
                self.family, self.m, r.c, r.z, r.series, r.integral, r.abs_diff
            ));
        }
        out
    }
}

/// `c` in `-0.9..=0.9` step `0.3`, `z` in `0.1..=0.5` step `0.1`.
pub fn default_grid() -> Vec<(f64, f64)> {
    let cs = [-0.9, -0.6, -0.3, 0.0, 0.3, 0.6, 0.9];
    let zs = [0.1, 0.2, 0.3, 0.4, 0.5];
    cs.iter().flat_map(|&c| zs.iter().map(move |&z| (c, z))).collect()
}

/// Integral and series values at each `(c, z)`, in grid order.
pub fn compare_grid(family: FamilyId, m: usize, grid: &[(f64, f64)], tolerance: f64) -> Result<GridReport> {
    let table = build_family(m, family, SERIES_ORDER)?;
    let rows = grid
        .par_iter()
        .map(|&(c, z)| {
            check_point(c, z)?;
            let integral = integral_value(&IntegralSpec::new(family, m, c, z, tolerance)?)?;
            let (series, _) = eval_table(&table, c, z);
            Ok(GridRow { c, z, series, integral, abs_diff: (series - integral).abs() })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GridReport { family, m, rows })
}
