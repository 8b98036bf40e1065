use super::blocks::decompose;
use super::grid::GridFunction;
use super::partition::PartitionOfUnity;
use crate::error::{Error, Result};
use crate::stats::fit_line;

/// Minimum number of nonzero blocks a fit window must hold.
pub const MIN_FIT_POINTS: usize = 4;

/// Blocks whose sup falls below this fraction of the largest block sup are
/// treated as numerically zero.
const ZERO_BLOCK_RATIO: f64 = 1e-13;

/// Log-linear fit of `j -> log2 max|Delta_j f|`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegularityReport {
    /// `(j, log2 sup|Delta_j f|)` for every nonzero block in the window.
    pub slopes: Vec<(i32, f64)>,
    pub fitted_slope: f64,
    pub fit_window: (i32, i32),
    pub r_squared: f64,
}

impl RegularityReport {
    /// Estimated Holder-Besov regularity, `-fitted_slope`.
    pub fn regularity(&self) -> f64 {
        -self.fitted_slope
    }
}

/// Default window `[2, J-2]`, away from the low block and the Nyquist edge.
pub fn default_fit_window(pou: &PartitionOfUnity) -> (i32, i32) {
    (2, pou.top() - 2)
}

/// Least-squares regularity estimate from block suprema over `fit_window`
/// (defaults to [`default_fit_window`]).
pub fn estimate_regularity(
    f: &GridFunction,
    pou: &PartitionOfUnity,
    fit_window: Option<(i32, i32)>,
) -> Result<RegularityReport> {
    let (lo, hi) = fit_window.unwrap_or_else(|| default_fit_window(pou));
    if lo < 0 || hi > pou.top() || lo > hi {
        return Err(Error::Configuration(format!(
            "fit window [{lo}, {hi}] is not inside [0, {}]",
            pou.top()
        )));
    }
    let dec = decompose(f, pou)?;
    let sups = dec.block_sups();
    let largest = sups.iter().map(|s| s.1).fold(0.0, f64::max);
    let slopes: Vec<(i32, f64)> = sups
        .into_iter()
        .filter(|&(j, s)| j >= lo && j <= hi && s > ZERO_BLOCK_RATIO * largest && s > 0.0)
        .map(|(j, s)| (j, s.log2()))
        .collect();
    if slopes.len() < MIN_FIT_POINTS {
        return Err(Error::DegenerateInput(format!(
            "{} nonzero blocks in window [{lo}, {hi}], need {MIN_FIT_POINTS}",
            slopes.len()
        )));
    }
    let points: Vec<(f64, f64)> = slopes.iter().map(|&(j, v)| (j as f64, v)).collect();
    let fit = fit_line(&points).expect("window holds distinct block indices");
    Ok(RegularityReport {
        slopes,
        fitted_slope: fit.slope,
        fit_window: (lo, hi),
        r_squared: fit.r_squared,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{build_partition, Grid};
    use std::f64::consts::PI;

    #[test]
    fn exact_log_linear_data() {
        // one cosine per block at a frequency where rho_j = 1, amplitude 2^{-j}
        let pou = build_partition(Grid::line(12).unwrap(), 2).unwrap();
        let freqs: Vec<(i32, f64)> = (0..pou.top()).map(|j| (j, 3.0 * 2f64.powi(j))).collect();
        let f = GridFunction::from_fn(pou.grid(), |x| {
            freqs
                .iter()
                .map(|&(j, k)| 2f64.powi(-j) * (2.0 * PI * k * x[0]).cos())
                .sum()
        })
        .unwrap();
        let report = estimate_regularity(&f, &pou, None).unwrap();
        assert!((report.regularity() - 1.0).abs() < 1e-10, "{report:?}");
        assert!(report.r_squared > 0.999_999);
        assert_eq!(report.fit_window, (2, 8));
    }

    #[test]
    fn zero_function_is_degenerate() {
        let pou = build_partition(Grid::line(10).unwrap(), 2).unwrap();
        let f = GridFunction::zeros(pou.grid());
        assert!(matches!(
            estimate_regularity(&f, &pou, None),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn window_must_fit() {
        let pou = build_partition(Grid::line(10).unwrap(), 2).unwrap();
        let f = GridFunction::constant(pou.grid(), 1.0);
        assert!(matches!(
            estimate_regularity(&f, &pou, Some((0, 20))),
            Err(Error::Configuration(_))
        ));
    }
}
