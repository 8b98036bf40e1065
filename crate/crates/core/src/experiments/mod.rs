//! Reproducible experiment drivers shared by the command-line harness and the
//! acceptance tests. Every driver returns [`ReportRow`]s; a run passes when
//! all of its rows do.

mod algebra;
mod analysis;
mod scaling;

use std::cmp::Ordering;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::spectral::{synth_holder, GridFunction, PartitionOfUnity};

pub use algebra::{algebra_suite, AlgebraFault, CHARACTER_SEED};
pub use analysis::{analysis_suite, AnalysisConfig, COMMUTATOR_CASES};
pub use scaling::{
    base_points, omega_slope, refinement_differences, scaling_experiment, Experiment,
    ScalingConfig, OMEGA_BASE_POINTS,
};

/// Cosines per dyadic block in every synthetic input.
pub const DEFAULT_MODES: usize = 8;

/// Seed offset of the input `g` of a commutator.
pub const G_SLOT: u64 = 15;
/// Seed offset of the noise `xi`.
pub const XI_SLOT: u64 = 14;
/// Seed offset of the random sample points.
pub const POINT_SLOT: u64 = 13;

/// Generator seed of input slot `slot` for experiment seed `seed`.
pub fn slot_seed(seed: u64, slot: u64) -> u64 {
    seed * 16 + slot
}

/// The inputs `f_1, ..., f_n` for one seed.
pub fn letter_inputs(
    alphas: &[f64],
    seed: u64,
    pou: &PartitionOfUnity,
) -> Result<Vec<GridFunction>> {
    alphas
        .iter()
        .enumerate()
        .map(|(i, &a)| synth_holder(a, slot_seed(seed, i as u64), pou, DEFAULT_MODES))
        .collect()
}

/// Distinct pseudo-random grid points for one seed.
pub fn sample_points(count: usize, seed: u64, grid_len: usize) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(slot_seed(seed, POINT_SLOT));
    (0..count).map(|_| rng.random_range(0..grid_len)).collect()
}

/// How a measurement is compared with its expected value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    /// `|measured - expected| <= tolerance`.
    Within,
    /// `measured >= expected - tolerance`.
    AtLeast,
    /// `measured <= expected + tolerance`.
    AtMost,
}

/// One line of a report.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub experiment: String,
    /// `None` for rows aggregating all seeds.
    pub seed: Option<u64>,
    pub params: String,
    pub metric: String,
    pub measured: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub check: Check,
}

impl ReportRow {
    pub fn new(
        experiment: &str,
        seed: Option<u64>,
        params: &str,
        metric: impl Into<String>,
        measured: f64,
        expected: f64,
        tolerance: f64,
        check: Check,
    ) -> Self {
        ReportRow {
            experiment: experiment.to_string(),
            seed,
            params: params.to_string(),
            metric: metric.into(),
            measured,
            expected,
            tolerance,
            check,
        }
    }

    /// A residual that must vanish up to `tolerance`.
    pub fn residual(
        experiment: &str,
        seed: Option<u64>,
        params: &str,
        metric: impl Into<String>,
        measured: f64,
        tolerance: f64,
    ) -> Self {
        ReportRow::new(
            experiment,
            seed,
            params,
            metric,
            measured,
            0.0,
            tolerance,
            Check::Within,
        )
    }

    /// NaN measurements never pass.
    pub fn pass(&self) -> bool {
        match self.check {
            Check::Within => (self.measured - self.expected).abs() <= self.tolerance,
            Check::AtLeast => self.measured >= self.expected - self.tolerance,
            Check::AtMost => self.measured <= self.expected + self.tolerance,
        }
    }

    fn order(&self, other: &ReportRow) -> Ordering {
        let key = |r: &ReportRow| r.seed.map_or((1, 0), |s| (0, s));
        key(self)
            .cmp(&key(other))
            .then_with(|| self.metric.cmp(&other.metric))
            .then_with(|| self.experiment.cmp(&other.experiment))
    }
}

impl fmt::Display for ReportRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let seed = self.seed.map_or("all".to_string(), |s| s.to_string());
        let rel = match self.check {
            Check::Within => "within",
            Check::AtLeast => "at least",
            Check::AtMost => "at most",
        };
        write!(
            f,
            "{} {} seed={} {}: measured {:.6e}, expected {} {:.6e} (tol {:.1e})",
            if self.pass() { "PASS" } else { "FAIL" },
            self.experiment,
            seed,
            self.metric,
            self.measured,
            rel,
            self.expected,
            self.tolerance
        )
    }
}

/// Sorts rows by seed (aggregates last), then metric.
pub fn sort_rows(rows: &mut [ReportRow]) {
    rows.sort_by(ReportRow::order);
}

pub fn all_pass(rows: &[ReportRow]) -> bool {
    rows.iter().all(ReportRow::pass)
}

fn collect_seeds(results: Vec<Result<Vec<ReportRow>>>) -> Result<Vec<ReportRow>> {
    let mut rows = Vec::new();
    for r in results {
        rows.extend(r?);
    }
    Ok(rows)
}

fn check_seeds(seeds: &[u64]) -> Result<()> {
    if seeds.is_empty() {
        return Err(Error::Usage("at least one seed is required".into()));
    }
    Ok(())
}

fn format_alphas(alphas: &[f64]) -> String {
    alphas
        .iter()
        .map(f64::to_string)
        .collect::<Vec<_>>()
        .join(":")
}
