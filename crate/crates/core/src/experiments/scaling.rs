use std::fmt;
use std::str::FromStr;

use super::analysis::commutator_instance;
use super::{check_seeds, format_alphas, letter_inputs, Check, ReportRow};
use crate::commutator::commutator;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::hopf::{Alphabet, Word, MAX_WORD_LEN};
use crate::models::{extract_brackets, seed_field};
use crate::paraproducts::{resonant, PrecTable, SeedFamily};
use crate::spectral::{
    build_partition, decompose, estimate_regularity, Grid, GridFunction, PartitionOfUnity,
};
use crate::stats::{fit_line, mean};
use crate::tolerances;

/// Base points per seed in the two-point regressions.
pub const OMEGA_BASE_POINTS: usize = 16;
/// Smallest separation exponent `m` in `|y - x| = 2^{-m}`.
const MIN_SEPARATION: u32 = 2;
/// The largest separation exponent is `L - SEPARATION_MARGIN`.
const SEPARATION_MARGIN: u32 = 3;
/// Blocks compared under refinement are `j <= L - REFINEMENT_MARGIN`.
const REFINEMENT_MARGIN: u32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    Omega,
    Bracket,
    Commutator,
    ControlResonant,
    Refinement,
}

impl Experiment {
    pub const ALL: [Experiment; 5] = [
        Experiment::Omega,
        Experiment::Bracket,
        Experiment::Commutator,
        Experiment::ControlResonant,
        Experiment::Refinement,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::Omega => "omega",
            Experiment::Bracket => "bracket",
            Experiment::Commutator => "commutator",
            Experiment::ControlResonant => "control-resonant",
            Experiment::Refinement => "refinement",
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Experiment::ALL.iter().map(|e| e.name()).collect();
                Error::Usage(format!(
                    "unknown experiment {s:?}; expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingConfig {
    pub experiment: Experiment,
    pub beta: f64,
    pub alphas: Vec<f64>,
    pub gamma: f64,
    pub log2_size: u32,
    pub seeds: Vec<u64>,
}

impl ScalingConfig {
    fn params(&self) -> String {
        match self.experiment {
            Experiment::Omega | Experiment::Bracket => {
                format!("alpha={};L={}", format_alphas(&self.alphas), self.log2_size)
            }
            _ => format!(
                "beta={};alpha={};gamma={};L={}",
                self.beta,
                format_alphas(&self.alphas),
                self.gamma,
                self.log2_size
            ),
        }
    }

    fn check_word_exponents(&self, min_letters: usize) -> Result<()> {
        let n = self.alphas.len();
        if n < min_letters || n > MAX_WORD_LEN {
            return Err(Error::Configuration(format!(
                "{} needs between {min_letters} and {MAX_WORD_LEN} exponents, got {n}",
                self.experiment
            )));
        }
        if let Some(a) = self.alphas.iter().find(|&&a| !(a > 0.0 && a < 1.0)) {
            return Err(Error::Configuration(format!(
                "violated 0 < alpha < 1: alpha = {a}"
            )));
        }
        let total: f64 = self.alphas.iter().sum();
        if total >= 1.0 {
            return Err(Error::Configuration(format!(
                "violated sum(alpha) < 1: sum(alpha) = {total}"
            )));
        }
        Ok(())
    }

    fn check_grid(&self, min: u32) -> Result<()> {
        if self.log2_size < min {
            return Err(Error::Configuration(format!(
                "{} needs L >= {min}, got L = {}",
                self.experiment, self.log2_size
            )));
        }
        Ok(())
    }
}

/// Base points `x_b` of the two-point regressions on a grid of `n` points.
pub fn base_points(n: usize, count: usize) -> Vec<usize> {
    (0..count).map(|b| (b * 257 + 31) % n).collect()
}

/// Least-squares slope of `log2 mean_b |omega^≺_{x_b + h, x_b}|` against
/// `log2 h` for `h = 2^{-m}`, `m = 2..=L-3`.
pub fn omega_slope(fs: &[GridFunction], pou: &PartitionOfUnity, points: &[usize]) -> Result<f64> {
    let table = PrecTable::new(fs, pou)?;
    let n = pou.grid().len();
    let l = pou.grid().log2_size();
    let samples: Vec<(f64, f64)> = (MIN_SEPARATION..=l.saturating_sub(SEPARATION_MARGIN))
        .map(|m| {
            let step = n >> m;
            let sizes: Vec<f64> = points
                .iter()
                .map(|&x| table.omega(x, (x + step) % n).abs())
                .collect();
            (-(m as f64), mean(&sizes).log2())
        })
        .collect();
    fit_line(&samples)
        .map(|f| f.slope)
        .ok_or_else(|| Error::DegenerateInput("too few separations for a slope".into()))
}

/// Sup distances between the low-pass commutators `sum_{j <= L-6} Delta_j C`
/// on the grids `L-4`, `L-2` and `L`, the finer one subsampled: `(coarse
/// pair, fine pair)`.
pub fn refinement_differences(
    beta: f64,
    alphas: &[f64],
    gamma: f64,
    seed: u64,
    log2_size: u32,
) -> Result<(f64, f64)> {
    let cutoff = (log2_size - REFINEMENT_MARGIN) as i32;
    let lows = [log2_size - 4, log2_size - 2, log2_size]
        .iter()
        .map(|&l| {
            let pou = build_partition(Grid::line(l)?, 2)?;
            let inst = commutator_instance(beta, alphas, gamma, seed, &pou)?;
            Ok(decompose(&commutator(&inst, &pou)?, &pou)?.partial_sum(-1, cutoff))
        })
        .collect::<Result<Vec<_>>>()?;
    let gap = |coarse: &GridFunction, fine: &GridFunction| {
        (0..coarse.grid().len())
            .map(|i| (coarse.at(i) - fine.at(4 * i)).abs())
            .fold(0.0, f64::max)
    };
    Ok((gap(&lows[0], &lows[1]), gap(&lows[1], &lows[2])))
}

/// Runs one scaling experiment over all seeds: a row per seed and an
/// aggregate row over seeds.
pub fn scaling_experiment(config: &ScalingConfig, exec: Exec) -> Result<Vec<ReportRow>> {
    check_seeds(&config.seeds)?;
    let exp = config.experiment;
    let sum_alpha: f64 = config.alphas.iter().sum();
    let (expected, tol, check, metric) = match exp {
        Experiment::Omega => {
            config.check_word_exponents(1)?;
            config.check_grid(MIN_SEPARATION + SEPARATION_MARGIN + 3)?;
            (sum_alpha, tolerances::OMEGA_SLOPE, Check::Within, "slope")
        }
        Experiment::Bracket => {
            config.check_word_exponents(3)?;
            config.check_grid(8)?;
            (
                sum_alpha,
                tolerances::BRACKET_SLOPE,
                Check::AtLeast,
                "regularity",
            )
        }
        Experiment::Commutator => {
            validate_commutator(config)?;
            (
                config.beta + sum_alpha + config.gamma,
                tolerances::COMMUTATOR_SLOPE,
                Check::AtLeast,
                "regularity",
            )
        }
        Experiment::ControlResonant => {
            validate_commutator(config)?;
            (
                config.alphas[0] + config.gamma,
                tolerances::CONTROL_RESONANT_SLOPE,
                Check::AtMost,
                "regularity",
            )
        }
        Experiment::Refinement => {
            validate_commutator(config)?;
            config.check_grid(REFINEMENT_MARGIN + 4)?;
            (
                tolerances::REFINEMENT_RATIO,
                0.0,
                Check::AtMost,
                "decay_ratio",
            )
        }
    };
    let params = config.params();
    let pou = if exp == Experiment::Refinement {
        None
    } else {
        Some(build_partition(Grid::line(config.log2_size)?, 2)?)
    };

    let per_seed = exec.map(&config.seeds, |&seed| -> Result<(u64, f64)> {
        if exp == Experiment::Refinement {
            let (coarse, fine) = refinement_differences(
                config.beta,
                &config.alphas,
                config.gamma,
                seed,
                config.log2_size,
            )?;
            return Ok((seed, fine / coarse));
        }
        let pou = pou.as_ref().expect("grid built above");
        let value = match exp {
            Experiment::Omega => {
                let fs = letter_inputs(&config.alphas, seed, pou)?;
                omega_slope(&fs, pou, &base_points(pou.grid().len(), OMEGA_BASE_POINTS))?
            }
            Experiment::Bracket => {
                let alphabet = Alphabet::new(&config.alphas)?;
                let family =
                    SeedFamily::new(alphabet, letter_inputs(&config.alphas, seed, pou)?, pou)?;
                let brackets = extract_brackets(&seed_field(&family)?, pou)?;
                let w = Word::range(1, config.alphas.len() as u8);
                let b = brackets
                    .get(&w)
                    .ok_or_else(|| Error::OutOfStructure(format!("no bracket for {w}")))?;
                estimate_regularity(b, pou, None)?.regularity()
            }
            Experiment::Commutator => {
                let inst =
                    commutator_instance(config.beta, &config.alphas, config.gamma, seed, pou)?;
                estimate_regularity(&commutator(&inst, pou)?, pou, None)?.regularity()
            }
            Experiment::ControlResonant => {
                let inst =
                    commutator_instance(config.beta, &config.alphas, config.gamma, seed, pou)?;
                estimate_regularity(&resonant(&inst.fs[0], &inst.xi, pou)?, pou, None)?.regularity()
            }
            Experiment::Refinement => unreachable!(),
        };
        Ok((seed, value))
    });
    let per_seed = per_seed.into_iter().collect::<Result<Vec<_>>>()?;

    let mut rows: Vec<ReportRow> = per_seed
        .iter()
        .map(|&(seed, v)| {
            ReportRow::new(
                exp.name(),
                Some(seed),
                &params,
                metric,
                v,
                expected,
                tol * tolerances::PER_SEED_WIDENING,
                check,
            )
        })
        .collect();
    let values: Vec<f64> = per_seed.iter().map(|p| p.1).collect();
    rows.push(ReportRow::new(
        exp.name(),
        None,
        &params,
        format!("mean_{metric}"),
        mean(&values),
        expected,
        tol,
        check,
    ));
    Ok(rows)
}

fn validate_commutator(config: &ScalingConfig) -> Result<()> {
    if config.alphas.is_empty() || config.alphas.len() > MAX_WORD_LEN - 1 {
        return Err(Error::Configuration(format!(
            "{} needs between 1 and {} exponents, got {}",
            config.experiment,
            MAX_WORD_LEN - 1,
            config.alphas.len()
        )));
    }
    let probe = build_partition(Grid::line(8)?, 2)?;
    commutator_instance(config.beta, &config.alphas, config.gamma, 0, &probe)?.check_invariants()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(experiment: Experiment, alphas: &[f64], l: u32) -> ScalingConfig {
        ScalingConfig {
            experiment,
            beta: 0.55,
            alphas: alphas.to_vec(),
            gamma: -0.7,
            log2_size: l,
            seeds: vec![0, 1],
        }
    }

    #[test]
    fn names_round_trip() {
        for e in Experiment::ALL {
            assert_eq!(e.name().parse::<Experiment>().unwrap(), e);
        }
        assert!(matches!("nope".parse::<Experiment>(), Err(Error::Usage(_))));
    }

    #[test]
    fn violated_inequalities_are_named() {
        let mut c = config(Experiment::Commutator, &[0.35], 10);
        c.gamma = -0.95;
        let err = scaling_experiment(&c, Exec::Sequential).unwrap_err();
        assert!(
            err.to_string().contains("beta + sum(alpha) + gamma > 0"),
            "{err}"
        );
        let err = scaling_experiment(
            &config(Experiment::Omega, &[0.6, 0.5], 10),
            Exec::Sequential,
        )
        .unwrap_err();
        assert!(err.to_string().contains("sum(alpha) < 1"), "{err}");
        assert!(scaling_experiment(
            &config(Experiment::Bracket, &[0.3, 0.2], 10),
            Exec::Sequential
        )
        .is_err());
    }

    #[test]
    fn one_row_per_seed_plus_aggregate() {
        let rows = scaling_experiment(
            &config(Experiment::Commutator, &[0.35], 10),
            Exec::default(),
        )
        .unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[2].seed, None);
        assert_eq!(rows[2].metric, "mean_regularity");
        assert!((rows[2].expected - 0.2).abs() < 1e-12);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let c = config(Experiment::Omega, &[0.3, 0.4], 10);
        assert_eq!(
            scaling_experiment(&c, Exec::Sequential).unwrap(),
            scaling_experiment(&c, Exec::Parallel).unwrap()
        );
    }

    #[test]
    fn smooth_omega_has_unit_slope() {
        // a single low-frequency cosine is Lipschitz at every probed scale
        let pou = build_partition(Grid::line(10).unwrap(), 2).unwrap();
        let f = GridFunction::from_fn(pou.grid(), |x| (2.0 * std::f64::consts::PI * x[0]).cos())
            .unwrap();
        let slope = omega_slope(&[f], &pou, &base_points(1024, 16)).unwrap();
        assert!((slope - 1.0).abs() < 0.05, "{slope}");
    }
}
