use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rustfft::num_complex::Complex64;

use super::fourier::signed_frequency;
use super::grid::GridFunction;
use super::partition::PartitionOfUnity;
use crate::error::{Error, Result};

/// Random trigonometric polynomial in `C^alpha`.
///
/// For every `j` in `0..J` the block `Delta_j` of the output is a sum of
/// `modes_per_block` random cosines whose frequencies lie in the core band of
/// the j-th annulus (where `rho_j = 1`), normalized to unit sup and scaled by
/// `2^{-j alpha}`. Block `j` draws from ChaCha8 stream `j` of `seed`, and in
/// one dimension its sup is measured on an oversampled reference grid that
/// depends on `j` only, so the same seed yields the same function on every
/// grid size up to band-limited truncation.
pub fn synth_holder(
    alpha: f64,
    seed: u64,
    pou: &PartitionOfUnity,
    modes_per_block: usize,
) -> Result<GridFunction> {
    if alpha == 0.0 || !(alpha > -1.0 && alpha < 1.0) {
        return Err(Error::UnsupportedParameter(format!(
            "regularity {alpha} must lie in (-1, 1) without 0"
        )));
    }
    if modes_per_block == 0 {
        return Err(Error::Usage("modes_per_block must be at least 1".into()));
    }
    let grid = pou.grid();
    let n = grid.points_per_axis();
    let mut total = GridFunction::zeros(grid);
    for j in 0..pou.top() {
        let (lo, hi) = pou.core_band(j);
        let candidates = core_frequencies(grid.dim(), lo, hi);
        if candidates.is_empty() {
            return Err(Error::Configuration(format!(
                "core band of block {j} holds no frequency"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(j as u64 + 1);
        let modes: Vec<([i64; 2], f64, f64)> = (0..modes_per_block)
            .map(|_| {
                let k = candidates[rng.random_range(0..candidates.len())];
                let amp: f64 = rng.sample(StandardNormal);
                let phase = rng.random_range(0.0..2.0 * PI);
                (k, amp, phase)
            })
            .collect();

        let mut spectrum = vec![Complex64::new(0.0, 0.0); grid.len()];
        for &(k, amp, phase) in &modes {
            let c = Complex64::from_polar(amp * grid.len() as f64 / 2.0, phase);
            spectrum[flat_index(k, n, grid.dim())] += c;
            spectrum[flat_index([-k[0], -k[1]], n, grid.dim())] += c.conj();
        }
        let block = GridFunction::from_raw(grid, pou.fourier.inverse_real(spectrum));
        let sup = if grid.dim() == 1 {
            reference_sup(&modes, hi)
        } else {
            block.sup_norm()
        };
        if sup == 0.0 {
            return Err(Error::DegenerateInput(format!(
                "block {j} cancelled to zero"
            )));
        }
        total.add_scaled(2f64.powf(-(j as f64) * alpha) / sup, &block);
    }
    Ok(total)
}

/// Half-space representatives of the lattice frequencies with radius in `[lo, hi]`.
fn core_frequencies(dim: u8, lo: f64, hi: f64) -> Vec<[i64; 2]> {
    let kmax = hi.floor() as i64;
    let mut out = Vec::new();
    if dim == 1 {
        for k in 1..=kmax {
            let r = k as f64;
            if r >= lo && r <= hi {
                out.push([k, 0]);
            }
        }
    } else {
        for k1 in 0..=kmax {
            for k2 in -kmax..=kmax {
                if k1 == 0 && k2 <= 0 {
                    continue;
                }
                let r = ((k1 * k1 + k2 * k2) as f64).sqrt();
                if r >= lo && r <= hi {
                    out.push([k1, k2]);
                }
            }
        }
    }
    out
}

fn flat_index(k: [i64; 2], n: usize, dim: u8) -> usize {
    let wrap = |v: i64| v.rem_euclid(n as i64) as usize;
    debug_assert!(signed_frequency(wrap(k[0]), n).abs() == k[0].abs());
    if dim == 1 {
        wrap(k[0])
    } else {
        wrap(k[0]) * n + wrap(k[1])
    }
}

/// Sup of `sum a cos(2 pi k x + phase)` on a grid 16x finer than the band edge.
fn reference_sup(modes: &[([i64; 2], f64, f64)], band_top: f64) -> f64 {
    let points = (16.0 * band_top).max(64.0).log2().ceil().exp2() as usize;
    (0..points)
        .map(|i| {
            let x = i as f64 / points as f64;
            modes
                .iter()
                .map(|&(k, a, p)| a * (2.0 * PI * k[0] as f64 * x + p).cos())
                .sum::<f64>()
                .abs()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{besov_norm, build_partition, decompose, estimate_regularity, Grid};
    use crate::stats::mean;

    #[test]
    fn deterministic_per_seed() {
        let pou = build_partition(Grid::line(10).unwrap(), 2).unwrap();
        let a = synth_holder(0.5, 42, &pou, 4).unwrap();
        let b = synth_holder(0.5, 42, &pou, 4).unwrap();
        assert_eq!(a.samples(), b.samples());
        let c = synth_holder(0.5, 43, &pou, 4).unwrap();
        assert_ne!(a.samples(), c.samples());
    }

    #[test]
    fn rejects_bad_parameters() {
        let pou = build_partition(Grid::line(8).unwrap(), 2).unwrap();
        assert!(matches!(
            synth_holder(0.0, 1, &pou, 4),
            Err(Error::UnsupportedParameter(_))
        ));
        assert!(synth_holder(1.2, 1, &pou, 4).is_err());
        assert!(synth_holder(0.3, 1, &pou, 0).is_err());
    }

    #[test]
    fn block_amplitudes_follow_the_target_regularity() {
        // oracle: the generator's per-block amplitude is 2^{-j alpha} up to the
        // ratio between grid sup and reference sup
        let pou = build_partition(Grid::line(12).unwrap(), 2).unwrap();
        let alpha = 0.5;
        let f = synth_holder(alpha, 9, &pou, 6).unwrap();
        let dec = decompose(&f, &pou).unwrap();
        for (j, s) in dec.block_sups() {
            if j < 0 || j == pou.top() {
                assert!(s < 1e-12, "j={j} s={s}");
            } else {
                let expected = 2f64.powf(-(j as f64) * alpha);
                assert!(s <= 1.02 * expected && s >= 0.9 * expected, "j={j}");
            }
        }
    }

    #[test]
    fn regularity_estimates_match() {
        for alpha in [-0.7, -0.3, 0.3, 0.5, 0.8] {
            let pou = build_partition(Grid::line(12).unwrap(), 2).unwrap();
            let est: Vec<f64> = (0..8)
                .map(|s| {
                    let f = synth_holder(alpha, s, &pou, 4).unwrap();
                    estimate_regularity(&f, &pou, None).unwrap().regularity()
                })
                .collect();
            assert!((mean(&est) - alpha).abs() <= 0.05, "alpha={alpha}: {est:?}");
        }
    }

    #[test]
    fn besov_norm_is_order_one_across_grids() {
        for l in 10..=14 {
            let pou = build_partition(Grid::line(l).unwrap(), 2).unwrap();
            for alpha in [0.5, -0.7] {
                let f = synth_holder(alpha, 5, &pou, 4).unwrap();
                let norm = besov_norm(&f, alpha, &pou).unwrap();
                assert!((0.5..=4.0).contains(&norm), "L={l} alpha={alpha}: {norm}");
            }
        }
    }

    #[test]
    fn consistent_across_grid_sizes() {
        // the L=10 output equals the L=12 output restricted to low blocks
        let coarse_pou = build_partition(Grid::line(10).unwrap(), 2).unwrap();
        let fine_pou = build_partition(Grid::line(12).unwrap(), 2).unwrap();
        let coarse = synth_holder(0.4, 3, &coarse_pou, 4).unwrap();
        let fine = synth_holder(0.4, 3, &fine_pou, 4).unwrap();
        let fine_low = decompose(&fine, &fine_pou)
            .unwrap()
            .partial_sum(-1, coarse_pou.top() - 1);
        for i in 0..coarse.grid().len() {
            assert!((coarse.at(i) - fine_low.at(4 * i)).abs() < 1e-12);
        }
    }

    #[test]
    fn two_dimensional_synthesis() {
        let pou = build_partition(Grid::new(2, 7).unwrap(), 2).unwrap();
        let f = synth_holder(0.5, 1, &pou, 4).unwrap();
        let norm = besov_norm(&f, 0.5, &pou).unwrap();
        assert!((norm - 1.0).abs() < 1e-9);
    }
}
