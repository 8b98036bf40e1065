use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::grid::Grid;

/// Cached FFT plans for one grid, plus the radial frequency of every
/// flat index.
#[derive(Clone)]
pub(crate) struct Fourier {
    grid: Grid,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    radii: Vec<f64>,
}

impl std::fmt::Debug for Fourier {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Fourier").field("grid", &self.grid).finish()
    }
}

/// Signed integer frequency of DFT index `m` on an axis of length `n`.
/// The Nyquist index maps to `-n/2`.
pub(crate) fn signed_frequency(m: usize, n: usize) -> i64 {
    if m < n / 2 {
        m as i64
    } else {
        m as i64 - n as i64
    }
}

impl Fourier {
    pub(crate) fn new(grid: Grid) -> Self {
        let n = grid.points_per_axis();
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(n);
        let inverse = planner.plan_fft_inverse(n);
        let radii = (0..grid.len())
            .map(|flat| {
                let idx = grid.axis_indices(flat);
                let mut sq = 0.0;
                for &m in idx.iter().take(grid.dim() as usize) {
                    let k = signed_frequency(m, n) as f64;
                    sq += k * k;
                }
                sq.sqrt()
            })
            .collect();
        Fourier {
            grid,
            forward,
            inverse,
            radii,
        }
    }

    pub(crate) fn radii(&self) -> &[f64] {
        &self.radii
    }

    /// Largest represented frequency magnitude.
    pub(crate) fn max_radius(&self) -> f64 {
        self.radii.iter().cloned().fold(0.0, f64::max)
    }

    fn transform(&self, data: &mut [Complex64], plan: &Arc<dyn Fft<f64>>) {
        let n = self.grid.points_per_axis();
        if self.grid.dim() == 1 {
            plan.process(data);
            return;
        }
        for row in data.chunks_exact_mut(n) {
            plan.process(row);
        }
        let mut column = vec![Complex64::new(0.0, 0.0); n];
        for c in 0..n {
            for r in 0..n {
                column[r] = data[r * n + c];
            }
            plan.process(&mut column);
            for r in 0..n {
                data[r * n + c] = column[r];
            }
        }
    }

    /// Unnormalized forward DFT of real samples.
    pub(crate) fn forward(&self, samples: &[f64]) -> Vec<Complex64> {
        let mut data: Vec<Complex64> = samples.iter().map(|&s| Complex64::new(s, 0.0)).collect();
        self.transform(&mut data, &self.forward);
        data
    }

    /// Inverse DFT normalized by the number of samples; returns the real part.
    pub(crate) fn inverse_real(&self, mut spectrum: Vec<Complex64>) -> Vec<f64> {
        self.transform(&mut spectrum, &self.inverse);
        let scale = 1.0 / self.grid.len() as f64;
        spectrum.into_iter().map(|c| c.re * scale).collect()
    }

    /// Applies a real radial multiplier to a spectrum and returns real samples.
    pub(crate) fn apply_multiplier(&self, spectrum: &[Complex64], multiplier: &[f64]) -> Vec<f64> {
        let filtered = spectrum
            .iter()
            .zip(multiplier)
            .map(|(c, m)| c * *m)
            .collect();
        self.inverse_real(filtered)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_1d_and_2d() {
        for grid in [Grid::line(7).unwrap(), Grid::new(2, 6).unwrap()] {
            let fourier = Fourier::new(grid);
            let samples: Vec<f64> = (0..grid.len())
                .map(|i| ((i * 37) % 11) as f64 - 5.0)
                .collect();
            let back = fourier.inverse_real(fourier.forward(&samples));
            for (a, b) in samples.iter().zip(&back) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn monochromatic_wave_lands_on_its_frequency() {
        let grid = Grid::line(6).unwrap();
        let fourier = Fourier::new(grid);
        let samples: Vec<f64> = (0..64)
            .map(|i| (2.0 * std::f64::consts::PI * 5.0 * i as f64 / 64.0).cos())
            .collect();
        let spec = fourier.forward(&samples);
        for (m, c) in spec.iter().enumerate() {
            let k = signed_frequency(m, 64).abs();
            let expected = if k == 5 { 32.0 } else { 0.0 };
            assert!((c.norm() - expected).abs() < 1e-10, "m={m}");
        }
        assert_eq!(fourier.radii()[59], 5.0);
        assert_eq!(fourier.max_radius(), 32.0);
    }
}
