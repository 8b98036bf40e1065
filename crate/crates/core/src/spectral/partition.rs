use std::ops::RangeInclusive;

use rustfft::num_complex::Complex64;

use super::fourier::Fourier;
use super::grid::{check_grids, Grid, GridFunction};
use crate::error::{Error, Result};

/// Inner radius (in units of the base cutoff) below which the low profile is 1.
pub const INNER_RADIUS: f64 = 3.0 / 4.0;
/// Outer radius (in units of the base cutoff) beyond which the low profile is 0.
pub const OUTER_RADIUS: f64 = 4.0 / 3.0;
/// Annuli needed on a grid for the decomposition to be meaningful.
pub const MIN_ANNULI: i32 = 4;

/// Quintic smoothstep on `[0,1]`, clamped outside.
fn smoothstep(t: f64) -> f64 {
    let t = t.clamp(0.0, 1.0);
    t * t * t * (t * (6.0 * t - 15.0) + 10.0)
}

/// Radial low-frequency profile: 1 for `r <= 3/4 K0`, 0 for `r >= 4/3 K0`,
/// monotone quintic ramp in between.
pub fn chi(r: f64, base_cutoff: f64) -> f64 {
    let a = INNER_RADIUS * base_cutoff;
    let b = OUTER_RADIUS * base_cutoff;
    1.0 - smoothstep((r - a) / (b - a))
}

/// Dyadic partition of unity `{rho_j}` for `j = -1..=J` on a periodic grid.
///
/// `rho_{-1} = chi`, `rho_j(k) = chi(k / 2^{j+1}) - chi(k / 2^j)` for
/// `0 <= j < J`, and the top profile `rho_J` is `1 - sum_{j<J} rho_j`, so the
/// profiles sum to one at every represented frequency. The partition also
/// owns the FFT plans of its grid and is the context for every spectral
/// operation in the crate.
#[derive(Debug, Clone)]
pub struct PartitionOfUnity {
    grid: Grid,
    base_cutoff: u32,
    top: i32,
    profiles: Vec<Vec<f64>>,
    pub(crate) fourier: Fourier,
}

impl PartitionOfUnity {
    pub fn new(grid: Grid, base_cutoff: u32) -> Result<Self> {
        if base_cutoff < 2 {
            return Err(Error::Configuration(format!(
                "base cutoff {base_cutoff} must be at least 2"
            )));
        }
        let fourier = Fourier::new(grid);
        let k0 = base_cutoff as f64;
        let r_max = fourier.max_radius();
        // annulus j is nonempty on the grid iff its inner radius is below r_max
        let mut top = -1;
        while INNER_RADIUS * k0 * 2f64.powi(top + 1) < r_max {
            top += 1;
        }
        if top + 1 < MIN_ANNULI {
            return Err(Error::Configuration(format!(
                "{grid} with base cutoff {base_cutoff} hosts {} annuli, need at least {MIN_ANNULI}",
                top + 1
            )));
        }
        let radii = fourier.radii();
        let mut profiles: Vec<Vec<f64>> = Vec::with_capacity(top as usize + 2);
        profiles.push(radii.iter().map(|&r| chi(r, k0)).collect());
        for j in 0..top {
            let lo = 2f64.powi(j);
            let hi = 2f64.powi(j + 1);
            profiles.push(
                radii
                    .iter()
                    .map(|&r| chi(r / hi, k0) - chi(r / lo, k0))
                    .collect(),
            );
        }
        let top_profile = (0..radii.len())
            .map(|i| 1.0 - profiles.iter().map(|p| p[i]).sum::<f64>())
            .collect();
        profiles.push(top_profile);
        Ok(PartitionOfUnity {
            grid,
            base_cutoff,
            top,
            profiles,
            fourier,
        })
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn base_cutoff(&self) -> u32 {
        self.base_cutoff
    }

    /// Top block index `J`.
    pub fn top(&self) -> i32 {
        self.top
    }

    /// `-1..=J`.
    pub fn block_indices(&self) -> RangeInclusive<i32> {
        -1..=self.top
    }

    pub fn num_blocks(&self) -> usize {
        self.profiles.len()
    }

    /// Multiplier `rho_j` over flat DFT indices.
    pub fn profile(&self, j: i32) -> &[f64] {
        &self.profiles[(j + 1) as usize]
    }

    /// Radial frequency of every flat DFT index.
    pub fn frequency_radii(&self) -> &[f64] {
        self.fourier.radii()
    }

    /// Open radial interval containing `supp(rho_j)`. The low block is
    /// `[0, 4/3 K0)`; the top block is unbounded above.
    pub fn support(&self, j: i32) -> (f64, f64) {
        let k0 = self.base_cutoff as f64;
        if j < 0 {
            (0.0, OUTER_RADIUS * k0)
        } else if j == self.top {
            (INNER_RADIUS * k0 * 2f64.powi(j), f64::INFINITY)
        } else {
            (
                INNER_RADIUS * k0 * 2f64.powi(j),
                8.0 / 3.0 * k0 * 2f64.powi(j),
            )
        }
    }

    /// Closed radial band `[4/3, 3/2] * 2^j K0` on which `rho_j = 1` and every
    /// other profile vanishes, for `0 <= j < J`.
    pub fn core_band(&self, j: i32) -> (f64, f64) {
        let k0 = self.base_cutoff as f64 * 2f64.powi(j);
        (OUTER_RADIUS * k0, 2.0 * INNER_RADIUS * k0)
    }

    pub(crate) fn check_grid(&self, f: &GridFunction) -> Result<()> {
        check_grids(self.grid, f.grid())
    }

    pub(crate) fn spectrum(&self, f: &GridFunction) -> Vec<Complex64> {
        self.fourier.forward(f.samples())
    }

    /// `F^{-1}(m * spectrum)` as a grid function.
    pub(crate) fn filter(&self, spectrum: &[Complex64], multiplier: &[f64]) -> GridFunction {
        GridFunction::from_raw(
            self.grid,
            self.fourier.apply_multiplier(spectrum, multiplier),
        )
    }
}

/// Builds the dyadic partition of unity for `grid` with base cutoff `K0`.
pub fn build_partition(grid: Grid, base_cutoff: u32) -> Result<PartitionOfUnity> {
    PartitionOfUnity::new(grid, base_cutoff)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profiles_sum_to_one() {
        let pou = build_partition(Grid::line(10).unwrap(), 2).unwrap();
        for i in 0..pou.grid().len() {
            let s: f64 = pou.block_indices().map(|j| pou.profile(j)[i]).sum();
            assert!((s - 1.0).abs() <= 1e-14, "index {i}: {s}");
        }
    }

    #[test]
    fn top_index_for_standard_cutoff() {
        for l in 6..=14 {
            let pou = build_partition(Grid::line(l).unwrap(), 2).unwrap();
            assert_eq!(pou.top(), l as i32 - 2);
            assert_eq!(pou.num_blocks(), l as usize);
        }
    }

    #[test]
    fn low_profile_shape() {
        let pou = build_partition(Grid::line(8).unwrap(), 2).unwrap();
        let radii = pou.frequency_radii();
        let chi = pou.profile(-1);
        assert_eq!(chi[0], 1.0);
        for (r, c) in radii.iter().zip(chi) {
            if *r <= 1.5 {
                assert_eq!(*c, 1.0);
            }
            if *r >= 8.0 / 3.0 {
                assert_eq!(*c, 0.0);
            }
        }
    }

    #[test]
    fn annulus_supports() {
        let pou = build_partition(Grid::line(11).unwrap(), 3).unwrap();
        let radii = pou.frequency_radii();
        for j in 0..pou.top() {
            let (lo, hi) = pou.support(j);
            for (r, p) in radii.iter().zip(pou.profile(j)) {
                if *r <= lo || *r >= hi {
                    assert_eq!(*p, 0.0, "j={j} r={r}");
                }
            }
            let (a, b) = pou.core_band(j);
            for (r, p) in radii.iter().zip(pou.profile(j)) {
                if *r >= a && *r <= b {
                    assert_eq!(*p, 1.0, "j={j} r={r}");
                }
            }
        }
    }

    #[test]
    fn rejects_small_setups() {
        assert!(build_partition(Grid::line(8).unwrap(), 1).is_err());
        // L=6 with a large cutoff leaves fewer than four annuli
        assert!(matches!(
            build_partition(Grid::line(6).unwrap(), 8),
            Err(Error::Configuration(_))
        ));
    }

    #[test]
    fn two_dimensional_partition() {
        let pou = build_partition(Grid::new(2, 6).unwrap(), 2).unwrap();
        for i in 0..pou.grid().len() {
            let s: f64 = pou.block_indices().map(|j| pou.profile(j)[i]).sum();
            assert!((s - 1.0).abs() <= 1e-14);
        }
    }
}
