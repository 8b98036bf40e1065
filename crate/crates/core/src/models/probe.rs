use std::collections::BTreeMap;

use super::brackets::ModelPi;
use super::field::{g_two_point_character, CharacterField};
use super::reconstruct::recentered_value;
use crate::error::{Error, Result};
use crate::hopf::{char_inverse, to_f64, ComoduleBasis, Coproduct, Word};
use crate::spectral::Grid;
use crate::stats::fit_line;

/// Default smoothness order of the test function.
pub const DEFAULT_BUMP_ORDER: u32 = 3;
/// Smallest admissible probe scale is `2^{-(L - SCALE_MARGIN)}`.
pub const SCALE_MARGIN: u32 = 3;
/// Largest admissible probe scale is `2^{-MIN_SCALE_EXPONENT}`.
pub const MIN_SCALE_EXPONENT: u32 = 2;

/// Polynomial bump `c (1 - |u|^2)^{r+1}` on the unit ball with
/// `c` chosen so that all derivatives of order at most `r` are bounded by 1.
#[derive(Debug, Clone)]
pub struct Bump {
    order: u32,
    dim: u8,
    norm: f64,
}

impl Bump {
    pub fn new(order: u32, dim: u8) -> Self {
        let poly = Poly2::ball_power(order + 1);
        let samples = 400;
        let mut worst: f64 = 0.0;
        for a in 0..=order {
            for b in 0..=(order - a) {
                if dim == 1 && b > 0 {
                    continue;
                }
                let d = poly.derivative(a, b);
                for i in 0..=samples {
                    let u = -1.0 + 2.0 * i as f64 / samples as f64;
                    if dim == 1 {
                        worst = worst.max(d.eval(u, 0.0).abs());
                        continue;
                    }
                    for k in 0..=samples {
                        let v = -1.0 + 2.0 * k as f64 / samples as f64;
                        if u * u + v * v <= 1.0 {
                            worst = worst.max(d.eval(u, v).abs());
                        }
                    }
                }
            }
        }
        Bump {
            order,
            dim,
            norm: 1.0 / worst,
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Value at displacement `u` (second entry ignored in 1D).
    pub fn eval(&self, u: [f64; 2]) -> f64 {
        let r2 = u[0] * u[0] + if self.dim == 2 { u[1] * u[1] } else { 0.0 };
        if r2 >= 1.0 {
            0.0
        } else {
            self.norm * (1.0 - r2).powi(self.order as i32 + 1)
        }
    }
}

/// Dense bivariate polynomial, `coeffs[a][b]` multiplying `u^a v^b`.
#[derive(Debug, Clone)]
struct Poly2 {
    coeffs: Vec<Vec<f64>>,
}

impl Poly2 {
    fn ball_power(p: u32) -> Self {
        let deg = 2 * p as usize;
        let mut coeffs = vec![vec![0.0; deg + 1]; deg + 1];
        // (1 - u^2 - v^2)^p = sum_{i+j+k=p} p!/(i!j!k!) (-u^2)^j (-v^2)^k
        let fact = |n: u32| (1..=n).map(f64::from).product::<f64>();
        for j in 0..=p {
            for k in 0..=(p - j) {
                let i = p - j - k;
                let c = fact(p) / (fact(i) * fact(j) * fact(k))
                    * if (j + k) % 2 == 0 { 1.0 } else { -1.0 };
                coeffs[2 * j as usize][2 * k as usize] += c;
            }
        }
        Poly2 { coeffs }
    }

    fn derivative(&self, a: u32, b: u32) -> Poly2 {
        let n = self.coeffs.len();
        let mut out = vec![vec![0.0; n]; n];
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if c == 0.0 || i < a as usize || j < b as usize {
                    continue;
                }
                let fall =
                    |m: usize, k: u32| (0..k as usize).map(|t| (m - t) as f64).product::<f64>();
                out[i - a as usize][j - b as usize] += c * fall(i, a) * fall(j, b);
            }
        }
        Poly2 { coeffs: out }
    }

    fn eval(&self, u: f64, v: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, &c)| c * u.powi(i as i32) * v.powi(j as i32))
                    .sum::<f64>()
            })
            .sum()
    }
}

/// Test-function probe: bump, dyadic scales `2^{-m}` and base points.
#[derive(Debug, Clone)]
pub struct ModelNormProbe {
    bump: Bump,
    scale_exponents: Vec<u32>,
    base_points: Vec<usize>,
}

impl ModelNormProbe {
    /// Scales `2^{-m}` must lie in `[2^{-(L-3)}, 2^{-2}]`.
    pub fn new(
        grid: Grid,
        order: u32,
        scale_exponents: Vec<u32>,
        base_points: Vec<usize>,
    ) -> Result<Self> {
        let finest = grid.log2_size().saturating_sub(SCALE_MARGIN);
        if let Some(m) = scale_exponents
            .iter()
            .find(|&&m| m < MIN_SCALE_EXPONENT || m > finest)
        {
            return Err(Error::Configuration(format!(
                "probe scale 2^-{m} outside [2^-{finest}, 2^-{MIN_SCALE_EXPONENT}] on {grid}"
            )));
        }
        if scale_exponents.is_empty() || base_points.is_empty() {
            return Err(Error::Configuration(
                "probe needs scales and base points".into(),
            ));
        }
        if let Some(x) = base_points.iter().find(|&&x| x >= grid.len()) {
            return Err(Error::Configuration(format!(
                "base point {x} is off the grid"
            )));
        }
        Ok(ModelNormProbe {
            bump: Bump::new(order, grid.dim()),
            scale_exponents,
            base_points,
        })
    }

    pub fn scale_exponents(&self) -> &[u32] {
        &self.scale_exponents
    }

    pub fn base_points(&self) -> &[usize] {
        &self.base_points
    }

    pub fn bump(&self) -> &Bump {
        &self.bump
    }
}

/// Per-key empirical maxima.
#[derive(Debug, Clone, PartialEq)]
pub struct KeyStats {
    /// `(log2 scale, max ratio over base points)` per scale.
    pub per_scale: Vec<(f64, f64)>,
    pub max: f64,
    /// Slope of `log2(max ratio)` against `log2(scale)`; `None` when some
    /// ratio vanishes.
    pub log_slope: Option<f64>,
}

impl KeyStats {
    fn from_scales(per_scale: Vec<(f64, f64)>) -> Self {
        let max = per_scale.iter().map(|p| p.1).fold(0.0, f64::max);
        let log_slope = if per_scale.iter().all(|p| p.1 > 0.0) && per_scale.len() >= 2 {
            let pts: Vec<_> = per_scale.iter().map(|&(s, r)| (s, r.log2())).collect();
            fit_line(&pts).map(|f| f.slope)
        } else {
            None
        };
        KeyStats {
            per_scale,
            max,
            log_slope,
        }
    }
}

/// Empirical model norms: `|g_{yx}(tau)| / |y-x|^{|tau|}` per word and
/// `lambda^{-|tau|} |<Pi_x tau, phi_x^lambda>|` per comodule element.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeReport {
    pub words: BTreeMap<Word, KeyStats>,
    pub realizations: BTreeMap<ComoduleBasis, KeyStats>,
}

/// Probes both parts of the model norm; `pi` may be omitted.
pub fn probe_model_norms(
    field: &CharacterField,
    pi: Option<&ModelPi>,
    probe: &ModelNormProbe,
) -> Result<ProbeReport> {
    let grid = field.grid();
    let alphabet = field.alphabet();
    let n_axis = grid.points_per_axis();
    let mut word_ratios: BTreeMap<Word, Vec<(f64, f64)>> = BTreeMap::new();
    for &m in &probe.scale_exponents {
        let step = n_axis >> m;
        let h = step as f64 / n_axis as f64;
        let mut best: BTreeMap<Word, f64> = BTreeMap::new();
        for &x in &probe.base_points {
            let y = grid.shift(x, step as isize);
            let gyx = g_two_point_character(field, x, y)?;
            for w in field.words() {
                let hw = to_f64(alphabet.homogeneity(w)?);
                let ratio = gyx.get(w).unwrap_or(0.0).abs() / h.powf(hw);
                let e = best.entry(w.clone()).or_insert(0.0);
                *e = e.max(ratio);
            }
        }
        for (w, r) in best {
            word_ratios.entry(w).or_default().push((-(m as f64), r));
        }
    }
    let words = word_ratios
        .into_iter()
        .map(|(k, v)| (k, KeyStats::from_scales(v)))
        .collect();

    let mut realizations = BTreeMap::new();
    if let Some(pi) = pi {
        let keys: Vec<ComoduleBasis> = pi.iter().map(|(k, _)| *k).collect();
        let mut ratios: BTreeMap<ComoduleBasis, Vec<(f64, f64)>> = BTreeMap::new();
        for &m in &probe.scale_exponents {
            let lambda = 2f64.powi(-(m as i32));
            let reach = (lambda * n_axis as f64).ceil() as isize;
            let mut best: BTreeMap<ComoduleBasis, f64> = BTreeMap::new();
            for &x in &probe.base_points {
                let inv = char_inverse(&field.at(x))?;
                for key in &keys {
                    let hk = to_f64(key.homogeneity(alphabet)?);
                    let pairing = pair_with_bump(grid, x, reach, lambda, &probe.bump, |z| {
                        recentered_value(pi, &inv, key, z)
                    })?;
                    let e = best.entry(*key).or_insert(0.0);
                    *e = e.max(pairing.abs() / lambda.powf(hk));
                }
            }
            for (k, r) in best {
                ratios.entry(k).or_default().push((-(m as f64), r));
            }
        }
        realizations = ratios
            .into_iter()
            .map(|(k, v)| (k, KeyStats::from_scales(v)))
            .collect();
    }
    Ok(ProbeReport {
        words,
        realizations,
    })
}

/// Grid quadrature of `<h, phi_x^lambda>` over the periodic neighbourhood of `x`.
fn pair_with_bump(
    grid: Grid,
    x: usize,
    reach: isize,
    lambda: f64,
    bump: &Bump,
    h: impl Fn(usize) -> Result<f64>,
) -> Result<f64> {
    let n = grid.points_per_axis() as isize;
    let cell = 1.0 / n as f64;
    let [xa, xb] = grid.axis_indices(x);
    let dim = grid.dim() as i32;
    let second = if grid.dim() == 2 {
        -reach..=reach
    } else {
        0..=0
    };
    let mut acc = 0.0;
    for da in -reach..=reach {
        for db in second.clone() {
            let u = [da as f64 * cell / lambda, db as f64 * cell / lambda];
            let w = bump.eval(u);
            if w == 0.0 {
                continue;
            }
            let a = (xa as isize + da).rem_euclid(n) as usize;
            let z = if grid.dim() == 2 {
                a * n as usize + (xb as isize + db).rem_euclid(n) as usize
            } else {
                a
            };
            acc += h(z)? * w;
        }
    }
    Ok(acc * (cell / lambda).powi(dim))
}
