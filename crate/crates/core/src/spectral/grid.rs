use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Smallest supported `log2` grid size.
pub const MIN_LOG2_SIZE: u32 = 6;

/// Uniform periodic grid on `[0,1)^dim` with `2^log2_size` points per axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Grid {
    dim: u8,
    log2_size: u32,
}

impl Grid {
    pub fn new(dim: u8, log2_size: u32) -> Result<Self> {
        if !(1..=2).contains(&dim) {
            return Err(Error::UnsupportedParameter(format!(
                "grid dimension {dim} (supported: 1, 2)"
            )));
        }
        if log2_size < MIN_LOG2_SIZE {
            return Err(Error::Configuration(format!(
                "log2 grid size {log2_size} is below the minimum {MIN_LOG2_SIZE}"
            )));
        }
        let max = if dim == 1 { 24 } else { 12 };
        if log2_size > max {
            return Err(Error::Configuration(format!(
                "log2 grid size {log2_size} exceeds {max} for dimension {dim}"
            )));
        }
        Ok(Grid { dim, log2_size })
    }

    /// One-dimensional grid with `2^log2_size` points.
    pub fn line(log2_size: u32) -> Result<Self> {
        Self::new(1, log2_size)
    }

    pub fn dim(&self) -> u8 {
        self.dim
    }

    pub fn log2_size(&self) -> u32 {
        self.log2_size
    }

    /// Points per axis.
    pub fn points_per_axis(&self) -> usize {
        1 << self.log2_size
    }

    /// Total number of samples.
    pub fn len(&self) -> usize {
        self.points_per_axis().pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Axis indices of a flat sample index (row-major, last axis fastest).
    pub fn axis_indices(&self, flat: usize) -> [usize; 2] {
        let n = self.points_per_axis();
        match self.dim {
            1 => [flat, 0],
            _ => [flat / n, flat % n],
        }
    }

    /// Coordinates `m/N` of a flat sample index.
    pub fn coordinates(&self, flat: usize) -> [f64; 2] {
        let n = self.points_per_axis() as f64;
        let [a, b] = self.axis_indices(flat);
        [a as f64 / n, b as f64 / n]
    }

    /// Flat index of the point displaced from `flat` by `offset` grid steps
    /// along the first axis, wrapping periodically.
    pub fn shift(&self, flat: usize, offset: isize) -> usize {
        let n = self.points_per_axis() as isize;
        let [a, b] = self.axis_indices(flat);
        let a = (a as isize + offset).rem_euclid(n) as usize;
        match self.dim {
            1 => a,
            _ => a * n as usize + b,
        }
    }

    /// Periodic Euclidean distance between two grid points.
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        let n = self.points_per_axis();
        let ai = self.axis_indices(i);
        let aj = self.axis_indices(j);
        let mut sq = 0.0;
        for axis in 0..self.dim as usize {
            let d = ai[axis].abs_diff(aj[axis]);
            let d = d.min(n - d) as f64 / n as f64;
            sq += d * d;
        }
        sq.sqrt()
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "grid(dim={}, L={})", self.dim, self.log2_size)
    }
}

/// Real samples of a function on a [`Grid`].
///
/// Arithmetic operators act pointwise and panic when the operands live on
/// different grids; the fallible entry points of the crate check grids first.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    grid: Grid,
    samples: Vec<f64>,
}

impl GridFunction {
    pub fn new(grid: Grid, samples: Vec<f64>) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::Usage(format!(
                "{} samples supplied for {grid} with {} points",
                samples.len(),
                grid.len()
            )));
        }
        if let Some(i) = samples.iter().position(|s| !s.is_finite()) {
            return Err(Error::Usage(format!("sample {i} is not finite")));
        }
        Ok(GridFunction { grid, samples })
    }

    /// Caller guarantees length and finiteness.
    pub(crate) fn from_raw(grid: Grid, samples: Vec<f64>) -> Self {
        debug_assert_eq!(samples.len(), grid.len());
        GridFunction { grid, samples }
    }

    pub fn zeros(grid: Grid) -> Self {
        GridFunction::from_raw(grid, vec![0.0; grid.len()])
    }

    pub fn constant(grid: Grid, value: f64) -> Self {
        GridFunction::from_raw(grid, vec![value; grid.len()])
    }

    /// Samples `f` at the grid coordinates.
    pub fn from_fn(grid: Grid, f: impl Fn([f64; 2]) -> f64) -> Result<Self> {
        let samples = (0..grid.len()).map(|i| f(grid.coordinates(i))).collect();
        GridFunction::new(grid, samples)
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    /// Value at a flat grid index.
    pub fn at(&self, i: usize) -> f64 {
        self.samples[i]
    }

    pub fn sup_norm(&self) -> f64 {
        self.samples.iter().fold(0.0_f64, |m, s| m.max(s.abs()))
    }

    pub fn scale(&self, c: f64) -> Self {
        GridFunction::from_raw(self.grid, self.samples.iter().map(|s| c * s).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.samples.iter().all(|s| *s == 0.0)
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: f64, other: &GridFunction) {
        assert_eq!(self.grid, other.grid, "grid mismatch");
        for (a, b) in self.samples.iter_mut().zip(&other.samples) {
            *a += c * b;
        }
    }

    /// `self += a * b` pointwise.
    pub fn add_product(&mut self, a: &GridFunction, b: &GridFunction) {
        assert_eq!(self.grid, a.grid, "grid mismatch");
        assert_eq!(self.grid, b.grid, "grid mismatch");
        for ((s, x), y) in self.samples.iter_mut().zip(&a.samples).zip(&b.samples) {
            *s += x * y;
        }
    }

    /// Sup norm of `self - other`.
    pub fn sup_distance(&self, other: &GridFunction) -> f64 {
        assert_eq!(self.grid, other.grid, "grid mismatch");
        self.samples
            .iter()
            .zip(&other.samples)
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
    }
}

pub(crate) fn check_grids(left: Grid, right: Grid) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::GridMismatch {
            left: left.to_string(),
            right: right.to_string(),
        })
    }
}

fn zip_with(a: &GridFunction, b: &GridFunction, op: impl Fn(f64, f64) -> f64) -> GridFunction {
    assert_eq!(a.grid, b.grid, "grid mismatch");
    let samples = a
        .samples
        .iter()
        .zip(&b.samples)
        .map(|(x, y)| op(*x, *y))
        .collect();
    GridFunction::from_raw(a.grid, samples)
}

impl Add for &GridFunction {
    type Output = GridFunction;
    fn add(self, rhs: &GridFunction) -> GridFunction {
        zip_with(self, rhs, |x, y| x + y)
    }
}

impl Sub for &GridFunction {
    type Output = GridFunction;
    fn sub(self, rhs: &GridFunction) -> GridFunction {
        zip_with(self, rhs, |x, y| x - y)
    }
}

impl Mul for &GridFunction {
    type Output = GridFunction;
    fn mul(self, rhs: &GridFunction) -> GridFunction {
        zip_with(self, rhs, |x, y| x * y)
    }
}

impl Neg for &GridFunction {
    type Output = GridFunction;
    fn neg(self) -> GridFunction {
        self.scale(-1.0)
    }
}
