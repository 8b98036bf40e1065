//! Discrete Littlewood-Paley theory on the periodic torus.

mod blocks;
pub(crate) mod fourier;
mod grid;
mod partition;
mod regularity;
mod synth;

pub use blocks::{besov_norm, decompose, high_pass, low_pass, BlockDecomposition};
pub use grid::{Grid, GridFunction, MIN_LOG2_SIZE};
pub use partition::{
    build_partition, chi, PartitionOfUnity, INNER_RADIUS, MIN_ANNULI, OUTER_RADIUS,
};
pub use regularity::{default_fit_window, estimate_regularity, RegularityReport, MIN_FIT_POINTS};
pub use synth::synth_holder;

pub(crate) use grid::check_grids;
