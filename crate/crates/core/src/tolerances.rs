//! Default tolerances for every reported check.
//!
//! Identity residuals are relative to the product of the sup norms of the
//! inputs involved. Exponent tolerances apply to the mean over seeds; single
//! seeds are held to [`PER_SEED_WIDENING`] times that tolerance.

/// Hopf-algebra laws, character group, Chen relation.
pub const ALGEBRA: f64 = 1e-10;
/// Canonical brackets of words of length two or more, and bracket round trips.
pub const BRACKETS: f64 = 1e-10;
/// Bony splitting of a product.
pub const BONY: f64 = 1e-10;
/// Blockwise recursion of the two-point functionals.
pub const BLOCK_RECURSION: f64 = 1e-9;
/// Atomic decomposition of seed functions and the partition formula.
pub const DECOMPOSITION: f64 = 1e-8;
/// Recursive, unrolled and reconstructed commutators, and the pointwise
/// identities of the recentered models.
pub const COMMUTATOR_IDENTITY: f64 = 1e-8;
/// Slope of `|omega^≺|` against the separation, around the sum of exponents.
pub const OMEGA_SLOPE: f64 = 0.12;
/// Shortfall allowed below the sum of exponents for a word bracket.
pub const BRACKET_SLOPE: f64 = 0.15;
/// Shortfall allowed below `beta + sum(alpha) + gamma` for the commutator.
pub const COMMUTATOR_SLOPE: f64 = 0.1;
/// Excess allowed above `alpha_1 + gamma` for the resonant control term.
pub const CONTROL_RESONANT_SLOPE: f64 = 0.15;
/// Largest admissible ratio of successive refinement differences.
pub const REFINEMENT_RATIO: f64 = 1.0;
/// Widening of exponent tolerances for rows about a single seed.
pub const PER_SEED_WIDENING: f64 = 2.0;
/// Synthesis followed by block decomposition and summation.
pub const SYNTH_ROUND_TRIP: f64 = 1e-12;
