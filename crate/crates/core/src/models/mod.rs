//! Models on the word algebra and its noise comodule.
//!
//! A [`CharacterField`] samples `x -> g_x(tau)`; the canonical one is built
//! from iterated paraproducts. Brackets are the paracontrolled remainders
//! peeled off a field or a realization [`ModelPi`], and
//! [`brackets_to_model`] rebuilds a realization from them. Modelled
//! distributions, their `D^gamma` increments, pointwise reconstruction and
//! test-function probes of the model norm complete the toolkit.

mod brackets;
mod field;
mod md;
mod probe;
mod reconstruct;

pub use brackets::{
    atomic_decomposition, brackets_to_model, expand_brackets, extract_brackets,
    extract_model_brackets, partition_formula_check, partition_formula_residuals, BracketFamily,
    ModelPi,
};
pub use field::{canonical_model, g_two_point, g_two_point_character, seed_field, CharacterField};
pub use md::{canonical_md, dgamma_components, dgamma_seminorm, ModelledDistribution};
pub use probe::{
    probe_model_norms, Bump, KeyStats, ModelNormProbe, ProbeReport, DEFAULT_BUMP_ORDER,
    MIN_SCALE_EXPONENT, SCALE_MARGIN,
};
pub use reconstruct::{
    paracontrolled_remainder, pointwise_reconstruct, recentered_at, recentered_value,
};
