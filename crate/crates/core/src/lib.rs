//! Paradifferential calculus on the periodic torus.
//!
//! The crate is layered bottom-up:
//!
//! * [`spectral`]: grids, the dyadic partition of unity, Littlewood-Paley
//!   blocks, Besov norms, regularity regression and synthetic Holder inputs.
//! * [`paraproducts`]: Bony's paraproduct and resonant term, iterated
//!   paraproducts, the seed family `f^{i1...ik}` and its two-point functionals.
//! * [`hopf`]: the graded word Hopf algebra (deconcatenation coproduct,
//!   counit, character group) and the comodule spanned by `Xi` and `(k...n)Xi`.
//! * [`models`]: character fields, bracket extraction, models, modelled
//!   distributions and pointwise reconstruction.
//! * [`commutator`]: the multicomponent commutator and its paracontrolled
//!   reconstruction.
//! * [`experiments`]: seed sweeps and regressions shared by the CLI and the
//!   acceptance suite.

pub mod commutator;
mod error;
pub mod exec;
pub mod experiments;
pub mod hopf;
pub mod models;
pub mod paraproducts;
pub mod spectral;
pub mod stats;
pub mod tolerances;

pub use error::{Error, Result};
pub use exec::Exec;
pub use spectral::{Grid, GridFunction, PartitionOfUnity};
