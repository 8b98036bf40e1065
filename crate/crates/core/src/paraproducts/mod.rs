//! Bony paraproducts, iterated paraproducts, the seed family `f^{i1...ik}`
//! and the two-point functionals `omega` and `C_x`.

mod bony;
mod omega;
mod seed;

pub use bony::{bony_decompose, iterated_para, para, para_ge, resonant, ParaDecomposition};
pub(crate) use omega::suffix_recursion;
pub use omega::{
    block_recursion_check, block_recursion_residuals, c_pieces, omega_pieces, omega_prec,
    omega_seed, PrecTable,
};
pub use seed::{seed_function, SeedFamily};
