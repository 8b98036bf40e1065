//! Graded word Hopf algebra with deconcatenation coproduct, its character
//! group, and the comodule spanned by `Xi` and `(k...n)Xi`.
//!
//! Words render as parenthesized digit strings (`(12)`, unit `1`); tensors
//! render as space-separated `±c·left⊗right` terms in canonical key order.

mod alphabet;
mod character;
mod coproduct;
mod lincomb;
mod word;

pub use alphabet::{to_f64, Alphabet, Homogeneity, MAX_LETTERS, MAX_WORD_LEN};
pub use character::{char_inverse, char_product, PointCharacter};
pub use coproduct::{
    coaction_sides, coproduct, coproduct_monomial, counit, grading_defects, is_connected,
    left_counit_image, quotient, right_counit_image, ComoduleBasis, Coproduct,
};
pub use lincomb::{AlgebraElement, LinComb, Monomial, Tensor, Tensor3};
pub use word::Word;
