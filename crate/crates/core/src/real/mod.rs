//! Certified arbitrary-precision reals: balls, surds, elementary functions
//! and closed-form expressions.

pub mod ball;
pub mod closed_form;
pub mod elementary;
pub mod mag;
pub mod quadext;

pub use ball::{digits_to_bits, parse_decimal, Ball};
pub use closed_form::{eval_closed_form, ClosedForm};
pub use elementary::{arcsin, arcsinh, arctan, const_ln2, const_pi, elem_fn, ln, ElemFn};
pub use mag::Mag;
pub use quadext::{eval_quadext, QuadExt};

/// Working precision in bits for `digits` decimal digits over `terms`
/// accumulated operations: `ceil(digits * log2 10) + 32 + ceil(log2(terms + 1))`.
pub fn working_precision(digits: u64, terms: u64) -> u64 {
    digits_to_bits(digits) + 32 + (64 - terms.leading_zeros() as u64)
}
