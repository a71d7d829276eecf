//! Exact linear algebra over `F_p` and `Q`.
//!
//! Every space carries a labelled basis and every derived space (kernel,
//! cokernel, tensor, Hom) synthesises its labels deterministically, so
//! renderings of results are reproducible.

mod field;
mod matrix;
mod space;

pub use field::{is_prime, Fe, Field, MAX_PRIME};
pub use matrix::{Matrix, Rref};
pub use space::{
    cokernel, curry, direct_sum, evaluation, factor_through_injection, factor_through_surjection, hom_post,
    hom_pre, hom_space, hom_unvec, hom_vec, image, kernel, kron, rank, solve, swap, tensor, uncurry, unitor,
    LinMap, VecSpace,
};
pub(crate) use field::inv_mod;
pub(crate) use space::hom;
