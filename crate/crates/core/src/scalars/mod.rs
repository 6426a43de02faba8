//! Exact constants: Gaussian rationals extended by pi, declared parameters and
//! formal exponentials of exact arguments, with a decidable zero test.

pub mod gauss;
pub mod gcd;
pub mod mpoly;
pub mod ratfunc;
mod scalar;

pub use gauss::{rat, GaussRat, Rat};
pub use mpoly::{MPoly, Monomial, Symbol};
pub use ratfunc::RatFunc;
pub use scalar::{reduce_pi, ExpArg, Scalar};
