//! Exact symbolic engine for nonlinear differential-difference equations
//!
//! ```text
//! f(z)^n + L(z, f) = q(z) exp(p(z))
//! ```
//!
//! where `L` is a linear differential-difference operator. Solutions and
//! coefficients live in the ring of exponential polynomials over an exact
//! constant field ([`scalars::Scalar`]), so residuals are checked exactly.
//!
//! The crate is organized bottom-up:
//!
//! - [`scalars`]: exact constants with formal exponentials.
//! - [`exppoly`]: polynomials in `z` and exponential polynomials in `z`.
//! - [`ddoperator`]: linear differential-difference operators.
//! - [`equation`]: equation instances, exact verification, classification and
//!   the `P`/`Q` elimination.
//! - [`solver`]: the particular polynomial solution of `2f' - af = H`, the
//!   closed-form solver for `f^2 + L(z,f) = b exp(az)` and its inverse.
//! - [`growth`]: high-precision evaluation, argument-principle zero counting
//!   and zero-growth estimation.
//! - [`cli`]: the expression and equation-file parser, printer and the
//!   command front end used by the `ddeq` binary.

/// Implements the `std::ops` arithmetic traits for owned and borrowed operands
/// of a type with inherent `add`, `sub`, `mul` and `neg` methods.
#[macro_export]
#[doc(hidden)]
macro_rules! forward_ring_ops {
    ($t:ty) => {
        impl std::ops::Add<&$t> for &$t {
            type Output = $t;
            fn add(self, o: &$t) -> $t {
                <$t>::add(self, o)
            }
        }
        impl std::ops::Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                <$t>::add(&self, &o)
            }
        }
        impl std::ops::Sub<&$t> for &$t {
            type Output = $t;
            fn sub(self, o: &$t) -> $t {
                <$t>::sub(self, o)
            }
        }
        impl std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                <$t>::sub(&self, &o)
            }
        }
        impl std::ops::Mul<&$t> for &$t {
            type Output = $t;
            fn mul(self, o: &$t) -> $t {
                <$t>::mul(self, o)
            }
        }
        impl std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                <$t>::mul(&self, &o)
            }
        }
        impl std::ops::Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                <$t>::neg(self)
            }
        }
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                <$t>::neg(&self)
            }
        }
    };
}

pub mod cli;
pub mod ddoperator;
pub mod equation;
pub mod error;
pub mod exppoly;
pub mod growth;
pub mod scalars;
pub mod solver;

pub use error::{Error, Result};
