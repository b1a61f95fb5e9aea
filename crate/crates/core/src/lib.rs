//! Exact binomial arithmetic in characteristic zero and characteristic `p`.
//!
//! The crate covers binomial coefficients and series, the Lucas and Kummer
//! congruences on truncated `p`-adic integers, polynomial arithmetic over
//! `F_q[t]`, Carlitz's additive polynomials `e_k` and factorials `D_k`, the
//! divided-derivative operator algebra realising measures on `F_q[[t]]`-type
//! rings, and the digit-permutation group acting on `Z_p`.
//!
//! The number-theoretic kernels in [`exact`] and [`mahler`] are generic over
//! the scalar type through `num-traits`; the aliases below fix the exact
//! instantiations used everywhere else.

pub mod carlitz;
pub mod digit_group;
pub mod error;
pub mod exact;
pub mod fq;
pub mod mahler;
pub mod measures;
pub mod padic;
pub mod verify;

pub use error::{Error, Result};

/// Arbitrary-precision signed integer.
pub type ExactInt = num_bigint::BigInt;
/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type ExactRational = num_rational::BigRational;

/// Default cap on the number of polynomials any enumeration may produce.
pub const DEFAULT_BUDGET: u64 = 1_000_000;
