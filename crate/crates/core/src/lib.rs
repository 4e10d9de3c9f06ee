//! Exact arithmetic for skew polynomial rings `K[t;σ]`, their Petit quotients
//! `K[t;σ]/K[t;σ](t^m - a)`, generalized cyclic algebras over matrix
//! coefficient rings and twisted Laurent polynomials, together with the
//! monomial maps `t ↦ αt^k` between them.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![allow(clippy::type_complexity)]

extern crate alloc;

pub mod anchors;
pub mod cert;
mod error;
pub mod gen_cyclic;
pub mod ground;
pub mod laurent;
pub mod linalg;
pub mod morphism;
pub mod petit;
pub mod skew_poly;

pub use cert::{Certificate, Condition, Mode, Verdict};
pub use error::{Error, Result};
pub use ground::{FiniteField, FrobeniusTower, FunctionField, Ground};

/// Seed used by sampled verification when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0xC0FFEE;

/// Default cap on the number of elements a scan may touch.
pub const DEFAULT_CAP: u64 = 1 << 16;
